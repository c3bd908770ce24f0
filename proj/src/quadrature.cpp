#include "kacspec/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "kacspec/common.hpp"

namespace kacspec {

namespace {

GaussLegendre build_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    long double z = std::cos(kPi * (i - 0.25L) / (n + 0.5L));
    long double pp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p1 = 1.0L, p2 = 0.0L;
      for (int j = 0; j < n; ++j) {
        long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j + 1.0L) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0L);
      long double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    rule.nodes[i - 1] = static_cast<double>(-z);
    rule.nodes[n - i] = static_cast<double>(z);
    long double p1 = 1.0L, p2 = 0.0L;
    for (int j = 0; j < n; ++j) {
      long double p3 = p2;
      p2 = p1;
      p1 = ((2.0L * j + 1.0L) * z * p2 - j * p3) / (j + 1);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0L);
    double w = static_cast<double>(2.0L / ((1.0L - z * z) * pp * pp));
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  return rule;
}

std::map<int, GaussLegendre> g_rules;
std::mutex g_rules_mutex;

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(g_rules_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussLegendre& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  long double sum = 0.0L;
  for (int i = 0; i < n; ++i) sum += (long double)(rule.weights[i] * f(mid + half * rule.nodes[i]));
  return static_cast<double>(sum * half);
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int n) {
  long double sum = 0.0L;
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) sum += (long double)integrate_gl(f, a + p * w, a + (p + 1) * w, n);
  return static_cast<double>(sum);
}

double power_graded_integral(const std::function<double(double)>& g, double a, double expo,
                             const GradedOptions& opt) {
  if (a <= 0.0) throw std::invalid_argument("power_graded_integral: a must be positive");
  if (expo <= -2.0) throw std::invalid_argument("power_graded_integral: expo must exceed -2");
  const GaussLegendre& rule = gauss_legendre(opt.nodes);

  auto panel_integral = [&](double lo, double hi, long double* nodes_u,
                            long double* nodes_g) -> long double {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    long double sum = 0.0L;
    for (int i = 0; i < opt.nodes; ++i) {
      const double u = mid + half * rule.nodes[i];
      const double gv = g(u);
      sum += (long double)rule.weights[i] * std::pow((long double)u, (long double)expo) * gv;
      nodes_u[i] = u;
      nodes_g[i] = gv;
    }
    return sum * half;
  };

  // Stub below u_min from a quadratic model of g on the innermost panel: the
  // power weight is integrated exactly, only the model error remains.
  const int i0 = 0, i1 = opt.nodes / 2, i2 = opt.nodes - 1;
  auto stub_integral = [&](double u_min, const long double* nodes_u,
                           const long double* nodes_g) -> long double {
    const long double x0 = nodes_u[i0], x1 = nodes_u[i1], x2 = nodes_u[i2];
    const long double y0 = nodes_g[i0], y1 = nodes_g[i1], y2 = nodes_g[i2];
    const long double d01 = (y1 - y0) / (x1 - x0);
    const long double d12 = (y2 - y1) / (x2 - x1);
    const long double c2 = (d12 - d01) / (x2 - x0);
    const long double c1 = d01 - c2 * (x0 + x1);
    const long double c0 = y0 - c1 * x0 - c2 * x0 * x0;
    const long double um = (long double)u_min;
    long double stub = 0.0L;
    if (expo > -1.0)
      stub += c0 * std::pow(um, (long double)(expo + 1.0)) / (long double)(expo + 1.0);
    stub += c1 * std::pow(um, (long double)(expo + 2.0)) / (long double)(expo + 2.0);
    stub += c2 * std::pow(um, (long double)(expo + 3.0)) / (long double)(expo + 3.0);
    return stub;
  };

  std::vector<long double> node_u(opt.nodes), node_g(opt.nodes);
  long double panels = 0.0L;
  long double total_prev = 0.0L;
  double last_diff = 0.0;
  int stable = 0;
  const int min_levels = 6;
  const int hard_levels = (opt.levels > 0) ? opt.levels : opt.max_levels;
  for (int m = 0; m < hard_levels; ++m) {
    const double hi = a * std::pow(0.5, m);
    const double lo = 0.5 * hi;
    panels += panel_integral(lo, hi, node_u.data(), node_g.data());
    const long double total = panels + stub_integral(lo, node_u.data(), node_g.data());
    if (opt.levels < 0 && m >= 1) {
      // Successive stubbed totals are a Richardson-style error estimate.
      last_diff = std::abs(static_cast<double>(total - total_prev));
      stable = (last_diff <= opt.tol / 4.0) ? stable + 1 : 0;
      if (m + 1 >= min_levels && stable >= 2) return static_cast<double>(total);
    }
    total_prev = total;
  }
  if (opt.levels < 0 && last_diff > opt.tol) {
    throw accuracy_error("power_graded_integral: tolerance unreachable at max refinement (" +
                         std::to_string(last_diff) + " > " + std::to_string(opt.tol) + ")");
  }
  return static_cast<double>(total_prev);
}

}  // namespace kacspec

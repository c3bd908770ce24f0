#include "kacspec/symbols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kacspec/common.hpp"
#include "kacspec/singular.hpp"
#include "kacspec/special.hpp"

namespace kacspec {

namespace {

void require_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("symbols: s must lie in (0,1)");
}

// exp with the documented underflow clamp.
double gauss_exp(double arg) { return arg < -700.0 ? 0.0 : std::exp(arg); }

}  // namespace

PhasePoint::PhasePoint(std::vector<double> v_, std::vector<double> xi_)
    : v(std::move(v_)), xi(std::move(xi_)) {
  if (v.size() != xi.size() || v.empty())
    throw std::invalid_argument("PhasePoint: v and xi must have equal positive dimension");
}

double PhasePoint::rho2() const {
  double sv = 0.0, sx = 0.0;
  for (double c : v) sv += c * c;
  for (double c : xi) sx += c * c;
  return sx + 0.25 * sv;
}

double mehler_symbol_rho2(double t, double rho2, int d) {
  if (t < 0.0) throw std::domain_error("mehler_symbol: t must be >= 0");
  if (d < 1) throw std::domain_error("mehler_symbol: d must be >= 1");
  const double th = std::tanh(0.5 * t);
  return gauss_exp(-2.0 * th * rho2) / std::pow(std::cosh(0.5 * t), d);
}

double mehler_symbol(double t, const PhasePoint& p, int d) {
  return mehler_symbol_rho2(t, p.rho2(), d);
}

double l1_value(double rho2, double s, int d, double tol) {
  require_s(s);
  if (d < 1) throw std::domain_error("l1_value: d must be >= 1");
  // Bracket 1 - exp(-2 tan^2(theta/2) rho2)/cos^{2d}(theta/2) written as
  // -expm1(...) so it keeps full accuracy where it vanishes to second order.
  AngularTest t;
  t.phi0 = 0.0;
  t.delta_u = [rho2, s, d](double u) {
    const double u2 = u * u;
    const double arg = -2.0 * rho2 * u2 / (1.0 - u2) - d * std::log1p(-u2);
    return -std::expm1(arg);
  };
  FpOptions opt;
  opt.tol = tol * std::max(1.0, std::pow(1.0 + rho2, s));
  opt.nodes = 20;
  return fp_integrate(t, s, opt);
}

double l2_value(double rho2, double s, int d, double tol) {
  require_s(s);
  if (d < 1) throw std::domain_error("l2_value: d must be >= 1");
  // Three-Gaussian bracket reorganized around the symmetric/antisymmetric
  // exponents: with sigma = sin(theta) and a_pm = +-4 sigma rho2/(1 +- sigma)
  // - d log(1 +- sigma), the bracket equals
  //   -2^d e^{-2 rho2} [ expm1(abar) cosh(delta) + 2 sinh^2(delta/2) ],
  // abar = (a_+ + a_-)/2, delta = (a_+ - a_-)/2, both cancellation-free.
  AngularTest t;
  t.phi0 = 0.0;
  const double pref = std::pow(2.0, d);
  t.delta_u = [rho2, d, pref](double u) {
    const double u2 = u * u;
    const double sig = 2.0 * u * std::sqrt(1.0 - u2);
    const double sig2 = sig * sig;
    const double abar = -4.0 * sig2 * rho2 / (1.0 - sig2) - 0.5 * d * std::log1p(-sig2);
    const double delta = 4.0 * sig * rho2 / (1.0 - sig2) - d * std::atanh(sig);
    if (std::abs(abar) + std::abs(delta) < 1.0) {
      // Near theta = 0 the three Gaussians cancel to second order; the
      // symmetric form keeps that difference exact.
      const double sh = std::sinh(0.5 * delta);
      return -pref * gauss_exp(-2.0 * rho2) *
             (std::expm1(abar) * std::cosh(delta) + 2.0 * sh * sh);
    }
    // Away from the cancellation regime fold the exponents first; all three
    // are nonpositive, so nothing can overflow.
    const double a_plus = abar + delta;
    const double a_minus = abar - delta;
    return -0.5 * pref *
           (gauss_exp(a_plus - 2.0 * rho2) + gauss_exp(a_minus - 2.0 * rho2) -
            2.0 * gauss_exp(-2.0 * rho2));
  };
  FpOptions opt;
  opt.tol = tol;
  opt.nodes = 20;
  return fp_integrate(t, s, opt);
}

double l1_symbol(const PhasePoint& p, double s, double tol) { return l1_value(p.rho2(), s, 1, tol); }
double l2_symbol(const PhasePoint& p, double s, double tol) { return l2_value(p.rho2(), s, 1, tol); }

double l1_symbol_d(const PhasePoint& p, double s, int d, double tol) {
  return l1_value(p.rho2(), s, d, tol);
}

double l2_symbol_d(const PhasePoint& p, double s, int d, double tol) {
  return l2_value(p.rho2(), s, d, tol);
}

double full_symbol(const PhasePoint& p, double s, int d, double tol) {
  const double r2 = p.rho2();
  return l1_value(r2, s, d, tol) + l2_value(r2, s, d, tol);
}

std::vector<double> kappa_taylor(double alpha, int n) {
  // (1+z)^alpha e^{2z} = sum_j z^j sum_i binom(alpha,i) 2^{j-i}/(j-i)!
  std::vector<double> a(n + 1, 0.0);
  std::vector<double> fact(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  for (int j = 0; j <= n; ++j) {
    double sum = 0.0;
    for (int i = 0; i <= j; ++i)
      sum += binom_real(alpha, i) * std::pow(2.0, j - i) / fact[j - i];
    a[j] = sum;
  }
  return a;
}

double AsymptoticExpansion::evaluate(double lambda, int N) const {
  if (N > order) throw std::domain_error("AsymptoticExpansion: N exceeds stored order");
  double val = c0 * std::pow(lambda, s) - d0;
  for (int j = 1; j <= N; ++j) val += c[j - 1] * std::pow(lambda, s - j);
  return val;
}

namespace {

// Least-squares fit of residuals r_i ~ sum_{j=1..N} c_j lambda_i^{s-j} by
// normal equations in long double; columns scaled to unit norm.
std::vector<double> fit_residual_coeffs(const std::vector<double>& lambdas,
                                        const std::vector<double>& resid, double s, int N) {
  const int m = static_cast<int>(lambdas.size());
  std::vector<std::vector<long double>> X(m, std::vector<long double>(N));
  std::vector<long double> scale(N, 0.0L);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < N; ++j) X[i][j] = std::pow((long double)lambdas[i], (long double)(s - (j + 1)));
  for (int j = 0; j < N; ++j) {
    long double nrm = 0.0L;
    for (int i = 0; i < m; ++i) nrm += X[i][j] * X[i][j];
    scale[j] = std::sqrt(nrm);
    for (int i = 0; i < m; ++i) X[i][j] /= scale[j];
  }
  std::vector<std::vector<long double>> A(N, std::vector<long double>(N, 0.0L));
  std::vector<long double> b(N, 0.0L);
  for (int p = 0; p < N; ++p) {
    for (int q = 0; q < N; ++q)
      for (int i = 0; i < m; ++i) A[p][q] += X[i][p] * X[i][q];
    for (int i = 0; i < m; ++i) b[p] += X[i][p] * (long double)resid[i];
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs((double)A[r][col]) > std::abs((double)A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < N; ++r) {
      const long double f = A[r][col] / A[col][col];
      for (int q = col; q < N; ++q) A[r][q] -= f * A[col][q];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> y(N);
  for (int r = N - 1; r >= 0; --r) {
    long double v = b[r];
    for (int q = r + 1; q < N; ++q) v -= A[r][q] * y[q];
    y[r] = v / A[r][r];
  }
  std::vector<double> c(N);
  for (int j = 0; j < N; ++j) c[j] = static_cast<double>(y[j] / scale[j]);
  return c;
}

}  // namespace

AsymptoticExpansion expansion_coefficients(double s, int N, const ExpansionOptions& opt) {
  require_s(s);
  if (N < 0 || N > 6) throw std::domain_error("expansion_coefficients: require 0 <= N <= 6");
  AsymptoticExpansion out;
  out.s = s;
  out.order = N;
  out.c0 = c0_constant(s);
  out.d0 = d0_constant(s);

  // Series route: A_j from kappa = (1+z)^s e^{2z} (the lambda^{s-j-1}(lambda-1)
  // terms), B_j from (1+z)^{s-1} e^{2z}; collecting powers gives
  // c_j = A_j - A_{j-1} - B_{j-1}.
  const std::vector<double> a = kappa_taylor(s, N);
  const std::vector<double> b = kappa_taylor(s - 1.0, N);
  auto A = [&](int j) {
    return std::pow(2.0, 1.0 + s - j) / s * gamma_fn(1.0 + j - s) * a[j];
  };
  auto B = [&](int j) { return std::pow(2.0, s - j) * gamma_fn(1.0 + j - s) * b[j]; };
  out.c.resize(N);
  out.provenance.assign(N, CoeffProvenance::constructive);
  for (int j = 1; j <= N; ++j) out.c[j - 1] = A(j) - A(j - 1) - B(j - 1);

  if (opt.cross_validate && N >= 1) {
    const int n_fit = std::min(N, 2);
    std::vector<double> lambdas, resid;
    for (double lam = opt.fit_lambda_min; lam <= opt.fit_lambda_max * 1.0001; lam *= 2.0) {
      const double l1 = l1_value(lam - 1.0, s, 1, 1e-13);
      lambdas.push_back(lam);
      resid.push_back(l1 - (out.c0 * std::pow(lam, s) - out.d0));
    }
    out.c_fitted = fit_residual_coeffs(lambdas, resid, s, n_fit);
    const double tols[2] = {opt.tol_c1, opt.tol_c2};
    for (int j = 0; j < n_fit; ++j) {
      const double rel = std::abs(out.c_fitted[j] - out.c[j]) / std::abs(out.c[j]);
      if (rel > tols[j]) {
        throw consistency_error("expansion_coefficients: constructive and fitted c_" +
                                std::to_string(j + 1) + " disagree by " + std::to_string(rel));
      }
    }
  }
  return out;
}

namespace {

std::vector<SymbolSample> sample_grid_impl(double s, const std::vector<double>& vs,
                                           const std::vector<double>& xis,
                                           const AsymptoticExpansion& exp, int order, double tol,
                                           bool parallel) {
  const int nv = static_cast<int>(vs.size());
  const int nx = static_cast<int>(xis.size());
  std::vector<SymbolSample> rows(static_cast<size_t>(nv) * nx);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nx; ++j) {
      const double rho2 = xis[j] * xis[j] + 0.25 * vs[i] * vs[i];
      SymbolSample& r = rows[static_cast<size_t>(i) * nx + j];
      r.v = vs[i];
      r.xi = xis[j];
      r.lambda = 1.0 + rho2;
      r.l1 = l1_value(rho2, s, 1, tol);
      r.l2 = l2_value(rho2, s, 1, tol);
      r.expansion = exp.evaluate(r.lambda, order);
      r.residual = r.l1 - r.expansion;
    }
  }
  return rows;
}

}  // namespace

std::vector<SymbolSample> sample_symbol_grid(double s, const std::vector<double>& vs,
                                             const std::vector<double>& xis,
                                             const AsymptoticExpansion& exp, int order,
                                             double tol) {
  return sample_grid_impl(s, vs, xis, exp, order, tol, true);
}

std::vector<SymbolSample> sample_symbol_grid_serial(double s, const std::vector<double>& vs,
                                                    const std::vector<double>& xis,
                                                    const AsymptoticExpansion& exp, int order,
                                                    double tol) {
  return sample_grid_impl(s, vs, xis, exp, order, tol, false);
}

}  // namespace kacspec

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kacspec/common.hpp"
#include "kacspec/quadrature.hpp"
#include "kacspec/symbols.hpp"

using namespace kacspec;

namespace {

// Independent tau = tan^2(theta/2) oracle for the symbol at the origin:
// l1(0,0) = -2 int_0^{tan^2 pi/8} tau^{-s} (1+tau)^{s-1} d tau.
double l1_origin_oracle(double s) {
  const double taustar = 3.0 - 2.0 * std::sqrt(2.0);
  GradedOptions opt;
  opt.tol = 1e-14;
  auto g = [s](double t) { return std::pow(1.0 + t, s - 1.0); };
  return -2.0 * power_graded_integral(g, taustar, -s, opt);
}

// Quadrature oracle of the reduced origin integrand of l2 (bracket 2 - 2 sec^2 theta):
// -2 int beta tan^2 theta = -32 int_0^{u*} u^{1-2s} (1-u^2)/(1-2u^2)^2 du.
double l2_origin_oracle(double s) {
  GradedOptions opt;
  opt.tol = 1e-14;
  auto g = [](double u) {
    const double u2 = u * u;
    const double c = 1.0 - 2.0 * u2;
    return (1.0 - u2) / (c * c);
  };
  return -32.0 * power_graded_integral(g, std::sin(kPi / 8.0), 1.0 - 2.0 * s, opt);
}

// Same for d = 2: bracket at origin 4 - 2/(1+sin)^2 - 2/(1-sin)^2 = -4 sin^2 (3 - sin^2)/cos^4,
// and sin^2(theta)/u^2 = 4 (1-u^2).
double l2_origin_oracle_d2(double s) {
  GradedOptions opt;
  opt.tol = 1e-14;
  auto g = [](double u) {
    const double u2 = u * u;
    const double s2 = 4.0 * u2 * (1.0 - u2);
    const double c2 = 1.0 - s2;
    return -16.0 * (1.0 - u2) * (3.0 - s2) / (c2 * c2);
  };
  return 4.0 * power_graded_integral(g, std::sin(kPi / 8.0), 1.0 - 2.0 * s, opt);
}

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("phase point invariant") {
  PhasePoint p(1.0, 2.0);
  CHECK(p.lambda() == doctest::Approx(1.0 + 4.0 + 0.25).epsilon(1e-15));
  CHECK(p.lambda() >= 1.0);
  CHECK(PhasePoint(0.0, 0.0).lambda() == 1.0);
  CHECK_THROWS_AS(PhasePoint({1.0, 2.0}, {0.5}), std::invalid_argument);
}

TEST_CASE("mehler symbol") {
  for (double rho2 : {0.0, 0.7, 3.0})
    CHECK(mehler_symbol_rho2(0.0, rho2, 1) == 1.0);
  for (double t : {0.2, 1.0, 3.0}) {
    CHECK(mehler_symbol(t, PhasePoint(0.0, 0.0), 1) ==
          doctest::Approx(1.0 / std::cosh(0.5 * t)).epsilon(1e-14));
    CHECK(mehler_symbol(t, PhasePoint(1.0, -0.5), 2) ==
          doctest::Approx(std::exp(-2.0 * std::tanh(0.5 * t) * (0.25 + 0.25)) /
                          std::pow(std::cosh(0.5 * t), 2)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(mehler_symbol_rho2(-1.0, 0.0, 1), std::domain_error);
}

TEST_CASE("l1 at the origin against the tau-substitution oracle") {
  for (double s : {0.25, 0.5, 0.75}) {
    CHECK(l1_symbol(PhasePoint(0.0, 0.0), s) == doctest::Approx(l1_origin_oracle(s)).epsilon(1e-11));
  }
  // At s = 1/2 the antiderivative is elementary: -4 atanh(sin(pi/8)).
  CHECK(l1_symbol(PhasePoint(0.0, 0.0), 0.5) ==
        doctest::Approx(-4.0 * std::atanh(std::sin(kPi / 8.0))).epsilon(1e-12));
}

TEST_CASE("l1 depends on the phase point only through lambda") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unif(0.1, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double v = unif(rng), xi = unif(rng);
    const double rho2 = xi * xi + 0.25 * v * v;
    // Trade v for xi keeping lambda fixed.
    const double v2 = 0.5 * v;
    const double xi2 = std::sqrt(rho2 - 0.25 * v2 * v2);
    const double a = l1_symbol(PhasePoint(v, xi), 0.5, 1e-12);
    const double b = l1_symbol(PhasePoint(v2, xi2), 0.5, 1e-12);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("l1 asymptotic window |l1 - (c0 lambda^s - d0)| <= C lambda^{s-1}") {
  const double s = 0.5;
  const auto exp = expansion_coefficients(s, 1, []{ ExpansionOptions o; o.cross_validate = false; return o; }());
  const double C = 2.0 * std::abs(exp.c[0]) + 1.0;
  for (double lam : {1e2, 1e3, 1e4}) {
    const double l1 = l1_value(lam - 1.0, s, 1, 1e-13);
    const double main = exp.c0 * std::pow(lam, s) - exp.d0;
    CHECK(std::abs(l1 - main) <= C * std::pow(lam, s - 1.0));
  }
}

TEST_CASE("l2 at the origin, evenness, Gaussian decay") {
  for (double s : {0.25, 0.5, 0.75})
    CHECK(l2_symbol(PhasePoint(0.0, 0.0), s) == doctest::Approx(l2_origin_oracle(s)).epsilon(1e-11));

  // Even in v and xi separately.
  for (double s : {0.5}) {
    const double a = l2_symbol(PhasePoint(1.3, -0.7), s);
    CHECK(a == l2_symbol(PhasePoint(-1.3, -0.7), s));
    CHECK(a == l2_symbol(PhasePoint(1.3, 0.7), s));
  }

  // sup |l2| e^{rho2/3} finite, attained near the origin.
  for (double s : {0.25, 0.5, 0.75}) {
    double w_max = 0.0, w_center = 0.0;
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        const double v = -8.0 + 16.0 * i / 40.0;
        const double xi = -8.0 + 16.0 * j / 40.0;
        const double rho2 = xi * xi + 0.25 * v * v;
        const double w = std::abs(l2_value(rho2, s, 1, 1e-12)) * std::exp(rho2 / 3.0);
        w_max = std::max(w_max, w);
        if (std::abs(v) <= 1.0 && std::abs(xi) <= 1.0) w_center = std::max(w_center, w);
      }
    CHECK(std::isfinite(w_max));
    CHECK(w_max <= 2.0 * w_center);
  }
}

TEST_CASE("d-dimensional symbols reduce to the Kac case at d = 1") {
  for (double rho2 : {0.0, 0.9, 7.7}) {
    CHECK(std::abs(l1_value(rho2, 0.5, 1) - l1_symbol(PhasePoint(2.0 * std::sqrt(rho2), 0.0), 0.5)) <= 1e-12);
    const PhasePoint p(0.0, std::sqrt(rho2));
    CHECK(std::abs(l1_symbol_d(p, 0.5, 1) - l1_symbol(p, 0.5)) <= 1e-14);
    CHECK(std::abs(l2_symbol_d(p, 0.5, 1) - l2_symbol(p, 0.5)) <= 1e-14);
  }
}

TEST_CASE("l2_d at the origin for d = 2 against a direct quadrature oracle") {
  for (double s : {0.25, 0.5}) {
    CHECK(l2_symbol_d(PhasePoint({0.0, 0.0}, {0.0, 0.0}), s, 2) ==
          doctest::Approx(l2_origin_oracle_d2(s)).epsilon(1e-10));
  }
}

TEST_CASE("leading constants of l1_d are dimension independent") {
  const double s = 0.5;
  const double c0 = c0_constant(s), d0 = d0_constant(s);
  for (int d : {1, 2, 3}) {
    const double lam1 = 2.5e5, lam2 = 1e6;
    const double a1 = l1_value(lam1 - 1.0, s, d, 1e-13);
    const double a2 = l1_value(lam2 - 1.0, s, d, 1e-13);
    const double c0_hat = (a2 - a1) / (std::pow(lam2, s) - std::pow(lam1, s));
    const double d0_hat = c0_hat * std::pow(lam2, s) - a2;
    CHECK(std::abs(c0_hat - c0) / c0 <= 0.02);
    CHECK(std::abs(d0_hat - d0) / d0 <= 0.02);
  }
}

TEST_CASE("full symbol = l1 + l2, real, negative at origin, growing like c0 lambda^s") {
  const double s = 0.5;
  const PhasePoint origin(0.0, 0.0);
  CHECK(full_symbol(origin, s) ==
        doctest::Approx(l1_symbol(origin, s) + l2_symbol(origin, s)).epsilon(1e-13));
  CHECK(full_symbol(origin, s) < 0.0);
  const PhasePoint far(0.0, 100.0);
  const double big = full_symbol(far, s);
  CHECK(big > 0.5 * c0_constant(s) * std::pow(far.lambda(), s));
  CHECK(std::isfinite(big));
}

TEST_CASE("kappa Taylor coefficients") {
  const double s = 0.37;
  auto a = kappa_taylor(s, 3);
  CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(s + 2.0).epsilon(1e-14));
  // j = 2: binom(s,2) + 2 binom(s,1) + 2
  CHECK(a[2] == doctest::Approx(0.5 * s * (s - 1.0) + 2.0 * s + 2.0).epsilon(1e-13));
}

TEST_CASE("expansion coefficients: constructive route validated by the fit") {
  for (double s : {0.25, 0.5, 0.75}) {
    const auto exp = expansion_coefficients(s, 2);  // throws consistency_error on disagreement
    CHECK(exp.c0 == doctest::Approx(c0_constant(s)).epsilon(1e-14));
    CHECK(exp.d0 == doctest::Approx(d0_constant(s)).epsilon(1e-14));
    REQUIRE(exp.c_fitted.size() >= 1);
    CHECK(std::abs(exp.c_fitted[0] - exp.c[0]) / std::abs(exp.c[0]) <= 0.01);
    CHECK(std::abs(exp.c_fitted[1] - exp.c[1]) / std::abs(exp.c[1]) <= 0.05);
    CHECK(exp.provenance[0] == CoeffProvenance::constructive);
  }
  CHECK_THROWS_AS(expansion_coefficients(0.5, 7), std::domain_error);
}

TEST_CASE("residual after order N decays like lambda^{s-N-1}") {
  const double s = 0.5;
  const auto exp = expansion_coefficients(s, 3, []{ ExpansionOptions o; o.cross_validate = false; return o; }());
  for (int N : {0, 1, 2}) {
    std::vector<double> xs, ys;
    const double lam_max = (N == 2) ? 3.2e3 : 1e6;
    for (double lam = 1e2; lam <= lam_max; lam *= 2.0) {
      const double r = l1_value(lam - 1.0, s, 1, 1e-14) - exp.evaluate(lam, N);
      xs.push_back(std::log(lam));
      ys.push_back(std::log(std::abs(r)));
    }
    const double slope = slope_fit(xs, ys);
    const double target = s - N - 1.0;
    CHECK(std::abs(slope - target) <= (N == 2 ? 0.2 : 0.15));
  }
}

TEST_CASE("grid sweep and its serial reference agree bitwise") {
  std::vector<double> vs{-2.0, 0.0, 1.5}, xis{-1.0, 0.5, 2.0};
  const auto exp = expansion_coefficients(0.5, 1, []{ ExpansionOptions o; o.cross_validate = false; return o; }());
  const auto a = sample_symbol_grid(0.5, vs, xis, exp, 1);
  const auto b = sample_symbol_grid_serial(0.5, vs, xis, exp, 1);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].l1 == b[i].l1);
    CHECK(a[i].l2 == b[i].l2);
    CHECK(a[i].residual == b[i].residual);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "kacspec/common.hpp"
#include "kacspec/grid.hpp"
#include "kacspec/hermite.hpp"
#include "kacspec/quadrature.hpp"
#include "kacspec/special.hpp"

using namespace kacspec;

namespace {

// Polynomial arithmetic over monomial coefficients, enough to realize the
// creation-operator definition psi_n = (n!)^{-1/2} (x/2 - d/dx)^n psi_0
// symbolically: psi_n = q_n(x) psi_0 with q_{n+1} = (x q_n - q_n')/sqrt(n+1).
std::vector<double> creation_poly(int n) {
  std::vector<double> q{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (size_t i = 0; i < q.size(); ++i) next[i + 1] += q[i];          // x * q
    for (size_t i = 1; i < q.size(); ++i) next[i - 1] -= i * q[i];      // - q'
    for (double& c : next) c /= std::sqrt(k + 1.0);
    q = std::move(next);
  }
  return q;
}

double eval_poly(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

}  // namespace

TEST_CASE("gamma function basics") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  // Reference-table value computed before the build.
  CHECK(gamma_fn(0.75) == doctest::Approx(1.2254167024651776).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("gamma against the standard library and functional identities") {
  for (double x : {0.1, 0.25, 0.33, 0.5, 0.99, 1.5, 2.75, 4.2, 7.9, 12.3}) {
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    // Recurrence Gamma(x+1) = x Gamma(x).
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
  }
  // Reflection at a point where both sides are regular.
  const double x = 0.3;
  CHECK(gamma_fn(x) * gamma_fn(1.0 - x) ==
        doctest::Approx(kPi / std::sin(kPi * x)).epsilon(1e-12));
}

TEST_CASE("hermite psi values and parity") {
  CHECK(hermite_psi(1, 0.0) == 0.0);
  CHECK(hermite_psi(0, 0.0) == doctest::Approx(std::pow(2.0 * kPi, -0.25)).epsilon(1e-14));
  for (int n : {0, 1, 2, 3, 7, 12}) {
    for (double x : {0.3, 1.7, 4.4}) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(hermite_psi(n, -x) == doctest::Approx(sign * hermite_psi(n, x)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(hermite_psi(kHermiteIndexLimit + 1, 0.0), capability_error);
}

TEST_CASE("recurrence matches the creation-operator definition for n <= 6") {
  for (int n = 0; n <= 6; ++n) {
    auto q = creation_poly(n);
    for (double x : {0.0, 1.0, 2.5}) {
      const double expected = eval_poly(q, x) * maxwellian_sqrt(x);
      const double got = hermite_psi(n, x);
      if (expected == 0.0) {
        CHECK(std::abs(got) < 1e-15);
      } else {
        CHECK(got == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("orthonormality matrix over Gauss-Legendre panels") {
  // G_{mn} = int psi_m psi_n, m, n <= 60; ||G - I||_max <= 1e-8.
  const int N = 60;
  const int panels = 40, nodes = 20;
  const double L = 2.0 * std::sqrt(N + 0.5) + 8.0;
  std::vector<std::vector<double>> G(N + 1, std::vector<double>(N + 1, 0.0));
  const GaussLegendre& rule = gauss_legendre(nodes);
  std::vector<double> row(N + 1);
  const double w = 2.0 * L / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = -L + p * w;
    for (int q = 0; q < nodes; ++q) {
      const double x = a + 0.5 * w * (1.0 + rule.nodes[q]);
      const double wt = 0.5 * w * rule.weights[q];
      hermite_psi_row(N, x, row.data());
      for (int m = 0; m <= N; ++m)
        for (int n = m; n <= N; ++n) G[m][n] += wt * row[m] * row[n];
    }
  }
  double dev = 0.0;
  for (int m = 0; m <= N; ++m)
    for (int n = m; n <= N; ++n) dev = std::max(dev, std::abs(G[m][n] - (m == n ? 1.0 : 0.0)));
  CHECK(dev <= 1e-8);
}

TEST_CASE("psi_3 is normalized (quadrature)") {
  auto f = [](double x) {
    const double p = hermite_psi(3, x);
    return p * p;
  };
  CHECK(integrate_panels(f, -18.0, 18.0, 24, 20) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("harmonic oscillator eigenrelation by second differences") {
  // -psi'' + (x^2/4) psi = (n + 1/2) psi within O(h^2) on the grid.
  const double h = 1e-3;
  for (int n : {0, 1, 4, 9}) {
    for (double x : {0.2, 1.1, 3.7}) {
      const double pm = hermite_psi(n, x - h), p0 = hermite_psi(n, x), pp = hermite_psi(n, x + h);
      const double lap = (pp - 2.0 * p0 + pm) / (h * h);
      const double lhs = -lap + 0.25 * x * x * p0;
      CHECK(lhs == doctest::Approx((n + 0.5) * p0).epsilon(1e-5));
    }
  }
}

TEST_CASE("hermite transform round trip and Parseval") {
  HermiteBasis basis{24};
  Grid g = grid_for_basis(basis.max_index);
  // f = psi_3 -> unit vector e_3.
  GridFunction f(g);
  for (int i = 0; i < g.n; ++i) f.values[i] = hermite_psi(3, g.x(i));
  auto c = hermite_transform(f, basis);
  for (int n = 0; n <= basis.max_index; ++n)
    CHECK(std::abs(c.c[n] - (n == 3 ? 1.0 : 0.0)) < 1e-10);

  // f = mu^{1/2} -> e_0.
  for (int i = 0; i < g.n; ++i) f.values[i] = maxwellian_sqrt(g.x(i));
  c = hermite_transform(f, basis);
  CHECK(std::abs(c.c[0] - 1.0) < 1e-10);
  for (int n = 1; n <= basis.max_index; ++n) CHECK(std::abs(c.c[n]) < 1e-10);

  // Random band-limited f: round trip and Parseval within 1e-8.
  std::mt19937 rng(1234);
  std::normal_distribution<double> gauss(0.0, 1.0);
  HermiteCoeffs in;
  in.c.resize(basis.max_index + 1);
  for (auto& v : in.c) v = gauss(rng);
  GridFunction synth = hermite_synthesize(in, g);
  long double norm_grid = 0.0L;
  for (double v : synth.values) norm_grid += (long double)v * v;
  norm_grid *= g.h();
  auto back = hermite_transform(synth, basis);
  double dev = 0.0;
  for (int n = 0; n <= basis.max_index; ++n) dev = std::max(dev, std::abs(back.c[n] - in.c[n]));
  CHECK(dev < 1e-8);
  CHECK(static_cast<double>(norm_grid) == doctest::Approx(in.norm2()).epsilon(1e-8));

  // Insufficient grid -> accuracy error with diagnostic.
  Grid tiny{6.0, 128};
  GridFunction bad(tiny);
  CHECK_THROWS_AS(hermite_transform(bad, HermiteBasis{40}), accuracy_error);
}

TEST_CASE("fourier grid reproduces the Gaussian transform law") {
  Grid g{18.0, 1024};
  GridFunction f(g);
  // f = e^{-v^2/4} -> sqrt(4 pi) e^{-xi^2}  (alpha = 1/2 case of the law).
  for (int i = 0; i < g.n; ++i) f.values[i] = std::exp(-0.25 * g.x(i) * g.x(i));
  auto fh = fourier_grid(f);
  const Grid cg = fh.grid;
  for (int k = 0; k < cg.n; ++k) {
    const double xi = cg.x(k);
    if (std::abs(xi) > 6.0) continue;
    const double expect = std::sqrt(4.0 * kPi) * std::exp(-xi * xi);
    CHECK(std::abs(fh.values[k].real() - expect) < 1e-8);
    CHECK(std::abs(fh.values[k].imag()) < 1e-10);
  }

  // Even input -> even output, index-exact.
  for (int k = 1; k < cg.n; ++k) {
    CHECK(std::abs(fh.values[k].real() - fh.values[cg.n - k].real()) < 1e-12);
  }
}

TEST_CASE("fourier transform of psi_n is sqrt(4 pi) (-i)^n psi_n(2 xi)") {
  // Dilation factor confirmed against a direct quadrature oracle for n <= 4
  // before the grid transform is trusted.
  for (int n = 0; n <= 4; ++n) {
    for (double xi : {0.0, 0.4, 1.3}) {
      // Oracle: direct quadrature of int psi_n(v) e^{-i v xi} dv.
      auto fre = [n, xi](double v) { return hermite_psi(n, v) * std::cos(v * xi); };
      auto fim = [n, xi](double v) { return -hermite_psi(n, v) * std::sin(v * xi); };
      const std::complex<double> oracle(integrate_panels(fre, -20.0, 20.0, 32, 20),
                                        integrate_panels(fim, -20.0, 20.0, 32, 20));
      const std::complex<double> mi(0.0, -1.0);
      const std::complex<double> expect =
          std::sqrt(4.0 * kPi) * std::pow(mi, n) * hermite_psi(n, 2.0 * xi);
      CHECK(std::abs(oracle - expect) < 1e-10);
    }
    // Grid transform agrees with the law.
    Grid g{20.0, 2048};
    GridFunction f(g);
    for (int i = 0; i < g.n; ++i) f.values[i] = hermite_psi(n, g.x(i));
    auto fh = fourier_grid(f);
    for (int k = 0; k < fh.grid.n; ++k) {
      const double xi = fh.grid.x(k);
      if (std::abs(xi) > 4.0) continue;
      const std::complex<double> mi(0.0, -1.0);
      const std::complex<double> expect =
          std::sqrt(4.0 * kPi) * std::pow(mi, n) * hermite_psi(n, 2.0 * xi);
      CHECK(std::abs(fh.values[k] - expect) < 1e-8);
    }
  }
}

TEST_CASE("fourier round trip and aliasing guard") {
  Grid g{18.0, 1024};
  GridFunction f(g);
  for (int i = 0; i < g.n; ++i)
    f.values[i] = std::exp(-0.3 * g.x(i) * g.x(i)) * std::cos(1.7 * g.x(i));
  check_aliasing(f);
  auto fh = fourier_grid(f);
  auto back = inverse_fourier_grid(fh);
  for (int i = 0; i < g.n; ++i) {
    CHECK(std::abs(back.values[i].real() - f.values[i]) < 1e-12);
    CHECK(std::abs(back.values[i].imag()) < 1e-12);
  }

  GridFunction wide(Grid{3.0, 64});
  for (int i = 0; i < 64; ++i) wide.values[i] = 1.0;  // no decay at the edge
  CHECK_THROWS_AS(check_aliasing(wide), accuracy_error);
}

#include "kacspec/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kacspec/common.hpp"
#include "kacspec/quadrature.hpp"
#include "kacspec/singular.hpp"
#include "kacspec/special.hpp"

namespace kacspec {

namespace {

void require_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("spectrum: s must lie in (0,1)");
}

const double kTanPi8Sq = 3.0 - 2.0 * std::sqrt(2.0);  // tan^2(pi/8)

}  // namespace

double c0_constant(double s) {
  require_s(s);
  return std::pow(2.0, 1.0 + s) * gamma_fn(1.0 - s) / s;
}

double d0_constant(double s) {
  require_s(s);
  return 2.0 / (s * std::pow(std::sin(kPi / 8.0), 2.0 * s));
}

double d0_integral_form(double s) {
  require_s(s);
  const double boundary =
      2.0 * std::pow(1.0 + kTanPi8Sq, s - 1.0) / (s * std::pow(kTanPi8Sq, s));
  auto g = [s](double t) { return std::pow(1.0 + t, s - 2.0); };
  GradedOptions opt;
  opt.tol = 1e-14;
  const double tail = power_graded_integral(g, kTanPi8Sq, -s, opt);
  return boundary + 2.0 * (1.0 - s) / s * tail;
}

double lambda_prime_angular(int k, double s, double tol) {
  require_s(s);
  if (k < 0) throw std::domain_error("lambda_prime: k must be >= 0");
  if (k == 0) return 0.0;
  // 1 - cos^k(theta) = -expm1(k log1p(-2u^2)) with u = sin(theta/2): no
  // cancellation near the singularity.
  AngularTest t;
  t.phi0 = 0.0;
  t.delta_u = [k](double u) { return -std::expm1(k * std::log1p(-2.0 * u * u)); };
  FpOptions opt;
  opt.tol = tol;
  return fp_integrate(t, s, opt);
}

double lambda_prime_substitution(int k, double s, double tol) {
  require_s(s);
  if (k < 0) throw std::domain_error("lambda_prime: k must be >= 0");
  if (k == 0) return 0.0;
  const double vmax = 1.0 - std::pow(2.0, -0.5);
  auto g = [k](double v) { return -std::expm1(k * std::log1p(-v)) / v; };
  GradedOptions opt;
  opt.tol = tol;
  opt.max_levels = 60;  // resolves the 1/k transition scale even at k ~ 1e6
  return std::pow(2.0, 1.0 + s) * power_graded_integral(g, vmax, -s, opt);
}

double lambda_prime(int k, double s, double tol) {
  // The angular integrand (1 - cos^k) needs panels below the 1/sqrt(k) scale;
  // past k = 64 the substitution form is better conditioned.
  return (k > 64) ? lambda_prime_substitution(k, s, tol) : lambda_prime_angular(k, s, tol);
}

double lambda_doubleprime(int l, double s, double tol) {
  require_s(s);
  if (l < 1) throw std::domain_error("lambda_doubleprime: l must be >= 1");
  // sin^{2l}(theta) = (4 u^2 (1-u^2))^l, exactly representable in u.
  AngularTest t;
  t.phi0 = 0.0;
  t.delta_u = [l](double u) {
    const double b = 4.0 * u * u * (1.0 - u * u);
    return std::pow(b, l);
  };
  FpOptions opt;
  opt.tol = tol;
  return fp_integrate(t, s, opt);
}

double lambda_doubleprime_bound(int l, double s) {
  require_s(s);
  return std::pow(4.0, 2.0 * s) * kPi / (1.0 - s) * std::exp(-2.0 * l * std::log(4.0 / kPi));
}

double kac_eigenvalue(int k, double s, double tol) {
  if (k < 0) throw std::domain_error("kac_eigenvalue: k must be >= 0");
  if (k == 0) return 0.0;
  if (k % 2 == 1) return lambda_prime(k, s, tol);
  return lambda_prime(k, s, tol) - lambda_doubleprime(k / 2, s, tol);
}

RadialEigenvalue boltzmann_radial_eigenvalue(int k, double s, int d, double tol) {
  if (k < 1) throw std::domain_error("boltzmann_radial_eigenvalue: k must be >= 1");
  if (d < 2) throw std::domain_error("boltzmann_radial_eigenvalue: d must be >= 2");
  RadialEigenvalue out;
  out.value = kac_eigenvalue(2 * k, s, tol);
  // dim E_{2k} = C(2k + d - 1, d - 1)
  std::uint64_t mult = 1;
  for (int i = 1; i <= d - 1; ++i) mult = mult * (2 * k + i) / i;
  out.multiplicity = mult;
  return out;
}

namespace {

KacSpectrum build_spectrum_impl(int K, double s, double tol, bool parallel) {
  if (K < 0) throw std::domain_error("build_kac_spectrum: K must be >= 0");
  require_s(s);
  KacSpectrum sp;
  sp.s = s;
  sp.constants.c0 = c0_constant(s);
  sp.constants.d0 = d0_constant(s);
  sp.lambda_p.assign(K + 1, 0.0);
  sp.lambda_pp.assign(K / 2 + 1, 0.0);
  sp.lambda.assign(K + 1, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
  for (int k = 1; k <= K; ++k) sp.lambda_p[k] = lambda_prime(k, s, tol);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
  for (int l = 1; l <= K / 2; ++l) sp.lambda_pp[l] = lambda_doubleprime(l, s, tol);

  for (int k = 1; k <= K; ++k) {
    sp.lambda[k] = (k % 2 == 1) ? sp.lambda_p[k] : sp.lambda_p[k] - sp.lambda_pp[k / 2];
  }
  return sp;
}

}  // namespace

KacSpectrum build_kac_spectrum(int K, double s, double tol) {
  return build_spectrum_impl(K, s, tol, true);
}

KacSpectrum build_kac_spectrum_serial(int K, double s, double tol) {
  return build_spectrum_impl(K, s, tol, false);
}

std::vector<DiagnosticRow> asymptotic_diagnostic(int K, double s, double tol) {
  if (K < 100) throw std::domain_error("asymptotic_diagnostic: K must be >= 100");
  require_s(s);
  const double c0 = c0_constant(s);
  // Dense rows up to 100, then multiplicative spacing out to K.
  std::vector<int> ks;
  for (int k = 1; k <= std::min(K, 100); ++k) ks.push_back(k);
  double kf = 100.0;
  while (true) {
    kf *= 1.1;
    int k = static_cast<int>(kf);
    if (k >= K) break;
    if (k > ks.back()) ks.push_back(k);
  }
  if (ks.back() != K) ks.push_back(K);

  std::vector<DiagnosticRow> rows(ks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int i = 0; i < static_cast<int>(ks.size()); ++i) {
    const int k = ks[i];
    const double lam = kac_eigenvalue(k, s, tol);
    const double ks_pow = std::pow(static_cast<double>(k), s);
    rows[i] = DiagnosticRow{k, lam, lam / ks_pow, lam - c0 * ks_pow};
  }
  return rows;
}

}  // namespace kacspec

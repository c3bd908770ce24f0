#pragma once

#include <cstdint>
#include <vector>

namespace kacspec {

// Asymptotic constants of the eigenvalue growth lambda_k ~ c0 k^s and of the
// symbol expansion c0 lambda^s - d0.
struct AsymptoticConstants {
  double c0 = 0.0;
  double d0 = 0.0;
};

// c0(s) = 2^{1+s} Gamma(1-s) / s
double c0_constant(double s);
// d0(s) = 2 / (s sin^{2s}(pi/8)) = 2^{1+s} (2+sqrt2)^s / s
double d0_constant(double s);
// Independent route: boundary term plus the t-integral the closed form collapses.
double d0_integral_form(double s);

// lambda'_k = integral beta (1 - cos^k theta); angular finite-part route.
double lambda_prime_angular(int k, double s, double tol = 1e-12);
// Same quantity through the substitution v = 2 sin^2(theta/2); preferred for large k.
double lambda_prime_substitution(int k, double s, double tol = 1e-12);
// Dispatches between the two routes (substitution for k > 64).
double lambda_prime(int k, double s, double tol = 1e-12);

// lambda''_l = integral beta sin^{2l} theta, l >= 1.
double lambda_doubleprime(int l, double s, double tol = 1e-12);
// Exponential bound (4^{2s} pi / (1-s)) e^{-2 l ln(4/pi)} on lambda''_l.
double lambda_doubleprime_bound(int l, double s);

// Eigenvalues of the linearized Kac operator: 0 on the collisional invariants
// k in {0, 2}, lambda'_k for odd k, lambda'_{2m} - lambda''_m for even k = 2m.
double kac_eigenvalue(int k, double s, double tol = 1e-12);

// Radially symmetric Boltzmann eigenvalue on the 2k-th Hermite level; the
// value is dimension independent, d only sets the multiplicity metadata.
struct RadialEigenvalue {
  double value = 0.0;
  std::uint64_t multiplicity = 0;  // dim E_{2k} = C(2k+d-1, d-1)
};
RadialEigenvalue boltzmann_radial_eigenvalue(int k, double s, int d, double tol = 1e-12);

// Eigenvalue table with parity bookkeeping.
struct KacSpectrum {
  double s = 0.5;
  std::vector<double> lambda;        // lambda_0..lambda_K
  std::vector<double> lambda_p;      // lambda'_0..lambda'_K
  std::vector<double> lambda_pp;     // lambda''_l for l = 0..K/2 (entry 0 unused)
  AsymptoticConstants constants;
};

// OpenMP-parallel fill over k, and the serial reference kept for testing.
KacSpectrum build_kac_spectrum(int K, double s, double tol = 1e-12);
KacSpectrum build_kac_spectrum_serial(int K, double s, double tol = 1e-12);

struct DiagnosticRow {
  int k;
  double lambda;
  double ratio;  // lambda_k / k^s
  double gap;    // lambda_k - c0 k^s
};

// Eigenvalue growth diagnostic for CLI consumption; K >= 100 expected.
std::vector<DiagnosticRow> asymptotic_diagnostic(int K, double s, double tol = 1e-12);

}  // namespace kacspec

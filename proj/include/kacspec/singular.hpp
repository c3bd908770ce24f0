#pragma once

#include <functional>

#include "kacspec/quadrature.hpp"

namespace kacspec {

// Non-cutoff angular cross section beta(theta) = |cos(theta/2)| / |sin(theta/2)|^{1+2s}
// on |theta| <= pi/4, singularity exponent s in (0,1).
struct CrossSection {
  double s = 0.5;

  explicit CrossSection(double s_) : s(s_) { validate(); }
  CrossSection() = default;
  void validate() const;
};

// beta(theta); throws std::domain_error at theta = 0 (non-integrable point).
double beta_eval(double theta, double s);

// Angular test function for finite-part integration. phi must be C^{1,1} on
// [-pi/4, pi/4]; phi(0) is supplied separately so the subtracted integrand
// phi_even(theta) - phi(0) vanishes to second order. When the caller can
// evaluate that difference without cancellation it should provide delta_u,
// parametrized by u = sin(theta/2) in (0, sin(pi/8)]; deep panel grading near
// the singularity is only noise-free through that route.
struct AngularTest {
  std::function<double(double)> phi;      // full phi(theta)
  double phi0 = 0.0;                      // phi(0)
  std::function<double(double)> delta_u;  // optional: even part of phi(theta(u)) - phi(0)
  double second_derivative_bound = 0.0;   // optional, 0 = unknown
};

struct FpOptions {
  double tol = 1e-10;
  int max_levels = 40;
  int nodes = 16;
  int fixed_levels = -1;  // >0: fixed (xi-independent) rule, no adaptivity
};

// Finite part of beta against phi:
//   integral over |theta| <= pi/4 of beta(theta) (phi_even(theta) - phi(0)),
// computed after the substitution u = sin(theta/2) which turns the measure
// into 4 u^{-1-2s} du and removes the singularity analytically.
double fp_integrate(const AngularTest& phi, double s, const FpOptions& opt = FpOptions());

inline double fp_integrate(const AngularTest& phi, double s, double tol) {
  FpOptions o;
  o.tol = tol;
  return fp_integrate(phi, s, o);
}

// Upper endpoint of the u-substitution, sin(pi/8).
double fp_u_max();

}  // namespace kacspec

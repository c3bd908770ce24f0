#pragma once

#include <vector>

#include "kacspec/grid.hpp"
#include "kacspec/hermite.hpp"

namespace kacspec {

// Fourier-side profile on a symmetric xi grid (the conjugate of the module's
// velocity grid). Complex so odd velocity content is representable.
struct FourierProfile {
  Grid grid;
  std::vector<cdouble> values;

  FourierProfile() = default;
  explicit FourierProfile(const Grid& g) : grid(g), values(g.n, cdouble(0.0, 0.0)) {}
};

struct KacApplyOptions {
  // Fixed (xi-independent) quadrature so the rule error is smooth in xi and
  // stays harmless under the inverse transform.
  int levels = 28;
  int nodes = 16;
  double w_out = -1.0;  // output support radius; <0 = auto from the f profile
};

// Heavily zero-padded velocity grid: the conjugate spacing ~0.0096 is what the
// cubic interpolation of profiles at xi cos(theta) needs.
Grid bobylev_velocity_grid();

// Even part of a profile, index-exact.
FourierProfile even_part(const FourierProfile& p);

// Fourier side of the Kac operator:
//   out(xi) = fp integral beta(theta) [ geven(xi sin t) fhat(xi cos t) - ghat(0) fhat(xi) ] dt.
// Profiles must share a grid; interpolation is cubic with anchored differences
// so the subtracted integrand vanishes cleanly at theta = 0.
FourierProfile kac_fourier_apply(const FourierProfile& g_hat, const FourierProfile& f_hat,
                                 double s, const KacApplyOptions& opt = KacApplyOptions());

// Radial d-dimensional reduction: the same one-dimensional formula acting on
// even radial profiles in |xi|; d >= 1 is metadata (the reduction removes it).
// Throws std::domain_error if the inputs are not even.
FourierProfile boltzmann_radial_fourier_apply(const FourierProfile& g_hat_profile,
                                              const FourierProfile& f_hat_profile, double s,
                                              int d,
                                              const KacApplyOptions& opt = KacApplyOptions());

struct LinearizedApplyReport {
  HermiteCoeffs coeffs;
  double max_window = 0.0;        // largest velocity window used in the projection
  double window_tail_bound = 0.0; // bound on the mass the per-mode mask discards
  double max_imag = 0.0;          // imaginary residue of the velocity-space result
};

// Hermite-side application of the full linearized operator, computed entirely
// through the Fourier formulas: h -> -mu^{-1/2} [K(mu, mu^{1/2} h) + K(mu^{1/2} h, mu)]
// projected back onto the basis. The mu^{-1/2} weight is folded into the
// projection polynomials with per-mode velocity windows, which is where the
// masked-tail guard lives. K <= 40 supported.
HermiteCoeffs linearized_kac_apply(const HermiteCoeffs& h, double s,
                                   const KacApplyOptions& opt = KacApplyOptions());
LinearizedApplyReport linearized_kac_apply_report(const HermiteCoeffs& h, double s,
                                                  const KacApplyOptions& opt = KacApplyOptions());

// Velocity window radius for projecting mode j: smallest radius past the
// classical turning point where the discarded psi_j^2 mass is below the
// target. Wider windows amplify the transform noise floor through the
// mu^{-1/2} weights, so the target balances truncation against noise.
double projection_window(int j);
double projection_window(int j, double tail_target);

}  // namespace kacspec

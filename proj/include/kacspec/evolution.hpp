#pragma once

#include <vector>

#include "kacspec/hermite.hpp"
#include "kacspec/spectrum.hpp"

namespace kacspec {

// State of the diagonal semigroup e^{-tK}: Hermite coefficients plus time.
struct EvolutionState {
  HermiteCoeffs coeffs;
  double t = 0.0;
};

// Exact per-mode decay c_k <- c_k e^{-dt lambda_k}; no time-stepping error.
EvolutionState semigroup_evolve(const EvolutionState& state, double dt,
                                const KacSpectrum& spectrum);

// Least-squares slope of log|c_k(t)| along a trajectory; equals -lambda_k.
// Throws std::domain_error if the mode vanishes anywhere on the trajectory.
double decay_rate_fit(const std::vector<EvolutionState>& trajectory, int mode);

struct CoercivityReport {
  double dirichlet = 0.0;     // sum lambda_k |c_k|^2
  double sobolev_norm = 0.0;  // sum_{k not in {0,2}} (k+1/2)^s |c_k|^2
  double c_min = 0.0;         // min over active modes of lambda_k/(k+1/2)^s
  double c_max = 0.0;
  bool sandwich_ok = false;   // c_min*sobolev <= dirichlet <= c_max*sobolev
};

// Two-sided comparison of the Dirichlet form with the H^{s/2} norm of the
// (1-P) part; P projects onto modes 0 and 2 (mass and energy).
CoercivityReport coercivity_check(const HermiteCoeffs& f, const KacSpectrum& spectrum);

}  // namespace kacspec

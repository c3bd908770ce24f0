#include "kacspec/evolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kacspec {

EvolutionState semigroup_evolve(const EvolutionState& state, double dt,
                                const KacSpectrum& spectrum) {
  if (dt < 0.0) throw std::domain_error("semigroup_evolve: dt must be >= 0");
  if (state.coeffs.size() > static_cast<int>(spectrum.lambda.size()))
    throw std::invalid_argument("semigroup_evolve: spectrum table shorter than coefficients");
  EvolutionState out = state;
  out.t += dt;
  for (int k = 0; k < state.coeffs.size(); ++k)
    out.coeffs.c[k] = state.coeffs.c[k] * std::exp(-dt * spectrum.lambda[k]);
  return out;
}

double decay_rate_fit(const std::vector<EvolutionState>& trajectory, int mode) {
  if (trajectory.size() < 3)
    throw std::invalid_argument("decay_rate_fit: need at least 3 time samples");
  long double st = 0.0L, sy = 0.0L, stt = 0.0L, sty = 0.0L;
  const int n = static_cast<int>(trajectory.size());
  for (const auto& state : trajectory) {
    if (mode >= state.coeffs.size() || state.coeffs.c[mode] == 0.0)
      throw std::domain_error("decay_rate_fit: mode is zero along the trajectory");
    const long double t = state.t;
    const long double y = std::log(std::abs(state.coeffs.c[mode]));
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const long double denom = n * stt - st * st;
  if (denom == 0.0L) throw std::invalid_argument("decay_rate_fit: degenerate time samples");
  return static_cast<double>((n * sty - st * sy) / denom);
}

CoercivityReport coercivity_check(const HermiteCoeffs& f, const KacSpectrum& spectrum) {
  const int K = f.size() - 1;
  if (K + 1 > static_cast<int>(spectrum.lambda.size()))
    throw std::invalid_argument("coercivity_check: spectrum table shorter than coefficients");
  CoercivityReport rep;
  rep.c_min = std::numeric_limits<double>::infinity();
  rep.c_max = 0.0;
  long double dir = 0.0L, sob = 0.0L;
  for (int k = 0; k <= K; ++k) {
    const double ck2 = f.c[k] * f.c[k];
    dir += (long double)spectrum.lambda[k] * ck2;
    if (k == 0 || k == 2) continue;
    const double weight = std::pow(k + 0.5, spectrum.s);
    sob += (long double)weight * ck2;
    const double ratio = spectrum.lambda[k] / weight;
    rep.c_min = std::min(rep.c_min, ratio);
    rep.c_max = std::max(rep.c_max, ratio);
  }
  rep.dirichlet = static_cast<double>(dir);
  rep.sobolev_norm = static_cast<double>(sob);
  if (!std::isfinite(rep.c_min)) rep.c_min = 0.0;
  const double tol = 1e-12 * (std::abs(rep.dirichlet) + 1.0);
  rep.sandwich_ok = rep.c_min * rep.sobolev_norm <= rep.dirichlet + tol &&
                    rep.dirichlet <= rep.c_max * rep.sobolev_norm + tol;
  return rep;
}

}  // namespace kacspec

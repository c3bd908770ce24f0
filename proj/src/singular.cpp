#include "kacspec/singular.hpp"

#include <cmath>
#include <stdexcept>

#include "kacspec/common.hpp"

namespace kacspec {

void CrossSection::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("CrossSection: s must lie in (0,1)");
}

double beta_eval(double theta, double s) {
  (void)CrossSection{s};
  if (theta == 0.0) throw std::domain_error("beta_eval: singular at theta = 0");
  if (std::abs(theta) > kPi / 4.0 + 1e-14)
    throw std::domain_error("beta_eval: |theta| must not exceed pi/4");
  const double half = 0.5 * theta;
  return std::abs(std::cos(half)) / std::pow(std::abs(std::sin(half)), 1.0 + 2.0 * s);
}

double fp_u_max() { return std::sin(kPi / 8.0); }

double fp_integrate(const AngularTest& phi, double s, const FpOptions& opt) {
  (void)CrossSection{s};
  const double umax = fp_u_max();

  std::function<double(double)> g;
  if (phi.delta_u) {
    g = [&phi](double u) { return phi.delta_u(u) / (u * u); };
  } else {
    if (!phi.phi) throw std::invalid_argument("fp_integrate: no evaluator provided");
    g = [&phi](double u) {
      const double theta = 2.0 * std::asin(u);
      const double even = 0.5 * (phi.phi(theta) + phi.phi(-theta));
      return (even - phi.phi0) / (u * u);
    };
  }

  GradedOptions gopt;
  gopt.tol = opt.tol / 4.0;  // account for the overall factor 4
  gopt.max_levels = opt.max_levels;
  gopt.nodes = opt.nodes;
  gopt.levels = opt.fixed_levels;
  return 4.0 * power_graded_integral(g, umax, 1.0 - 2.0 * s, gopt);
}

}  // namespace kacspec

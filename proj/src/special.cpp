#include "kacspec/special.hpp"

#include <cmath>
#include <stdexcept>

#include "kacspec/common.hpp"

namespace kacspec {

namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey coefficients).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

double lanczos_sum(double x) {
  double s = kLanczos[0];
  for (int i = 1; i < 15; ++i) s += kLanczos[i] / (x + i - 1.0);
  return s;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  if (x < 0.5) {
    // Reflection keeps the Lanczos argument in its accurate range.
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  const double base = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(base, z + 0.5) * std::exp(-base) * lanczos_sum(x);
}

double lgamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("lgamma_fn: argument must be positive");
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - lgamma_fn(1.0 - x);
  const double z = x - 1.0;
  const double base = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(base) - base + std::log(lanczos_sum(x));
}

double binom_real(double alpha, int k) {
  if (k < 0) throw std::domain_error("binom_real: k must be >= 0");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (alpha - i) / (i + 1.0);
  return r;
}

}  // namespace kacspec

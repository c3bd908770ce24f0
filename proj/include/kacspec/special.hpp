#pragma once

namespace kacspec {

// Gamma function for positive real argument (Lanczos, ~1e-14 relative).
// Throws std::domain_error for x <= 0.
double gamma_fn(double x);

// log Gamma for x > 0.
double lgamma_fn(double x);

// Generalized binomial coefficient binom(alpha, k) for real alpha, integer k >= 0.
double binom_real(double alpha, int k);

}  // namespace kacspec

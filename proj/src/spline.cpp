#include "kacspec/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace kacspec {

// Coefficients are solved and stored in long double: the Bobylev pipeline
// multiplies interpolation noise by exp(v^2/4)-sized weights, so the spline
// must not inject double-ulp jitter of its own.
void CubicSpline::build(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<long double> yl(ys.begin(), ys.end());
  build_ld(xs, yl);
}

void CubicSpline::build_ld(const std::vector<double>& xs, const std::vector<long double>& ys) {
  const int n = static_cast<int>(xs.size());
  if (n < 4 || ys.size() != xs.size())
    throw std::invalid_argument("CubicSpline: need >= 4 uniform knots");
  x0_ = xs.front();
  h_ = xs[1] - xs[0];
  n_ = n;

  // Second derivatives from the natural-spline tridiagonal system.
  std::vector<long double> m(n, 0.0L), dp(n, 0.0L), cp(n, 0.0L);
  const long double h = (long double)h_;
  {
    std::vector<long double> rhs(n, 0.0L);
    for (int i = 1; i < n - 1; ++i)
      rhs[i] = 6.0L * (ys[i + 1] - 2.0L * ys[i] + ys[i - 1]) / (h * h);
    cp[1] = 1.0L / 4.0L;
    dp[1] = rhs[1] / 4.0L;
    for (int i = 2; i < n - 1; ++i) {
      const long double w = 4.0L - cp[i - 1];
      cp[i] = 1.0L / w;
      dp[i] = (rhs[i] - dp[i - 1]) / w;
    }
    for (int i = n - 2; i >= 1; --i) m[i] = dp[i] - cp[i] * m[i + 1];
  }

  a_.resize(n - 1);
  b_.resize(n - 1);
  c_.resize(n - 1);
  d_.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    a_[i] = ys[i];
    b_[i] = (ys[i + 1] - ys[i]) / h - h * (2.0L * m[i] + m[i + 1]) / 6.0L;
    c_[i] = 0.5L * m[i];
    d_[i] = (m[i + 1] - m[i]) / (6.0L * h);
  }
}

int CubicSpline::interval(double x) const {
  int i = static_cast<int>(std::floor((x - x0_) / h_));
  if (i < 0 || i > n_ - 2) {
    if (x < x0_ - 1e-12 * std::abs(h_) || x > x_max() + 1e-12 * std::abs(h_))
      throw std::domain_error("CubicSpline: evaluation outside the knot range");
    i = std::min(std::max(i, 0), n_ - 2);
  }
  return i;
}

long double CubicSpline::eval_ld(double x) const {
  const int i = interval(x);
  const long double t = (long double)x - ((long double)x0_ + (long double)i * (long double)h_);
  return a_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::eval(double x) const { return static_cast<double>(eval_ld(x)); }

long double CubicSpline::delta_in(int i, double xa, double xb) const {
  // S(xa) - S(xb) with both arguments in interval i: the difference of the
  // local cubic, exact in the step.
  const long double left = (long double)x0_ + (long double)i * (long double)h_;
  const long double t1 = (long double)xa - left;
  const long double t0 = (long double)xb - left;
  const long double dt = (long double)xa - (long double)xb;
  return dt * (b_[i] + c_[i] * (t1 + t0) + d_[i] * (t1 * t1 + t1 * t0 + t0 * t0));
}

long double CubicSpline::delta_ld(double x, double x0) const {
  const int i1 = interval(x);
  const int i0 = interval(x0);
  if (i0 == i1) return delta_in(i1, x, x0);
  if (std::abs(i1 - i0) == 1) {
    // Adjacent intervals: split at the shared knot (continuity makes either
    // interval's coefficients valid there).
    const double knot = x0_ + std::max(i0, i1) * h_;
    return delta_in(i1, x, knot) + delta_in(i0, knot, x0);
  }
  return eval_ld(x) - eval_ld(x0);
}

double CubicSpline::delta(double x, double x0) const {
  return static_cast<double>(delta_ld(x, x0));
}

void ComplexSpline::build(const std::vector<double>& xs,
                          const std::vector<std::complex<double>>& ys) {
  std::vector<double> re(ys.size()), im(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) {
    re[i] = ys[i].real();
    im[i] = ys[i].imag();
  }
  re_.build(xs, re);
  im_.build(xs, im);
}

void ComplexSpline::build_ld(const std::vector<double>& xs,
                             const std::vector<std::complex<long double>>& ys) {
  std::vector<long double> re(ys.size()), im(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) {
    re[i] = ys[i].real();
    im[i] = ys[i].imag();
  }
  re_.build_ld(xs, re);
  im_.build_ld(xs, im);
}

std::complex<double> ComplexSpline::eval(double x) const { return {re_.eval(x), im_.eval(x)}; }

std::complex<long double> ComplexSpline::eval_ld(double x) const {
  return {re_.eval_ld(x), im_.eval_ld(x)};
}

std::complex<double> ComplexSpline::delta(double x, double x0) const {
  return {re_.delta(x, x0), im_.delta(x, x0)};
}

std::complex<long double> ComplexSpline::delta_ld(double x, double x0) const {
  return {re_.delta_ld(x, x0), im_.delta_ld(x, x0)};
}

}  // namespace kacspec

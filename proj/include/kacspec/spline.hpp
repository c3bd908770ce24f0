#pragma once

#include <complex>
#include <vector>

namespace kacspec {

// Natural cubic spline on uniformly spaced knots; long-double coefficients.
class CubicSpline {
 public:
  CubicSpline() = default;
  // xs must be uniform ascending; ys same length (>= 4 knots).
  void build(const std::vector<double>& xs, const std::vector<double>& ys);
  void build_ld(const std::vector<double>& xs, const std::vector<long double>& ys);

  double eval(double x) const;
  long double eval_ld(double x) const;

  // S(x) - S(x0), accumulated knot-by-knot so that nearby arguments do not
  // lose the difference to cancellation.
  double delta(double x, double x0) const;
  long double delta_ld(double x, double x0) const;

  double x_min() const { return x0_; }
  double x_max() const { return x0_ + h_ * (n_ - 1); }

 private:
  int interval(double x) const;
  long double delta_in(int i, double xa, double xb) const;

  double x0_ = 0.0, h_ = 1.0;
  int n_ = 0;
  std::vector<long double> a_, b_, c_, d_;  // per-interval coefficients about the left knot
};

// Complex-valued profile interpolated through two real splines.
class ComplexSpline {
 public:
  void build(const std::vector<double>& xs, const std::vector<std::complex<double>>& ys);
  void build_ld(const std::vector<double>& xs,
                const std::vector<std::complex<long double>>& ys);
  std::complex<double> eval(double x) const;
  std::complex<long double> eval_ld(double x) const;
  std::complex<double> delta(double x, double x0) const;
  std::complex<long double> delta_ld(double x, double x0) const;
  double x_min() const { return re_.x_min(); }
  double x_max() const { return re_.x_max(); }

 private:
  CubicSpline re_, im_;
};

}  // namespace kacspec

#pragma once

#include <functional>
#include <vector>

namespace kacspec {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes by Newton iteration on P_n; cached per order.
const GaussLegendre& gauss_legendre(int n);

// Gauss-Legendre on [a, b], single panel.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n = 32);

// Composite Gauss-Legendre over uniform panels on [a, b].
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int n = 16);

struct GradedOptions {
  int levels = -1;        // -1: adaptive, stop when the innermost panel is below tol/8
  int max_levels = 40;
  int nodes = 16;         // Gauss-Legendre order per panel
  double tol = 1e-12;     // absolute target for the adaptive stop
};

// Integral of u^expo * g(u) over (0, a] where g is smooth up to u = 0 and the
// product is integrable (expo > -1, or expo > -2 with g vanishing at 0).
// Panels are geometrically graded toward the origin; the stub below the last
// panel is integrated analytically against a quadratic model of g fitted from
// the innermost panel nodes, so the endpoint power weight is handled exactly.
double power_graded_integral(const std::function<double(double)>& g, double a, double expo,
                             const GradedOptions& opt = GradedOptions());

}  // namespace kacspec

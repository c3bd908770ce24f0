#pragma once

#include <vector>

#include "kacspec/spectrum.hpp"

namespace kacspec {

// Point (v, xi) in phase space with the derived scale lambda = 1 + |xi|^2 + |v|^2/4.
struct PhasePoint {
  std::vector<double> v;
  std::vector<double> xi;

  PhasePoint(double v1, double xi1) : v{v1}, xi{xi1} {}
  PhasePoint(std::vector<double> v_, std::vector<double> xi_);

  int dim() const { return static_cast<int>(v.size()); }
  double rho2() const;                       // |xi|^2 + |v|^2/4
  double lambda() const { return 1.0 + rho2(); }
};

// Weyl symbol of e^{-tH}: exp(-2 tanh(t/2)(|xi|^2+|v|^2/4)) / cosh^d(t/2).
double mehler_symbol(double t, const PhasePoint& p, int d);
double mehler_symbol_rho2(double t, double rho2, int d);

// Weyl symbols of the two parts of the linearized operator, d-dimensional
// versions included; all are functions of rho2 alone.
double l1_symbol(const PhasePoint& p, double s, double tol = 1e-12);
double l2_symbol(const PhasePoint& p, double s, double tol = 1e-12);
double l1_symbol_d(const PhasePoint& p, double s, int d, double tol = 1e-12);
double l2_symbol_d(const PhasePoint& p, double s, int d, double tol = 1e-12);
double full_symbol(const PhasePoint& p, double s, int d = 1, double tol = 1e-12);

double l1_value(double rho2, double s, int d = 1, double tol = 1e-12);
double l2_value(double rho2, double s, int d = 1, double tol = 1e-12);

enum class CoeffProvenance { constructive, fitted };

// Coefficients of l1 ~ c0 lambda^s - d0 + sum_j c_j lambda^{s-j}.
struct AsymptoticExpansion {
  double s = 0.5;
  int order = 0;
  double c0 = 0.0;
  double d0 = 0.0;
  std::vector<double> c;                    // c_1..c_order
  std::vector<CoeffProvenance> provenance;  // per stored coefficient
  std::vector<double> c_fitted;             // fit-route values where computed

  // Evaluate the expansion truncated at c_N (N <= order; N = 0 keeps c0, d0 only).
  double evaluate(double lambda, int N) const;
};

// Taylor coefficients a_j of (1+z)^alpha e^{2z}.
std::vector<double> kappa_taylor(double alpha, int n);

struct ExpansionOptions {
  bool cross_validate = true;   // fit l1 residuals on a dyadic lambda grid
  double fit_lambda_min = 1e2;
  double fit_lambda_max = 1e6;
  double tol_c1 = 0.01;         // routes must agree to 1% on c_1
  double tol_c2 = 0.05;         // and 5% on c_2 (fit conditioning degrades)
};

// Constructive route through the kappa series and Gamma factors, with an
// independent least-squares fit of the l1 residual as a cross-check. Throws
// consistency_error if the two routes disagree beyond the stated tolerances.
AsymptoticExpansion expansion_coefficients(double s, int N,
                                           const ExpansionOptions& opt = ExpansionOptions());

// One row of the exported symbol grid.
struct SymbolSample {
  double v, xi, lambda, l1, l2, expansion, residual;
};

// Sample l1/l2 and the expansion on the product grid vs x xis (d = 1).
// OpenMP-parallel sweep plus the serial reference kept for testing.
std::vector<SymbolSample> sample_symbol_grid(double s, const std::vector<double>& vs,
                                             const std::vector<double>& xis,
                                             const AsymptoticExpansion& exp, int order,
                                             double tol = 1e-12);
std::vector<SymbolSample> sample_symbol_grid_serial(double s, const std::vector<double>& vs,
                                                    const std::vector<double>& xis,
                                                    const AsymptoticExpansion& exp, int order,
                                                    double tol = 1e-12);

}  // namespace kacspec

#pragma once

#include <vector>

#include "kacspec/grid.hpp"

namespace kacspec {

// Scaled Hermite functions psi_n, the eigenfunctions of -d^2/dx^2 + x^2/4 with
// eigenvalues n + 1/2. psi_0(x) = (2 pi)^{-1/4} e^{-x^2/4} is the square root
// of the Maxwellian; psi_n(-x) = (-1)^n psi_n(x).
struct HermiteBasis {
  int max_index = 128;
};

struct HermiteCoeffs {
  std::vector<double> c;

  int size() const { return static_cast<int>(c.size()); }
  double norm2() const;
};

// Largest index the forward recurrence is rated for.
inline constexpr int kHermiteIndexLimit = 20000;

// Single value psi_n(x). Throws capability_error for n above the limit.
double hermite_psi(int n, double x);

// All of psi_0..psi_N at x in one recurrence pass. out has size N+1.
void hermite_psi_row(int nmax, double x, double* out);

// Weight polynomials w_n = psi_n / psi_0 (Hermite polynomials H_n(x/sqrt2)/sqrt(2^n n!)).
void hermite_weight_row(int nmax, double x, double* out);

// sqrt of the Maxwellian, equals psi_0.
double maxwellian_sqrt(double x);

// Velocity grid wide and fine enough that psi_N is resolved and its mass
// outside [-L, L] is below tail_tol; L grows from L0 until that holds.
Grid grid_for_basis(int nmax, double target_h = 0.05, double L0 = 18.0,
                    double tail_tol = 1e-12);

// Fraction of psi_n mass the grid fails to capture (Parseval deficit).
double basis_tail_deficit(const Grid& grid, int nmax);

// Projection c_n = integral f psi_n dx realized as a grid sum; throws
// accuracy_error with a diagnostic when the grid cannot resolve the basis.
HermiteCoeffs hermite_transform(const GridFunction& f, const HermiteBasis& basis);

// Inverse: sample sum_n c_n psi_n on the grid.
GridFunction hermite_synthesize(const HermiteCoeffs& coeffs, const Grid& grid);

// Pointwise evaluation of the expansion at arbitrary x.
double hermite_evaluate(const HermiteCoeffs& coeffs, double x);

}  // namespace kacspec

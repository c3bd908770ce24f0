#pragma once

#include <functional>
#include <vector>

#include "kacspec/common.hpp"
#include "kacspec/grid.hpp"
#include "kacspec/hermite.hpp"

namespace kacspec {

using SymbolFn = std::function<double(double v, double xi)>;
using RealFn = std::function<double(double)>;

// Product phase grid: v and xi share the axis (spacing h); the Wigner y-grid
// is the conjugate axis with spacing 2 pi/(n h), so the centered FFT over y
// lands exactly on the xi points. Requires n >= 4 L^2 / pi so the y range
// covers the kernel support.
struct PhaseGrid {
  Grid axis;

  double hy() const { return 2.0 * kPi / (axis.n * axis.h()); }
  double y(int j) const { return (j - axis.n / 2) * hy(); }
  void validate() const;
};

// Default grid for matrix elements up to Hermite index K: half-width grows
// with the classical turning point, 512 points per axis at the K <= 20 size.
PhaseGrid default_phase_grid(int K);

struct WignerGrid {
  PhaseGrid grid;
  std::vector<cdouble> w;  // row-major [i_v * n + k_xi]

  cdouble at(int iv, int kxi) const { return w[static_cast<size_t>(iv) * grid.axis.n + kxi]; }
  // Discrete integral over the whole phase grid.
  cdouble total_mass() const;
};

// Wigner transform W(f,g)(v,xi) = (1/2pi) int f(v+y/2) conj(g(v-y/2)) e^{-iy xi} dy
// per grid point, via the shared centered FFT. Real-valued evaluators.
WignerGrid wigner(const RealFn& f, const RealFn& g, const PhaseGrid& pg);

// Evaluator adapters.
RealFn psi_evaluator(int n);
RealFn coeffs_evaluator(const HermiteCoeffs& c);
RealFn gridfn_evaluator(const GridFunction& f);  // cubic spline, zero outside

// <a, W(psi_n, psi_m)> through an explicit Wigner grid.
cdouble weyl_matrix_element(const SymbolFn& a, int m, int n, const PhaseGrid& pg);

struct OperatorMatrix {
  int K = 0;
  std::vector<cdouble> a;  // (K+1)^2 row-major

  cdouble at(int m, int n) const { return a[static_cast<size_t>(m) * (K + 1) + n]; }
  double max_offdiag() const;
  double max_imag() const;
  double hermiticity_defect() const;
};

// Full matrix A_{mn} = <a^w psi_n, psi_m> for m, n <= K, evaluated through the
// partial Fourier transform of the symbol in xi contracted against Hermite
// products on the y-grid (a reordering of the Wigner pairing that avoids
// storing O(K^2) Wigner grids). OpenMP kernel with chunk-ordered reduction so
// results are bit-identical for any thread count; serial reference kept for
// testing.
OperatorMatrix operator_matrix(const SymbolFn& a, int K, const PhaseGrid& pg);
OperatorMatrix operator_matrix_serial(const SymbolFn& a, int K, const PhaseGrid& pg);

// Dense product of operator matrices (used for semigroup checks).
OperatorMatrix matrix_multiply(const OperatorMatrix& A, const OperatorMatrix& B);

struct DiagReport {
  int K = 0;
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
  double max_imag = 0.0;
  double hermiticity_defect = 0.0;
  std::vector<double> diag;
  std::vector<double> expected;
};

// Builds the operator matrix and reports how far it is from the expected
// diagonal; report-only, never throws on deviations.
DiagReport diagonalization_check(const SymbolFn& a, int K, const std::vector<double>& expected,
                                 const PhaseGrid& pg);

// Schwartz kernel on the (u, w) product of the axis grid.
struct KernelGrid {
  Grid axis;
  std::vector<cdouble> k;  // row-major [i_u * n + i_w]

  cdouble at(int iu, int iw) const { return k[static_cast<size_t>(iu) * axis.n + iw]; }
};

// Symbol values on the (v, xi) product of the axis grid.
struct SymbolField {
  Grid axis;
  std::vector<cdouble> a;  // row-major [i_v * n + k_xi]

  cdouble at(int iv, int kxi) const { return a[static_cast<size_t>(iv) * axis.n + kxi]; }
};

// a(v,xi) = int k(v - y/2, v + y/2) e^{i y xi} dy, the partial inverse Fourier
// transform of the kernel along the antidiagonal (y steps by 2h on the lattice).
SymbolField symbol_from_kernel(const KernelGrid& kg);

// k(u,w) = (1/2pi) int a((u+w)/2, xi) e^{i(u-w) xi} d xi; needs the symbol as
// an evaluator since midpoints fall on the half lattice.
KernelGrid kernel_from_symbol(const SymbolFn& a, const Grid& axis);

}  // namespace kacspec

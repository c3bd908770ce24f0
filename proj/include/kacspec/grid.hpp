#pragma once

#include <complex>
#include <vector>

namespace kacspec {

using cdouble = std::complex<double>;

// Uniform grid x_i = (i - n/2) h, i = 0..n-1, h = 2L/n. Symmetric about 0 with
// the convention that index 0 (x = -L) is its own parity partner modulo n, so
// parity operations are exact on indices. n must be a power of two.
struct Grid {
  double L = 18.0;
  int n = 1024;

  double h() const { return 2.0 * L / n; }
  double x(int i) const { return (i - n / 2) * h(); }
  int mirror(int i) const { return i == 0 ? 0 : n - i; }

  // Conjugate grid of the forward transform: spacing 2*pi/(n*h).
  Grid conjugate() const;

  bool operator==(const Grid& o) const { return L == o.L && n == o.n; }
};

struct GridFunction {
  Grid grid;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(const Grid& g) : grid(g), values(g.n, 0.0) {}
};

struct ComplexGridFunction {
  Grid grid;
  std::vector<cdouble> values;

  ComplexGridFunction() = default;
  explicit ComplexGridFunction(const Grid& g) : grid(g), values(g.n, cdouble(0.0, 0.0)) {}
};

// In-place radix-2 FFT, sign = -1 forward (e^{-i...}), +1 inverse (no 1/n scaling).
void fft_radix2(std::vector<cdouble>& a, int sign);

// Centered transform out_k = sum_j in_j e^{sign i x_j xi_k} with x_j = (j-n/2)h
// and xi_k = (k-n/2) 2pi/(nh); pure phase bookkeeping around fft_radix2.
std::vector<cdouble> centered_fft(const std::vector<cdouble>& in, int sign);

// Continuum Fourier transform on the grid, convention
//   fhat(xi) = integral f(v) e^{-i v xi} dv,
// realized as h * sum_j f(x_j) e^{-i x_j xi_k} on the conjugate grid.
ComplexGridFunction fourier_grid(const GridFunction& f);
ComplexGridFunction fourier_grid(const ComplexGridFunction& f);

// Inverse transform carrying the 1/(2 pi) factor; lands back on conjugate().
ComplexGridFunction inverse_fourier_grid(const ComplexGridFunction& fhat);

// Relative tail mass of the outermost samples; used for aliasing checks.
double edge_tail_ratio(const std::vector<cdouble>& v);
double edge_tail_ratio(const std::vector<double>& v);

// Throws accuracy_error if the function has not decayed at the grid edges.
void check_aliasing(const GridFunction& f, double threshold = 1e-8);

}  // namespace kacspec

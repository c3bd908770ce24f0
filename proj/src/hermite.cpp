#include "kacspec/hermite.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kacspec/common.hpp"

namespace kacspec {

namespace {
const double kPsi0Norm = std::pow(2.0 * kPi, -0.25);
}

double maxwellian_sqrt(double x) { return kPsi0Norm * std::exp(-0.25 * x * x); }

double hermite_psi(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_psi: n must be >= 0");
  if (n > kHermiteIndexLimit)
    throw capability_error("hermite_psi: n = " + std::to_string(n) + " beyond stability limit");
  double pm1 = 0.0;
  double p = maxwellian_sqrt(x);
  for (int k = 0; k < n; ++k) {
    // psi_{k+1} = x psi_k / sqrt(k+1) - sqrt(k/(k+1)) psi_{k-1}
    const double next = (x * p - std::sqrt(static_cast<double>(k)) * pm1) / std::sqrt(k + 1.0);
    pm1 = p;
    p = next;
  }
  return p;
}

void hermite_psi_row(int nmax, double x, double* out) {
  if (nmax < 0) throw std::domain_error("hermite_psi_row: nmax must be >= 0");
  if (nmax > kHermiteIndexLimit)
    throw capability_error("hermite_psi_row: nmax beyond stability limit");
  out[0] = maxwellian_sqrt(x);
  if (nmax == 0) return;
  out[1] = x * out[0];
  for (int k = 1; k < nmax; ++k)
    out[k + 1] = (x * out[k] - std::sqrt(static_cast<double>(k)) * out[k - 1]) / std::sqrt(k + 1.0);
}

void hermite_weight_row(int nmax, double x, double* out) {
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = x;
  for (int k = 1; k < nmax; ++k)
    out[k + 1] = (x * out[k] - std::sqrt(static_cast<double>(k)) * out[k - 1]) / std::sqrt(k + 1.0);
}

double HermiteCoeffs::norm2() const {
  long double s = 0.0L;
  for (double v : c) s += (long double)v * v;
  return static_cast<double>(s);
}

double basis_tail_deficit(const Grid& grid, int nmax) {
  const double h = grid.h();
  long double mass = 0.0L;
  for (int i = 0; i < grid.n; ++i) {
    const double p = hermite_psi(nmax, grid.x(i));
    mass += (long double)p * p;
  }
  return std::abs(1.0 - static_cast<double>(mass) * h);
}

Grid grid_for_basis(int nmax, double target_h, double L0, double tail_tol) {
  // Classical turning point of psi_N is at 2 sqrt(N + 1/2); start beyond it.
  double L = std::max(L0, 2.0 * std::sqrt(nmax + 0.5) + 6.0);
  for (int attempt = 0; attempt < 12; ++attempt) {
    int n = 64;
    while (n * target_h < 2.0 * L) n <<= 1;
    Grid g{L, n};
    if (basis_tail_deficit(g, nmax) < tail_tol) return g;
    L *= 1.25;
  }
  throw accuracy_error("grid_for_basis: could not confine psi_N tail below tolerance");
}

HermiteCoeffs hermite_transform(const GridFunction& f, const HermiteBasis& basis) {
  const Grid& g = f.grid;
  const double deficit = basis_tail_deficit(g, basis.max_index);
  if (deficit > 1e-10) {
    throw accuracy_error(
        "hermite_transform: grid cannot resolve psi_" + std::to_string(basis.max_index) +
        " (tail deficit " + std::to_string(deficit) + "); enlarge L or refine h");
  }
  HermiteCoeffs out;
  out.c.assign(basis.max_index + 1, 0.0);
  const double h = g.h();
  std::vector<long double> acc(basis.max_index + 1, 0.0L);
  std::vector<double> row(basis.max_index + 1);
  for (int i = 0; i < g.n; ++i) {
    hermite_psi_row(basis.max_index, g.x(i), row.data());
    const double fv = f.values[i];
    for (int n = 0; n <= basis.max_index; ++n) acc[n] += (long double)fv * row[n];
  }
  for (int n = 0; n <= basis.max_index; ++n) out.c[n] = static_cast<double>(acc[n] * h);
  return out;
}

GridFunction hermite_synthesize(const HermiteCoeffs& coeffs, const Grid& grid) {
  GridFunction out(grid);
  const int nmax = coeffs.size() - 1;
  std::vector<double> row(coeffs.size());
  for (int i = 0; i < grid.n; ++i) {
    hermite_psi_row(nmax, grid.x(i), row.data());
    long double s = 0.0L;
    for (int n = 0; n <= nmax; ++n) s += (long double)coeffs.c[n] * row[n];
    out.values[i] = static_cast<double>(s);
  }
  return out;
}

double hermite_evaluate(const HermiteCoeffs& coeffs, double x) {
  const int nmax = coeffs.size() - 1;
  std::vector<double> row(coeffs.size());
  hermite_psi_row(nmax, x, row.data());
  long double s = 0.0L;
  for (int n = 0; n <= nmax; ++n) s += (long double)coeffs.c[n] * row[n];
  return static_cast<double>(s);
}

}  // namespace kacspec

#include "kacspec/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "kacspec/common.hpp"

namespace kacspec {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

// The cross term e^{i pi (j+k)} becomes alternating signs and the constant
// e^{sign i pi n/2} = (-1)^{n/2}, so the transform reduces to a plain FFT
// with twists.
std::vector<cdouble> centered_fft(const std::vector<cdouble>& in, int sign) {
  const int n = static_cast<int>(in.size());
  if (!is_pow2(n)) throw std::invalid_argument("centered_fft: size must be a power of two");
  std::vector<cdouble> a(n);
  for (int j = 0; j < n; ++j) a[j] = (j & 1) ? -in[j] : in[j];
  fft_radix2(a, sign);
  const double ph = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    a[k] *= (k & 1) ? -ph : ph;
  }
  return a;
}

Grid Grid::conjugate() const {
  Grid g;
  g.n = n;
  g.L = kPi / h() ;  // n/2 * (2 pi / (n h))
  return g;
}

void fft_radix2(std::vector<cdouble>& a, int sign) {
  const int n = static_cast<int>(a.size());
  if (!is_pow2(n)) throw std::invalid_argument("fft_radix2: size must be a power of two");
  // Bit reversal.
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / len;
    const cdouble wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        cdouble u = a[i + k];
        cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

ComplexGridFunction fourier_grid(const ComplexGridFunction& f) {
  ComplexGridFunction out(f.grid.conjugate());
  auto a = centered_fft(f.values, -1);
  const double h = f.grid.h();
  for (int k = 0; k < f.grid.n; ++k) out.values[k] = a[k] * h;
  return out;
}

ComplexGridFunction fourier_grid(const GridFunction& f) {
  check_aliasing(f);
  ComplexGridFunction c(f.grid);
  for (int i = 0; i < f.grid.n; ++i) c.values[i] = f.values[i];
  return fourier_grid(c);
}

ComplexGridFunction inverse_fourier_grid(const ComplexGridFunction& fhat) {
  ComplexGridFunction out(fhat.grid.conjugate());
  auto a = centered_fft(fhat.values, +1);
  const double scale = fhat.grid.h() / (2.0 * kPi);
  for (int k = 0; k < fhat.grid.n; ++k) out.values[k] = a[k] * scale;
  return out;
}

double edge_tail_ratio(const std::vector<cdouble>& v) {
  const int n = static_cast<int>(v.size());
  const int band = std::max(1, n / 100);
  double mx = 0.0, edge = 0.0;
  for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(v[i]));
  for (int i = 0; i < band; ++i) {
    edge = std::max(edge, std::abs(v[i]));
    edge = std::max(edge, std::abs(v[n - 1 - i]));
  }
  return mx > 0.0 ? edge / mx : 0.0;
}

double edge_tail_ratio(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  const int band = std::max(1, n / 100);
  double mx = 0.0, edge = 0.0;
  for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(v[i]));
  for (int i = 0; i < band; ++i) {
    edge = std::max(edge, std::abs(v[i]));
    edge = std::max(edge, std::abs(v[n - 1 - i]));
  }
  return mx > 0.0 ? edge / mx : 0.0;
}

void check_aliasing(const GridFunction& f, double threshold) {
  const double r = edge_tail_ratio(f.values);
  if (r > threshold) {
    throw accuracy_error("fourier_grid: tail mass at grid edge (" + std::to_string(r) +
                         ") indicates aliasing; widen the grid");
  }
}

}  // namespace kacspec

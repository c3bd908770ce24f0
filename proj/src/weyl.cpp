#include "kacspec/weyl.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "kacspec/spline.hpp"

namespace kacspec {

void PhaseGrid::validate() const {
  if (axis.n < 8 || (axis.n & (axis.n - 1)) != 0)
    throw std::invalid_argument("PhaseGrid: axis size must be a power of two >= 8");
  if (kPi / axis.h() < 2.0 * axis.L)
    throw std::invalid_argument("PhaseGrid: need n >= 4 L^2 / pi for the Wigner y-range");
}

PhaseGrid default_phase_grid(int K) {
  if (K < 0) throw std::domain_error("default_phase_grid: K must be >= 0");
  const double L = std::max(14.0, 2.0 * std::sqrt(K + 0.5) + 4.5);
  const double target_h = 28.0 / 512.0;
  int n = 64;
  while (n * target_h < 2.0 * L || kPi * n / (2.0 * L) < 2.0 * L) n <<= 1;
  PhaseGrid pg{Grid{L, n}};
  pg.validate();
  return pg;
}

cdouble WignerGrid::total_mass() const {
  long double re = 0.0L, im = 0.0L;
  for (const cdouble& z : w) {
    re += z.real();
    im += z.imag();
  }
  const double cell = grid.axis.h() * grid.axis.h();
  return {static_cast<double>(re) * cell, static_cast<double>(im) * cell};
}

WignerGrid wigner(const RealFn& f, const RealFn& g, const PhaseGrid& pg) {
  pg.validate();
  const int n = pg.axis.n;
  WignerGrid out;
  out.grid = pg;
  out.w.assign(static_cast<size_t>(n) * n, cdouble(0.0, 0.0));
  const double scale = pg.hy() / (2.0 * kPi);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < n; ++i) {
    const double v = pg.axis.x(i);
    std::vector<cdouble> q(n);
    for (int j = 0; j < n; ++j) {
      const double y = pg.y(j);
      q[j] = f(v + 0.5 * y) * g(v - 0.5 * y);
    }
    auto row = centered_fft(q, -1);
    for (int k = 0; k < n; ++k) out.w[static_cast<size_t>(i) * n + k] = row[k] * scale;
  }
  return out;
}

RealFn psi_evaluator(int n) {
  return [n](double x) { return hermite_psi(n, x); };
}

RealFn coeffs_evaluator(const HermiteCoeffs& c) {
  HermiteCoeffs copy = c;
  return [copy](double x) { return hermite_evaluate(copy, x); };
}

RealFn gridfn_evaluator(const GridFunction& f) {
  auto spline = std::make_shared<CubicSpline>();
  std::vector<double> xs(f.grid.n);
  for (int i = 0; i < f.grid.n; ++i) xs[i] = f.grid.x(i);
  spline->build(xs, f.values);
  const double lo = xs.front(), hi = xs.back();
  return [spline, lo, hi](double x) {
    if (x < lo || x > hi) return 0.0;
    return spline->eval(x);
  };
}

cdouble weyl_matrix_element(const SymbolFn& a, int m, int n, const PhaseGrid& pg) {
  WignerGrid W = wigner(psi_evaluator(n), psi_evaluator(m), pg);
  const int N = pg.axis.n;
  long double re = 0.0L, im = 0.0L;
  for (int i = 0; i < N; ++i) {
    const double v = pg.axis.x(i);
    for (int k = 0; k < N; ++k) {
      const cdouble z = a(v, pg.axis.x(k)) * W.at(i, k);
      re += z.real();
      im += z.imag();
    }
  }
  const double cell = pg.axis.h() * pg.axis.h();
  return {static_cast<double>(re) * cell, static_cast<double>(im) * cell};
}

namespace {

// Partial Fourier transform of the symbol in xi: S[i][j] = (h/2pi) sum_k
// a(v_i, xi_k) e^{-i y_j xi_k}. The y-grid is conjugate to xi, so one
// centered FFT per row.
std::vector<cdouble> symbol_partial_ft(const SymbolFn& a, const PhaseGrid& pg) {
  const int n = pg.axis.n;
  std::vector<cdouble> S(static_cast<size_t>(n) * n);
  const double scale = pg.axis.h() / (2.0 * kPi);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int i = 0; i < n; ++i) {
    const double v = pg.axis.x(i);
    std::vector<cdouble> row(n);
    for (int k = 0; k < n; ++k) row[k] = a(v, pg.axis.x(k));
    auto ft = centered_fft(row, -1);
    for (int j = 0; j < n; ++j) S[static_cast<size_t>(i) * n + j] = ft[j] * scale;
  }
  return S;
}

constexpr int kReduceChunks = 64;

OperatorMatrix operator_matrix_impl(const SymbolFn& a, int K, const PhaseGrid& pg,
                                    bool parallel) {
  pg.validate();
  if (K < 0) throw std::domain_error("operator_matrix: K must be >= 0");
  if (2.0 * std::sqrt(K + 0.5) + 2.0 > pg.axis.L)
    throw capability_error("operator_matrix: grid half-width too small for K (rule: L >= 2 sqrt(K+1/2) + margin)");
  const int n = pg.axis.n;
  const int dim = K + 1;
  const std::vector<cdouble> S = symbol_partial_ft(a, pg);

  // Fixed chunking over v-rows; chunk partials are merged in index order so
  // the reduction is deterministic for any thread count.
  const int chunk_rows = (n + kReduceChunks - 1) / kReduceChunks;
  std::vector<std::vector<cdouble>> partial(kReduceChunks);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int c = 0; c < kReduceChunks; ++c) {
    const int i_lo = c * chunk_rows;
    const int i_hi = std::min(n, i_lo + chunk_rows);
    std::vector<cdouble> acc(static_cast<size_t>(dim) * dim, cdouble(0.0, 0.0));
    std::vector<double> plus(static_cast<size_t>(dim) * n);
    std::vector<double> minus(static_cast<size_t>(dim) * n);
    std::vector<double> rowbuf(dim);
    for (int i = i_lo; i < i_hi; ++i) {
      const double v = pg.axis.x(i);
      for (int j = 0; j < n; ++j) {
        const double y = pg.y(j);
        hermite_psi_row(K, v + 0.5 * y, rowbuf.data());
        for (int q = 0; q < dim; ++q) plus[static_cast<size_t>(q) * n + j] = rowbuf[q];
        hermite_psi_row(K, v - 0.5 * y, rowbuf.data());
        for (int q = 0; q < dim; ++q) minus[static_cast<size_t>(q) * n + j] = rowbuf[q];
      }
      const cdouble* Si = &S[static_cast<size_t>(i) * n];
      for (int m = 0; m < dim; ++m) {
        for (int nn = 0; nn < dim; ++nn) {
          const double* pp = &plus[static_cast<size_t>(nn) * n];
          const double* pm = &minus[static_cast<size_t>(m) * n];
          long double re = 0.0L, im = 0.0L;
          for (int j = 0; j < n; ++j) {
            const double prod = pp[j] * pm[j];
            re += prod * Si[j].real();
            im += prod * Si[j].imag();
          }
          acc[static_cast<size_t>(m) * dim + nn] +=
              cdouble(static_cast<double>(re), static_cast<double>(im));
        }
      }
    }
    partial[c] = std::move(acc);
  }

  OperatorMatrix out;
  out.K = K;
  out.a.assign(static_cast<size_t>(dim) * dim, cdouble(0.0, 0.0));
  const double cell = pg.axis.h() * pg.hy();
  for (int c = 0; c < kReduceChunks; ++c) {
    if (partial[c].empty()) continue;
    for (size_t idx = 0; idx < out.a.size(); ++idx) out.a[idx] += partial[c][idx];
  }
  for (auto& z : out.a) z *= cell;
  return out;
}

}  // namespace

OperatorMatrix operator_matrix(const SymbolFn& a, int K, const PhaseGrid& pg) {
  return operator_matrix_impl(a, K, pg, true);
}

OperatorMatrix operator_matrix_serial(const SymbolFn& a, int K, const PhaseGrid& pg) {
  return operator_matrix_impl(a, K, pg, false);
}

double OperatorMatrix::max_offdiag() const {
  double mx = 0.0;
  for (int m = 0; m <= K; ++m)
    for (int n = 0; n <= K; ++n)
      if (m != n) mx = std::max(mx, std::abs(at(m, n)));
  return mx;
}

double OperatorMatrix::max_imag() const {
  double mx = 0.0;
  for (const auto& z : a) mx = std::max(mx, std::abs(z.imag()));
  return mx;
}

double OperatorMatrix::hermiticity_defect() const {
  double mx = 0.0;
  for (int m = 0; m <= K; ++m)
    for (int n = 0; n <= K; ++n)
      mx = std::max(mx, std::abs(at(m, n) - std::conj(at(n, m))));
  return mx;
}

OperatorMatrix matrix_multiply(const OperatorMatrix& A, const OperatorMatrix& B) {
  if (A.K != B.K) throw std::invalid_argument("matrix_multiply: size mismatch");
  OperatorMatrix C;
  C.K = A.K;
  const int dim = A.K + 1;
  C.a.assign(static_cast<size_t>(dim) * dim, cdouble(0.0, 0.0));
  for (int m = 0; m < dim; ++m)
    for (int q = 0; q < dim; ++q) {
      const cdouble amq = A.at(m, q);
      if (amq == cdouble(0.0, 0.0)) continue;
      for (int n = 0; n < dim; ++n) C.a[static_cast<size_t>(m) * dim + n] += amq * B.at(q, n);
    }
  return C;
}

DiagReport diagonalization_check(const SymbolFn& a, int K, const std::vector<double>& expected,
                                 const PhaseGrid& pg) {
  if (static_cast<int>(expected.size()) != K + 1)
    throw std::invalid_argument("diagonalization_check: expected diagonal must have K+1 entries");
  OperatorMatrix A = operator_matrix(a, K, pg);
  DiagReport rep;
  rep.K = K;
  rep.max_offdiag = A.max_offdiag();
  rep.max_imag = A.max_imag();
  rep.hermiticity_defect = A.hermiticity_defect();
  rep.expected = expected;
  rep.diag.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    rep.diag[k] = A.at(k, k).real();
    rep.max_diag_dev = std::max(rep.max_diag_dev, std::abs(rep.diag[k] - expected[k]));
  }
  return rep;
}

SymbolField symbol_from_kernel(const KernelGrid& kg) {
  const int n = kg.axis.n;
  const double h = kg.axis.h();
  SymbolField out;
  out.axis = kg.axis;
  out.a.assign(static_cast<size_t>(n) * n, cdouble(0.0, 0.0));
  // y_j = 2h (j - n/2); lattice-aligned so k(v - y/2, v + y/2) needs no interpolation.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double xi = kg.axis.x(k);
      long double re = 0.0L, im = 0.0L;
      for (int j = 0; j < n; ++j) {
        const int d = j - n / 2;
        const int iu = i - d;
        const int iw = i + d;
        if (iu < 0 || iu >= n || iw < 0 || iw >= n) continue;
        const double y = 2.0 * h * d;
        const cdouble ph(std::cos(y * xi), std::sin(y * xi));
        const cdouble z = kg.at(iu, iw) * ph;
        re += z.real();
        im += z.imag();
      }
      out.a[static_cast<size_t>(i) * n + k] =
          cdouble(static_cast<double>(re) * 2.0 * h, static_cast<double>(im) * 2.0 * h);
    }
  }
  return out;
}

KernelGrid kernel_from_symbol(const SymbolFn& a, const Grid& axis) {
  const int n = axis.n;
  const double h = axis.h();
  // Symbol table on the midpoint half-lattice (u+w)/2 = (iu+iw-n) h/2.
  std::vector<double> mid_v(2 * n - 1);
  for (int m = 0; m < 2 * n - 1; ++m) mid_v[m] = (m - n) * 0.5 * h;
  std::vector<cdouble> table(static_cast<size_t>(2 * n - 1) * n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int m = 0; m < 2 * n - 1; ++m)
    for (int k = 0; k < n; ++k)
      table[static_cast<size_t>(m) * n + k] = a(mid_v[m], axis.x(k));

  KernelGrid out;
  out.axis = axis;
  out.k.assign(static_cast<size_t>(n) * n, cdouble(0.0, 0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int iu = 0; iu < n; ++iu) {
    for (int iw = 0; iw < n; ++iw) {
      const double du = axis.x(iu) - axis.x(iw);
      const cdouble* row = &table[static_cast<size_t>(iu + iw) * n];
      long double re = 0.0L, im = 0.0L;
      for (int k = 0; k < n; ++k) {
        const double ph = du * axis.x(k);
        const cdouble z = row[k] * cdouble(std::cos(ph), std::sin(ph));
        re += z.real();
        im += z.imag();
      }
      const double scale = h / (2.0 * kPi);
      out.k[static_cast<size_t>(iu) * n + iw] =
          cdouble(static_cast<double>(re) * scale, static_cast<double>(im) * scale);
    }
  }
  return out;
}

}  // namespace kacspec

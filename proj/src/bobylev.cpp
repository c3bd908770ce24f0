#include "kacspec/bobylev.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "kacspec/common.hpp"
#include "kacspec/quadrature.hpp"
#include "kacspec/singular.hpp"
#include "kacspec/spline.hpp"

namespace kacspec {

namespace {

using cldouble = std::complex<long double>;

// Fixed-level graded quadrature of u^expo g(u) on (0, a], complex long double
// with compensated accumulation (the velocity-side reprojection amplifies
// value noise by exp(v^2/4)-sized weights).
cldouble power_graded_c(const std::function<cldouble(double)>& g, double a, double expo,
                        int levels, int nodes) {
  const GaussLegendre& rule = gauss_legendre(nodes);
  long double tre = 0.0L, tre_c = 0.0L, tim = 0.0L, tim_c = 0.0L;
  auto add = [](long double& s, long double& comp, long double term) {
    const long double y = term - comp;
    const long double t = s + y;
    comp = (t - s) - y;
    s = t;
  };
  std::vector<double> node_u(nodes);
  std::vector<cldouble> node_g(nodes);
  for (int m = 0; m < levels; ++m) {
    const double hi = a * std::pow(0.5, m);
    const double lo = 0.5 * hi;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < nodes; ++i) {
      const double u = mid + half * rule.nodes[i];
      const cldouble gv = g(u);
      const long double w =
          (long double)rule.weights[i] * (long double)half * std::pow((long double)u, (long double)expo);
      add(tre, tre_c, w * gv.real());
      add(tim, tim_c, w * gv.imag());
      if (m == levels - 1) {
        node_u[i] = u;
        node_g[i] = gv;
      }
    }
  }
  cldouble total(tre, tim);
  // Analytic stub against a quadratic model from the innermost panel nodes.
  const double u_min = a * std::pow(0.5, levels);
  const int i0 = 0, i1 = nodes / 2, i2 = nodes - 1;
  const long double x0 = node_u[i0], x1 = node_u[i1], x2 = node_u[i2];
  const cldouble y0 = node_g[i0], y1 = node_g[i1], y2 = node_g[i2];
  const cldouble d01 = (y1 - y0) / (x1 - x0);
  const cldouble d12 = (y2 - y1) / (x2 - x1);
  const cldouble c2 = (d12 - d01) / (x2 - x0);
  const cldouble c1 = d01 - c2 * (x0 + x1);
  const cldouble c0 = y0 - c1 * x0 - c2 * x0 * x0;
  const long double um = (long double)u_min;
  if (expo > -1.0) total += c0 * std::pow(um, (long double)(expo + 1.0)) / (long double)(expo + 1.0);
  total += c1 * std::pow(um, (long double)(expo + 2.0)) / (long double)(expo + 2.0);
  total += c2 * std::pow(um, (long double)(expo + 3.0)) / (long double)(expo + 3.0);
  return total;
}

double support_radius(const std::vector<cldouble>& v, const Grid& g, double rel) {
  long double mx = 0.0L;
  for (const auto& z : v) mx = std::max(mx, std::abs(z));
  if (mx == 0.0L) return 0.0;
  double r = 0.0;
  for (int i = 0; i < g.n; ++i)
    if (std::abs(v[i]) > rel * mx) r = std::max(r, std::abs(g.x(i)));
  return r;
}

struct ProfileSplines {
  ComplexSpline g_even, f;
  cldouble g0;
};

// Core apply on long-double data. Beyond the f support the output decays
// through a smooth logistic taper rather than a hard cut: a jump at the
// window edge would ring like 1/v in velocity space, which the exp(v^2/4)
// projection weights of the linearized operator cannot tolerate.
std::vector<cldouble> apply_core(const std::vector<cldouble>& ghat,
                                 const std::vector<cldouble>& fhat, const Grid& grid, double s,
                                 const KacApplyOptions& opt) {
  const int n = grid.n;
  // Even part of g, index-exact (index 0 is its own partner modulo n).
  std::vector<cldouble> geven(n);
  geven[0] = ghat[0];
  for (int i = 1; i < n; ++i) geven[i] = 0.5L * (ghat[i] + ghat[n - i]);

  double w_keep = opt.w_out;
  if (w_keep <= 0.0) {
    const double wf = support_radius(fhat, grid, 3e-13);
    w_keep = 1.46 * wf + 1.0;
  }
  const double taper_scale = 0.5;
  const double w_out = w_keep + 8.0;  // taper leaves ~e^{-16} of the edge value
  const double w_spline = std::min(w_out + 1.0, grid.L - grid.h());
  if (w_out > w_spline)
    throw std::domain_error("kac_fourier_apply: profile support exceeds the interpolable range");

  // Knot window [-w_spline, w_spline] on grid points.
  const int c = n / 2;
  const int kw = static_cast<int>(w_spline / grid.h());
  std::vector<double> xs;
  std::vector<cldouble> gv, fv;
  for (int i = c - kw; i <= c + kw; ++i) {
    xs.push_back(grid.x(i));
    gv.push_back(geven[i]);
    fv.push_back(fhat[i]);
  }
  ComplexSpline Sg, Sf;
  Sg.build_ld(xs, gv);
  Sf.build_ld(xs, fv);
  const cldouble g0 = geven[c];

  const double umax = fp_u_max();
  std::vector<cldouble> out(n, cldouble(0.0L, 0.0L));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (int k = 0; k < n; ++k) {
    const double xi = grid.x(k);
    if (std::abs(xi) > w_out) continue;
    auto delta = [&](double u) -> cldouble {
      const double u2 = u * u;
      const double sig = 2.0 * u * std::sqrt(1.0 - u2);  // sin(theta)
      const double as = xi * sig;
      const double ac = xi - 2.0 * xi * u2;  // xi cos(theta), exact step from xi
      const cldouble dG = Sg.delta_ld(as, 0.0);
      const cldouble dF = Sf.delta_ld(ac, xi);
      return dG * Sf.eval_ld(ac) + g0 * dF;
    };
    auto g = [&](double u) -> cldouble { return delta(u) / (long double)(u * u); };
    out[k] = 4.0L * power_graded_c(g, umax, 1.0 - 2.0 * s, opt.levels, opt.nodes);
    const double taper = 1.0 / (1.0 + std::exp((std::abs(xi) - w_keep - 4.0) / taper_scale));
    out[k] *= (long double)taper;
  }
  return out;
}

std::vector<cldouble> to_ld(const std::vector<cdouble>& v) {
  std::vector<cldouble> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = cldouble(v[i].real(), v[i].imag());
  return out;
}

void require_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("bobylev: s must lie in (0,1)");
}

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

using qfloat = __float128;
const qfloat kPiQ = M_PIq;

}  // namespace

Grid bobylev_velocity_grid() {
  // Dyadic spacing so every sample point is exact in double; jitter in the
  // transform nodes would otherwise feed the exp(v^2/4)-amplified projection.
  Grid g;
  g.n = 16384;
  g.L = g.n / 64.0;  // h = 1/32, conjugate spacing 2 pi/(n h) ~ 0.0123
  return g;
}

FourierProfile even_part(const FourierProfile& p) {
  FourierProfile out(p.grid);
  out.values[0] = p.values[0];
  for (int i = 1; i < p.grid.n; ++i)
    out.values[i] = 0.5 * (p.values[i] + p.values[p.grid.n - i]);
  return out;
}

FourierProfile kac_fourier_apply(const FourierProfile& g_hat, const FourierProfile& f_hat,
                                 double s, const KacApplyOptions& opt) {
  require_s(s);
  if (!(g_hat.grid == f_hat.grid))
    throw std::invalid_argument("kac_fourier_apply: profiles must share a grid");
  auto out_ld = apply_core(to_ld(g_hat.values), to_ld(f_hat.values), g_hat.grid, s, opt);
  FourierProfile out(g_hat.grid);
  for (int i = 0; i < g_hat.grid.n; ++i)
    out.values[i] = cdouble((double)out_ld[i].real(), (double)out_ld[i].imag());
  return out;
}

FourierProfile boltzmann_radial_fourier_apply(const FourierProfile& g_hat_profile,
                                              const FourierProfile& f_hat_profile, double s,
                                              int d, const KacApplyOptions& opt) {
  if (d < 1) throw std::domain_error("boltzmann_radial_fourier_apply: d must be >= 1");
  const auto check_even = [](const FourierProfile& p, const char* name) {
    double mx = 0.0, dev = 0.0;
    for (const auto& z : p.values) mx = std::max(mx, std::abs(z));
    for (int i = 1; i < p.grid.n; ++i)
      dev = std::max(dev, std::abs(p.values[i] - p.values[p.grid.n - i]));
    if (mx > 0.0 && dev > 1e-10 * mx)
      throw std::domain_error(std::string("boltzmann_radial_fourier_apply: ") + name +
                              " profile is not even");
  };
  check_even(g_hat_profile, "g");
  check_even(f_hat_profile, "f");
  // The radial reduction is the Kac formula verbatim; d changed only the
  // derivation of beta, not the reduced integral.
  return kac_fourier_apply(g_hat_profile, f_hat_profile, s, opt);
}

double projection_window(int j) { return projection_window(j, 1e-12); }

double projection_window(int j, double tail_target) {
  const double turning = 2.0 * std::sqrt(j + 0.5);
  double V = turning + 0.5;
  for (; V < turning + 14.0; V += 0.25) {
    const double p = hermite_psi(j, V);
    const double kap = std::sqrt(std::max(0.25 * V * V - (j + 0.5), 0.05));
    if (p * p / (2.0 * kap) < tail_target) break;
  }
  return V;
}

LinearizedApplyReport linearized_kac_apply_report(const HermiteCoeffs& h, double s,
                                                  const KacApplyOptions& opt) {
  require_s(s);
  const int K = h.size() - 1;
  if (K < 0) throw std::invalid_argument("linearized_kac_apply: empty coefficient vector");
  if (K > 40)
    throw capability_error("linearized_kac_apply: band limit is K <= 40 (got " +
                           std::to_string(K) + ")");
  const Grid vg = bobylev_velocity_grid();
  const int n = vg.n;

  // Transforms in closed form under the shared convention:
  //   F(mu^{1/2} psi_k)(xi) = (-i)^k xi^k e^{-xi^2/2} / sqrt(k!),
  // so fhat(xi) = e^{-xi^2/2} P(xi) with a complex polynomial P, and
  // mu_hat = e^{-xi^2/2}. Since sin^2 + cos^2 = 1, the Gaussian factors of
  // the Bobylev integrand recombine into e^{-xi^2/2} identically and only
  // polynomial differences remain:
  //   Delta(u) = e^{-xi^2/2} [ sum_k a_k xi^k (cos^k - 1)
  //                          + sum_{even k >= 2} Re(a_k) (xi sin)^k ].
  // Grid interpolation is useless on this path (spline noise aliases into
  // the velocity window), and the exp(v^2/4) weights of the mu^{-1/2}
  // reprojection amplify even the value roundoff of the quadrature, so the
  // whole xi-side pipeline runs in quad precision. cos^k - 1 is then safe
  // to form naively and the collision invariants e_0, e_2 vanish identically.
  std::vector<qfloat> a_re(K + 1, 0), a_im(K + 1, 0);
  {
    qfloat fact = 1;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      const qfloat mag = (qfloat)h.c[k] / sqrtq(fact);
      switch (k % 4) {  // (-i)^k
        case 0: a_re[k] = mag; break;
        case 1: a_im[k] = -mag; break;
        case 2: a_re[k] = -mag; break;
        case 3: a_im[k] = mag; break;
      }
    }
  }

  // fhat decays like xi^K e^{-xi^2/2}; the xi sampling only has to keep the
  // periodization images of the inverse transform far outside the window.
  double w_keep = opt.w_out;
  if (w_keep <= 0.0) w_keep = 1.46 * (std::sqrt(2.0 * K + 1.0) + 5.5) + 1.0;
  const double w_out = w_keep + 8.0;
  const double dxi = 0.0625;  // dyadic: exact nodes; v-period 2 pi/dxi ~ 100
  const int nxi = 2 * static_cast<int>(w_out / dxi) + 1;
  auto xi_at = [&](int q) { return (q - nxi / 2) * dxi; };
  const double umax = fp_u_max();
  const GaussLegendre& rule = gauss_legendre(opt.nodes);

  std::vector<qfloat> khat_re(nxi, 0), khat_im(nxi, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int kk = 0; kk < nxi; ++kk) {
    const qfloat xl = xi_at(kk);
    const qfloat gauss = expq(-0.5Q * xl * xl);
    // Integrand of the u-substituted finite part divided by u^2.
    auto eval_g = [&](double u, qfloat* gre, qfloat* gim) {
      const qfloat uq = u;
      const qfloat u2 = uq * uq;
      const qfloat c = 1 - 2 * u2;                    // cos(theta)
      const qfloat sig = 2 * uq * sqrtq(1 - u2);      // sin(theta)
      const qfloat xs = xl * sig;
      qfloat sum_re = 0, sum_im = 0;
      qfloat xpow = 1, xspow = 1, cpow = 1;
      for (int k = 0; k <= K; ++k) {
        if (k > 0) {
          xpow *= xl;
          xspow *= xs;
          cpow *= c;
        }
        if (a_re[k] != 0 || a_im[k] != 0) {
          const qfloat ck1 = cpow - 1;  // harmless at quad ulp
          sum_re += a_re[k] * xpow * ck1;
          sum_im += a_im[k] * xpow * ck1;
          if (k >= 2 && k % 2 == 0) sum_re += a_re[k] * xspow;
        }
      }
      *gre = gauss * sum_re / u2;
      *gim = gauss * sum_im / u2;
    };
    // Graded panels + quadratic-model stub, as in power_graded_integral.
    qfloat tot_re = 0, tot_im = 0;
    qfloat nu[3], ng_re[3], ng_im[3];
    for (int m = 0; m < opt.levels; ++m) {
      const double hi = umax * std::pow(0.5, m);
      const double lo = 0.5 * hi;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < opt.nodes; ++i) {
        const double u = mid + half * rule.nodes[i];
        qfloat gre, gim;
        eval_g(u, &gre, &gim);
        const qfloat w = (qfloat)rule.weights[i] * (qfloat)half *
                         powq((qfloat)u, (qfloat)(1.0 - 2.0 * s));
        tot_re += w * gre;
        tot_im += w * gim;
        const int slot = (i == 0) ? 0 : (i == opt.nodes / 2 ? 1 : (i == opt.nodes - 1 ? 2 : -1));
        if (m == opt.levels - 1 && slot >= 0) {
          nu[slot] = u;
          ng_re[slot] = gre;
          ng_im[slot] = gim;
        }
      }
    }
    {
      const qfloat um = umax * std::pow(0.5, opt.levels);
      const qfloat e1 = (qfloat)(2.0 - 2.0 * s), e2 = e1 + 1, e3 = e1 + 2;
      const qfloat p1 = powq(um, e1) / e1, p2 = powq(um, e2) / e2, p3 = powq(um, e3) / e3;
      for (int part = 0; part < 2; ++part) {
        const qfloat* y = part == 0 ? ng_re : ng_im;
        const qfloat d01 = (y[1] - y[0]) / (nu[1] - nu[0]);
        const qfloat d12 = (y[2] - y[1]) / (nu[2] - nu[1]);
        const qfloat c2 = (d12 - d01) / (nu[2] - nu[0]);
        const qfloat c1 = d01 - c2 * (nu[0] + nu[1]);
        const qfloat c0 = y[0] - c1 * nu[0] - c2 * nu[0] * nu[0];
        const qfloat stub = c0 * p1 + c1 * p2 + c2 * p3;
        if (part == 0)
          tot_re += stub;
        else
          tot_im += stub;
      }
    }
    const qfloat taper = 1 / (1 + expq((qfloat)(std::abs(xi_at(kk)) - w_keep - 4.0) / 0.5Q));
    khat_re[kk] = 4 * tot_re * taper;
    khat_im[kk] = 4 * tot_im * taper;
  }

  // Back to velocity space (1/2pi inverse) directly on the window.
  const double V = projection_window(K);
  std::vector<qfloat> G_re(n, 0), G_im(n, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < n; ++i) {
    const double x = vg.x(i);
    if (std::abs(x) > V + 1e-12) continue;
    qfloat sre = 0, sim = 0;
    for (int kk = 0; kk < nxi; ++kk) {
      const qfloat ph = (qfloat)x * (qfloat)xi_at(kk);
      qfloat sp, cp;
      sincosq(ph, &sp, &cp);
      sre += khat_re[kk] * cp - khat_im[kk] * sp;
      sim += khat_re[kk] * sp + khat_im[kk] * cp;
    }
    const qfloat scale = (qfloat)dxi / (2 * kPiQ);
    G_re[i] = sre * scale;
    G_im[i] = sim * scale;
  }

  // c_j = -integral G w_j over a shared window, w_j = psi_j / mu^{1/2}; the
  // low-j weights are small polynomials at large v, so one window sized for
  // the top mode serves every j. Solving the window Gram system afterwards
  // removes the orthogonality defect of the truncation for any band-limited
  // signal.
  LinearizedApplyReport rep;
  rep.coeffs.c.assign(K + 1, 0.0);
  rep.max_window = V;
  const int dim = K + 1;
  std::vector<qfloat> acc(dim, 0), gram(static_cast<size_t>(dim) * dim, 0);
  std::vector<qfloat> sqrt_k(dim, 0);
  for (int k = 0; k < dim; ++k) sqrt_k[k] = sqrtq((qfloat)k);
  std::vector<qfloat> wrow(dim);
  qfloat max_imag = 0;
  const qfloat hstep = (qfloat)vg.h();
  for (int i = 0; i < n; ++i) {
    const double x = vg.x(i);
    if (std::abs(x) > V) continue;
    const qfloat xq = x;
    wrow[0] = 1;
    if (K >= 1) wrow[1] = xq;
    for (int k = 1; k < K; ++k) wrow[k + 1] = (xq * wrow[k] - sqrt_k[k] * wrow[k - 1]) / sqrt_k[k + 1];
    const qfloat mu_x = expq(-0.5Q * xq * xq) / sqrtq(2 * kPiQ);
    if (fabsq(G_im[i]) > max_imag) max_imag = fabsq(G_im[i]);
    for (int j = 0; j <= K; ++j) {
      acc[j] += G_re[i] * wrow[j];
      const qfloat wj_mu = wrow[j] * mu_x;
      for (int k = j; k <= K; ++k) gram[static_cast<size_t>(j) * dim + k] += wj_mu * wrow[k];
    }
  }
  for (int j = 0; j <= K; ++j) acc[j] = -acc[j] * hstep;
  for (int j = 0; j <= K; ++j)
    for (int k = j; k <= K; ++k) {
      gram[static_cast<size_t>(j) * dim + k] *= hstep;
      gram[static_cast<size_t>(k) * dim + j] = gram[static_cast<size_t>(j) * dim + k];
    }
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r)
      if (fabsq(gram[static_cast<size_t>(r) * dim + col]) >
          fabsq(gram[static_cast<size_t>(piv) * dim + col]))
        piv = r;
    if (piv != col) {
      for (int q = 0; q < dim; ++q)
        std::swap(gram[static_cast<size_t>(col) * dim + q], gram[static_cast<size_t>(piv) * dim + q]);
      std::swap(acc[col], acc[piv]);
    }
    for (int r = col + 1; r < dim; ++r) {
      const qfloat f = gram[static_cast<size_t>(r) * dim + col] / gram[static_cast<size_t>(col) * dim + col];
      if (f == 0) continue;
      for (int q = col; q < dim; ++q)
        gram[static_cast<size_t>(r) * dim + q] -= f * gram[static_cast<size_t>(col) * dim + q];
      acc[r] -= f * acc[col];
    }
  }
  std::vector<qfloat> sol(dim, 0);
  for (int r = dim - 1; r >= 0; --r) {
    qfloat v2 = acc[r];
    for (int q = r + 1; q < dim; ++q) v2 -= gram[static_cast<size_t>(r) * dim + q] * sol[q];
    sol[r] = v2 / gram[static_cast<size_t>(r) * dim + r];
  }
  for (int r = 0; r < dim; ++r) rep.coeffs.c[r] = static_cast<double>(sol[r]);

  {
    const double p = hermite_psi(K, V);
    const double kap = std::sqrt(std::max(0.25 * V * V - (K + 0.5), 0.05));
    rep.window_tail_bound = p * p / (2.0 * kap);
  }
  rep.max_imag = static_cast<double>(max_imag);
  return rep;
}

HermiteCoeffs linearized_kac_apply(const HermiteCoeffs& h, double s,
                                   const KacApplyOptions& opt) {
  return linearized_kac_apply_report(h, s, opt).coeffs;
}

}  // namespace kacspec

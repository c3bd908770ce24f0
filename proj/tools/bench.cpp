// Timing comparison of the OpenMP kernels against their serial references.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "kacspec/common.hpp"
#include "kacspec/spectrum.hpp"
#include "kacspec/symbols.hpp"
#include "kacspec/weyl.hpp"

using namespace kacspec;

namespace {

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double t_par, double t_ser, double checksum_par,
            double checksum_ser) {
  std::printf("%-24s  parallel %8.3f s   serial %8.3f s   speedup %5.2fx   agree %s\n", name,
              t_par, t_ser, t_ser / t_par,
              checksum_par == checksum_ser ? "bitwise" : "NO (investigate)");
}

}  // namespace

int main(int argc, char** argv) {
  par::init_from_env();
  int K_spec = 1500;
  if (argc > 1) K_spec = std::atoi(argv[1]);
  const double s = 0.5;

  {
    KacSpectrum a, b;
    const double tp = timed([&] { a = build_kac_spectrum(K_spec, s); });
    const double ts = timed([&] { b = build_kac_spectrum_serial(K_spec, s); });
    double ca = 0, cb = 0;
    for (int k = 0; k <= K_spec; ++k) {
      ca += a.lambda[k];
      cb += b.lambda[k];
    }
    report("spectrum table", tp, ts, ca, cb);
  }

  {
    std::vector<double> vs(96), xis(96);
    for (int i = 0; i < 96; ++i) vs[i] = xis[i] = -8.0 + 16.0 * i / 95.0;
    const auto exp = expansion_coefficients(s, 1);
    std::vector<SymbolSample> a, b;
    const double tp = timed([&] { a = sample_symbol_grid(s, vs, xis, exp, 1); });
    const double ts = timed([&] { b = sample_symbol_grid_serial(s, vs, xis, exp, 1); });
    double ca = 0, cb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      ca += a[i].l1 + a[i].l2;
      cb += b[i].l1 + b[i].l2;
    }
    report("symbol grid sweep", tp, ts, ca, cb);
  }

  {
    const int K = 12;
    const PhaseGrid pg = default_phase_grid(K);
    SymbolFn osc = [](double v, double xi) { return xi * xi + 0.25 * v * v; };
    OperatorMatrix A, B;
    const double tp = timed([&] { A = operator_matrix(osc, K, pg); });
    const double ts = timed([&] { B = operator_matrix_serial(osc, K, pg); });
    double ca = 0, cb = 0;
    for (int m = 0; m <= K; ++m) {
      ca += A.at(m, m).real();
      cb += B.at(m, m).real();
    }
    report("operator matrix fill", tp, ts, ca, cb);
  }
  return 0;
}

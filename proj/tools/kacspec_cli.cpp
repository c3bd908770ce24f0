// Command-line front end: reproducible CSV/JSON artifacts for the spectral
// experiments. Every command validates its config, writes one output file
// with a metadata header, and exits nonzero on any tolerance breach so CI
// can gate on it (0 ok, 2 validation, 3 accuracy/tolerance, 4 io).

#include <CLI11.hpp>
#include <json.hpp>

#include <clocale>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kacspec/bobylev.hpp"
#include "kacspec/common.hpp"
#include "kacspec/evolution.hpp"
#include "kacspec/hermite.hpp"
#include "kacspec/io.hpp"
#include "kacspec/spectrum.hpp"
#include "kacspec/symbols.hpp"
#include "kacspec/weyl.hpp"

using json = nlohmann::json;
using namespace kacspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitIo = 4;

struct RunConfig {
  double s = 0.5;
  int K = 200;
  int d = 1;
  double L = 8.0;
  int points = 41;
  double tol = 1e-6;
  double t = 1.0;
  double t_max = 2.0;
  int steps = 8;
  unsigned seed = 12345;
  std::string out = "out.csv";
  std::string format = "csv";
  std::string profile = "quick";
  std::string symbol = "l1";
  int order = 1;
  int threads = 0;

  void validate() const {
    if (!(s > 0.0 && s < 1.0)) throw CLI::ValidationError("--s must lie in (0,1)");
    if (K < 1) throw CLI::ValidationError("--K must be >= 1");
    if (d < 1 || d > 3) throw CLI::ValidationError("--d must be 1, 2 or 3");
    if (format != "csv" && format != "json")
      throw CLI::ValidationError("--format must be csv or json");
  }
};

void echo_meta(io::CsvWriter& w, const RunConfig& c) {
  w.meta("s", io::fmt(c.s));
  w.meta("K", std::to_string(c.K));
  w.meta("d", std::to_string(c.d));
  w.meta("seed", std::to_string(c.seed));
  w.meta("profile", c.profile);
}

json meta_json(const RunConfig& c) {
  return json{{"version", io::kVersion}, {"s", c.s},       {"K", c.K},
              {"d", c.d},                {"seed", c.seed}, {"profile", c.profile}};
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::ios_base::failure("write failure on " + path);
}

int cmd_spectrum(const RunConfig& cfg) {
  const KacSpectrum sp = build_kac_spectrum(cfg.K, cfg.s, 1e-12);
  bool breach = false;
  if (std::abs(sp.lambda[std::min(2, cfg.K)]) > 1e-10) breach = true;
  for (double l : sp.lambda)
    if (l < -1e-10) breach = true;

  if (cfg.format == "csv") {
    io::CsvWriter w(cfg.out);
    echo_meta(w, cfg);
    w.meta("c0", io::fmt(sp.constants.c0));
    w.meta("d0", io::fmt(sp.constants.d0));
    w.header({"k", "lambda", "lambda_prime", "lambda_doubleprime", "ratio_to_c0_ks"});
    for (int k = 0; k <= cfg.K; ++k) {
      const double lpp = (k >= 2 && k % 2 == 0) ? sp.lambda_pp[k / 2] : 0.0;
      const double ratio = k >= 1 ? sp.lambda[k] / std::pow(double(k), cfg.s) : 0.0;
      w.row({double(k), sp.lambda[k], sp.lambda_p[k], lpp, ratio});
    }
    w.close();
  } else {
    json rows = json::array();
    for (int k = 0; k <= cfg.K; ++k) {
      const double lpp = (k >= 2 && k % 2 == 0) ? sp.lambda_pp[k / 2] : 0.0;
      rows.push_back({{"k", k},
                      {"lambda", sp.lambda[k]},
                      {"lambda_prime", sp.lambda_p[k]},
                      {"lambda_doubleprime", lpp},
                      {"ratio_to_c0_ks",
                       k >= 1 ? sp.lambda[k] / std::pow(double(k), cfg.s) : 0.0}});
    }
    write_json_file(cfg.out, json{{"meta", meta_json(cfg)},
                                  {"c0", sp.constants.c0},
                                  {"d0", sp.constants.d0},
                                  {"rows", rows}});
  }
  return breach ? kExitAccuracy : kExitOk;
}

int cmd_asymptotics(const RunConfig& cfg) {
  const auto rows = asymptotic_diagnostic(cfg.K, cfg.s);
  const double c0 = c0_constant(cfg.s);
  io::CsvWriter w(cfg.out);
  echo_meta(w, cfg);
  w.meta("c0", io::fmt(c0));
  w.header({"k", "lambda", "ratio", "gap"});
  for (const auto& r : rows) w.row({double(r.k), r.lambda, r.ratio, r.gap});
  w.close();
  // Gate: the ratio column must be approaching c0 (strictly closer at the
  // final row than two decades earlier) and land within 3% once K >= 1e4.
  const auto& last = rows.back();
  double ref_ratio = rows.front().ratio;
  for (const auto& r : rows)
    if (r.k <= std::max(100, cfg.K / 100)) ref_ratio = r.ratio;
  const bool approaching = std::abs(last.ratio - c0) < std::abs(ref_ratio - c0);
  const bool within = cfg.K < 10000 || std::abs(last.ratio - c0) / c0 <= 0.03;
  return (approaching && within) ? kExitOk : kExitAccuracy;
}

int cmd_symbol_grid(const RunConfig& cfg) {
  std::vector<double> vs(cfg.points), xis(cfg.points);
  for (int i = 0; i < cfg.points; ++i) {
    vs[i] = -cfg.L + 2.0 * cfg.L * i / (cfg.points - 1);
    xis[i] = vs[i];
  }
  const auto exp = expansion_coefficients(cfg.s, std::max(cfg.order, 1));
  const auto rows = sample_symbol_grid(cfg.s, vs, xis, exp, cfg.order);

  if (cfg.format == "csv") {
    io::CsvWriter w(cfg.out);
    echo_meta(w, cfg);
    w.meta("order", std::to_string(cfg.order));
    w.header({"v", "xi", "lambda", "l1", "l2", "expansion_" + std::to_string(cfg.order),
              "residual"});
    for (const auto& r : rows)
      w.row({r.v, r.xi, r.lambda, r.l1, r.l2, r.expansion, r.residual});
    w.close();
  } else {
    json jrows = json::array();
    for (const auto& r : rows)
      jrows.push_back({{"v", r.v},
                       {"xi", r.xi},
                       {"lambda", r.lambda},
                       {"l1", r.l1},
                       {"l2", r.l2},
                       {"expansion", r.expansion},
                       {"residual", r.residual}});
    write_json_file(cfg.out, json{{"meta", meta_json(cfg)}, {"rows", jrows}});
  }

  // Gate: weighted l2 decay: sup |l2| e^{rho2/3} should be attained near the
  // origin (within 2x of the center neighborhood).
  double w_max = 0.0, w_center = 0.0;
  for (const auto& r : rows) {
    const double rho2 = r.lambda - 1.0;
    const double weighted = std::abs(r.l2) * std::exp(rho2 / 3.0);
    w_max = std::max(w_max, weighted);
    if (std::abs(r.v) <= 1.0 && std::abs(r.xi) <= 1.0) w_center = std::max(w_center, weighted);
  }
  return (w_max <= 2.0 * w_center) ? kExitOk : kExitAccuracy;
}

int cmd_diag_check(const RunConfig& cfg) {
  const PhaseGrid pg = default_phase_grid(cfg.K);
  std::vector<double> expected(cfg.K + 1, 0.0);
  SymbolFn fn;
  const double s = cfg.s;
  if (cfg.symbol == "l1") {
    for (int k = 0; k <= cfg.K; ++k) expected[k] = lambda_prime(k, s);
    fn = [s](double v, double xi) { return l1_value(xi * xi + 0.25 * v * v, s); };
  } else if (cfg.symbol == "l2") {
    for (int k = 2; k <= cfg.K; k += 2) expected[k] = -lambda_doubleprime(k / 2, s);
    fn = [s](double v, double xi) { return l2_value(xi * xi + 0.25 * v * v, s); };
  } else if (cfg.symbol == "full") {
    for (int k = 0; k <= cfg.K; ++k) expected[k] = kac_eigenvalue(k, s);
    fn = [s](double v, double xi) {
      const double r2 = xi * xi + 0.25 * v * v;
      return l1_value(r2, s) + l2_value(r2, s);
    };
  } else if (cfg.symbol == "mehler") {
    const double t = cfg.t;
    for (int k = 0; k <= cfg.K; ++k) expected[k] = std::exp(-t * (k + 0.5));
    fn = [t](double v, double xi) { return mehler_symbol_rho2(t, xi * xi + 0.25 * v * v, 1); };
  } else if (cfg.symbol == "oscillator") {
    for (int k = 0; k <= cfg.K; ++k) expected[k] = k + 0.5;
    fn = [](double v, double xi) { return xi * xi + 0.25 * v * v; };
  } else {
    throw CLI::ValidationError("--symbol must be one of l1, l2, full, mehler, oscillator");
  }

  const DiagReport rep = diagonalization_check(fn, cfg.K, expected, pg);
  json jorep{{"meta", meta_json(cfg)},
             {"symbol", cfg.symbol},
             {"grid_L", pg.axis.L},
             {"grid_points", pg.axis.n},
             {"max_offdiag", rep.max_offdiag},
             {"max_diag_dev", rep.max_diag_dev},
             {"max_imag", rep.max_imag},
             {"hermiticity_defect", rep.hermiticity_defect},
             {"diag", rep.diag},
             {"expected", rep.expected}};
  write_json_file(cfg.out, jorep);
  return (rep.max_offdiag <= cfg.tol && rep.max_diag_dev <= cfg.tol) ? kExitOk : kExitAccuracy;
}

int cmd_mehler_check(const RunConfig& cfg) {
  const PhaseGrid pg = default_phase_grid(cfg.K);
  const double t = cfg.t;
  SymbolFn fn = [t](double v, double xi) {
    return mehler_symbol_rho2(t, xi * xi + 0.25 * v * v, 1);
  };
  std::vector<double> expected(cfg.K + 1);
  for (int k = 0; k <= cfg.K; ++k) expected[k] = std::exp(-t * (k + 0.5));
  const DiagReport rep = diagonalization_check(fn, cfg.K, expected, pg);

  io::CsvWriter w(cfg.out);
  echo_meta(w, cfg);
  w.meta("t", io::fmt(t));
  w.header({"n", "diag", "expected", "deviation"});
  for (int k = 0; k <= cfg.K; ++k)
    w.row({double(k), rep.diag[k], expected[k], rep.diag[k] - expected[k]});
  w.close();
  return (rep.max_diag_dev <= cfg.tol && rep.max_offdiag <= cfg.tol) ? kExitOk : kExitAccuracy;
}

int cmd_bobylev_check(const RunConfig& cfg) {
  const KacSpectrum sp = build_kac_spectrum(cfg.K, cfg.s);
  io::CsvWriter w(cfg.out);
  echo_meta(w, cfg);
  w.header({"k", "lambda_spectrum", "lambda_bobylev", "rel_error", "offmode_leakage"});
  bool ok = true;
  for (int k = 0; k <= cfg.K; ++k) {
    HermiteCoeffs e;
    e.c.assign(cfg.K + 1, 0.0);
    e.c[k] = 1.0;
    const HermiteCoeffs r = linearized_kac_apply(e, cfg.s);
    const double got = r.c[k];
    long double leak2 = 0.0L;
    for (int j = 0; j <= cfg.K; ++j)
      if (j != k) leak2 += (long double)r.c[j] * r.c[j];
    const double leak = std::sqrt(static_cast<double>(leak2));
    const double expect = sp.lambda[k];
    const double scale = (k == 0 || k == 2) ? 1.0 : expect;
    const double rel = std::abs(got - expect) / scale;
    const double leak_rel = leak / scale;
    if (rel > 1e-5 || leak_rel > 1e-5) ok = false;
    w.row({double(k), expect, got, rel, leak_rel});
  }
  w.close();
  return ok ? kExitOk : kExitAccuracy;
}

int cmd_evolve(const RunConfig& cfg) {
  const KacSpectrum sp = build_kac_spectrum(cfg.K, cfg.s);
  std::mt19937 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  EvolutionState st;
  st.coeffs.c.resize(cfg.K + 1);
  for (auto& c : st.coeffs.c) c = gauss(rng);

  io::CsvWriter w(cfg.out);
  echo_meta(w, cfg);
  w.header({"t", "mode", "coeff", "log_abs"});
  const double dt = cfg.t_max / cfg.steps;
  bool ok = true;
  const double c0_init = st.coeffs.c[0];
  const double c2_init = cfg.K >= 2 ? st.coeffs.c[2] : 0.0;
  double prev_norm = st.coeffs.norm2();
  for (int step = 0; step <= cfg.steps; ++step) {
    for (int k = 0; k <= cfg.K; ++k) {
      const double c = st.coeffs.c[k];
      w.row({st.t, double(k), c, c != 0.0 ? std::log(std::abs(c)) : -1e308});
    }
    if (step == cfg.steps) break;
    st = semigroup_evolve(st, dt, sp);
    const double now = st.coeffs.norm2();
    if (now > prev_norm * (1.0 + 1e-12)) ok = false;
    prev_norm = now;
    if (std::abs(st.coeffs.c[0] - c0_init) > 1e-14) ok = false;
    if (cfg.K >= 2 && std::abs(st.coeffs.c[2] - c2_init) > 1e-12 * std::abs(c2_init)) ok = false;
  }
  w.close();
  return ok ? kExitOk : kExitAccuracy;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"kacspec: spectral and phase-space analysis of the linearized "
               "non-cutoff Kac collision operator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::map<const CLI::App*, CLI::Option*> k_options;

  auto add_common = [&cfg, &k_options](CLI::App* c) {
    c->add_option("--threads", cfg.threads, "worker threads (0 = runtime default)");
    c->add_option("--s", cfg.s, "singularity exponent in (0,1)");
    k_options[c] = c->add_option("--K", cfg.K, "largest Hermite index");
    c->add_option("--d", cfg.d, "dimension (radial Boltzmann variants)");
    c->add_option("--tol", cfg.tol, "gate tolerance");
    c->add_option("--seed", cfg.seed, "seed for randomized inputs");
    c->add_option("--out", cfg.out, "output file");
    c->add_option("--format", cfg.format, "csv or json");
    c->add_option("--profile", cfg.profile, "quick or full parameter set");
  };

  CLI::App* c_spectrum = app.add_subcommand("spectrum", "eigenvalue table with asymptotics");
  add_common(c_spectrum);

  CLI::App* c_asy = app.add_subcommand("asymptotics", "lambda_k / k^s diagnostic table");
  add_common(c_asy);

  CLI::App* c_grid = app.add_subcommand("symbol-grid", "sample l1/l2 and the expansion");
  add_common(c_grid);
  c_grid->add_option("--L", cfg.L, "grid half-width");
  c_grid->add_option("--points", cfg.points, "points per axis");
  c_grid->add_option("--order", cfg.order, "expansion order in the residual column");

  CLI::App* c_diag = app.add_subcommand("diag-check", "Weyl-matrix diagonality report");
  add_common(c_diag);
  c_diag->add_option("--symbol", cfg.symbol, "l1, l2, full, mehler or oscillator");
  c_diag->add_option("--t", cfg.t, "Mehler time (symbol=mehler)");

  CLI::App* c_meh = app.add_subcommand("mehler-check", "semigroup diagonal e^{-t(n+1/2)}");
  add_common(c_meh);
  c_meh->add_option("--t", cfg.t, "Mehler time");

  CLI::App* c_bob = app.add_subcommand("bobylev-check", "Fourier-route eigenvalue check");
  add_common(c_bob);

  CLI::App* c_evo = app.add_subcommand("evolve", "semigroup trajectory export");
  add_common(c_evo);
  c_evo->add_option("--t-max", cfg.t_max, "final time");
  c_evo->add_option("--steps", cfg.steps, "number of steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    par::init_from_env();
    if (cfg.threads > 0) par::set_threads(cfg.threads);
    const bool full = cfg.profile == "full";
    if (!full && cfg.profile != "quick")
      throw CLI::ValidationError("--profile must be quick or full");

    // Per-command K default (desk-scale under quick, thorough under full)
    // when the user did not pass --K.
    CLI::App* active = app.get_subcommands().front();
    if (k_options.count(active) != 0 && k_options[active]->count() == 0) {
      if (active == c_spectrum) cfg.K = full ? 2000 : 200;
      if (active == c_asy) cfg.K = full ? 10000 : 2000;
      if (active == c_diag) cfg.K = full ? 20 : 8;
      if (active == c_meh) cfg.K = 10;
      if (active == c_bob) cfg.K = full ? 20 : 8;
      if (active == c_evo) cfg.K = full ? 32 : 16;
    }
    cfg.validate();

    if (c_spectrum->parsed()) return cmd_spectrum(cfg);
    if (c_asy->parsed()) return cmd_asymptotics(cfg);
    if (c_grid->parsed()) return cmd_symbol_grid(cfg);
    if (c_diag->parsed()) return cmd_diag_check(cfg);
    if (c_meh->parsed()) return cmd_mehler_check(cfg);
    if (c_bob->parsed()) return cmd_bobylev_check(cfg);
    if (c_evo->parsed()) return cmd_evolve(cfg);
    return kExitValidation;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const accuracy_error& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const consistency_error& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

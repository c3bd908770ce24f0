#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;

int run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("spectrum command writes the pinned CSV columns and passes its gate") {
  REQUIRE(run("spectrum --s 0.5 --K 50 --out /tmp/kacspec_spec.csv") == 0);
  const auto text = slurp("/tmp/kacspec_spec.csv");
  const auto lines = lines_of(text);
  REQUIRE(lines.size() > 10);
  CHECK(lines[0].rfind("# version=", 0) == 0);
  bool header_found = false;
  for (const auto& l : lines)
    if (l == "k,lambda,lambda_prime,lambda_doubleprime,ratio_to_c0_ks") header_found = true;
  CHECK(header_found);
  // Row k = 2 carries a vanishing eigenvalue.
  for (const auto& l : lines) {
    if (l.rfind("2,", 0) == 0) {
      const double lam = std::atof(l.substr(2).c_str());
      CHECK(std::abs(lam) < 1e-10);
      break;
    }
  }
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run("spectrum --s 1.5 --K 50 --out /tmp/kacspec_bad.csv") == 2);
  CHECK(run("spectrum --s 0.5 --K 0 --out /tmp/kacspec_bad.csv") == 2);
  CHECK(run("diag-check --symbol bogus --out /tmp/kacspec_bad.json") == 2);
  CHECK(run("nosuchcommand") == 2);
}

TEST_CASE("same config gives byte-identical output") {
  REQUIRE(run("evolve --s 0.5 --K 12 --seed 99 --steps 5 --out /tmp/kacspec_evo1.csv") == 0);
  REQUIRE(run("evolve --s 0.5 --K 12 --seed 99 --steps 5 --out /tmp/kacspec_evo2.csv") == 0);
  CHECK(slurp("/tmp/kacspec_evo1.csv") == slurp("/tmp/kacspec_evo2.csv"));
  REQUIRE(run("spectrum --s 0.5 --K 40 --out /tmp/kacspec_s1.csv --threads 1") == 0);
  REQUIRE(run("spectrum --s 0.5 --K 40 --out /tmp/kacspec_s2.csv --threads 4") == 0);
  CHECK(slurp("/tmp/kacspec_s1.csv") == slurp("/tmp/kacspec_s2.csv"));
}

TEST_CASE("mehler and diag-check commands gate on their tolerances") {
  CHECK(run("mehler-check --t 1 --K 6 --out /tmp/kacspec_meh.csv") == 0);
  const auto lines = lines_of(slurp("/tmp/kacspec_meh.csv"));
  bool header = false;
  for (const auto& l : lines)
    if (l == "n,diag,expected,deviation") header = true;
  CHECK(header);

  CHECK(run("diag-check --symbol oscillator --K 5 --tol 1e-7 --out /tmp/kacspec_diag.json") == 0);
  const auto text = slurp("/tmp/kacspec_diag.json");
  CHECK(text.find("\"max_offdiag\"") != std::string::npos);
  CHECK(text.find("\"symbol\": \"oscillator\"") != std::string::npos);
}

TEST_CASE("symbol-grid emits the pinned columns") {
  REQUIRE(run("symbol-grid --s 0.5 --points 9 --L 4 --order 1 --out /tmp/kacspec_grid.csv") == 0);
  const auto lines = lines_of(slurp("/tmp/kacspec_grid.csv"));
  bool header = false;
  for (const auto& l : lines)
    if (l == "v,xi,lambda,l1,l2,expansion_1,residual") header = true;
  CHECK(header);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-kacspec-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}

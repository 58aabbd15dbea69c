#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "morrey/corpus.hpp"
#include "morrey/io.hpp"
#include "morrey/polar.hpp"
#include "morrey/verify.hpp"

using namespace morrey;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("morrey_test_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MORREY_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const char* kTinyGrid = R"({"n": 2, "L": 2.0, "h": 0.25, "p": 4.0})";

}  // namespace

TEST_CASE("field csv round trips bit exactly") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField u(s);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : u.values) v = dist(rng) * std::pow(10.0, dist(rng) * 8.0);

  const fs::path dir = temp_dir();
  const std::string path = (dir / "field.csv").string();
  write_field_csv(path, u);
  ScalarField back = read_field_csv(path, s);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    CHECK(back.values[i] == u.values[i]);

  // Writing the re-read field reproduces the file byte for byte.
  const std::string path2 = (dir / "field2.csv").string();
  write_field_csv(path2, back);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("malformed field csv is rejected with a diagnostic") {
  GridSpec s{2, 2.0, 0.5, 4.0};
  const fs::path dir = temp_dir();

  write_text(dir / "short.csv", "x1,x2,value\n0,0,1.0\n");
  CHECK_THROWS_AS(read_field_csv((dir / "short.csv").string(), s),
                  std::runtime_error);

  write_text(dir / "header.csv", "a,b,c\n");
  CHECK_THROWS_AS(read_field_csv((dir / "header.csv").string(), s),
                  std::runtime_error);

  CHECK_THROWS_AS(read_field_csv((dir / "missing.csv").string(), s),
                  std::runtime_error);
}

TEST_CASE("grid spec json round trips") {
  GridSpec s{3, 4.0, 0.125, 5.0};
  const fs::path dir = temp_dir();
  const std::string path = (dir / "grid.json").string();
  write_grid_spec(path, s);
  GridSpec back = read_grid_spec(path);
  CHECK(back == s);
}

TEST_CASE("polar csv round trips bit exactly") {
  PolarSpec ps;
  ps.n = 2;
  ps.n_shells = 4;
  ps.dt = 0.25;
  ps.n_theta = 8;
  PolarField v = random_polar_field(ps, 9);
  const fs::path dir = temp_dir();
  const std::string path = (dir / "polar.csv").string();
  write_polar_csv(path, v);
  PolarField back = read_polar_csv(path, ps);
  for (std::size_t i = 0; i < v.values.size(); ++i)
    CHECK(back.values[i] == v.values[i]);
}

TEST_CASE("report json carries the schema") {
  VerificationReport rep;
  rep.spec = GridSpec{2, 2.0, 0.25, 4.0};
  rep.energy = 1.5;
  rep.converged = true;
  CheckResult c;
  c.name = "demo";
  c.max_violation = 0.2;
  c.tolerance = 0.1;
  c.passed = false;
  c.witnesses = {{0.0, 1.0}};
  rep.checks.push_back(c);
  rep.inequalities.push_back(make_inequality("iq", 1.0, 2.0, 0.0));

  const std::string j = report_to_json(rep);
  for (const char* key : {"\"solver\"", "\"checks\"", "\"inequalities\"",
                          "\"max_violation\"", "\"witnesses\"", "\"deficit\""})
    CHECK(j.find(key) != std::string::npos);
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("cli solve, verify, figures, and symmetrize pipeline") {
  const fs::path dir = temp_dir();
  write_text(dir / "solve.json",
             std::string("{\"grid\": ") + kTinyGrid +
                 ", \"solver\": {\"grad_tol\": 1e-7}, \"output_dir\": \"" +
                 (dir / "out").string() + "\"}");
  CHECK(run_cli("solve --config " + (dir / "solve.json").string()) == 0);
  CHECK(fs::exists(dir / "out" / "field.csv"));
  CHECK(fs::exists(dir / "out" / "solution.json"));

  write_text(dir / "verify.json",
             std::string("{\"grid\": ") + kTinyGrid + ", \"field\": \"" +
                 (dir / "out" / "field.csv").string() +
                 // On the cramped L = 2 box the pins sit at half the box
                 // radius, so allow slower far-field decay than the default.
                 "\", \"checks\": {\"tol_sym\": 1e-4, \"tol_mono\": 1e-4, "
                 "\"decay_threshold_frac\": 0.5}, "
                 "\"output_dir\": \"" +
                 (dir / "out").string() + "\"}");
  CHECK(run_cli("verify --config " + (dir / "verify.json").string()) == 0);
  CHECK(fs::exists(dir / "out" / "report.json"));

  CHECK(run_cli("figures --config " + (dir / "verify.json").string()) == 0);
  CHECK(fs::exists(dir / "out" / "slices.csv"));
  CHECK(fs::exists(dir / "out" / "spheres.csv"));

  write_text(dir / "symm.json",
             std::string("{\"grid\": ") + kTinyGrid + ", \"field\": \"" +
                 (dir / "out" / "field.csv").string() +
                 "\", \"operator\": \"axial_average\", \"output_dir\": \"" +
                 (dir / "out").string() + "\"}");
  CHECK(run_cli("symmetrize --config " + (dir / "symm.json").string()) == 0);
  CHECK(fs::exists(dir / "out" / "axial_average.csv"));

  // Determinism: a rerun reproduces the outputs byte for byte.
  const std::string field_bytes = slurp(dir / "out" / "field.csv");
  const std::string report_bytes = slurp(dir / "out" / "report.json");
  CHECK(run_cli("solve --config " + (dir / "solve.json").string()) == 0);
  CHECK(run_cli("verify --config " + (dir / "verify.json").string()) == 0);
  CHECK(slurp(dir / "out" / "field.csv") == field_bytes);
  CHECK(slurp(dir / "out" / "report.json") == report_bytes);
}

TEST_CASE("cli verify exits 1 when a check fails") {
  const fs::path dir = temp_dir();
  // An asymmetric non-solution field cannot pass the theorem checks.
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField junk = testutil::fill(s, [](double x1, double x2, double) {
    return std::exp(-(x1 - 0.5) * (x1 - 0.5) - x2 * x2);
  });
  write_field_csv((dir / "junk.csv").string(), junk);
  write_text(dir / "verify.json",
             std::string("{\"grid\": ") + kTinyGrid + ", \"field\": \"" +
                 (dir / "junk.csv").string() + "\", \"output_dir\": \"" +
                 (dir / "out").string() + "\"}");
  CHECK(run_cli("verify --config " + (dir / "verify.json").string()) == 1);
}

TEST_CASE("cli usage errors exit 2") {
  const fs::path dir = temp_dir();
  CHECK(run_cli("solve --config " + (dir / "nope.json").string()) == 2);

  write_text(dir / "unknown.json",
             std::string("{\"grid\": ") + kTinyGrid + ", \"bogus\": 1}");
  CHECK(run_cli("solve --config " + (dir / "unknown.json").string()) == 2);

  write_text(dir / "badgrid.json", "{\"grid\": {\"n\": 2, \"h\": 0.3}}");
  CHECK(run_cli("solve --config " + (dir / "badgrid.json").string()) == 2);

  write_text(dir / "badkey.json",
             std::string("{\"grid\": ") + kTinyGrid +
                 ", \"solver\": {\"stepsize\": 1}}");
  CHECK(run_cli("solve --config " + (dir / "badkey.json").string()) == 2);

  CHECK(run_cli("frobnicate --config x.json") == 2);
  CHECK(run_cli("solve") == 2);
}

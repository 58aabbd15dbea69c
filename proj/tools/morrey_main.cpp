// Command-line front end: solve / verify / symmetrize / sweep / figures,
// each driven by a JSON config. Exit codes: 0 pass, 1 check failure,
// 2 usage or IO error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "morrey/corpus.hpp"
#include "morrey/extremal.hpp"
#include "morrey/field_ops.hpp"
#include "morrey/inequalities.hpp"
#include "morrey/io.hpp"
#include "morrey/symmetrize.hpp"
#include "morrey/verify.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw UsageError("unknown key '" + it.key() + "' in " + where);
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("malformed config " + path + ": " + e.what());
  }
  return j;
}

morrey::GridSpec parse_grid(const json& cfg) {
  if (!cfg.contains("grid")) throw UsageError("config missing 'grid'");
  const json& g = cfg.at("grid");
  reject_unknown(g, {"n", "L", "h", "p"}, "grid");
  morrey::GridSpec s;
  s.n = g.value("n", 2);
  s.L = g.value("L", 8.0);
  s.h = g.value("h", 0.25);
  s.p = g.value("p", 4.0);
  s.validate();
  return s;
}

morrey::SolverConfig parse_solver(const json& cfg) {
  morrey::SolverConfig sc;
  if (!cfg.contains("solver")) return sc;
  const json& j = cfg.at("solver");
  reject_unknown(j, {"max_iters", "grad_tol", "init", "seed", "warm_start"},
                 "solver");
  sc.max_iters = j.value("max_iters", sc.max_iters);
  sc.grad_tol = j.value("grad_tol", sc.grad_tol);
  sc.seed = j.value("seed", sc.seed);
  const std::string init = j.value("init", std::string("two_spike"));
  if (init == "zero") {
    sc.init = morrey::SolverConfig::Init::Zero;
  } else if (init == "two_spike") {
    sc.init = morrey::SolverConfig::Init::TwoSpike;
  } else if (init == "random") {
    sc.init = morrey::SolverConfig::Init::Random;
  } else {
    throw UsageError("solver.init must be zero|two_spike|random");
  }
  return sc;
}

morrey::ReportConfig parse_checks(const json& cfg) {
  morrey::ReportConfig rc;
  if (!cfg.contains("checks")) return rc;
  const json& j = cfg.at("checks");
  reject_unknown(j,
                 {"tol_sym", "tol_mono", "eps_disc", "symmetry_trials",
                  "quasiconcavity_pairs", "seed", "levels",
                  "decay_threshold_frac", "morrey_slack"},
                 "checks");
  rc.tol_sym = j.value("tol_sym", rc.tol_sym);
  rc.tol_mono = j.value("tol_mono", rc.tol_mono);
  rc.eps_disc = j.value("eps_disc", rc.eps_disc);
  rc.symmetry_trials = j.value("symmetry_trials", rc.symmetry_trials);
  rc.quasiconcavity_pairs = j.value("quasiconcavity_pairs", rc.quasiconcavity_pairs);
  rc.seed = j.value("seed", rc.seed);
  if (j.contains("levels")) rc.levels = j.at("levels").get<std::vector<double>>();
  rc.decay_threshold_frac = j.value("decay_threshold_frac", rc.decay_threshold_frac);
  rc.morrey_slack = j.value("morrey_slack", rc.morrey_slack);
  return rc;
}

fs::path out_dir(const json& cfg, const std::string& override_dir) {
  fs::path dir = override_dir.empty()
                     ? fs::path(cfg.value("output_dir", std::string(".")))
                     : fs::path(override_dir);
  fs::create_directories(dir);
  return dir;
}

morrey::ExtremalSolution load_solution(const json& cfg, const morrey::GridSpec& s) {
  if (!cfg.contains("field")) throw UsageError("config missing 'field'");
  morrey::ExtremalSolution sol;
  sol.field = morrey::read_field_csv(cfg.at("field").get<std::string>(), s);
  sol.energy = morrey::dirichlet_energy(sol.field);
  auto sem = morrey::holder_seminorm(sol.field);
  sol.seminorm = sem.value;
  sol.argmax_x = sem.x;
  sol.argmax_y = sem.y;
  sol.source_strength = 0.5 * sol.energy;
  sol.sharp_constant =
      sol.energy > 0.0 ? sol.seminorm / std::pow(sol.energy, 1.0 / s.p) : 0.0;
  sol.converged = true;
  return sol;
}

const std::set<std::string> kTopKeys = {"grid",     "solver",   "checks",
                                        "corpus",   "output_dir", "field",
                                        "operator", "zeta"};

int cmd_solve(const json& cfg, const std::string& dir_override) {
  reject_unknown(cfg, kTopKeys, "config");
  const auto spec = parse_grid(cfg);
  const auto solver = parse_solver(cfg);
  auto sol = morrey::solve_extremal(spec, solver);
  const fs::path dir = out_dir(cfg, dir_override);
  morrey::write_grid_spec((dir / "grid.json").string(), spec);
  morrey::write_field_csv((dir / "field.csv").string(), sol.field);
  morrey::write_solution_json((dir / "solution.json").string(), sol);
  if (!sol.converged) {
    std::cerr << "solver did not converge within max_iters\n";
    return 1;
  }
  std::cout << "energy " << sol.energy << " seminorm " << sol.seminorm
            << " sharp_constant " << sol.sharp_constant << "\n";
  return 0;
}

int cmd_verify(const json& cfg, const std::string& dir_override) {
  reject_unknown(cfg, kTopKeys, "config");
  const auto spec = parse_grid(cfg);
  const auto rc = parse_checks(cfg);
  const auto sol = load_solution(cfg, spec);
  const auto rep = morrey::run_full_report(sol, rc);
  const fs::path dir = out_dir(cfg, dir_override);
  morrey::write_report_json((dir / "report.json").string(), rep);
  for (const auto& c : rep.checks) {
    std::cout << (c.passed ? "pass " : "FAIL ") << c.name << " violation "
              << c.max_violation << " tol " << c.tolerance << "\n";
    if (!c.passed) {
      for (const auto& w : c.witnesses) {
        std::cout << "  witness";
        for (double x : w) std::cout << " " << x;
        std::cout << "\n";
      }
    }
  }
  for (const auto& q : rep.inequalities) {
    std::cout << (q.passed ? "pass " : "FAIL ") << q.name << " deficit "
              << q.deficit << " tol " << q.tolerance << "\n";
  }
  return rep.all_passed() ? 0 : 1;
}

int cmd_symmetrize(const json& cfg, const std::string& dir_override) {
  reject_unknown(cfg, kTopKeys, "config");
  const auto spec = parse_grid(cfg);
  if (!cfg.contains("operator")) throw UsageError("config missing 'operator'");
  const std::string op = cfg.at("operator").get<std::string>();
  if (!cfg.contains("field")) throw UsageError("config missing 'field'");
  auto u = morrey::read_field_csv(cfg.at("field").get<std::string>(), spec);
  const fs::path dir = out_dir(cfg, dir_override);

  if (op == "axial_average") {
    morrey::write_field_csv((dir / "axial_average.csv").string(),
                            morrey::axial_average(u));
  } else if (op == "axial_sweep") {
    std::array<double, 2> zeta{1.0, 0.0};
    if (cfg.contains("zeta")) {
      auto z = cfg.at("zeta").get<std::vector<double>>();
      if (z.size() != static_cast<std::size_t>(spec.n - 1))
        throw UsageError("zeta must have n-1 entries");
      zeta[0] = z[0];
      if (z.size() > 1) zeta[1] = z[1];
    }
    morrey::write_field_csv((dir / "axial_sweep.csv").string(),
                            morrey::axial_sweep(u, zeta));
  } else if (op == "positive_part") {
    morrey::write_field_csv((dir / "positive_part.csv").string(),
                            morrey::positive_part(u));
  } else if (op == "cap_rearrange") {
    const auto ps = morrey::default_polar_spec(spec);
    auto pv = morrey::to_polar(u, ps);
    morrey::write_polar_csv((dir / "cap_rearrange.csv").string(),
                            morrey::cap_rearrange(pv));
  } else {
    throw UsageError("unknown operator: " + op);
  }
  return 0;
}

int cmd_sweep(const json& cfg, const std::string& dir_override) {
  reject_unknown(cfg, kTopKeys, "config");
  const auto spec = parse_grid(cfg);
  int count = 20;
  std::uint64_t seed = 0;
  if (cfg.contains("corpus")) {
    const json& j = cfg.at("corpus");
    reject_unknown(j, {"count", "seed"}, "corpus");
    count = j.value("count", count);
    seed = j.value("seed", seed);
  }

  auto smooth = morrey::smooth_corpus(spec, count, seed);
  auto axi = morrey::axisymmetric_corpus(spec, 20, seed + 1000);
  const double eps = morrey::calibrate_eps_disc(
      axi, [](const morrey::ScalarField& u) {
        return morrey::polya_szego_axial(u, 0.0);
      });

  json rows = json::array();
  bool all_pass = true;
  auto record = [&](const morrey::InequalityResult& r) {
    rows.push_back(json{{"name", r.name},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"deficit", r.deficit},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed}});
    all_pass = all_pass && r.passed;
  };

  for (std::size_t i = 0; i + 1 < smooth.size(); i += 2)
    record(morrey::clarkson_fields(smooth[i], smooth[i + 1]));
  const auto dirs = morrey::sweep_directions(spec.n);
  for (const auto& u : smooth) {
    record(morrey::polya_szego_axial(u, eps));
    record(morrey::sweep_average(u, dirs, eps));
    if (spec.n == 3) record(morrey::gradient_split_elementary(u));
  }

  const auto pspec = morrey::default_polar_spec(spec);
  auto polar = morrey::polar_corpus(pspec, count, seed + 2000);
  std::vector<morrey::PolarField> fixed;
  for (int i = 0; i < 20; ++i)
    fixed.push_back(morrey::cap_rearrange(
        morrey::random_polar_field(pspec, seed + 3000 + static_cast<std::uint64_t>(i))));
  const double eps_cap = morrey::calibrate_eps_disc(
      fixed, [](const morrey::PolarField& v) {
        return morrey::polya_szego_cap(v, 0.0);
      });
  for (const auto& v : polar) record(morrey::polya_szego_cap(v, eps_cap));

  const fs::path dir = out_dir(cfg, dir_override);
  std::ofstream out(dir / "sweep.json");
  out << json{{"eps_disc", eps}, {"eps_disc_cap", eps_cap}, {"results", rows}}.dump(2)
      << "\n";
  std::cout << (all_pass ? "all inequalities passed" : "inequality FAILURES")
            << " (" << rows.size() << " results, eps_disc " << eps << ")\n";
  return all_pass ? 0 : 1;
}

int cmd_figures(const json& cfg, const std::string& dir_override) {
  reject_unknown(cfg, kTopKeys, "config");
  const auto spec = parse_grid(cfg);
  const auto sol = load_solution(cfg, spec);
  const fs::path dir = out_dir(cfg, dir_override);

  // Horizontal slice profiles u(., a) along the first coordinate axis.
  {
    std::ofstream out(dir / "slices.csv");
    out << "a,y,value\n";
    const int c = spec.center_index();
    const int M = spec.cells_per_side();
    for (int q = 1; q <= 7; ++q) {
      const int in = c + q * spec.unit_offset() / 2;
      if (in > M) break;
      const double a = spec.coord(in);
      for (int i = 0; i <= M; ++i) {
        morrey::Index ix{i, spec.n == 2 ? in : c, 0};
        if (spec.n == 3) ix = morrey::Index{i, c, in};
        out << a << "," << spec.coord(i) << "," << sol.field.at(ix) << "\n";
      }
    }
  }
  // Per-sphere angular profiles.
  {
    const auto ps = morrey::default_polar_spec(spec);
    const auto pv = morrey::to_polar(sol.field, ps);
    std::ofstream out(dir / "spheres.csv");
    out << "t,angle,value\n";
    for (int i = 3; i < ps.n_shells; i += ps.n_shells / 6) {
      for (int j = 0; j < ps.n_theta; ++j) {
        const double v = spec.n == 2 ? pv.at(i, j) : pv.at(i, j, 0);
        out << ps.shell_radius(i) << "," << ps.polar_angle(j) << "," << v << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Morrey extremal toolkit: constrained p-Dirichlet minimization,\n"
      "symmetrization operators, and symmetry/monotonicity verification.\n"
      "Config keys and defaults: grid {n 2, L 8, h 0.25, p 4}; solver\n"
      "{max_iters 200000, grad_tol 1e-8, init two_spike, seed 0}; checks\n"
      "{tol_sym 1e-3, tol_mono 1e-3, eps_disc 1e-8, ...}; corpus {count 20,\n"
      "seed 0}; output_dir. MORREY_THREADS caps internal parallelism."};
  app.require_subcommand(1);

  std::string config_path, dir_override;
  auto add = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", dir_override, "output directory (overrides config)");
    return sub;
  };
  CLI::App* solve = add("solve", "solve the constrained minimization");
  CLI::App* verify = add("verify", "run all checks on a solved field");
  CLI::App* symmetrize = add("symmetrize", "apply a symmetrization operator");
  CLI::App* sweep = add("sweep", "randomized inequality corpus sweep");
  CLI::App* figures = add("figures", "emit plot-ready profile CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const json cfg = load_config(config_path);
    if (solve->parsed()) return cmd_solve(cfg, dir_override);
    if (verify->parsed()) return cmd_verify(cfg, dir_override);
    if (symmetrize->parsed()) return cmd_symmetrize(cfg, dir_override);
    if (sweep->parsed()) return cmd_sweep(cfg, dir_override);
    if (figures->parsed()) return cmd_figures(cfg, dir_override);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

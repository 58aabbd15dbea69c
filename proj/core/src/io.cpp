#include "morrey/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace morrey {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::vector<double> parse_row(const std::string& line, std::size_t expect,
                              const std::string& path) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    row.push_back(std::strtod(tok.c_str(), &end));
    if (end == tok.c_str())
      throw std::runtime_error("malformed number in " + path + ": " + tok);
  }
  if (row.size() != expect)
    throw std::runtime_error("wrong column count in " + path);
  return row;
}

json spec_json(const GridSpec& s) {
  return json{{"n", s.n}, {"L", s.L}, {"h", s.h}, {"p", s.p}};
}

}  // namespace

void write_field_csv(const std::string& path, const ScalarField& u) {
  const GridSpec& s = u.spec;
  auto out = open_out(path);
  for (int k = 1; k <= s.n; ++k) out << "x" << k << ",";
  out << "value\n";
  const std::int64_t count = s.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Index ix = s.node_unpack(idx);
    for (int k = 0; k < s.n; ++k) out << fmt(s.coord(ix[k])) << ",";
    out << fmt(u.values[static_cast<std::size_t>(idx)]) << "\n";
  }
}

ScalarField read_field_csv(const std::string& path, const GridSpec& spec) {
  spec.validate();
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty field file: " + path);
  ScalarField u(spec);
  const std::int64_t count = spec.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    if (!std::getline(in, line))
      throw std::runtime_error("truncated field file: " + path);
    auto row = parse_row(line, static_cast<std::size_t>(spec.n) + 1, path);
    u.values[static_cast<std::size_t>(idx)] = row.back();
  }
  if (std::getline(in, line) && !line.empty())
    throw std::runtime_error("trailing rows in field file: " + path);
  return u;
}

void write_grid_spec(const std::string& path, const GridSpec& spec) {
  auto out = open_out(path);
  out << spec_json(spec).dump(2) << "\n";
}

GridSpec read_grid_spec(const std::string& path) {
  auto in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed grid spec " + path + ": " + e.what());
  }
  GridSpec s;
  s.n = j.at("n").get<int>();
  s.L = j.at("L").get<double>();
  s.h = j.at("h").get<double>();
  s.p = j.at("p").get<double>();
  s.validate();
  return s;
}

void write_solution_json(const std::string& path, const ExtremalSolution& sol) {
  json j{{"grid", spec_json(sol.field.spec)},
         {"energy", sol.energy},
         {"seminorm", sol.seminorm},
         {"sharp_constant", sol.sharp_constant},
         {"source_strength", sol.source_strength},
         {"iterations", sol.iterations},
         {"converged", sol.converged}};
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_polar_csv(const std::string& path, const PolarField& pf) {
  const PolarSpec& s = pf.spec;
  auto out = open_out(path);
  out << (s.n == 2 ? "t,psi,weight,value\n" : "t,theta,phi,weight,value\n");
  for (int i = 0; i < s.n_shells; ++i) {
    for (int j = 0; j < s.n_theta; ++j) {
      if (s.n == 2) {
        out << fmt(s.shell_radius(i)) << "," << fmt(s.psi(j)) << ","
            << fmt(s.bin_weight(i, j)) << "," << fmt(pf.at(i, j)) << "\n";
      } else {
        for (int k = 0; k < s.n_phi; ++k) {
          out << fmt(s.shell_radius(i)) << "," << fmt(s.theta(j)) << ","
              << fmt(s.phi(k)) << "," << fmt(s.bin_weight(i, j)) << ","
              << fmt(pf.at(i, j, k)) << "\n";
        }
      }
    }
  }
}

PolarField read_polar_csv(const std::string& path, const PolarSpec& spec) {
  spec.validate();
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty polar file: " + path);
  PolarField pf(spec);
  const std::size_t cols = spec.n == 2 ? 4 : 5;
  for (std::int64_t idx = 0; idx < spec.sample_count(); ++idx) {
    if (!std::getline(in, line))
      throw std::runtime_error("truncated polar file: " + path);
    auto row = parse_row(line, cols, path);
    pf.values[static_cast<std::size_t>(idx)] = row.back();
  }
  return pf;
}

void write_cap_set_json(const std::string& path, const CapSet& caps) {
  json shells = json::array();
  for (const auto& sh : caps.shells) {
    const char* kind = sh.kind == CapSet::Kind::Empty
                           ? "empty"
                           : (sh.kind == CapSet::Kind::Full ? "full" : "cap");
    shells.push_back(json{{"t", sh.t}, {"kind", kind}, {"theta", sh.theta}});
  }
  auto out = open_out(path);
  out << json{{"shells", shells}}.dump(2) << "\n";
}

std::string report_to_json(const VerificationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(json{{"name", c.name},
                          {"max_violation", c.max_violation},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed},
                          {"witnesses", c.witnesses}});
  }
  json ineqs = json::array();
  for (const auto& q : rep.inequalities) {
    ineqs.push_back(json{{"name", q.name},
                         {"lhs", q.lhs},
                         {"rhs", q.rhs},
                         {"deficit", q.deficit},
                         {"tolerance", q.tolerance},
                         {"passed", q.passed}});
  }
  json j{{"solver",
          {{"grid", spec_json(rep.spec)},
           {"energy", rep.energy},
           {"seminorm", rep.seminorm},
           {"sharp_constant", rep.sharp_constant},
           {"source_strength", rep.source_strength},
           {"iterations", rep.iterations},
           {"converged", rep.converged}}},
         {"checks", checks},
         {"inequalities", ineqs}};
  return j.dump(2);
}

void write_report_json(const std::string& path, const VerificationReport& rep) {
  auto out = open_out(path);
  out << report_to_json(rep) << "\n";
}

}  // namespace morrey

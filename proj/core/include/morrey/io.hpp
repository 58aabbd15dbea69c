#pragma once

#include <string>

#include "morrey/extremal.hpp"
#include "morrey/grid.hpp"
#include "morrey/polar.hpp"
#include "morrey/symmetrize.hpp"
#include "morrey/verify.hpp"

namespace morrey {

/// CSV with header x1,...,xn,value, one row per node, lexicographic in node
/// indices. Values round-trip bit exactly. Malformed input throws
/// std::runtime_error with a diagnostic.
void write_field_csv(const std::string& path, const ScalarField& u);
ScalarField read_field_csv(const std::string& path, const GridSpec& spec);

/// GridSpec as JSON {n, L, h, p}.
void write_grid_spec(const std::string& path, const GridSpec& spec);
GridSpec read_grid_spec(const std::string& path);

/// Solution summary JSON {energy, seminorm, sharp_constant, source_strength,
/// iterations, converged}.
void write_solution_json(const std::string& path, const ExtremalSolution& sol);

/// Polar CSV: t,psi,weight,value for n = 2; t,theta,phi,weight,value for n = 3.
void write_polar_csv(const std::string& path, const PolarField& pf);
PolarField read_polar_csv(const std::string& path, const PolarSpec& spec);

/// CapSet JSON: per-shell {t, kind, theta}.
void write_cap_set_json(const std::string& path, const CapSet& caps);

/// VerificationReport JSON {solver: {...}, checks: [...], inequalities: [...]}.
void write_report_json(const std::string& path, const VerificationReport& rep);
std::string report_to_json(const VerificationReport& rep);

}  // namespace morrey

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morrey/extremal.hpp"
#include "morrey/grid.hpp"
#include "morrey/inequalities.hpp"
#include "morrey/polar.hpp"

namespace morrey {

/// One quantitative check. Witnesses are offending points (coordinate
/// tuples, two points per entry where the check is pairwise), recorded only
/// on failure.
struct CheckResult {
  std::string name;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::vector<double>> witnesses;
};

struct VerificationReport {
  GridSpec spec;
  double energy = 0.0;
  double seminorm = 0.0;
  double sharp_constant = 0.0;
  double source_strength = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<CheckResult> checks;
  std::vector<InequalityResult> inequalities;

  bool all_passed() const;
};

/// Invariance under rotations fixing e_n. For n = 2 the only nontrivial one
/// is the grid-exact reflection y -> -y; for n = 3, `trials` random angles
/// are tested on sampled nodes via interpolation. A 2h boundary collar is
/// excluded.
CheckResult check_axial_symmetry(const ScalarField& u, int trials,
                                 std::uint64_t seed, double tolerance);

/// u(Tx) = -u(x) for the grid-exact reflection T through {x_n = 0}.
CheckResult check_antisymmetry(const ScalarField& u, double tolerance);

/// On each slice {x_n = a}, a > 0: u nonincreasing in |y| (nondecreasing for
/// a < 0); |u| <= tolerance on {x_n = 0}.
CheckResult check_axis_monotonicity(const ScalarField& u, double tolerance);

/// Per shell of the polar grid: values nonincreasing in the polar angle.
CheckResult check_sphere_monotonicity(const PolarField& v, double tolerance);

/// Superlevel sets of u on {x_n > 0}: midpoints of random pairs stay in the
/// set, and each horizontal slice of the set is a centered ball up to a
/// one-cell boundary band.
CheckResult check_quasiconcavity(const ScalarField& u,
                                 const std::vector<double>& levels, int pairs,
                                 std::uint64_t seed, double tolerance);

/// Ring maxima of |u| at |x| in {L/2, 3L/4, 7L/8} are nonincreasing and the
/// outermost stays below threshold_frac * sup|u|. With the Dirichlet
/// truncation this is a consistency check, not a continuum limit.
CheckResult check_decay(const ScalarField& u, double threshold_frac,
                        double tolerance);

/// The positive part (and, via the reflection, the negative part) of u is a
/// fixed point of the cap rearrangement on the polar grid.
CheckResult check_extremal_is_cap_fixed(const ScalarField& u,
                                        const PolarSpec& pspec, double tolerance);

struct ReportConfig {
  double tol_sym = 1e-3;
  double tol_mono = 1e-3;
  double eps_disc = 1e-8;
  int symmetry_trials = 16;
  int quasiconcavity_pairs = 200;
  std::uint64_t seed = 0;
  std::vector<double> levels = {0.1, 0.25, 0.5, 0.75};
  double decay_threshold_frac = 0.25;
  /// Slack factor on the solution's own sharp-constant estimate.
  double morrey_slack = 1.02;
};

/// All checks plus the inequality suite evaluated on the solved extremal.
VerificationReport run_full_report(const ExtremalSolution& sol,
                                   const ReportConfig& cfg);

}  // namespace morrey

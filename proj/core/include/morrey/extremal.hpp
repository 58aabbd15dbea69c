#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "morrey/field_ops.hpp"
#include "morrey/grid.hpp"

namespace morrey {

struct SolverConfig {
  long max_iters = 200000;
  /// Stationarity tolerance on the projected energy gradient, relative to
  /// the initial projected gradient norm.
  double grad_tol = 1e-8;
  enum class StepRule { Fixed, AdaptiveTwoPoint };
  StepRule step_rule = StepRule::AdaptiveTwoPoint;
  double fixed_step = 1e-3;  // used by StepRule::Fixed
  enum class Init { Zero, TwoSpike, Random };
  Init init = Init::TwoSpike;
  std::uint64_t seed = 0;
  /// Diagnostic mode: pin both +-e_n to 0 instead of +-1.
  bool zero_pins = false;
  /// Optional warm start; overrides init when set.
  std::optional<ScalarField> initial_guess;
  /// Per-iteration observer (iter, energy, projected grad norm, iterate).
  std::function<void(long, double, double, const ScalarField&)> observer;

  void validate() const;
};

/// Converged constrained minimizer of the discrete p-Dirichlet energy with
/// u(+e_n) = 1, u(-e_n) = -1 and u = 0 on the box boundary.
struct ExtremalSolution {
  ScalarField field;
  double energy = 0.0;
  double seminorm = 0.0;
  Index argmax_x{0, 0, 0};
  Index argmax_y{0, 0, 0};
  double source_strength = 0.0;  // c of the dipole p-Laplace equation
  double sharp_constant = 0.0;   // seminorm / energy^(1/p)
  long iterations = 0;
  double final_grad_norm = 0.0;
  bool converged = false;
};

/// First-order minimization (Barzilai-Borwein two-point steps with an
/// energy-decrease safeguard) of the discrete energy over the free nodes.
/// Pinned and boundary values never move. Throws "divergence" if the energy
/// turns non-finite; hitting max_iters returns a non-converged result.
ExtremalSolution solve_extremal(const GridSpec& spec, const SolverConfig& cfg);

struct SourceStrength {
  double c_energy = 0.0;    // energy / 2, from testing the weak form with u
  double c_residual = 0.0;  // lumped weak residual at the pinned nodes
};

/// Recovers c of the dipole equation via two routes. Requires a converged
/// solution ("stale solution" otherwise).
SourceStrength recover_source_strength(const ExtremalSolution& sol);

struct SharpConstantEstimate {
  double c_star = 0.0;
  double two_point_quotient = 0.0;  // |u(e_n)-u(-e_n)| / 2^(1-n/p) = 2^(n/p)
  double seminorm_gap = 0.0;        // seminorm / two_point_quotient - 1
  double argmax_distance = 0.0;     // max distance of the argmax pair from +-e_n
};

SharpConstantEstimate estimate_sharp_constant(const ExtremalSolution& sol);

/// Solves from each seed and returns the max pairwise sup-norm distance
/// between the converged fields (Morrey extremals are unique).
double uniqueness_probe(const GridSpec& spec, const SolverConfig& cfg_base,
                        const std::vector<std::uint64_t>& seeds);

/// Diagnostic 1D harness on [-L,L]: minimizes sum |u'|^p h with u(+-1) = +-1
/// and u(+-L) = 0. The continuum minimizer is piecewise linear with energy
/// 2 + 2 (L-1)^(1-p).
struct Interval1DResult {
  std::vector<double> values;
  double energy = 0.0;
  long iterations = 0;
  bool converged = false;
};
Interval1DResult solve_interval_1d(double L, double h, double p,
                                   long max_iters = 100000, double grad_tol = 1e-10);

}  // namespace morrey

#include "morrey/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace morrey {

namespace {

// 1 for nodes the solver may move, 0 for boundary and pinned nodes.
std::vector<double> free_mask(const GridSpec& spec) {
  std::vector<double> mask(static_cast<std::size_t>(spec.node_count()), 1.0);
  const std::int64_t count = spec.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    if (spec.on_boundary(spec.node_unpack(idx))) mask[static_cast<std::size_t>(idx)] = 0.0;
  }
  mask[static_cast<std::size_t>(spec.node_index(spec.pin_plus()))] = 0.0;
  mask[static_cast<std::size_t>(spec.node_index(spec.pin_minus()))] = 0.0;
  return mask;
}

void apply_constraints(ScalarField& u, bool zero_pins) {
  const GridSpec& s = u.spec;
  const std::int64_t count = s.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    if (s.on_boundary(s.node_unpack(idx))) u.values[static_cast<std::size_t>(idx)] = 0.0;
  }
  const double pin = zero_pins ? 0.0 : 1.0;
  u.at(s.pin_plus()) = pin;
  u.at(s.pin_minus()) = -pin;
}

ScalarField make_initial(const GridSpec& spec, const SolverConfig& cfg) {
  if (cfg.initial_guess) {
    if (!(cfg.initial_guess->spec == spec))
      throw std::invalid_argument("solve_extremal: initial guess spec mismatch");
    ScalarField u = *cfg.initial_guess;
    apply_constraints(u, cfg.zero_pins);
    return u;
  }
  ScalarField u(spec);
  switch (cfg.init) {
    case SolverConfig::Init::Zero:
      break;
    case SolverConfig::Init::TwoSpike: {
      apply_constraints(u, cfg.zero_pins);
      u = mollify(u, SmoothingKernel{2.0 * spec.h});
      break;
    }
    case SolverConfig::Init::Random: {
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> dist(-0.5, 0.5);
      for (double& v : u.values) v = dist(rng);
      u = mollify(u, SmoothingKernel{4.0 * spec.h});
      break;
    }
  }
  apply_constraints(u, cfg.zero_pins);
  return u;
}

double masked_norm(const std::vector<double>& g) {
  double s = 0.0;
  for (double x : g) s += x * x;
  return std::sqrt(s);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("SolverConfig: grad_tol must be > 0");
  if (max_iters <= 0) throw std::invalid_argument("SolverConfig: max_iters must be > 0");
}

ExtremalSolution solve_extremal(const GridSpec& spec, const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();

  const auto mask = free_mask(spec);
  ScalarField u = make_initial(spec, cfg);
  const std::size_t count = u.values.size();

  std::vector<double> grad;
  double energy = energy_and_nodal_gradient(u, grad);
  // Line-search baseline in the dirichlet_energy summation order; the two
  // energy routines round differently at the 1e-14 level, which would put an
  // artificial floor under the backtracking comparison.
  double ls_energy = dirichlet_energy(u);
  for (std::size_t i = 0; i < count; ++i) grad[i] *= mask[i];
  double gnorm = masked_norm(grad);
  const double tol = cfg.grad_tol * std::max(gnorm, 1e-300);

  std::vector<double> prev_grad(count, 0.0);
  std::vector<double> step_vec(count, 0.0);
  double step = cfg.step_rule == SolverConfig::StepRule::Fixed
                    ? cfg.fixed_step
                    : 1e-2 / std::max(1.0, gnorm);

  ExtremalSolution sol;
  ScalarField trial(spec);
  long iter = 0;
  bool converged = gnorm <= tol;

  while (!converged && iter < cfg.max_iters) {
    if (!std::isfinite(energy))
      throw std::runtime_error("divergence at iteration " + std::to_string(iter));

    if (cfg.step_rule == SolverConfig::StepRule::AdaptiveTwoPoint && iter > 0) {
      // BB1 step from the last accepted displacement and gradient change.
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        ss += step_vec[i] * step_vec[i];
        sy += step_vec[i] * (grad[i] - prev_grad[i]);
      }
      if (sy > 0.0) step = ss / sy;
      step = std::clamp(step, 1e-14, 1e6);
    }

    // Energy-decrease safeguard.
    double trial_energy = 0.0;
    double t = step;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      trial.values = u.values;
      for (std::size_t i = 0; i < count; ++i) trial.values[i] -= t * grad[i];
      trial_energy = dirichlet_energy(trial);
      if (trial_energy <= ls_energy) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // step underflow: no further descent possible

    for (std::size_t i = 0; i < count; ++i) step_vec[i] = -t * grad[i];
    prev_grad.swap(grad);
    u.values.swap(trial.values);
    ls_energy = trial_energy;
    energy = energy_and_nodal_gradient(u, grad);
    for (std::size_t i = 0; i < count; ++i) grad[i] *= mask[i];
    gnorm = masked_norm(grad);
    step = t;
    ++iter;
    if (cfg.observer) cfg.observer(iter, energy, gnorm, u);
    converged = gnorm <= tol;
  }

  sol.field = std::move(u);
  sol.energy = energy;
  sol.iterations = iter;
  sol.final_grad_norm = gnorm;
  sol.converged = converged;

  auto sem = holder_seminorm(sol.field);
  sol.seminorm = sem.value;
  sol.argmax_x = sem.x;
  sol.argmax_y = sem.y;
  sol.source_strength = 0.5 * energy;
  sol.sharp_constant = energy > 0.0 ? sol.seminorm / std::pow(energy, 1.0 / spec.p) : 0.0;
  return sol;
}

SourceStrength recover_source_strength(const ExtremalSolution& sol) {
  if (!sol.converged) throw std::runtime_error("stale solution");
  SourceStrength out;
  out.c_energy = 0.5 * sol.energy;
  const auto res = weak_residual(sol.field);
  const GridSpec& s = sol.field.spec;
  const double rp = res[static_cast<std::size_t>(s.node_index(s.pin_plus()))];
  const double rm = res[static_cast<std::size_t>(s.node_index(s.pin_minus()))];
  out.c_residual = 0.5 * (rp - rm);
  return out;
}

SharpConstantEstimate estimate_sharp_constant(const ExtremalSolution& sol) {
  const GridSpec& s = sol.field.spec;
  SharpConstantEstimate est;
  est.c_star = sol.energy > 0.0 ? sol.seminorm / std::pow(sol.energy, 1.0 / s.p) : 0.0;
  const double up = sol.field.at(s.pin_plus());
  const double um = sol.field.at(s.pin_minus());
  est.two_point_quotient = std::abs(up - um) / std::pow(2.0, s.alpha());
  est.seminorm_gap =
      est.two_point_quotient > 0.0 ? sol.seminorm / est.two_point_quotient - 1.0 : 0.0;

  auto dist = [&](const Index& a, const Index& b) {
    double d2 = 0.0;
    for (int k = 0; k < s.n; ++k) {
      double d = (a[k] - b[k]) * s.h;
      d2 += d * d;
    }
    return std::sqrt(d2);
  };
  const Index pp = s.pin_plus(), pm = s.pin_minus();
  const double direct = std::max(dist(sol.argmax_x, pp), dist(sol.argmax_y, pm));
  const double swapped = std::max(dist(sol.argmax_x, pm), dist(sol.argmax_y, pp));
  est.argmax_distance = std::min(direct, swapped);
  return est;
}

double uniqueness_probe(const GridSpec& spec, const SolverConfig& cfg_base,
                        const std::vector<std::uint64_t>& seeds) {
  if (seeds.size() < 2) throw std::invalid_argument("uniqueness_probe: need >= 2 seeds");
  std::vector<ScalarField> fields;
  fields.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    SolverConfig cfg = cfg_base;
    cfg.init = SolverConfig::Init::Random;
    cfg.seed = seed;
    fields.push_back(solve_extremal(spec, cfg).field);
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < fields.size(); ++a) {
    for (std::size_t b = a + 1; b < fields.size(); ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < fields[a].values.size(); ++i)
        d = std::max(d, std::abs(fields[a].values[i] - fields[b].values[i]));
      worst = std::max(worst, d);
    }
  }
  return worst;
}

Interval1DResult solve_interval_1d(double L, double h, double p, long max_iters,
                                   double grad_tol) {
  const int m = static_cast<int>(std::lround(2.0 * L / h)) + 1;
  const int pin_plus = static_cast<int>(std::lround((L + 1.0) / h));
  const int pin_minus = static_cast<int>(std::lround((L - 1.0) / h));

  std::vector<double> u(m, 0.0);
  u[pin_plus] = 1.0;
  u[pin_minus] = -1.0;

  auto energy_of = [&](const std::vector<double>& v) {
    double e = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
      double d = (v[i + 1] - v[i]) / h;
      e += pow_half(d * d, p);
    }
    return e * h;
  };
  auto grad_of = [&](const std::vector<double>& v, std::vector<double>& g) {
    g.assign(m, 0.0);
    for (int i = 0; i + 1 < m; ++i) {
      double d = (v[i + 1] - v[i]) / h;
      double f = p * pow_half_m2(d * d, p) * d;  // h * (1/h) cancels
      g[i] -= f;
      g[i + 1] += f;
    }
    g[0] = g[m - 1] = 0.0;
    g[pin_plus] = g[pin_minus] = 0.0;
  };

  Interval1DResult out;
  std::vector<double> g, gp(m, 0.0), sv(m, 0.0), trial(m, 0.0);
  grad_of(u, g);
  double energy = energy_of(u);
  double gn0 = masked_norm(g);
  double tol = grad_tol * std::max(gn0, 1e-300);
  double step = 1e-2 / std::max(1.0, gn0);
  long iter = 0;
  double gn = gn0;
  while (gn > tol && iter < max_iters) {
    if (iter > 0) {
      double ss = 0.0, sy = 0.0;
      for (int i = 0; i < m; ++i) {
        ss += sv[i] * sv[i];
        sy += sv[i] * (g[i] - gp[i]);
      }
      if (sy > 0.0) step = std::clamp(ss / sy, 1e-14, 1e6);
    }
    double t = step;
    bool ok = false;
    double te = 0.0;
    for (int back = 0; back < 60; ++back) {
      for (int i = 0; i < m; ++i) trial[i] = u[i] - t * g[i];
      te = energy_of(trial);
      if (te <= energy) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) break;
    for (int i = 0; i < m; ++i) sv[i] = -t * g[i];
    gp.swap(g);
    u.swap(trial);
    energy = te;
    grad_of(u, g);
    gn = masked_norm(g);
    step = t;
    ++iter;
  }
  out.values = std::move(u);
  out.energy = energy;
  out.iterations = iter;
  out.converged = gn <= tol;
  return out;
}

}  // namespace morrey

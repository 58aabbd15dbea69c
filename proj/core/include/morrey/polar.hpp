#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "morrey/grid.hpp"

namespace morrey {

inline constexpr double kPi = 3.14159265358979323846;

/// Radius x angle grid with exact spherical area weights.
///
/// Shell centers t_i = (i + 1/2) dt. For n = 3 the angular grid is polar
/// angle theta (measured from +e_n) times azimuth phi; bin weights are exact
/// cap-band areas t^2 (cos(theta-) - cos(theta+)) dphi, so each shell's
/// weights total sigma(dB_t) exactly. For n = 2 a single full angle
/// psi in (-pi, pi] is used with arc weights t dpsi.
struct PolarSpec {
  int n = 2;
  double p = 4.0;
  int n_shells = 32;
  double dt = 0.25;
  int n_theta = 64;  // psi bins for n = 2 (must be even), theta bins for n = 3
  int n_phi = 64;    // n = 3 only

  void validate() const;

  double shell_radius(int i) const { return (i + 0.5) * dt; }
  double max_radius() const { return n_shells * dt; }

  int bins_per_shell() const { return n == 2 ? n_theta : n_theta * n_phi; }
  std::int64_t sample_count() const {
    return static_cast<std::int64_t>(n_shells) * bins_per_shell();
  }

  // n = 2 angles: psi_j in (-pi, pi], bin centers.
  double psi(int j) const { return -kPi + (j + 0.5) * (2.0 * kPi / n_theta); }
  // n = 3 angles, bin centers.
  double theta(int j) const { return (j + 0.5) * (kPi / n_theta); }
  double phi(int k) const { return (k + 0.5) * (2.0 * kPi / n_phi); }

  /// Polar angle from +e_n of bin j (theta for n = 3, |psi| for n = 2).
  double polar_angle(int j) const { return n == 2 ? std::abs(psi(j)) : theta(j); }

  /// Area weight of one bin on shell i (independent of phi for n = 3).
  double bin_weight(int i, int j) const;
  /// sigma of the full sphere of radius t: 2 pi t (n=2) or 4 pi t^2 (n=3).
  double shell_measure(int i) const;

  std::int64_t index(int i, int j, int k = 0) const {
    return n == 2 ? static_cast<std::int64_t>(i) * n_theta + j
                  : (static_cast<std::int64_t>(i) * n_theta + j) * n_phi + k;
  }

  /// Cartesian position of the sample at bin (i, j[, k]).
  std::array<double, 3> position(int i, int j, int k = 0) const;
};

struct PolarField {
  PolarSpec spec;
  std::vector<double> values;

  PolarField() = default;
  explicit PolarField(const PolarSpec& s)
      : spec(s), values(static_cast<std::size_t>(s.sample_count()), 0.0) {}

  double& at(int i, int j, int k = 0) {
    return values[static_cast<std::size_t>(spec.index(i, j, k))];
  }
  double at(int i, int j, int k = 0) const {
    return values[static_cast<std::size_t>(spec.index(i, j, k))];
  }
};

/// Default polar resolution matched to a Cartesian grid (radially contained).
PolarSpec default_polar_spec(const GridSpec& spec);

/// Samples the Cartesian field at the polar grid via interpolation.
/// Throws "out of domain" if the polar grid is not radially contained.
PolarField to_polar(const ScalarField& u, const PolarSpec& pspec);

/// Inverse sampling via nearest-shell/nearest-bin lookup; nodes outside the
/// outermost shell get 0.
ScalarField from_polar(const PolarField& pf, const GridSpec& spec);

/// p-Dirichlet energy by polar-grid quadrature of the spherical-coordinate
/// gradient (forward difference quotients in t and in the angles).
double polar_energy(const PolarField& pf);

}  // namespace morrey

#pragma once

#include <array>
#include <vector>

#include "morrey/grid.hpp"
#include "morrey/polar.hpp"

namespace morrey {

/// Circle/sphere average over |y| = r at each height x_n. For n = 2 this is
/// the grid-exact even part in y; for n = 3 the circle average is computed
/// by angular quadrature on interpolated samples.
ScalarField axial_average(const ScalarField& u);

/// u^zeta(y, x_n) = u(|y| zeta, x_n) for a unit direction zeta in the first
/// n-1 coordinates. For n = 2, zeta is +-1 and the map is grid exact.
ScalarField axial_sweep(const ScalarField& u, const std::array<double, 2>& zeta);

/// Orthogonal decomposition of the corner gradients into the part along y
/// (extended by the x_n component) and the spherical part (zero x_n
/// component), taken at each corner node. Layout matches the energy
/// quadrature: 3 components per (cell, corner), corner-major within the
/// cell. On axis corners (y = 0) the whole gradient is assigned to the
/// radial part. n = 3 only.
struct GradientSplit {
  GridSpec spec;
  std::vector<double> radial;      // 3 components per (cell, corner)
  std::vector<double> tangential;  // 3 components per (cell, corner)
};
GradientSplit gradient_split(const ScalarField& u);

/// Integral of |D_{S^{n-2}} u|^p in the corner quadrature. For n = 3 this
/// integrates the tangential part of the split; for n = 2 it integrates the
/// y-derivative of the odd-in-y part of u.
double tangential_energy(const ScalarField& u);

/// Squared tangential magnitudes per (cell, corner), corner-major within the
/// cell (n = 2 and n = 3).
std::vector<double> tangential_sq(const ScalarField& u);

/// Per-shell cap description: empty, full, or a cap of opening angle theta.
struct CapSet {
  enum class Kind { Empty, Full, Cap };
  struct Shell {
    double t = 0.0;
    Kind kind = Kind::Empty;
    double theta = 0.0;  // meaningful for Kind::Cap
  };
  std::vector<Shell> shells;
};

/// Closed-form cap measure sigma(C_{t,theta}): 2 t theta for n = 2,
/// 2 pi t^2 (1 - cos theta) for n = 3.
double cap_measure(int n, double t, double theta);

/// Shell-by-shell cap of equal surface measure. Indicator values must be
/// 0 or 1.
CapSet cap_symmetrize_set(const PolarField& indicator);

/// Weighted monotone rearrangement per shell: values sorted descending are
/// reassigned to bins in order of increasing polar angle, consuming area
/// weight greedily. Output is equimeasurable with the input per shell,
/// axially symmetric up to bin resolution, and nonincreasing in theta.
PolarField cap_rearrange(const PolarField& v);

/// Nodewise max with zero.
ScalarField positive_part(const ScalarField& u);

/// w(x) = v(x) for x_n >= 0, -v(Tx) for x_n < 0. The input must vanish on
/// {x_n = 0} within trace_tol ("trace mismatch" otherwise); the output is
/// exactly T-antisymmetric.
ScalarField odd_extension(const ScalarField& v, double trace_tol = 1e-6);

}  // namespace morrey

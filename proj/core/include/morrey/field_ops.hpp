#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "morrey/grid.hpp"

namespace morrey {

/// |g|^p from the squared magnitude, with a fast path for p = 4.
inline double pow_half(double s2, double p) {
  if (p == 4.0) return s2 * s2;
  if (p == 2.0) return s2;
  return std::pow(s2, 0.5 * p);
}

/// |g|^(p-2) from the squared magnitude.
inline double pow_half_m2(double s2, double p) {
  if (p == 4.0) return s2;
  return std::pow(s2, 0.5 * (p - 2.0));
}

/// Cell gradients: the mean of the 2^n one-sided corner gradients of the
/// cell, i.e. each component is the mean of the edge differences in that
/// direction. Exact for affine fields.
GradientField gradient(const ScalarField& u);

/// Sum over cells of the corner-gradient average of |grad|^p times h^n.
/// Averaging |.|^p over the cell corners (rather than taking one one-sided
/// stencil) makes the quadrature exactly invariant under coordinate
/// reflections, so reflections of the grid are energy isometries.
double dirichlet_energy(const ScalarField& u);

/// Node-index strides of a cell's edges along each dimension.
void cell_strides(const GridSpec& s, std::int64_t st[3]);

/// The 2^n one-sided corner gradients of the cell anchored at node `base`:
/// g[q][k] is the edge difference along k adjacent to corner q, where q packs
/// the corner bits (b0 | b1<<1 | b2<<2).
void corner_gradients(const double* values, std::int64_t base,
                      const std::int64_t st[3], int n, double inv_h,
                      double g[8][3]);

/// dE/du_j for every node j, where E is the discrete Dirichlet energy.
/// Also returns the energy. grad is resized to the node count.
double energy_and_nodal_gradient(const ScalarField& u, std::vector<double>& grad);

/// Weak-form residual r_j = (1/p) dE/du_j, the discrete pairing of
/// |Du|^{p-2}Du with the nodal basis function at j. For the constrained
/// minimizer, r is ~0 at free nodes, ~+c at +e_n and ~-c at -e_n.
std::vector<double> weak_residual(const ScalarField& u);

struct SeminormResult {
  double value = 0.0;
  Index x{0, 0, 0};
  Index y{0, 0, 0};
};

/// Exact max over node pairs of |u(x)-u(y)| / |x-y|^(1-n/p). The scan is
/// pruned by processing offsets in order of increasing distance and stopping
/// once range * dist^-alpha can no longer beat the running max.
SeminormResult holder_seminorm(const ScalarField& u);

/// Multilinear interpolation; exact at nodes and for affine fields.
/// Throws std::domain_error("out of domain") if the point leaves the box.
double interpolate(const ScalarField& u, const std::array<double, 3>& x);

/// Radial bump kernel exp(-1/(1-|x|^2)) scaled to radius epsilon and
/// discretely renormalized to unit mass on the grid offsets it covers.
struct SmoothingKernel {
  double epsilon = 0.0;

  /// Grid offsets with |z| < epsilon and their renormalized weights.
  struct Stencil {
    std::vector<Index> offsets;
    std::vector<double> weights;  // sums to 1 within 1e-12
  };
  Stencil stencil(const GridSpec& spec) const;
};

/// Discrete convolution with the scaled kernel; zero-extension outside the
/// box. Requires epsilon >= h ("kernel unresolved" otherwise).
ScalarField mollify(const ScalarField& u, const SmoothingKernel& kernel);

}  // namespace morrey

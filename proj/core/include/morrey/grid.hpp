#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace morrey {

using Index = std::array<int, 3>;  // multi-index; entries past n are zero

/// Uniform Cartesian grid over [-L,L]^n with spacing h and exponent p > n.
///
/// 1/h and L/h are integers, so the pinned points +-e_n, the plane x_n = 0,
/// and the reflection Tx = x - 2 x_n e_n all map grid nodes to grid nodes.
struct GridSpec {
  int n = 2;      // dimension, 2 or 3
  double L = 8.0; // half-width of the box
  double h = 0.25;
  double p = 4.0;

  void validate() const;

  double alpha() const { return 1.0 - n / p; }
  int cells_per_side() const { return static_cast<int>(std::lround(2.0 * L / h)); }
  int nodes_per_side() const { return cells_per_side() + 1; }
  std::int64_t node_count() const;
  std::int64_t cell_count() const;

  /// Index of the node at the origin along one coordinate.
  int center_index() const { return static_cast<int>(std::lround(L / h)); }
  /// Node offset corresponding to unit length along one coordinate.
  int unit_offset() const { return static_cast<int>(std::lround(1.0 / h)); }

  double coord(int i) const { return -L + i * h; }

  std::int64_t node_index(const Index& ix) const;
  Index node_unpack(std::int64_t idx) const;
  std::int64_t cell_index(const Index& ix) const;
  Index cell_unpack(std::int64_t idx) const;

  Index pin_plus() const;   // node index of +e_n
  Index pin_minus() const;  // node index of -e_n

  bool on_boundary(const Index& ix) const;

  bool operator==(const GridSpec& o) const {
    return n == o.n && L == o.L && h == o.h && p == o.p;
  }
};

/// Node-valued function on a GridSpec, stored lexicographically in (i1,...,in).
struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& s)
      : spec(s), values(static_cast<std::size_t>(s.node_count()), 0.0) {}

  double& at(const Index& ix) { return values[static_cast<std::size_t>(spec.node_index(ix))]; }
  double at(const Index& ix) const { return values[static_cast<std::size_t>(spec.node_index(ix))]; }

  void check_invariants() const;
};

/// Per-cell gradient vectors (forward-difference stencil), cell-major layout
/// with n components per cell.
struct GradientField {
  GridSpec spec;
  std::vector<double> vectors;

  GradientField() = default;
  explicit GradientField(const GridSpec& s)
      : spec(s), vectors(static_cast<std::size_t>(s.cell_count()) * s.n, 0.0) {}

  double* cell(std::int64_t c) { return vectors.data() + c * spec.n; }
  const double* cell(std::int64_t c) const { return vectors.data() + c * spec.n; }
};

/// Position of a cell center (the anchor node plus h/2 in every coordinate).
std::array<double, 3> cell_center(const GridSpec& spec, const Index& cell);

}  // namespace morrey

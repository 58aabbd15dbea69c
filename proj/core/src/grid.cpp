#include "morrey/grid.hpp"

#include <cmath>

namespace morrey {

namespace {
bool near_integer(double x) { return std::abs(x - std::lround(x)) < 1e-9; }
}  // namespace

void GridSpec::validate() const {
  if (n != 2 && n != 3) throw std::invalid_argument("GridSpec: n must be 2 or 3");
  if (!(p > n)) throw std::invalid_argument("GridSpec: requires p > n");
  if (!(L >= 2.0)) throw std::invalid_argument("GridSpec: requires L >= 2");
  if (!(h > 0.0)) throw std::invalid_argument("GridSpec: requires h > 0");
  if (!near_integer(1.0 / h) || std::lround(1.0 / h) < 1)
    throw std::invalid_argument("GridSpec: 1/h must be a positive integer");
  if (!near_integer(L / h) || std::lround(L / h) < 1)
    throw std::invalid_argument("GridSpec: L/h must be a positive integer");
}

std::int64_t GridSpec::node_count() const {
  std::int64_t m = nodes_per_side();
  std::int64_t c = 1;
  for (int k = 0; k < n; ++k) c *= m;
  return c;
}

std::int64_t GridSpec::cell_count() const {
  std::int64_t m = cells_per_side();
  std::int64_t c = 1;
  for (int k = 0; k < n; ++k) c *= m;
  return c;
}

std::int64_t GridSpec::node_index(const Index& ix) const {
  const std::int64_t m = nodes_per_side();
  std::int64_t idx = ix[0];
  for (int k = 1; k < n; ++k) idx = idx * m + ix[k];
  return idx;
}

Index GridSpec::node_unpack(std::int64_t idx) const {
  const std::int64_t m = nodes_per_side();
  Index ix{0, 0, 0};
  for (int k = n - 1; k >= 0; --k) {
    ix[k] = static_cast<int>(idx % m);
    idx /= m;
  }
  return ix;
}

std::int64_t GridSpec::cell_index(const Index& ix) const {
  const std::int64_t m = cells_per_side();
  std::int64_t idx = ix[0];
  for (int k = 1; k < n; ++k) idx = idx * m + ix[k];
  return idx;
}

Index GridSpec::cell_unpack(std::int64_t idx) const {
  const std::int64_t m = cells_per_side();
  Index ix{0, 0, 0};
  for (int k = n - 1; k >= 0; --k) {
    ix[k] = static_cast<int>(idx % m);
    idx /= m;
  }
  return ix;
}

Index GridSpec::pin_plus() const {
  Index ix{0, 0, 0};
  for (int k = 0; k < n; ++k) ix[k] = center_index();
  ix[n - 1] += unit_offset();
  return ix;
}

Index GridSpec::pin_minus() const {
  Index ix{0, 0, 0};
  for (int k = 0; k < n; ++k) ix[k] = center_index();
  ix[n - 1] -= unit_offset();
  return ix;
}

bool GridSpec::on_boundary(const Index& ix) const {
  const int m = cells_per_side();
  for (int k = 0; k < n; ++k)
    if (ix[k] == 0 || ix[k] == m) return true;
  return false;
}

void ScalarField::check_invariants() const {
  if (static_cast<std::int64_t>(values.size()) != spec.node_count())
    throw std::invalid_argument("ScalarField: value count mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("ScalarField: non-finite value");
}

std::array<double, 3> cell_center(const GridSpec& spec, const Index& cell) {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int k = 0; k < spec.n; ++k) x[k] = spec.coord(cell[k]) + 0.5 * spec.h;
  return x;
}

}  // namespace morrey

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "morrey/grid.hpp"
#include "morrey/polar.hpp"

namespace testutil {

// Sample of v = x_n on a 2d polar grid: t cos(polar angle), computed from the
// lower index of each +-psi pair so paired bins carry bitwise-equal values
// and monotone-rearrangement identities are exact rather than ulp-close.
inline double axis_polar_sample(const morrey::PolarSpec& ps, int i, int j) {
  const int jp = j < ps.n_theta - 1 - j ? j : ps.n_theta - 1 - j;
  return ps.shell_radius(i) * std::cos(ps.polar_angle(jp));
}

// Fills a field from f(x1, x2, x3); x3 is 0 for n = 2. The last listed
// coordinate (x2 for n = 2, x3 for n = 3) is the distinguished axis.
inline morrey::ScalarField fill(const morrey::GridSpec& s,
                                const std::function<double(double, double, double)>& f) {
  morrey::ScalarField u(s);
  const std::int64_t count = s.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const morrey::Index ix = s.node_unpack(idx);
    u.values[static_cast<std::size_t>(idx)] =
        f(s.coord(ix[0]), s.coord(ix[1]), s.n == 3 ? s.coord(ix[2]) : 0.0);
  }
  return u;
}

// Coordinate of the distinguished axis.
inline double axis_coord(int n, double x1, double x2, double x3) {
  (void)x1;
  return n == 2 ? x2 : x3;
}

inline double sup_distance(const morrey::ScalarField& a, const morrey::ScalarField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

inline double radius2(int n, double x1, double x2, double x3) {
  return n == 2 ? x1 * x1 + x2 * x2 : x1 * x1 + x2 * x2 + x3 * x3;
}

}  // namespace testutil

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "morrey/field_ops.hpp"

namespace morrey {

namespace {

struct Offset {
  int d[3];
  std::int64_t dist2;  // in index units
};

// Lexicographically positive offsets cover every unordered node pair once.
std::vector<Offset> make_offsets(int n, int M) {
  std::vector<Offset> offs;
  const int lo2 = -M, hi2 = M;
  for (int d1 = 0; d1 <= M; ++d1) {
    const int lo_b = (d1 == 0) ? 0 : lo2;
    for (int d2 = lo_b; d2 <= hi2; ++d2) {
      if (n == 2) {
        if (d1 == 0 && d2 <= 0) continue;
        offs.push_back(Offset{{d1, d2, 0},
                              static_cast<std::int64_t>(d1) * d1 +
                                  static_cast<std::int64_t>(d2) * d2});
      } else {
        const int lo_c = (d1 == 0 && d2 == 0) ? 1 : lo2;
        for (int d3 = lo_c; d3 <= hi2; ++d3) {
          offs.push_back(Offset{{d1, d2, d3},
                                static_cast<std::int64_t>(d1) * d1 +
                                    static_cast<std::int64_t>(d2) * d2 +
                                    static_cast<std::int64_t>(d3) * d3});
        }
      }
    }
  }
  std::sort(offs.begin(), offs.end(),
            [](const Offset& a, const Offset& b) { return a.dist2 < b.dist2; });
  return offs;
}

}  // namespace

SeminormResult holder_seminorm(const ScalarField& u) {
  const GridSpec& s = u.spec;
  if (s.node_count() < 2) throw std::invalid_argument("holder_seminorm: need >= 2 nodes");
  const int M = s.cells_per_side();
  const int m = M + 1;
  const double a = s.alpha();

  double umin = u.values[0], umax = u.values[0];
  for (double v : u.values) {
    umin = std::min(umin, v);
    umax = std::max(umax, v);
  }
  const double range = umax - umin;

  SeminormResult best;
  best.x = Index{0, 0, 0};
  best.y = s.node_unpack(1);
  if (range == 0.0) return best;

  const auto offs = make_offsets(s.n, M);
  const double* uv = u.values.data();

  for (const Offset& off : offs) {
    const double dist = s.h * std::sqrt(static_cast<double>(off.dist2));
    const double q = std::pow(dist, -a);
    if (range * q <= best.value) break;  // farther offsets cannot improve

    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int k = 0; k < s.n; ++k) {
      lo[k] = std::max(0, -off.d[k]);
      hi[k] = std::min(M, M - off.d[k]);
    }
    std::int64_t doff = off.d[0];
    for (int k = 1; k < s.n; ++k) doff = doff * m + off.d[k];

    if (s.n == 2) {
      for (int i = lo[0]; i <= hi[0]; ++i) {
        const std::int64_t row = static_cast<std::int64_t>(i) * m;
        for (int j = lo[1]; j <= hi[1]; ++j) {
          const std::int64_t idx = row + j;
          const double v = std::abs(uv[idx] - uv[idx + doff]) * q;
          if (v > best.value) {
            best.value = v;
            best.x = Index{i, j, 0};
            best.y = Index{i + off.d[0], j + off.d[1], 0};
          }
        }
      }
    } else {
      for (int i = lo[0]; i <= hi[0]; ++i) {
        for (int j = lo[1]; j <= hi[1]; ++j) {
          const std::int64_t row = (static_cast<std::int64_t>(i) * m + j) * m;
          for (int k = lo[2]; k <= hi[2]; ++k) {
            const std::int64_t idx = row + k;
            const double v = std::abs(uv[idx] - uv[idx + doff]) * q;
            if (v > best.value) {
              best.value = v;
              best.x = Index{i, j, k};
              best.y = Index{i + off.d[0], j + off.d[1], k + off.d[2]};
            }
          }
        }
      }
    }
  }
  return best;
}

}  // namespace morrey

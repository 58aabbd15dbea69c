#include "morrey/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "morrey/field_ops.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

namespace {

// Zero extension outside the box, consistent with the Dirichlet truncation.
double interp_zero_ext(const ScalarField& u, const std::array<double, 3>& x) {
  for (int k = 0; k < u.spec.n; ++k)
    if (x[k] < -u.spec.L || x[k] > u.spec.L) return 0.0;
  return interpolate(u, x);
}

constexpr int kCircleSamples = 64;

}  // namespace

ScalarField axial_average(const ScalarField& u) {
  const GridSpec& s = u.spec;
  ScalarField out(s);
  const int M = s.cells_per_side();
  const int m = M + 1;

  if (s.n == 2) {
    for (int i = 0; i <= M; ++i) {
      for (int j = 0; j <= M; ++j) {
        out.at(Index{i, j, 0}) =
            0.5 * (u.at(Index{i, j, 0}) + u.at(Index{M - i, j, 0}));
      }
    }
    return out;
  }

  const int c = s.center_index();
  parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
    std::unordered_map<std::int64_t, double> ring;  // keyed by (i-c)^2+(j-c)^2
    for (std::int64_t k3 = lo; k3 < hi; ++k3) {
      ring.clear();
      const double x3 = s.coord(static_cast<int>(k3));
      for (int i = 0; i <= M; ++i) {
        for (int j = 0; j <= M; ++j) {
          const std::int64_t key = static_cast<std::int64_t>(i - c) * (i - c) +
                                   static_cast<std::int64_t>(j - c) * (j - c);
          auto it = ring.find(key);
          double val;
          if (it != ring.end()) {
            val = it->second;
          } else if (key == 0) {
            val = u.at(Index{c, c, static_cast<int>(k3)});
            ring.emplace(key, val);
          } else {
            const double r = s.h * std::sqrt(static_cast<double>(key));
            double acc = 0.0;
            for (int q = 0; q < kCircleSamples; ++q) {
              const double ang = 2.0 * kPi * q / kCircleSamples;
              acc += interp_zero_ext(
                  u, {r * std::cos(ang), r * std::sin(ang), x3});
            }
            val = acc / kCircleSamples;
            ring.emplace(key, val);
          }
          out.at(Index{i, j, static_cast<int>(k3)}) = val;
        }
      }
    }
  });
  return out;
}

ScalarField axial_sweep(const ScalarField& u, const std::array<double, 2>& zeta) {
  const GridSpec& s = u.spec;
  const double norm = std::sqrt(zeta[0] * zeta[0] + (s.n == 3 ? zeta[1] * zeta[1] : 0.0));
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("axial_sweep: zeta must be a unit vector");
  ScalarField out(s);
  const int M = s.cells_per_side();
  const int c = s.center_index();

  if (s.n == 2) {
    // zeta = +-1; |y| zeta maps nodes to nodes exactly.
    const int sgn = zeta[0] > 0.0 ? 1 : -1;
    for (int i = 0; i <= M; ++i) {
      const int src = c + sgn * std::abs(i - c);
      for (int j = 0; j <= M; ++j)
        out.at(Index{i, j, 0}) = u.at(Index{src, j, 0});
    }
    return out;
  }

  const int m = M + 1;
  parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
    std::unordered_map<std::int64_t, double> ring;
    for (std::int64_t k3 = lo; k3 < hi; ++k3) {
      ring.clear();
      const double x3 = s.coord(static_cast<int>(k3));
      for (int i = 0; i <= M; ++i) {
        for (int j = 0; j <= M; ++j) {
          const std::int64_t key = static_cast<std::int64_t>(i - c) * (i - c) +
                                   static_cast<std::int64_t>(j - c) * (j - c);
          auto it = ring.find(key);
          double val;
          if (it != ring.end()) {
            val = it->second;
          } else {
            const double r = s.h * std::sqrt(static_cast<double>(key));
            val = interp_zero_ext(u, {r * zeta[0], r * zeta[1], x3});
            ring.emplace(key, val);
          }
          out.at(Index{i, j, static_cast<int>(k3)}) = val;
        }
      }
    }
  });
  return out;
}

GradientSplit gradient_split(const ScalarField& u) {
  const GridSpec& s = u.spec;
  if (s.n != 3) throw std::invalid_argument("gradient_split: requires n = 3");
  GradientSplit split;
  split.spec = s;
  const std::int64_t cells = s.cell_count();
  split.radial.assign(static_cast<std::size_t>(cells) * 8 * 3, 0.0);
  split.tangential.assign(static_cast<std::size_t>(cells) * 8 * 3, 0.0);
  std::int64_t st[3];
  cell_strides(s, st);
  const double inv_h = 1.0 / s.h;
  parallel_for(cells, [&](std::int64_t lo, std::int64_t hi) {
    double cg[8][3];
    for (std::int64_t cidx = lo; cidx < hi; ++cidx) {
      const Index cell = s.cell_unpack(cidx);
      corner_gradients(u.values.data(), s.node_index(cell), st, 3, inv_h, cg);
      for (int q = 0; q < 8; ++q) {
        const double y0 = s.coord(cell[0] + (q & 1));
        const double y1 = s.coord(cell[1] + ((q >> 1) & 1));
        const double y2 = y0 * y0 + y1 * y1;
        double* rad = split.radial.data() + (cidx * 8 + q) * 3;
        double* tan = split.tangential.data() + (cidx * 8 + q) * 3;
        if (y2 == 0.0) {
          rad[0] = cg[q][0];
          rad[1] = cg[q][1];
          rad[2] = cg[q][2];
          continue;
        }
        const double proj = (cg[q][0] * y0 + cg[q][1] * y1) / y2;
        rad[0] = proj * y0;
        rad[1] = proj * y1;
        rad[2] = cg[q][2];
        tan[0] = cg[q][0] - rad[0];
        tan[1] = cg[q][1] - rad[1];
        tan[2] = 0.0;
      }
    }
  });
  return split;
}

std::vector<double> tangential_sq(const ScalarField& u) {
  const GridSpec& s = u.spec;
  const std::int64_t cells = s.cell_count();
  const int corners = 1 << s.n;
  std::vector<double> out(static_cast<std::size_t>(cells) * corners, 0.0);
  if (s.n == 3) {
    GradientSplit split = gradient_split(u);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double* t = split.tangential.data() + i * 3;
      out[i] = t[0] * t[0] + t[1] * t[1];
    }
    return out;
  }
  // n = 2: D_{S^0} u is the y-derivative of the odd-in-y part.
  ScalarField odd = u;
  {
    ScalarField even = axial_average(u);
    for (std::size_t i = 0; i < odd.values.size(); ++i)
      odd.values[i] -= even.values[i];
  }
  std::int64_t st[3];
  cell_strides(s, st);
  const double inv_h = 1.0 / s.h;
  double cg[8][3];
  for (std::int64_t c = 0; c < cells; ++c) {
    corner_gradients(odd.values.data(), s.node_index(s.cell_unpack(c)), st, 2,
                     inv_h, cg);
    for (int q = 0; q < 4; ++q)
      out[static_cast<std::size_t>(c * 4 + q)] = cg[q][0] * cg[q][0];
  }
  return out;
}

double tangential_energy(const ScalarField& u) {
  const GridSpec& s = u.spec;
  const auto tsq = tangential_sq(u);
  double hn = 1.0;
  for (int k = 0; k < s.n; ++k) hn *= s.h;
  const double w = hn / (1 << s.n);
  double e = 0.0;
  for (double t2 : tsq) e += pow_half(t2, s.p);
  return e * w;
}

double cap_measure(int n, double t, double theta) {
  return n == 2 ? 2.0 * t * theta : 2.0 * kPi * t * t * (1.0 - std::cos(theta));
}

CapSet cap_symmetrize_set(const PolarField& indicator) {
  const PolarSpec& s = indicator.spec;
  CapSet out;
  out.shells.resize(static_cast<std::size_t>(s.n_shells));
  const int bins = s.bins_per_shell();
  for (int i = 0; i < s.n_shells; ++i) {
    double mass = 0.0;
    int marked = 0;
    for (int b = 0; b < bins; ++b) {
      const int j = s.n == 2 ? b : b / s.n_phi;
      const double v = indicator.values[static_cast<std::size_t>(s.index(i, j, s.n == 2 ? 0 : b % s.n_phi))];
      if (v != 0.0 && v != 1.0)
        throw std::invalid_argument("cap_symmetrize_set: indicator must be 0/1");
      if (v == 1.0) {
        mass += s.bin_weight(i, j);
        ++marked;
      }
    }
    auto& shell = out.shells[static_cast<std::size_t>(i)];
    shell.t = s.shell_radius(i);
    if (marked == 0) {
      shell.kind = CapSet::Kind::Empty;
    } else if (marked == bins) {
      shell.kind = CapSet::Kind::Full;
      shell.theta = kPi;
    } else {
      shell.kind = CapSet::Kind::Cap;
      if (s.n == 2) {
        shell.theta = mass / (2.0 * shell.t);
      } else {
        shell.theta = std::acos(
            std::clamp(1.0 - mass / (2.0 * kPi * shell.t * shell.t), -1.0, 1.0));
      }
    }
  }
  return out;
}

PolarField cap_rearrange(const PolarField& v) {
  const PolarSpec& s = v.spec;
  for (double x : v.values)
    if (std::isnan(x)) throw std::runtime_error("inadmissible field");
  PolarField out(s);

  if (s.n == 2) {
    const int m = s.n_theta;
    // Bin order of increasing polar angle |psi|, positive psi first.
    std::vector<int> slot(m);
    for (int q = 0; q < m / 2; ++q) {
      slot[2 * q] = m / 2 + q;          // psi = +(q+1/2) dpsi
      slot[2 * q + 1] = m / 2 - 1 - q;  // psi = -(q+1/2) dpsi
    }
    std::vector<int> order(m);
    for (int i = 0; i < s.n_shells; ++i) {
      const double* vals = v.values.data() + static_cast<std::int64_t>(i) * m;
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        return s.polar_angle(a) < s.polar_angle(b);
      });
      double* dst = out.values.data() + static_cast<std::int64_t>(i) * m;
      for (int q = 0; q < m; ++q) dst[slot[q]] = vals[order[q]];
    }
    return out;
  }

  // n = 3: greedy weight consumption row by row; the output is constant in
  // phi, so each theta row receives the weighted mean of the sample pieces
  // that fill its capacity.
  const int mt = s.n_theta, mp = s.n_phi;
  std::vector<std::pair<double, int>> samples;  // (value, theta row)
  for (int i = 0; i < s.n_shells; ++i) {
    samples.clear();
    samples.reserve(static_cast<std::size_t>(mt) * mp);
    for (int j = 0; j < mt; ++j)
      for (int k = 0; k < mp; ++k)
        samples.emplace_back(v.at(i, j, k), j);
    std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::size_t cursor = 0;
    double sample_left = samples.empty() ? 0.0 : s.bin_weight(i, samples[0].second);
    for (int j = 0; j < mt; ++j) {
      double capacity = s.bin_weight(i, j) * mp;
      const double full_capacity = capacity;
      double mass = 0.0;
      while (capacity > 0.0 && cursor < samples.size()) {
        const double take = std::min(capacity, sample_left);
        mass += take * samples[cursor].first;
        capacity -= take;
        sample_left -= take;
        if (sample_left <= full_capacity * 1e-15) {
          ++cursor;
          if (cursor < samples.size())
            sample_left = s.bin_weight(i, samples[cursor].second);
        }
      }
      const double value = mass / full_capacity;
      for (int k = 0; k < mp; ++k) out.at(i, j, k) = value;
    }
  }
  return out;
}

ScalarField positive_part(const ScalarField& u) {
  ScalarField out = u;
  for (double& v : out.values) v = std::max(v, 0.0);
  return out;
}

ScalarField odd_extension(const ScalarField& v, double trace_tol) {
  const GridSpec& s = v.spec;
  const int c = s.center_index();
  // Trace on {x_n = 0}.
  const std::int64_t count = s.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Index ix = s.node_unpack(idx);
    if (ix[s.n - 1] == c && std::abs(v.values[static_cast<std::size_t>(idx)]) > trace_tol)
      throw std::runtime_error("trace mismatch");
  }
  ScalarField out(s);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Index ix = s.node_unpack(idx);
    const int in = ix[s.n - 1];
    if (in > c) {
      out.values[static_cast<std::size_t>(idx)] = v.values[static_cast<std::size_t>(idx)];
    } else if (in == c) {
      out.values[static_cast<std::size_t>(idx)] = 0.0;
    } else {
      Index jx = ix;
      jx[s.n - 1] = 2 * c - in;
      out.values[static_cast<std::size_t>(idx)] = -v.at(jx);
    }
  }
  return out;
}

}  // namespace morrey

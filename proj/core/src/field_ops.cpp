#include "morrey/field_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "morrey/parallel.hpp"

namespace morrey {

void cell_strides(const GridSpec& s, std::int64_t st[3]) {
  const int m = s.nodes_per_side();
  if (s.n == 2) {
    st[0] = m;
    st[1] = 1;
    st[2] = 0;
  } else {
    st[0] = static_cast<std::int64_t>(m) * m;
    st[1] = m;
    st[2] = 1;
  }
}

void corner_gradients(const double* uv, std::int64_t base, const std::int64_t st[3],
                      int n, double inv_h, double g[8][3]) {
  if (n == 2) {
    const double u00 = uv[base], u10 = uv[base + st[0]];
    const double u01 = uv[base + st[1]], u11 = uv[base + st[0] + st[1]];
    const double d0a = (u10 - u00) * inv_h, d0b = (u11 - u01) * inv_h;
    const double d1a = (u01 - u00) * inv_h, d1b = (u11 - u10) * inv_h;
    // corner q has bits (b0, b1); component k is the edge difference along k
    // at the corner's other-coordinate offsets
    g[0][0] = d0a; g[0][1] = d1a;  // (0,0)
    g[1][0] = d0a; g[1][1] = d1b;  // (1,0)
    g[2][0] = d0b; g[2][1] = d1a;  // (0,1)
    g[3][0] = d0b; g[3][1] = d1b;  // (1,1)
    return;
  }
  double u8[8];
  for (int q = 0; q < 8; ++q) {
    std::int64_t off = 0;
    if (q & 1) off += st[0];
    if (q & 2) off += st[1];
    if (q & 4) off += st[2];
    u8[q] = uv[base + off];
  }
  for (int q = 0; q < 8; ++q) {
    const int b0 = q & 1, b1 = (q >> 1) & 1, b2 = (q >> 2) & 1;
    g[q][0] = (u8[1 | (b1 << 1) | (b2 << 2)] - u8[(b1 << 1) | (b2 << 2)]) * inv_h;
    g[q][1] = (u8[b0 | 2 | (b2 << 2)] - u8[b0 | (b2 << 2)]) * inv_h;
    g[q][2] = (u8[b0 | (b1 << 1) | 4] - u8[b0 | (b1 << 1)]) * inv_h;
  }
}

GradientField gradient(const ScalarField& u) {
  const GridSpec& s = u.spec;
  GradientField g(s);
  std::int64_t st[3];
  cell_strides(s, st);
  const double inv_h = 1.0 / s.h;
  const int corners = 1 << s.n;
  const std::int64_t cells = s.cell_count();
  parallel_for(cells, [&](std::int64_t lo, std::int64_t hi) {
    double cg[8][3];
    for (std::int64_t c = lo; c < hi; ++c) {
      Index ix = s.cell_unpack(c);
      std::int64_t base = s.node_index(ix);
      corner_gradients(u.values.data(), base, st, s.n, inv_h, cg);
      double* out = g.cell(c);
      for (int k = 0; k < s.n; ++k) {
        double acc = 0.0;
        for (int q = 0; q < corners; ++q) acc += cg[q][k];
        out[k] = acc / corners;
      }
    }
  });
  return g;
}

double dirichlet_energy(const ScalarField& u) {
  const GridSpec& s = u.spec;
  const double p = s.p;
  const double inv_h = 1.0 / s.h;
  double hn = 1.0;
  for (int k = 0; k < s.n; ++k) hn *= s.h;
  const int n = s.n;
  const int corners = 1 << n;
  const double cell_w = hn / corners;
  std::int64_t st[3];
  cell_strides(s, st);
  const double* uv = u.values.data();
  return parallel_sum(s.cell_count(), [&](std::int64_t lo, std::int64_t hi) {
    double acc = 0.0;
    double cg[8][3];
    for (std::int64_t c = lo; c < hi; ++c) {
      Index ix = s.cell_unpack(c);
      std::int64_t base = s.node_index(ix);
      corner_gradients(uv, base, st, n, inv_h, cg);
      for (int q = 0; q < corners; ++q) {
        double s2 = 0.0;
        for (int k = 0; k < n; ++k) s2 += cg[q][k] * cg[q][k];
        acc += pow_half(s2, p);
      }
    }
    return acc * cell_w;
  });
}

double energy_and_nodal_gradient(const ScalarField& u, std::vector<double>& grad) {
  const GridSpec& s = u.spec;
  const int m = s.nodes_per_side();
  const int mc = s.cells_per_side();
  const double p = s.p;
  const double inv_h = 1.0 / s.h;
  double hn = 1.0;
  for (int k = 0; k < s.n; ++k) hn *= s.h;
  const int corners = 1 << s.n;
  const double cell_w = hn / corners;
  const double flux_scale = p * cell_w * inv_h;

  grad.assign(static_cast<std::size_t>(s.node_count()), 0.0);
  double energy = 0.0;
  const double* uv = u.values.data();
  double* gv = grad.data();

  if (s.n == 2) {
    for (int i = 0; i < mc; ++i) {
      for (int j = 0; j < mc; ++j) {
        const std::int64_t base = static_cast<std::int64_t>(i) * m + j;
        const double u00 = uv[base], u10 = uv[base + m];
        const double u01 = uv[base + 1], u11 = uv[base + m + 1];
        const double d0a = (u10 - u00) * inv_h, d0b = (u11 - u01) * inv_h;
        const double d1a = (u01 - u00) * inv_h, d1b = (u11 - u10) * inv_h;
        // corner (b0, b1) pairs d0[b1] with d1[b0]
        const double s00 = d0a * d0a + d1a * d1a;
        const double s10 = d0a * d0a + d1b * d1b;
        const double s01 = d0b * d0b + d1a * d1a;
        const double s11 = d0b * d0b + d1b * d1b;
        energy += pow_half(s00, p) + pow_half(s10, p) + pow_half(s01, p) +
                  pow_half(s11, p);
        const double w00 = pow_half_m2(s00, p);
        const double w10 = pow_half_m2(s10, p);
        const double w01 = pow_half_m2(s01, p);
        const double w11 = pow_half_m2(s11, p);
        const double f0a = (w00 + w10) * d0a * flux_scale;
        const double f0b = (w01 + w11) * d0b * flux_scale;
        const double f1a = (w00 + w01) * d1a * flux_scale;
        const double f1b = (w10 + w11) * d1b * flux_scale;
        gv[base] -= f0a + f1a;
        gv[base + m] += f0a - f1b;
        gv[base + 1] += f1a - f0b;
        gv[base + m + 1] += f0b + f1b;
      }
    }
  } else {
    const std::int64_t mm = static_cast<std::int64_t>(m) * m;
    for (int i = 0; i < mc; ++i) {
      for (int j = 0; j < mc; ++j) {
        const std::int64_t row = (static_cast<std::int64_t>(i) * m + j) * m;
        for (int k = 0; k < mc; ++k) {
          const std::int64_t base = row + k;
          double uc[8];
          uc[0] = uv[base];
          uc[1] = uv[base + mm];
          uc[2] = uv[base + m];
          uc[3] = uv[base + mm + m];
          uc[4] = uv[base + 1];
          uc[5] = uv[base + mm + 1];
          uc[6] = uv[base + m + 1];
          uc[7] = uv[base + mm + m + 1];
          // edge differences along each dimension, indexed by the other bits
          double d0[4], d1[4], d2[4];
          for (int q = 0; q < 4; ++q) {
            // q = b1 | (b2 << 1) for d0; b0 | (b2 << 1) for d1; b0 | (b1 << 1) for d2
            const int lo0 = ((q & 1) << 1) | ((q >> 1) << 2);
            d0[q] = (uc[lo0 | 1] - uc[lo0]) * inv_h;
            const int lo1 = (q & 1) | ((q >> 1) << 2);
            d1[q] = (uc[lo1 | 2] - uc[lo1]) * inv_h;
            const int lo2 = (q & 1) | ((q & 2) << 0);
            d2[q] = (uc[lo2 | 4] - uc[lo2]) * inv_h;
          }
          double w[8];
          for (int q = 0; q < 8; ++q) {
            const int b0 = q & 1, b1 = (q >> 1) & 1, b2 = (q >> 2) & 1;
            const double g0 = d0[b1 | (b2 << 1)];
            const double g1 = d1[b0 | (b2 << 1)];
            const double g2 = d2[b0 | (b1 << 1)];
            const double s2 = g0 * g0 + g1 * g1 + g2 * g2;
            energy += pow_half(s2, p);
            w[q] = pow_half_m2(s2, p);
          }
          for (int q = 0; q < 4; ++q) {
            const int b1 = q & 1, b2 = (q >> 1) & 1;
            const double f0 =
                (w[(b1 << 1) | (b2 << 2)] + w[1 | (b1 << 1) | (b2 << 2)]) *
                d0[q] * flux_scale;
            const std::int64_t lo = base + b1 * m + b2;
            gv[lo] -= f0;
            gv[lo + mm] += f0;
          }
          for (int q = 0; q < 4; ++q) {
            const int b0 = q & 1, b2 = (q >> 1) & 1;
            const double f1 =
                (w[b0 | (b2 << 2)] + w[b0 | 2 | (b2 << 2)]) * d1[q] * flux_scale;
            const std::int64_t lo = base + b0 * mm + b2;
            gv[lo] -= f1;
            gv[lo + m] += f1;
          }
          for (int q = 0; q < 4; ++q) {
            const int b0 = q & 1, b1 = (q >> 1) & 1;
            const double f2 =
                (w[b0 | (b1 << 1)] + w[b0 | (b1 << 1) | 4]) * d2[q] * flux_scale;
            const std::int64_t lo = base + b0 * mm + b1 * m;
            gv[lo] -= f2;
            gv[lo + 1] += f2;
          }
        }
      }
    }
  }
  return energy * cell_w;
}

std::vector<double> weak_residual(const ScalarField& u) {
  std::vector<double> grad;
  energy_and_nodal_gradient(u, grad);
  const double inv_p = 1.0 / u.spec.p;
  for (double& g : grad) g *= inv_p;
  return grad;
}

double interpolate(const ScalarField& u, const std::array<double, 3>& x) {
  const GridSpec& s = u.spec;
  const int m = s.nodes_per_side();
  int base[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k < s.n; ++k) {
    if (x[k] < -s.L - 1e-12 || x[k] > s.L + 1e-12)
      throw std::domain_error("out of domain");
    double t = (std::clamp(x[k], -s.L, s.L) + s.L) / s.h;
    int b = static_cast<int>(std::floor(t));
    b = std::clamp(b, 0, m - 2);
    base[k] = b;
    frac[k] = t - b;
  }
  double result = 0.0;
  const int corners = 1 << s.n;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    Index ix{0, 0, 0};
    for (int k = 0; k < s.n; ++k) {
      const int bit = (c >> k) & 1;
      ix[k] = base[k] + bit;
      w *= bit ? frac[k] : 1.0 - frac[k];
    }
    if (w != 0.0) result += w * u.values[static_cast<std::size_t>(s.node_index(ix))];
  }
  return result;
}

SmoothingKernel::Stencil SmoothingKernel::stencil(const GridSpec& spec) const {
  if (epsilon < spec.h) throw std::runtime_error("kernel unresolved");
  Stencil st;
  const int r = static_cast<int>(std::ceil(epsilon / spec.h));
  double total = 0.0;
  for (int i = -r; i <= r; ++i) {
    for (int j = -r; j <= r; ++j) {
      for (int k = (spec.n == 3 ? -r : 0); k <= (spec.n == 3 ? r : 0); ++k) {
        double d2 = static_cast<double>(i) * i + static_cast<double>(j) * j +
                    static_cast<double>(k) * k;
        double rho2 = d2 * spec.h * spec.h / (epsilon * epsilon);
        if (rho2 >= 1.0) continue;
        double w = std::exp(-1.0 / (1.0 - rho2));
        st.offsets.push_back(Index{i, j, k});
        st.weights.push_back(w);
        total += w;
      }
    }
  }
  for (double& w : st.weights) w /= total;
  return st;
}

ScalarField mollify(const ScalarField& u, const SmoothingKernel& kernel) {
  const GridSpec& s = u.spec;
  const auto st = kernel.stencil(s);
  const int m = s.nodes_per_side();
  ScalarField out(s);
  const std::size_t k_count = st.offsets.size();
  parallel_for(s.node_count(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      Index ix = s.node_unpack(idx);
      double acc = 0.0;
      for (std::size_t q = 0; q < k_count; ++q) {
        Index jx = ix;
        bool inside = true;
        for (int k = 0; k < s.n; ++k) {
          jx[k] -= st.offsets[q][k];
          if (jx[k] < 0 || jx[k] >= m) {
            inside = false;
            break;
          }
        }
        if (inside) acc += st.weights[q] * u.values[static_cast<std::size_t>(s.node_index(jx))];
      }
      out.values[static_cast<std::size_t>(idx)] = acc;
    }
  });
  return out;
}

}  // namespace morrey

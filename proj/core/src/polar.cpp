#include "morrey/polar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morrey/field_ops.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

void PolarSpec::validate() const {
  if (n != 2 && n != 3) throw std::invalid_argument("PolarSpec: n must be 2 or 3");
  if (!(p > n)) throw std::invalid_argument("PolarSpec: requires p > n");
  if (n_shells < 2 || n_theta < 2 || (n == 3 && n_phi < 2) || !(dt > 0.0))
    throw std::invalid_argument("PolarSpec: degenerate resolution");
  if (n == 2 && n_theta % 2 != 0)
    throw std::invalid_argument("PolarSpec: psi bin count must be even");
}

double PolarSpec::bin_weight(int i, int j) const {
  const double t = shell_radius(i);
  if (n == 2) return t * (2.0 * kPi / n_theta);
  const double dth = kPi / n_theta;
  return t * t * (std::cos(j * dth) - std::cos((j + 1) * dth)) * (2.0 * kPi / n_phi);
}

double PolarSpec::shell_measure(int i) const {
  const double t = shell_radius(i);
  return n == 2 ? 2.0 * kPi * t : 4.0 * kPi * t * t;
}

std::array<double, 3> PolarSpec::position(int i, int j, int k) const {
  const double t = shell_radius(i);
  if (n == 2) {
    const double ps = psi(j);
    return {t * std::sin(ps), t * std::cos(ps), 0.0};
  }
  const double th = theta(j), ph = phi(k);
  return {t * std::sin(th) * std::cos(ph), t * std::sin(th) * std::sin(ph),
          t * std::cos(th)};
}

PolarSpec default_polar_spec(const GridSpec& spec) {
  PolarSpec ps;
  ps.n = spec.n;
  ps.p = spec.p;
  ps.dt = spec.h;
  ps.n_shells = static_cast<int>(std::lround(spec.L / spec.h));
  if (spec.n == 2) {
    ps.n_theta = 512;
  } else {
    ps.n_theta = 128;
    ps.n_phi = 64;
  }
  return ps;
}

PolarField to_polar(const ScalarField& u, const PolarSpec& pspec) {
  pspec.validate();
  if (pspec.max_radius() > u.spec.L + 1e-12) throw std::domain_error("out of domain");
  PolarField pf(pspec);
  const int bins = pspec.n == 2 ? pspec.n_theta : pspec.n_theta * pspec.n_phi;
  parallel_for(pspec.n_shells, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      for (int b = 0; b < bins; ++b) {
        int j = pspec.n == 2 ? b : b / pspec.n_phi;
        int k = pspec.n == 2 ? 0 : b % pspec.n_phi;
        pf.values[static_cast<std::size_t>(pspec.index(static_cast<int>(i), j, k))] =
            interpolate(u, pspec.position(static_cast<int>(i), j, k));
      }
    }
  });
  return pf;
}

ScalarField from_polar(const PolarField& pf, const GridSpec& spec) {
  const PolarSpec& ps = pf.spec;
  if (ps.n != spec.n) throw std::invalid_argument("from_polar: dimension mismatch");
  ScalarField out(spec);
  parallel_for(spec.node_count(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      Index ix = spec.node_unpack(idx);
      double x[3] = {0.0, 0.0, 0.0};
      double r2 = 0.0;
      for (int k = 0; k < spec.n; ++k) {
        x[k] = spec.coord(ix[k]);
        r2 += x[k] * x[k];
      }
      const double r = std::sqrt(r2);
      if (r > ps.max_radius()) continue;  // outside the polar domain
      int i = std::clamp(static_cast<int>(std::lround(r / ps.dt - 0.5)), 0,
                         ps.n_shells - 1);
      int j = 0, k = 0;
      if (ps.n == 2) {
        const double psi = std::atan2(x[0], x[1]);  // angle from +e_2
        const double dpsi = 2.0 * kPi / ps.n_theta;
        j = std::clamp(static_cast<int>(std::floor((psi + kPi) / dpsi)), 0,
                       ps.n_theta - 1);
      } else {
        const double th = r > 0.0 ? std::acos(std::clamp(x[2] / r, -1.0, 1.0)) : 0.0;
        double ph = std::atan2(x[1], x[0]);
        if (ph < 0.0) ph += 2.0 * kPi;
        j = std::clamp(static_cast<int>(std::floor(th / (kPi / ps.n_theta))), 0,
                       ps.n_theta - 1);
        k = std::clamp(static_cast<int>(std::floor(ph / (2.0 * kPi / ps.n_phi))), 0,
                       ps.n_phi - 1);
      }
      out.values[static_cast<std::size_t>(idx)] =
          pf.values[static_cast<std::size_t>(ps.index(i, j, k))];
    }
  });
  return out;
}

// The angular difference quotients live on the band between adjacent angular
// bins, with the radial quotient averaged onto the same band. The band set
// and its weights are invariant under the reflection theta -> pi - theta, so
// the quadrature reproduces the reflection isometry of the continuum energy.
double polar_energy(const PolarField& pf) {
  const PolarSpec& s = pf.spec;
  const double p = s.p;
  const int N = s.n_shells;
  double energy = 0.0;

  if (s.n == 2) {
    const int m = s.n_theta;
    const double dpsi = 2.0 * kPi / m;
    for (int i = 0; i < N; ++i) {
      const double t = s.shell_radius(i);
      const double w = t * dpsi * s.dt;
      for (int j = 0; j < m; ++j) {
        const int jn = (j + 1) % m;
        const double va = pf.at(i, j), vb = pf.at(i, jn);
        const double dth = (vb - va) / (t * dpsi);
        const double hi = i + 1 < N ? 0.5 * (pf.at(i + 1, j) + pf.at(i + 1, jn)) : 0.0;
        const double dr = (hi - 0.5 * (va + vb)) / s.dt;
        energy += pow_half(dr * dr + dth * dth, p) * w;
      }
    }
  } else {
    const int mt = s.n_theta, mp = s.n_phi;
    const double dth = kPi / mt, dph = 2.0 * kPi / mp;
    for (int i = 0; i < N; ++i) {
      const double t = s.shell_radius(i);
      for (int j = 0; j + 1 < mt; ++j) {
        const double band_sin = std::sin((j + 1) * dth);
        const double w =
            t * t * (std::cos(s.theta(j)) - std::cos(s.theta(j + 1))) * dph * s.dt;
        for (int k = 0; k < mp; ++k) {
          const int kn = (k + 1) % mp;
          const double va = pf.at(i, j, k), vb = pf.at(i, j + 1, k);
          const double gth = (vb - va) / (t * dth);
          const double gph =
              0.5 * ((pf.at(i, j, kn) - va) + (pf.at(i, j + 1, kn) - vb)) /
              (t * band_sin * dph);
          const double hi =
              i + 1 < N ? 0.5 * (pf.at(i + 1, j, k) + pf.at(i + 1, j + 1, k)) : 0.0;
          const double gr = (hi - 0.5 * (va + vb)) / s.dt;
          energy += pow_half(gr * gr + gth * gth + gph * gph, p) * w;
        }
      }
    }
  }
  return energy;
}

}  // namespace morrey

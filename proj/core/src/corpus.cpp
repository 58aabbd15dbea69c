#include "morrey/corpus.hpp"

#include <cmath>
#include <random>

namespace morrey {

namespace {

struct Bump {
  double x[3];
  double width;
  double amp;
};

}  // namespace

ScalarField random_smooth_field(const GridSpec& spec, std::uint64_t seed,
                                int bumps) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-0.5 * spec.L, 0.5 * spec.L);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);

  std::vector<Bump> bb(static_cast<std::size_t>(bumps));
  for (auto& b : bb) {
    for (int k = 0; k < spec.n; ++k) b.x[k] = pos(rng);
    b.width = width(rng);
    b.amp = amp(rng);
  }

  ScalarField u(spec);
  const std::int64_t count = spec.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Index ix = spec.node_unpack(idx);
    double x[3], env = 1.0;
    for (int k = 0; k < spec.n; ++k) {
      x[k] = spec.coord(ix[k]);
      const double t = x[k] / spec.L;
      env *= 1.0 - t * t;
    }
    double v = 0.0;
    for (const auto& b : bb) {
      double d2 = 0.0;
      for (int k = 0; k < spec.n; ++k) {
        const double d = x[k] - b.x[k];
        d2 += d * d;
      }
      v += b.amp * std::exp(-d2 / (b.width * b.width));
    }
    u.values[static_cast<std::size_t>(idx)] = v * env;
  }
  return u;
}

ScalarField random_axisymmetric_field(const GridSpec& spec, std::uint64_t seed,
                                      int bumps) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.0, 0.5 * spec.L);
  std::uniform_real_distribution<double> height(-0.5 * spec.L, 0.5 * spec.L);
  std::uniform_real_distribution<double> width(0.5, 1.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);

  std::vector<Bump> bb(static_cast<std::size_t>(bumps));
  for (auto& b : bb) {
    b.x[0] = rad(rng);     // radial center
    b.x[1] = height(rng);  // x_n center
    b.width = width(rng);
    b.amp = amp(rng);
  }

  ScalarField u(spec);
  const std::int64_t count = spec.node_count();
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Index ix = spec.node_unpack(idx);
    double y2 = 0.0;
    for (int k = 0; k + 1 < spec.n; ++k) {
      const double c = spec.coord(ix[k]);
      y2 += c * c;
    }
    const double r = std::sqrt(y2);
    const double z = spec.coord(ix[spec.n - 1]);
    double v = 0.0;
    for (const auto& b : bb) {
      const double dr = r - b.x[0], dz = z - b.x[1];
      v += b.amp * std::exp(-(dr * dr + dz * dz) / (b.width * b.width));
    }
    u.values[static_cast<std::size_t>(idx)] = v;
  }
  return u;
}

PolarField random_polar_field(const PolarSpec& spec, std::uint64_t seed,
                              int modes) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> center(0.0, spec.max_radius());
  std::uniform_real_distribution<double> width(0.3 * spec.max_radius(),
                                               0.8 * spec.max_radius());
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> freq(0, 3);

  struct Mode {
    double t0, w, a, ph;
    int q_ang, q_az;
  };
  std::vector<Mode> mm(static_cast<std::size_t>(modes));
  for (auto& m : mm) {
    m.t0 = center(rng);
    m.w = width(rng);
    m.a = amp(rng);
    m.ph = phase(rng);
    m.q_ang = freq(rng);
    m.q_az = freq(rng);
  }

  PolarField pf(spec);
  for (int i = 0; i < spec.n_shells; ++i) {
    const double t = spec.shell_radius(i);
    for (int j = 0; j < spec.n_theta; ++j) {
      if (spec.n == 2) {
        const double psi = spec.psi(j);
        double v = 0.0;
        for (const auto& m : mm) {
          const double dt = t - m.t0;
          v += m.a * std::exp(-dt * dt / (m.w * m.w)) * std::cos(m.q_ang * psi + m.ph);
        }
        pf.at(i, j) = v;
      } else {
        const double th = spec.theta(j);
        for (int k = 0; k < spec.n_phi; ++k) {
          const double ph = spec.phi(k);
          double v = 0.0;
          for (const auto& m : mm) {
            const double dt = t - m.t0;
            // sin(theta)^q keeps azimuthal modes regular at the poles
            const double pole = m.q_az == 0 ? 1.0 : std::pow(std::sin(th), m.q_az);
            v += m.a * std::exp(-dt * dt / (m.w * m.w)) *
                 std::cos(m.q_ang * th) * pole * std::cos(m.q_az * ph + m.ph);
          }
          pf.at(i, j, k) = v;
        }
      }
    }
  }
  return pf;
}

std::vector<ScalarField> smooth_corpus(const GridSpec& spec, int count,
                                       std::uint64_t seed) {
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_smooth_field(spec, seed + static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<ScalarField> axisymmetric_corpus(const GridSpec& spec, int count,
                                             std::uint64_t seed) {
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(
        random_axisymmetric_field(spec, seed + static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<PolarField> polar_corpus(const PolarSpec& spec, int count,
                                     std::uint64_t seed) {
  std::vector<PolarField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_polar_field(spec, seed + static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace morrey

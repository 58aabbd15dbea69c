#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "morrey/field_ops.hpp"
#include "morrey/grid.hpp"
#include "morrey/polar.hpp"

using namespace morrey;
using testutil::fill;

namespace {

// Unpruned reference scan over all node pairs.
SeminormResult seminorm_brute_force(const ScalarField& u) {
  const GridSpec& s = u.spec;
  const std::int64_t count = s.node_count();
  SeminormResult best;
  for (std::int64_t a = 0; a < count; ++a) {
    const Index ia = s.node_unpack(a);
    for (std::int64_t b = a + 1; b < count; ++b) {
      const Index ib = s.node_unpack(b);
      double d2 = 0.0;
      for (int k = 0; k < s.n; ++k) {
        const double d = (ia[k] - ib[k]) * s.h;
        d2 += d * d;
      }
      const double q = std::abs(u.values[static_cast<std::size_t>(a)] -
                                u.values[static_cast<std::size_t>(b)]) /
                       std::pow(std::sqrt(d2), s.alpha());
      if (q > best.value) {
        best.value = q;
        best.x = ia;
        best.y = ib;
      }
    }
  }
  return best;
}

ScalarField random_field(const GridSpec& s, std::uint64_t seed) {
  ScalarField u(s);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : u.values) v = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("grid spec validation") {
  GridSpec good{2, 4.0, 0.25, 4.0};
  CHECK_NOTHROW(good.validate());

  GridSpec bad_p{2, 4.0, 0.25, 2.0};  // p must exceed n
  CHECK_THROWS(bad_p.validate());
  GridSpec bad_L{2, 1.0, 0.25, 4.0};  // pins would sit too close to the boundary
  CHECK_THROWS(bad_L.validate());
  GridSpec bad_h{2, 4.0, 0.3, 4.0};  // 1/h not an integer
  CHECK_THROWS(bad_h.validate());
  GridSpec n3{3, 2.0, 0.5, 4.0};
  CHECK_NOTHROW(n3.validate());
}

TEST_CASE("grid index round trips and reflection exactness") {
  GridSpec s{3, 2.0, 0.25, 4.0};
  for (std::int64_t idx : {std::int64_t(0), std::int64_t(7), s.node_count() - 1}) {
    CHECK(s.node_index(s.node_unpack(idx)) == idx);
  }
  // +-e_n and the plane x_n = 0 are nodes.
  CHECK(s.coord(s.pin_plus()[2]) == 1.0);
  CHECK(s.coord(s.pin_minus()[2]) == -1.0);
  CHECK(s.coord(s.center_index()) == 0.0);
}

TEST_CASE("gradient of a constant is zero") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  GradientField g = gradient(fill(s, [](double, double, double) { return 3.25; }));
  for (double v : g.vectors) CHECK(v == 0.0);
}

TEST_CASE("gradient is exact for affine fields") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  GradientField g = gradient(fill(s, [](double, double x2, double) { return x2; }));
  for (std::int64_t c = 0; c < s.cell_count(); ++c) {
    CHECK(g.cell(c)[0] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(g.cell(c)[1] == doctest::Approx(1.0).epsilon(1e-13));
  }
  GradientField g2 =
      gradient(fill(s, [](double x1, double x2, double) { return x1 + 2.0 * x2; }));
  for (std::int64_t c = 0; c < s.cell_count(); ++c) {
    CHECK(g2.cell(c)[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(g2.cell(c)[1] == doctest::Approx(2.0).epsilon(1e-13));
  }
}

TEST_CASE("gradient is linear in the field") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField u = random_field(s, 11), v = random_field(s, 12);
  const double a = 0.7, b = -1.3;
  ScalarField w(s);
  for (std::size_t i = 0; i < w.values.size(); ++i)
    w.values[i] = a * u.values[i] + b * v.values[i];
  GradientField gu = gradient(u), gv = gradient(v), gw = gradient(w);
  for (std::size_t i = 0; i < gw.vectors.size(); ++i)
    CHECK(std::abs(gw.vectors[i] - (a * gu.vectors[i] + b * gv.vectors[i])) <= 1e-14);
}

TEST_CASE("dirichlet energy of u = x_n on the unit box is exactly 4") {
  // [-1,1]^2, |Du| = 1, area 4. Constructed directly; the solver-facing
  // L >= 2 constraint does not apply to raw quadrature.
  GridSpec s{2, 1.0, 0.25, 4.0};
  ScalarField u = fill(s, [](double, double x2, double) { return x2; });
  CHECK(dirichlet_energy(u) == 4.0);
  CHECK(dirichlet_energy(fill(s, [](double, double, double) { return 2.0; })) == 0.0);
}

TEST_CASE("dirichlet energy matches an independent re-summation oracle") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField u = random_field(s, 5);
  // Separate code path: reversed cell order, explicit corner loop.
  std::int64_t st[3];
  cell_strides(s, st);
  const double inv_h = 1.0 / s.h;
  const double cell_w = s.h * s.h / 4.0;
  double oracle = 0.0;
  for (std::int64_t c = s.cell_count() - 1; c >= 0; --c) {
    const Index cell = s.cell_unpack(c);
    double g[8][3];
    corner_gradients(u.values.data(), s.node_index(cell), st, s.n, inv_h, g);
    for (int q = 0; q < 4; ++q)
      oracle += pow_half(g[q][0] * g[q][0] + g[q][1] * g[q][1], s.p) * cell_w;
  }
  const double e = dirichlet_energy(u);
  CHECK(std::abs(e - oracle) <= 1e-12 * oracle);
}

TEST_CASE("dirichlet energy scales as |lambda|^p") {
  GridSpec s{3, 2.0, 0.5, 4.0};
  ScalarField u = random_field(s, 6);
  const double e = dirichlet_energy(u);
  for (double lam : {2.0, -0.5, 3.7}) {
    ScalarField v(s);
    for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] = lam * u.values[i];
    const double scaled = std::pow(std::abs(lam), s.p) * e;
    CHECK(std::abs(dirichlet_energy(v) - scaled) <= 1e-12 * scaled);
  }
}

TEST_CASE("holder seminorm of u = x_1 on the unit box") {
  GridSpec s{2, 1.0, 0.25, 4.0};  // alpha = 1/2
  ScalarField u = fill(s, [](double x1, double, double) { return x1; });
  auto r = holder_seminorm(u);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // Attained across the full width at equal height.
  CHECK(std::abs(s.coord(r.x[0]) - s.coord(r.y[0])) == 2.0);
  CHECK(r.x[1] == r.y[1]);

  ScalarField c = fill(s, [](double, double, double) { return 1.5; });
  CHECK(holder_seminorm(c).value == 0.0);
}

TEST_CASE("holder seminorm matches the exhaustive oracle") {
  GridSpec s{2, 2.0, 0.5, 4.0};
  SUBCASE("two-spike field") {
    ScalarField u(s);
    u.at(s.pin_plus()) = 1.0;
    u.at(s.pin_minus()) = -1.0;
    auto fast = holder_seminorm(u);
    auto slow = seminorm_brute_force(u);
    CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-14));
  }
  SUBCASE("random fields") {
    for (std::uint64_t seed : {21, 22, 23}) {
      ScalarField u = random_field(s, seed);
      CHECK(holder_seminorm(u).value ==
            doctest::Approx(seminorm_brute_force(u).value).epsilon(1e-13));
    }
  }
}

TEST_CASE("holder seminorm scaling and triangle inequality") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField u = random_field(s, 31), v = random_field(s, 32);
  const double su = holder_seminorm(u).value;
  ScalarField w(s);
  for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = -2.5 * u.values[i];
  CHECK(std::abs(holder_seminorm(w).value - 2.5 * su) <= 1e-12 * su);

  for (std::size_t i = 0; i < w.values.size(); ++i)
    w.values[i] = u.values[i] + v.values[i];
  CHECK(holder_seminorm(w).value <=
        su + holder_seminorm(v).value + 1e-12);
}

TEST_CASE("interpolation is exact at nodes, affine, and center-averaging") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField u = random_field(s, 41);
  const Index node{5, 9, 0};
  CHECK(interpolate(u, {s.coord(5), s.coord(9), 0.0}) == u.at(node));

  ScalarField a = fill(s, [](double x1, double, double) { return x1; });
  CHECK(interpolate(a, {0.3, 0.7, 0.0}) == doctest::Approx(0.3).epsilon(1e-14));

  // Cell-center value is the mean of the 4 corners.
  const Index cell{3, 4, 0};
  const auto xc = cell_center(s, cell);
  const double mean = 0.25 * (u.at({3, 4, 0}) + u.at({4, 4, 0}) + u.at({3, 5, 0}) +
                              u.at({4, 5, 0}));
  CHECK(interpolate(u, xc) == doctest::Approx(mean).epsilon(1e-14));

  CHECK_THROWS_AS(interpolate(u, {2.5, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("mollifier kernel weights are unit mass") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  for (double eps : {0.5, 1.0, 2.0}) {
    auto st = SmoothingKernel{eps}.stencil(s);
    double total = 0.0;
    for (double w : st.weights) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("mollify fixes constants and interior affine values") {
  GridSpec s{2, 2.0, 0.25, 4.0};
  ScalarField c = fill(s, [](double, double, double) { return 0.75; });
  ScalarField cm = mollify(c, SmoothingKernel{0.5});
  // Interior nodes: exact by unit mass. (The boundary collar sees the
  // zero-extension.)
  CHECK(std::abs(cm.at({8, 8, 0}) - 0.75) <= 1e-12);

  ScalarField a = fill(s, [](double, double x2, double) { return x2; });
  ScalarField am = mollify(a, SmoothingKernel{0.5});
  // Odd first moment of the radial kernel vanishes.
  CHECK(std::abs(am.at({8, 8, 0}) - a.at({8, 8, 0})) <= 1e-10);
  CHECK(std::abs(am.at({6, 10, 0}) - a.at({6, 10, 0})) <= 1e-10);

  CHECK_THROWS_WITH(mollify(a, SmoothingKernel{0.1}),
                    doctest::Contains("kernel unresolved"));
}

TEST_CASE("mollification sup bound from the discrete seminorm") {
  GridSpec s{2, 2.0, 0.125, 4.0};
  for (std::uint64_t seed : {51, 52, 53, 54, 55}) {
    ScalarField u = random_field(s, seed);
    // Smooth once so the seminorm is not dominated by node-scale noise.
    u = mollify(u, SmoothingKernel{2.0 * s.h});
    const double sem = holder_seminorm(u).value;
    for (double eps : {2.0 * s.h, 4.0 * s.h, 8.0 * s.h}) {
      ScalarField ue = mollify(u, SmoothingKernel{eps});
      CHECK(testutil::sup_distance(ue, u) <=
            sem * std::pow(eps, s.alpha()) + 1e-12);
    }
  }
}

TEST_CASE("polar round trips") {
  GridSpec s{2, 2.0, 0.125, 4.0};
  const PolarSpec ps = default_polar_spec(s);

  ScalarField c = fill(s, [](double, double, double) { return 1.25; });
  PolarField pc = to_polar(c, ps);
  for (double v : pc.values) CHECK(v == doctest::Approx(1.25).epsilon(1e-14));
  ScalarField back = from_polar(pc, s);
  for (std::int64_t idx = 0; idx < s.node_count(); ++idx) {
    const Index ix = s.node_unpack(idx);
    const double r2 = s.coord(ix[0]) * s.coord(ix[0]) + s.coord(ix[1]) * s.coord(ix[1]);
    if (r2 <= ps.max_radius() * ps.max_radius())
      CHECK(back.values[static_cast<std::size_t>(idx)] ==
            doctest::Approx(1.25).epsilon(1e-14));
  }

  // Affine exactness: samples of x_n are t cos(angle).
  ScalarField a = fill(s, [](double, double x2, double) { return x2; });
  PolarField pa = to_polar(a, ps);
  for (int i = 0; i < ps.n_shells; ++i)
    for (int j = 0; j < ps.n_theta; ++j)
      CHECK(std::abs(pa.at(i, j) -
                     ps.shell_radius(i) * std::cos(ps.polar_angle(j))) <= 1e-10);
}

TEST_CASE("polar round-trip error shrinks under refinement") {
  auto round_trip_error = [](double h) {
    GridSpec s{2, 2.0, h, 4.0};
    ScalarField u = fill(s, [](double x1, double x2, double) {
      return std::exp(-(x1 * x1 + x2 * x2));
    });
    ScalarField back = from_polar(to_polar(u, default_polar_spec(s)), s);
    double worst = 0.0;
    for (std::int64_t idx = 0; idx < s.node_count(); ++idx) {
      const Index ix = s.node_unpack(idx);
      const double r2 =
          s.coord(ix[0]) * s.coord(ix[0]) + s.coord(ix[1]) * s.coord(ix[1]);
      if (r2 > 0.8 * 0.8 * s.L * s.L) continue;  // nearest-shell cutoff artifacts
      worst = std::max(worst, std::abs(back.values[static_cast<std::size_t>(idx)] -
                                       u.values[static_cast<std::size_t>(idx)]));
    }
    return worst;
  };
  const double coarse = round_trip_error(0.25);
  const double fine = round_trip_error(0.125);
  CHECK(fine < coarse);
}

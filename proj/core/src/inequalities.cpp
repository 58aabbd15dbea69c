#include "morrey/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morrey/field_ops.hpp"
#include "morrey/symmetrize.hpp"

namespace morrey {

InequalityResult make_inequality(std::string name, double lhs, double rhs,
                                 double tolerance) {
  InequalityResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.deficit = rhs - lhs;
  r.tolerance = tolerance;
  r.passed = r.deficit >= -tolerance;
  return r;
}

namespace {

double norm_p(const double* v, int n, double p) {
  double s2 = 0.0;
  for (int k = 0; k < n; ++k) s2 += v[k] * v[k];
  return pow_half(s2, p);
}

}  // namespace

InequalityResult clarkson_pointwise(const std::array<double, 3>& a,
                                    const std::array<double, 3>& b, int n, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("clarkson_pointwise: requires p >= 2");
  double mid[3], diff[3];
  for (int k = 0; k < n; ++k) {
    mid[k] = 0.5 * (a[k] + b[k]);
    diff[k] = 0.5 * (a[k] - b[k]);
  }
  const double lhs = norm_p(mid, n, p) + norm_p(diff, n, p);
  const double rhs = 0.5 * (norm_p(a.data(), n, p) + norm_p(b.data(), n, p));
  return make_inequality("clarkson_pointwise", lhs, rhs, 1e-12);
}

InequalityResult clarkson_fields(const ScalarField& v, const ScalarField& w) {
  if (!(v.spec == w.spec))
    throw std::invalid_argument("clarkson_fields: spec mismatch");
  const GridSpec& s = v.spec;
  ScalarField mid(s), diff(s);
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    mid.values[i] = 0.5 * (v.values[i] + w.values[i]);
    diff.values[i] = 0.5 * (v.values[i] - w.values[i]);
  }
  const double lhs = dirichlet_energy(mid) + dirichlet_energy(diff);
  const double rhs = 0.5 * (dirichlet_energy(v) + dirichlet_energy(w));
  const double scale = std::max(1.0, rhs);
  return make_inequality("clarkson_fields", lhs, rhs, 1e-12 * scale);
}

InequalityResult polya_szego_axial(const ScalarField& u, double tolerance) {
  const double lhs = dirichlet_energy(axial_average(u));
  const double rhs = dirichlet_energy(u) - tangential_energy(u);
  return make_inequality("polya_szego_axial", lhs, rhs, tolerance);
}

InequalityResult gradient_split_elementary(const ScalarField& u) {
  if (u.spec.n != 3)
    throw std::invalid_argument("gradient_split_elementary: requires n = 3");
  const GridSpec& s = u.spec;
  GradientSplit split = gradient_split(u);
  const std::int64_t entries = s.cell_count() * 8;
  // Worst corner by signed slack |Du|^p - (|radial|^p + |tangential|^p).
  double worst_lhs = 0.0, worst_rhs = 0.0, worst = 1e300;
  for (std::int64_t c = 0; c < entries; ++c) {
    const double* rad = split.radial.data() + c * 3;
    const double* tan = split.tangential.data() + c * 3;
    double full[3] = {rad[0] + tan[0], rad[1] + tan[1], rad[2] + tan[2]};
    const double lhs = norm_p(rad, 3, s.p) + norm_p(tan, 3, s.p);
    const double rhs = norm_p(full, 3, s.p);
    if (rhs - lhs < worst) {
      worst = rhs - lhs;
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  const double scale = std::max(1.0, worst_rhs);
  return make_inequality("gradient_split_elementary", worst_lhs, worst_rhs,
                         1e-12 * scale);
}

InequalityResult hardy_type_axial(const ScalarField& u, double c_candidate,
                                  double tolerance) {
  const GridSpec& s = u.spec;
  ScalarField star = axial_average(u);
  double lhs = 0.0;
  double hn = 1.0;
  for (int k = 0; k < s.n; ++k) hn *= s.h;
  const std::int64_t cells = s.cell_count();
  for (std::int64_t c = 0; c < cells; ++c) {
    const Index cell = s.cell_unpack(c);
    const auto x = cell_center(s, cell);
    const double y2 = s.n == 2 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    // Cell value: mean of the corner nodes.
    double w = 0.0;
    const int corners = 1 << s.n;
    for (int q = 0; q < corners; ++q) {
      Index node = cell;
      for (int k = 0; k < s.n; ++k)
        if (q & (1 << k)) ++node[k];
      w += u.at(node) - star.at(node);
    }
    w /= corners;
    lhs += pow_half(w * w, s.p) / pow_half(y2, s.p) * hn;
  }
  const double rhs = c_candidate * tangential_energy(u);
  const double scale = std::max(1.0, rhs);
  return make_inequality("hardy_type_axial", lhs, rhs, tolerance * scale);
}

std::vector<std::array<double, 2>> sweep_directions(int n, int count) {
  if (n == 2) return {{{1.0, 0.0}}, {{-1.0, 0.0}}};
  if (count < 2) throw std::invalid_argument("sweep_directions: need >= 2 directions");
  std::vector<std::array<double, 2>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int q = 0; q < count; ++q) {
    const double ang = 2.0 * kPi * q / count;
    out.push_back({std::cos(ang), std::sin(ang)});
  }
  return out;
}

InequalityResult sweep_average(const ScalarField& u,
                               const std::vector<std::array<double, 2>>& directions,
                               double tolerance) {
  if (directions.empty())
    throw std::invalid_argument("sweep_average: directions must be nonempty");
  double lhs = 0.0;
  for (const auto& zeta : directions)
    lhs += dirichlet_energy(axial_sweep(u, zeta));
  lhs /= static_cast<double>(directions.size());
  const double rhs = u.spec.n == 2
                         ? dirichlet_energy(u)
                         : dirichlet_energy(u) - tangential_energy(u);
  return make_inequality("sweep_average", lhs, rhs, tolerance);
}

InequalityResult polya_szego_cap(const PolarField& v, double tolerance) {
  const double lhs = polar_energy(cap_rearrange(v));
  const double rhs = polar_energy(v);
  return make_inequality("polya_szego_cap", lhs, rhs, tolerance);
}

InequalityResult morrey_inequality_check(const ScalarField& u, double c_candidate,
                                         double tolerance) {
  const double lhs = holder_seminorm(u).value;
  const double rhs =
      c_candidate * std::pow(dirichlet_energy(u), 1.0 / u.spec.p);
  return make_inequality("morrey_inequality", lhs, rhs, tolerance);
}

double calibrate_eps_disc(
    const std::vector<ScalarField>& equality_cases,
    const std::function<InequalityResult(const ScalarField&)>& check) {
  double worst = 0.0;
  for (const auto& u : equality_cases)
    worst = std::max(worst, std::abs(check(u).deficit));
  return std::max(10.0 * worst, 1e-12);
}

double calibrate_eps_disc(
    const std::vector<PolarField>& equality_cases,
    const std::function<InequalityResult(const PolarField&)>& check) {
  double worst = 0.0;
  for (const auto& v : equality_cases)
    worst = std::max(worst, std::abs(check(v).deficit));
  return std::max(10.0 * worst, 1e-12);
}

}  // namespace morrey

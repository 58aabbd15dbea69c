#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "morrey/grid.hpp"
#include "morrey/polar.hpp"

namespace morrey {

/// Both sides of an inequality lhs <= rhs with the signed slack.
struct InequalityResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool passed = false;
};

InequalityResult make_inequality(std::string name, double lhs, double rhs,
                                 double tolerance);

/// |(a+b)/2|^p + |(a-b)/2|^p <= |a|^p/2 + |b|^p/2, p >= 2 (uniform convexity).
InequalityResult clarkson_pointwise(const std::array<double, 3>& a,
                                    const std::array<double, 3>& b, int n, double p);

/// Integrated form on cell gradients: E((v+w)/2) + E((v-w)/2) <= (E(v)+E(w))/2.
InequalityResult clarkson_fields(const ScalarField& v, const ScalarField& w);

/// Strengthened axial rearrangement bound:
/// E(axial_average(u)) <= E(u) - tangential_energy(u).
InequalityResult polya_szego_axial(const ScalarField& u, double tolerance);

/// Per-cell |radial|^p + |tangential|^p <= |Du|^p, aggregated to the worst
/// cell. Exact arithmetic since the two parts are orthogonal; n = 3 only.
InequalityResult gradient_split_elementary(const ScalarField& u);

/// Weighted axial Hardy bound:
/// integral of |u - u*|^p / |y|^p <= C_candidate * tangential_energy(u),
/// quadrature at cell centers (never on the axis).
InequalityResult hardy_type_axial(const ScalarField& u, double c_candidate,
                                  double tolerance);

/// Classical one-dimensional Hardy constant, the candidate bound for n = 2.
inline double hardy_candidate(double p) { return std::pow(p / (p - 1.0), p); }

/// Uniform quadrature directions on the unit sphere in the first n-1
/// coordinates: {+1, -1} for n = 2, `count` equispaced circle points for n = 3.
std::vector<std::array<double, 2>> sweep_directions(int n, int count = 32);

/// Direction-averaged sweep bound: mean_zeta E(u^zeta) <= E(u) for n = 2
/// (an identity), and <= E(u) - tangential_energy(u) for n = 3.
InequalityResult sweep_average(const ScalarField& u,
                               const std::vector<std::array<double, 2>>& directions,
                               double tolerance);

/// Cap rearrangement bound in polar quadrature:
/// polar_energy(cap_rearrange(v)) <= polar_energy(v).
InequalityResult polya_szego_cap(const PolarField& v, double tolerance);

/// holder_seminorm(u) <= C_candidate * energy(u)^(1/p).
InequalityResult morrey_inequality_check(const ScalarField& u, double c_candidate,
                                         double tolerance);

/// Scheme-error tolerance from a suite of known equality cases: 10x the
/// largest observed |deficit|, floored at 1e-12.
double calibrate_eps_disc(
    const std::vector<ScalarField>& equality_cases,
    const std::function<InequalityResult(const ScalarField&)>& check);
double calibrate_eps_disc(
    const std::vector<PolarField>& equality_cases,
    const std::function<InequalityResult(const PolarField&)>& check);

}  // namespace morrey

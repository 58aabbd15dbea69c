#pragma once

#include <cstdint>
#include <vector>

#include "morrey/grid.hpp"
#include "morrey/polar.hpp"

namespace morrey {

/// Random sum of Gaussian bumps times the boundary-vanishing envelope
/// prod_k (1 - (x_k/L)^2). Deterministic in the seed.
ScalarField random_smooth_field(const GridSpec& spec, std::uint64_t seed,
                                int bumps = 6);

/// Random smooth field of the form f(|y|, x_n): bumps centered within radius
/// L/2 with width <= 1, so values are negligible at the box boundary.
ScalarField random_axisymmetric_field(const GridSpec& spec, std::uint64_t seed,
                                      int bumps = 4);

/// Random smooth field on the polar grid: radial Gaussians times low angular
/// modes (pole-regular for n = 3).
PolarField random_polar_field(const PolarSpec& spec, std::uint64_t seed,
                              int modes = 4);

std::vector<ScalarField> smooth_corpus(const GridSpec& spec, int count,
                                       std::uint64_t seed);
std::vector<ScalarField> axisymmetric_corpus(const GridSpec& spec, int count,
                                             std::uint64_t seed);
std::vector<PolarField> polar_corpus(const PolarSpec& spec, int count,
                                     std::uint64_t seed);

}  // namespace morrey

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "extrapkit/grid.hpp"

namespace extrapkit {

struct FamilySpec {
  /// "smooth-bumps", "modulated" or "dyadic-concentration".
  std::string name = "smooth-bumps";
  std::size_t count = 16;
  /// Normalisation exponent of the dyadic-concentration members.
  ExtendedExponent p{2};
  /// Smallest dyadic scale in units of h.
  double min_scale_cells = 4.0;
};

/// Member parameters are drawn from the seed alone, so the same family can
/// be resampled on finer grids.
struct TestFamily {
  std::uint64_t seed = 0;
  FamilySpec spec;
  std::vector<std::pair<RealFunction, RealFunction>> members;
};

/// exp(-1/(1-u^2)) for |u| < 1, else 0.
double bump(double u);

TestFamily make_family(const FamilySpec& spec, std::uint64_t seed, const Grid& grid);

}  // namespace extrapkit

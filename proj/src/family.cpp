#include "extrapkit/family.hpp"

#include <cmath>
#include <random>

#include "extrapkit/operators.hpp"

namespace extrapkit {

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

namespace {

struct BumpParams {
  double centre, radius, amplitude, freq, phase;
};

std::vector<BumpParams> draw_bumps(std::mt19937_64& rng, double L, bool modulated) {
  std::uniform_int_distribution<int> howmany(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BumpParams> out(static_cast<std::size_t>(howmany(rng)));
  for (auto& b : out) {
    b.radius = L / 16.0 + unit(rng) * (L / 6.0 - L / 16.0);
    const double span = L / 2.0 - b.radius;
    b.centre = -span + 2.0 * span * unit(rng);
    b.amplitude = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unit(rng));
    b.freq = modulated ? 1.0 + 7.0 * unit(rng) : 0.0;
    b.phase = modulated ? 2.0 * std::numbers::pi * unit(rng) : 0.0;
  }
  return out;
}

RealFunction render(const std::vector<BumpParams>& bumps, const Grid& grid) {
  auto f = sample<double>(grid, [&](double x) {
    double v = 0.0;
    for (const auto& b : bumps) v += b.amplitude * bump((x - b.centre) / b.radius) * std::cos(b.freq * x + b.phase);
    return v;
  });
  const double n = weighted_norm(f, GridWeight::unit(grid), ExtendedExponent(2));
  if (n > 0.0) f.values /= n;
  return f;
}

}  // namespace

TestFamily make_family(const FamilySpec& spec, std::uint64_t seed, const Grid& grid) {
  grid.validate();
  TestFamily fam{seed, spec, {}};
  if (spec.name == "smooth-bumps" || spec.name == "modulated") {
    const bool modulated = spec.name == "modulated";
    std::mt19937_64 rng(seed);
    for (std::size_t m = 0; m < spec.count; ++m) {
      auto fb = draw_bumps(rng, grid.L, modulated);
      auto gb = draw_bumps(rng, grid.L, modulated);
      fam.members.emplace_back(render(fb, grid), render(gb, grid));
    }
  } else if (spec.name == "dyadic-concentration") {
    if (spec.p.is_zero() || spec.p.is_infinite()) throw DomainError("dyadic-concentration needs 0 < p < inf");
    const double inv_p = to_double(spec.p.reciprocal_value());
    const double h = grid.h();
    for (double delta = grid.L / 4.0; delta >= spec.min_scale_cells * h * (1.0 - 1e-12); delta /= 2.0) {
      const double amp = std::pow(delta, -inv_p);
      auto f = sample<double>(grid, [&](double x) { return x > delta && x < 2.0 * delta ? amp : 0.0; });
      auto g = sample<double>(grid, [&](double x) { return x < -delta && x > -2.0 * delta ? amp : 0.0; });
      fam.members.emplace_back(std::move(f), std::move(g));
    }
  } else {
    throw UnknownSpec("unknown family '" + spec.name + "'");
  }
  return fam;
}

}  // namespace extrapkit

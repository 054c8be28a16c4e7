#pragma once
// Seeded generators for the property tests. Every draw goes through one
// std::mt19937_64 so a (seed, call order) pair fixes the whole corpus.

#include <cstdint>
#include <random>
#include <vector>

#include "extrapkit/exponent.hpp"
#include "extrapkit/extrapolation.hpp"

namespace gen {

using extrapkit::ExtendedExponent;
using extrapkit::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p_true) { return real(0.0, 1.0) < p_true; }

  // Rational strictly inside (lo, hi) with denominator up to max_den.
  Rational open(const Rational& lo, const Rational& hi, long long max_den = 48) {
    for (;;) {
      const long long den = integer(2, max_den);
      const Rational width = hi - lo;
      const Rational step = width / den;
      const long long k = integer(1, den - 1);
      const Rational r = lo + step * k;
      if (lo < r && r < hi) return r;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// A valid (range, p) with case I, II or III, chosen round robin by `which`.
struct ExtrapTuple {
  extrapkit::ExtrapolationRange range;
  ExtendedExponent p;
};

inline ExtrapTuple extrap_tuple(Gen& g, int which) {
  for (;;) {
    const Rational pm = g.open(Rational(1, 4), Rational(4));
    ExtendedExponent pp = ExtendedExponent::infinity();
    if (which == 2 || !g.coin(0.2)) pp = ExtendedExponent(Rational(pm + g.open(Rational(0), Rational(6))));
    const Rational a = Rational(1) / pm;
    const Rational b = pp.reciprocal_value();
    Rational x0;
    if (which == 0) x0 = g.open(b, a);
    if (which == 1) x0 = a;
    if (which == 2) x0 = b;
    // 1/q0 = 1/p0 - 1/p_+ + extra keeps the validity inequality strict.
    const Rational y0 = x0 - b + g.open(Rational(0), Rational(1));
    const Rational x = g.open(b, a);
    extrapkit::ExtrapolationRange r{ExtendedExponent(pm), pp, ExtendedExponent::from_reciprocal(x0),
                                    ExtendedExponent::from_reciprocal(y0)};
    if (r.p0.is_zero() || r.p0.is_infinite()) continue;
    return {r, ExtendedExponent::from_reciprocal(x)};
  }
}

// (q1, q2) with 1 < q_i < inf and 1/q1 + 1/q2 < 3/2.
inline std::array<ExtendedExponent, 2> bht_pair(Gen& g) {
  for (;;) {
    const Rational a = g.open(Rational(0), Rational(1));
    const Rational b = g.open(Rational(0), Rational(1));
    if (a + b < Rational(3, 2)) return {ExtendedExponent::from_reciprocal(a), ExtendedExponent::from_reciprocal(b)};
  }
}

// (q1, q2, s1, s2) meeting the vector-valued restrictions.
inline std::array<ExtendedExponent, 4> vv_tuple(Gen& g) {
  const Rational half(1, 2);
  for (;;) {
    const Rational iq1 = g.open(Rational(0), Rational(1));
    const Rational iq2 = g.open(Rational(0), Rational(1));
    const Rational is1 = g.open(Rational(0), Rational(1));
    const Rational is2 = g.open(Rational(0), Rational(1));
    auto mx = [&](const Rational& u, const Rational& v) { return u < v ? v : u; };
    auto ab = [](const Rational& u) { return u < 0 ? Rational(-u) : u; };
    if (!(iq1 + iq2 < Rational(3, 2) && is1 + is2 < Rational(3, 2))) continue;
    if (!(ab(is1 - iq1) < half && ab(is2 - iq2) < half)) continue;
    if (!(mx(iq1, is1) + mx(iq2, is2) < Rational(3, 2))) continue;
    return {ExtendedExponent::from_reciprocal(iq1), ExtendedExponent::from_reciprocal(iq2),
            ExtendedExponent::from_reciprocal(is1), ExtendedExponent::from_reciprocal(is2)};
  }
}

struct Section5Tuple {
  ExtendedExponent q1, q2, s1, s2;
  Rational g1, g2, g3;
};

// gamma in [0,1)^3 summing to 1; reciprocals inside (0, (1+gamma_i)/2);
// rejection on the min-sum condition.
inline Section5Tuple section5_tuple(Gen& g) {
  for (;;) {
    const Rational g1 = g.open(Rational(0), Rational(1), 12);
    const Rational g2 = g.open(Rational(0), Rational(1) - g1, 12);
    const Rational g3 = 1 - g1 - g2;
    if (!(g3 > 0 && g3 < 1)) continue;
    const Rational c1 = (1 + g1) / 2;
    const Rational c2 = (1 + g2) / 2;
    const Rational iq1 = g.open(Rational(0), c1 < 1 ? c1 : Rational(1));
    const Rational is1 = g.open(Rational(0), c1 < 1 ? c1 : Rational(1));
    const Rational iq2 = g.open(Rational(0), c2 < 1 ? c2 : Rational(1));
    const Rational is2 = g.open(Rational(0), c2 < 1 ? c2 : Rational(1));
    const Rational m1 = iq1 < is1 ? iq1 : is1;
    const Rational m2 = iq2 < is2 ? iq2 : is2;
    if (!(m1 + m2 > (1 - g3) / 2)) continue;
    if (!(iq1 + iq2 < Rational(3, 2) && is1 + is2 < Rational(3, 2))) continue;
    return {ExtendedExponent::from_reciprocal(iq1), ExtendedExponent::from_reciprocal(iq2),
            ExtendedExponent::from_reciprocal(is1), ExtendedExponent::from_reciprocal(is2), g1, g2, g3};
  }
}

}  // namespace gen

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "extrapkit/errors.hpp"
#include "extrapkit/exponent.hpp"
#include "gen.hpp"

using namespace extrapkit;

namespace {
ExtendedExponent E(const char* s) { return ExtendedExponent::parse(s); }
}  // namespace

TEST_CASE("parsing is exact and rejects floating literals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("2.5e1"), DomainError);
  CHECK_THROWS_AS(parse_rational("nan"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
  CHECK(E("inf").is_infinite());
  CHECK_THROWS_AS(E("-1"), DomainError);
  CHECK(E("3/2").str() == "3/2");
  CHECK(E("4").str() == "4");
  CHECK(E("inf").str() == "inf");
}

TEST_CASE("reciprocal conventions") {
  CHECK(ExtendedExponent::infinity().reciprocal() == ExtendedExponent(0));
  CHECK(ExtendedExponent(0).reciprocal().is_infinite());
  CHECK(ExtendedExponent::from_reciprocal(0).is_infinite());
  CHECK(ExtendedExponent::infinity().reciprocal_value() == 0);
  CHECK_THROWS_AS(ExtendedExponent(0).reciprocal_value(), DomainError);
  CHECK(ReciprocalForm::of(E("5/3")).exponent() == E("5/3"));
  CHECK(E("inf") > E("1000000"));
}

TEST_CASE("conjugate") {
  CHECK(conjugate(E("1")).is_infinite());
  CHECK(conjugate(E("inf")) == E("1"));
  CHECK(conjugate(E("2")) == E("2"));
  CHECK(conjugate(E("4/3")) == E("4"));
  CHECK_THROWS_AS(conjugate(E("1/2")), DomainError);
  CHECK(conjugate_reciprocal(E("inf")) == 1);
}

TEST_CASE("harmonic sum") {
  const std::vector<ExtendedExponent> a{E("2"), E("2")};
  const std::vector<ExtendedExponent> b{E("inf"), E("3")};
  const std::vector<ExtendedExponent> c{E("4"), E("4")};
  CHECK(harmonic_sum(a) == E("1"));
  CHECK(harmonic_sum(b) == E("3"));
  CHECK(harmonic_sum(c) == E("2"));
  const std::vector<ExtendedExponent> z{E("2"), E("0")};
  CHECK_THROWS_AS(harmonic_sum(z), DomainError);
}

TEST_CASE("property: conjugate is an involution and 1/p + 1/p' = 1") {
  gen::Gen g(101);
  for (int i = 0; i < 1000; ++i) {
    const ExtendedExponent p = ExtendedExponent::from_reciprocal(g.open(Rational(0), Rational(1), 97));
    const ExtendedExponent pc = conjugate(p);
    CHECK(conjugate(pc) == p);
    CHECK(p.reciprocal_value() + pc.reciprocal_value() == 1);
  }
}

TEST_CASE("property: harmonic sum is order independent and associative") {
  gen::Gen g(102);
  for (int i = 0; i < 300; ++i) {
    std::vector<ExtendedExponent> qs;
    const int m = static_cast<int>(g.integer(1, 6));
    for (int j = 0; j < m; ++j)
      qs.push_back(g.coin(0.15) ? ExtendedExponent::infinity() : ExtendedExponent(g.open(Rational(0), Rational(9))));
    const ExtendedExponent whole = harmonic_sum(qs);
    std::vector<ExtendedExponent> shuffled = qs;
    std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
    CHECK(harmonic_sum(shuffled) == whole);
    const auto cut = static_cast<std::ptrdiff_t>(g.integer(0, m));
    const std::vector<ExtendedExponent> left(qs.begin(), qs.begin() + cut), right(qs.begin() + cut, qs.end());
    std::vector<ExtendedExponent> nested;
    if (!left.empty()) nested.push_back(harmonic_sum(left));
    if (!right.empty()) nested.push_back(harmonic_sum(right));
    CHECK(harmonic_sum(nested) == whole);
  }
}

TEST_CASE("arithmetic on extended values") {
  CHECK(E("2") + E("inf") == E("inf"));
  CHECK(E("3") / E("0") == E("inf"));
  CHECK(E("3") / E("inf") == E("0"));
  CHECK(E("3/2") * E("4") == E("6"));
  CHECK_THROWS_AS(E("0") * E("inf"), DomainError);
}

#pragma once

// Exact exponent arithmetic. Every exponent the planners touch is a
// nonnegative rational or +inf, with 1/inf = 0 and 1/0 = inf. Constraints
// between exponents are affine in reciprocals, so most planner code works
// with signed rationals in reciprocal form.

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "extrapkit/errors.hpp"

namespace extrapkit {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "a", "-a", "a/b" or a terminating decimal "1.25" into an exact
/// rational. Scientific notation, nan and inf are rejected.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

class ExtendedExponent {
 public:
  ExtendedExponent() = default;
  ExtendedExponent(const Rational& value);  // NOLINT(google-explicit-constructor)
  ExtendedExponent(long long value);        // NOLINT(google-explicit-constructor)
  ExtendedExponent(long long num, long long den);

  static ExtendedExponent infinity();

  /// Accepts everything parse_rational does plus "inf".
  static ExtendedExponent parse(std::string_view text);

  /// Inverse of 1/p; a zero reciprocal maps to infinity.
  static ExtendedExponent from_reciprocal(const Rational& inv);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && value_ == 0; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Throws DomainError for infinity.
  const Rational& value() const;

  /// 1/p as a finite rational. Throws DomainError for p = 0.
  Rational reciprocal_value() const;

  ExtendedExponent reciprocal() const;

  double to_double() const;
  std::string str() const;

  friend bool operator==(const ExtendedExponent& a, const ExtendedExponent& b);
  friend std::strong_ordering operator<=>(const ExtendedExponent& a, const ExtendedExponent& b);

  friend ExtendedExponent operator+(const ExtendedExponent& a, const ExtendedExponent& b);
  /// 0 * inf is rejected.
  friend ExtendedExponent operator*(const ExtendedExponent& a, const ExtendedExponent& b);
  /// a / b with x/0 = inf for x > 0 and x/inf = 0 for finite x.
  friend ExtendedExponent operator/(const ExtendedExponent& a, const ExtendedExponent& b);

 private:
  bool infinite_ = false;
  Rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExtendedExponent& p);

/// Lossless view of an exponent as its reciprocal.
struct ReciprocalForm {
  Rational inv;

  static ReciprocalForm of(const ExtendedExponent& p) { return {p.reciprocal_value()}; }
  ExtendedExponent exponent() const { return ExtendedExponent::from_reciprocal(inv); }

  friend bool operator==(const ReciprocalForm&, const ReciprocalForm&) = default;
};

/// Hoelder conjugate p' with 1/p + 1/p' = 1. Requires p >= 1.
ExtendedExponent conjugate(const ExtendedExponent& p);

/// The reciprocal of the conjugate, 1 - 1/p, which is finite for every p >= 1.
Rational conjugate_reciprocal(const ExtendedExponent& p);

/// p with 1/p = sum 1/q_j. Requires every q_j > 0.
ExtendedExponent harmonic_sum(std::span<const ExtendedExponent> qs);

}  // namespace extrapkit

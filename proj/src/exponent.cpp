#include "extrapkit/exponent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>

namespace extrapkit {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

boost::multiprecision::cpp_int parse_integer(std::string_view s) {
  return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw DomainError("empty rational literal");

  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational '" + std::string(text) + "'");
    auto d = parse_integer(den);
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    r = Rational(parse_integer(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw DomainError("malformed decimal '" + std::string(text) + "'");
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    auto w = whole.empty() ? boost::multiprecision::cpp_int(0) : parse_integer(whole);
    r = Rational(w * scale + parse_integer(frac), scale);
  } else {
    if (!all_digits(s)) throw DomainError("malformed rational '" + std::string(text) + "'");
    r = Rational(parse_integer(s));
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

ExtendedExponent::ExtendedExponent(const Rational& value) : value_(value) {
  if (value_ < 0) throw DomainError("negative exponent " + value.str());
}

ExtendedExponent::ExtendedExponent(long long value) : ExtendedExponent(Rational(value)) {}

ExtendedExponent::ExtendedExponent(long long num, long long den) {
  if (den == 0) throw DomainError("zero denominator");
  value_ = Rational(num, den);
  if (value_ < 0) throw DomainError("negative exponent " + value_.str());
}

ExtendedExponent ExtendedExponent::infinity() {
  ExtendedExponent p;
  p.infinite_ = true;
  return p;
}

ExtendedExponent ExtendedExponent::parse(std::string_view text) {
  std::string lowered;
  for (char c : text)
    if (std::isspace(static_cast<unsigned char>(c)) == 0) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lowered == "inf" || lowered == "infinity" || lowered == "+inf") return infinity();
  return ExtendedExponent(parse_rational(text));
}

ExtendedExponent ExtendedExponent::from_reciprocal(const Rational& inv) {
  if (inv < 0) throw DomainError("negative reciprocal " + inv.str());
  if (inv == 0) return infinity();
  return ExtendedExponent(Rational(1) / inv);
}

const Rational& ExtendedExponent::value() const {
  if (infinite_) throw DomainError("value() of an infinite exponent");
  return value_;
}

Rational ExtendedExponent::reciprocal_value() const {
  if (infinite_) return Rational(0);
  if (value_ == 0) throw DomainError("reciprocal of 0 is infinite");
  return Rational(1) / value_;
}

ExtendedExponent ExtendedExponent::reciprocal() const {
  if (infinite_) return ExtendedExponent();
  if (value_ == 0) return infinity();
  return ExtendedExponent(Rational(1) / value_);
}

double ExtendedExponent::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.convert_to<double>();
}

std::string ExtendedExponent::str() const { return infinite_ ? "inf" : value_.str(); }

bool operator==(const ExtendedExponent& a, const ExtendedExponent& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedExponent& a, const ExtendedExponent& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtendedExponent operator+(const ExtendedExponent& a, const ExtendedExponent& b) {
  if (a.infinite_ || b.infinite_) return ExtendedExponent::infinity();
  return ExtendedExponent(Rational(a.value_ + b.value_));
}

ExtendedExponent operator*(const ExtendedExponent& a, const ExtendedExponent& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.is_zero() || b.is_zero()) throw DomainError("0 * inf is undefined");
    return ExtendedExponent::infinity();
  }
  return ExtendedExponent(Rational(a.value_ * b.value_));
}

ExtendedExponent operator/(const ExtendedExponent& a, const ExtendedExponent& b) {
  if (a.infinite_ && b.infinite_) throw DomainError("inf / inf is undefined");
  if (a.infinite_) return ExtendedExponent::infinity();
  if (b.infinite_) return ExtendedExponent();
  if (b.value_ == 0) {
    if (a.value_ == 0) throw DomainError("0 / 0 is undefined");
    return ExtendedExponent::infinity();
  }
  return ExtendedExponent(Rational(a.value_ / b.value_));
}

std::ostream& operator<<(std::ostream& os, const ExtendedExponent& p) { return os << p.str(); }

ExtendedExponent conjugate(const ExtendedExponent& p) {
  if (p < ExtendedExponent(1)) throw DomainError("conjugate requires p >= 1, got " + p.str());
  return ExtendedExponent::from_reciprocal(conjugate_reciprocal(p));
}

Rational conjugate_reciprocal(const ExtendedExponent& p) {
  if (p < ExtendedExponent(1)) throw DomainError("conjugate requires p >= 1, got " + p.str());
  return Rational(1) - p.reciprocal_value();
}

ExtendedExponent harmonic_sum(std::span<const ExtendedExponent> qs) {
  Rational inv = 0;
  for (const auto& q : qs) {
    if (q.is_zero()) throw DomainError("harmonic_sum: zero exponent");
    inv += q.reciprocal_value();
  }
  return ExtendedExponent::from_reciprocal(inv);
}

}  // namespace extrapkit

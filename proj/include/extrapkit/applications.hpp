#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "extrapkit/exponent.hpp"
#include "extrapkit/extrapolation.hpp"
#include "extrapkit/weights.hpp"

namespace extrapkit {

using ExponentPair = std::array<ExtendedExponent, 2>;
using RationalPair = std::array<Rational, 2>;

/// Base weight classes (p_i + 1)/2, RH_2 for the bilinear Hilbert transform.
std::array<WeightClassSpec, 2> bht_base_class(const ExtendedExponent& p1, const ExtendedExponent& p2);

struct BHTPlan {
  ExponentPair q;
  std::optional<ExponentPair> s;
  Rational budget;      // 3/2 - sum of the max terms
  RationalPair caps;    // per-index upper bounds on eta_i
  RationalPair eta;
  ExponentPair p;       // p_1, p_2
  ExtendedExponent p_total;
  ExponentPair r_minus;  // 2 p_i / (1 + p_i)
  ExponentPair r_plus;   // 2 p_i
  ExponentPair r_class;  // (2/q_i - 1/p_i)^{-1}
  std::array<WeightClassSpec, 2> weight_specs;  // w_i^{q_i} in A_{q_i/r_i^-} ∩ RH_{(r_i^+/q_i)'}
  ExtendedExponent q_total;
  std::optional<ExtendedExponent> s_total;
};

/// Deterministic eta: eta_1 = eta_2 = min{budget/2, caps_1, caps_2} / 2.
BHTPlan bht_plan(const ExtendedExponent& q1, const ExtendedExponent& q2);
BHTPlan bht_vv_plan(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                    const ExtendedExponent& s2);

/// Plan with caller-chosen eta (used to probe monotonicity in eta).
BHTPlan bht_plan_with_eta(const ExtendedExponent& q1, const ExtendedExponent& q2,
                          const std::optional<ExponentPair>& s, const RationalPair& eta);

/// Checks every plan invariant exactly; returns the violated clauses.
std::vector<std::string> check_bht_plan(const BHTPlan& plan);

struct PowerRange {
  Rational a_minus;
  Rational a_plus;
  bool includes_zero = true;

  /// a in {0} ∪ (a_minus, a_plus).
  bool contains(const Rational& a) const { return (includes_zero && a == 0) || (a_minus < a && a < a_plus); }
};

PowerRange bht_power_range(const ExtendedExponent& q1, const ExtendedExponent& q2);
PowerRange bht_vv_power_range(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                              const ExtendedExponent& s2);

struct Section5Plan {
  ExponentPair q;
  ExponentPair s;
  std::array<Rational, 3> gamma;
  RationalPair m;
  RationalPair m_tilde;
  RationalPair eta;
  bool eps_branch = false;
  std::array<Rational, 2> p_interval;  // open interval for the free p_i
  std::size_t free_index = 1;          // which p_i was chosen from the interval (1 or 2)
  ExponentPair p;
  ExtendedExponent p_total;
  std::array<Rational, 3> theta;
  ExponentPair r_minus;  // 1/r_i^- = 1 - theta_i / p_i'
  ExponentPair r_plus;   // 1/r_i^+ = theta_3 / p_i
  std::array<WeightClassSpec, 2> weight_specs;  // w_i^{p_i} in A_{1+(1-theta_i)(p_i-1)} ∩ RH_{1/(1-theta_3)}
};

/// `free_p` overrides the midpoint choice of the free p_i; it must lie in the
/// open interval.
Section5Plan section5_plan(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                           const ExtendedExponent& s2, const Rational& g1, const Rational& g2, const Rational& g3,
                           const std::optional<Rational>& free_p = std::nullopt);

std::vector<std::string> check_section5_plan(const Section5Plan& plan);

struct MZPlan {
  std::vector<ExtendedExponent> q;
  Rational r;
  bool base_case = false;  // r = 2: the unextrapolated statement applies directly
  std::vector<ExtendedExponent> base_p;  // starting exponents, 1 < p_j < r
  std::vector<WeightClassSpec> weight_specs;  // w_j^{q_j} in A_{q_j}
  std::vector<LinearStep> steps;
  ExtendedExponent q_total;
};

MZPlan mz_plan(const std::vector<ExtendedExponent>& qjs, const Rational& r);

}  // namespace extrapkit

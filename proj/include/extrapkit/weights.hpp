#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extrapkit/exponent.hpp"
#include "extrapkit/grid.hpp"

namespace extrapkit {

/// Membership claim w in A_p ∩ RH_s with 1 <= p < inf and 1 <= s <= inf.
struct WeightClassSpec {
  ExtendedExponent p{1};
  ExtendedExponent s{1};

  WeightClassSpec() = default;
  WeightClassSpec(ExtendedExponent p_, ExtendedExponent s_);

  std::string str() const;
  friend bool operator==(const WeightClassSpec&, const WeightClassSpec&) = default;
};

/// w(x) = |x|^alpha on the real line.
struct PowerWeight {
  Rational alpha;
};

/// q = s(p - 1) + 1, the index with v in A_p ∩ RH_s iff v^s in A_q.
ExtendedExponent cjn_index(const ExtendedExponent& p, const ExtendedExponent& s);

/// Pointwise v1^{1/s} v2^{1-p}.
GridWeight factor_weight(const GridWeight& v1, const GridWeight& v2, const ExtendedExponent& p,
                         const ExtendedExponent& s);

/// Exponent of factor_weight applied to |x|^{a1}, |x|^{a2}.
Rational factor_power_exponent(const Rational& a1, const Rational& a2, const ExtendedExponent& p,
                               const ExtendedExponent& s);

bool power_in_ap(const Rational& alpha, const ExtendedExponent& p);
bool power_in_rh(const Rational& alpha, const ExtendedExponent& s);

/// Closed-form verdict on the line.
bool power_in_class(const PowerWeight& w, const WeightClassSpec& spec);

/// Human-readable reasons backing power_in_class.
std::vector<std::string> power_class_reasons(const PowerWeight& w, const WeightClassSpec& spec);

struct ClassConstants {
  int depth = 0;
  double ap = 1.0;
  double rh = 1.0;
  /// [w^s]_{A_{s(p-1)+1}} for finite s; for s = inf the product ap * rh.
  double joint = 1.0;
};

/// Sup of the A_p, RH_s and joint functionals over all dyadic subintervals
/// of [-L, L] at levels 0..depth, with w replaced by its averages on the
/// 2^depth cells of level depth. Requires 2^depth <= N. Overflow yields +inf.
ClassConstants estimate_class_constants(const GridWeight& w, const WeightClassSpec& spec, int depth);

/// estimate_class_constants for every depth in [1, max_depth]; throws Error if
/// monotonicity in depth is ever violated.
std::vector<ClassConstants> class_constant_table(const GridWeight& w, const WeightClassSpec& spec, int max_depth);

/// A_p functional alone (cheaper; used by the openness probe).
double estimate_ap_constant(const GridWeight& w, const ExtendedExponent& p, int depth);

struct DivergenceProbe {
  std::vector<double> joint;   // joint constants at start..start+increments
  std::vector<double> growth;  // successive ratios
  bool divergent = false;
};

/// Divergent if the joint constant grows by at least `factor` at each of
/// `increments` successive depth increments.
DivergenceProbe divergence_probe(const GridWeight& w, const WeightClassSpec& spec, int start_depth,
                                 int increments = 4, double factor = 1.5);

struct OpennessConfig {
  int depth = 10;
  double ceiling = 1.8;
};

/// Largest eps in (0, p) found by bisection (at most `budget` candidates)
/// with estimated [w]_{A_{p/eps}} <= ceiling. Throws SearchFailed if none passes.
ExtendedExponent openness_probe(const GridWeight& w, const ExtendedExponent& p, int budget,
                                const OpennessConfig& cfg = {});

}  // namespace extrapkit

#pragma once

#include <string>
#include <vector>

#include "extrapkit/exponent.hpp"
#include "extrapkit/grid.hpp"
#include "extrapkit/weights.hpp"

namespace extrapkit {

enum class ProofCase { I, II, III, IV };

std::string to_string(ProofCase c);

/// Base exponents (p0, q0) with the limited range (p_minus, p_plus).
struct ExtrapolationRange {
  ExtendedExponent p_minus;
  ExtendedExponent p_plus;
  ExtendedExponent p0;
  ExtendedExponent q0;

  /// 1/p0 - 1/q0.
  Rational shift() const { return p0.reciprocal_value() - q0.reciprocal_value(); }

  /// Throws InvalidRange on broken ordering or 1/q0 - 1/p0 + 1/p_plus < 0.
  void validate() const;
};

ExtrapolationRange make_range(ExtendedExponent p_minus, ExtendedExponent p_plus, ExtendedExponent p0,
                              ExtendedExponent q0);

struct DualRange {
  ExtendedExponent q_minus;
  ExtendedExponent q_plus;
};

DualRange dual_range(const ExtrapolationRange& range);

/// q with 1/q = 1/p - shift, for p strictly inside (p_minus, p_plus).
ExtendedExponent target_exponent(const ExtendedExponent& p, const ExtrapolationRange& range);

ProofCase case_select(const ExtrapolationRange& range);

struct IdentityCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};

/// Exponents of the proof for a fixed p. Fields that blow up in the boundary
/// cases (phi and beta when s = q) are extended; the rest are finite.
struct ProofExponents {
  ProofCase proof_case = ProofCase::I;
  ExtendedExponent p;
  ExtendedExponent q;
  Rational tau;
  Rational tau_prime;
  Rational s;
  Rational s_alt;  // the second display for s
  Rational alpha;
  ExtendedExponent phi;
  Rational delta;
  Rational epsilon_exp;  // signed
  Rational sigma;
  ExtendedExponent beta;
  Rational gamma;
  std::vector<IdentityCheck> identities;

  bool all_identities_hold() const;
};

/// Throws CaseUnsupported for Case IV and OutOfRange for p outside the range.
ProofExponents proof_exponents(const ExtrapolationRange& range, const ExtendedExponent& p);

/// Re-derives the identities from the stored fields (independently of how
/// they were filled in) and returns the checks.
std::vector<IdentityCheck> certify_identities(const ExtrapolationRange& range, const ProofExponents& pe);

struct Case4Reduction {
  ExtrapolationRange range;
  ExtendedExponent probe_eps;  // largest eps found by the openness probe
  ExtendedExponent eps;        // min(probe_eps, min{p0, p}/2)
  ProofCase reduced_case = ProofCase::I;
};

/// `wp` samples w^p. Replaces p_minus = 0 by an eps with w^p in A_{p/eps}.
Case4Reduction reduce_case4(const ExtrapolationRange& range, const ExtendedExponent& p, const GridWeight& wp,
                            int budget = 24, const OpennessConfig& cfg = {});

struct LinearStep {
  std::size_t index = 1;  // one-based coordinate
  ExtrapolationRange range;
  ExtendedExponent target;  // q_j
  ExtendedExponent result;  // new aggregate exponent
  DualRange dual;
  ProofCase proof_case = ProofCase::I;
};

/// One coordinate at a time, in the order 1..m. Step j moves coordinate j
/// from p_j to q_j inside (r_j^-, r_j^+) with the current aggregate exponent
/// as q0.
std::vector<LinearStep> multilinear_plan(const std::vector<ExtendedExponent>& pjs,
                                         const std::vector<ExtendedExponent>& r_minus,
                                         const std::vector<ExtendedExponent>& r_plus,
                                         const std::vector<ExtendedExponent>& qjs);

}  // namespace extrapkit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extrapkit/extrapolation.hpp"
#include "extrapkit/family.hpp"
#include "extrapkit/grid.hpp"
#include "extrapkit/operators.hpp"

namespace extrapkit {

/// Series R G = sum_{k<K} M^k G / (2 B)^k with B = norm_bound, measured in
/// L^exponent(weight dx).
struct IterationConfig {
  double norm_bound = 2.0;
  int K = 24;
  GridWeight weight;
  ExtendedExponent exponent{2};
  MaximalOptions maximal{};

  void validate() const;
};

struct IterationReport {
  RealFunction result;
  int K = 0;
  double tail_bound = 0.0;             // 2^{-K}
  double input_norm = 0.0;             // ||G||
  double output_norm = 0.0;            // ||R G||
  double truncation_gap = 0.0;         // ||M^K G|| / (2B)^K, i.e. ||R_{K+1}G - R_K G||
  double a1_ratio = 0.0;               // max M(RG) / RG over the support of RG
  std::vector<double> term_growth;     // ||M^k G|| / ||G|| for k = 0..K
  bool dominates_input = true;         // RG >= G pointwise
};

/// Throws NormBoundTooSmall if ||M^k G|| > B^k ||G|| for some k <= K.
IterationReport rdf_iterate(const RealFunction& G, const IterationConfig& cfg);

/// ||M f|| / ||f|| in L^p(w dx).
double maximal_ratio(const RealFunction& f, const ExtendedExponent& p, const GridWeight& w,
                     const MaximalOptions& opt = {});

/// 2 * max over probe members (both entries of each pair) of maximal_ratio,
/// never below 1. Throws DivergentProbe if a ratio exceeds `ceiling`.
double estimate_maximal_norm(const ExtendedExponent& p, const GridWeight& w, const TestFamily& probes,
                             double ceiling = 1e3, const MaximalOptions& opt = {});

struct Certificate {
  std::string name;  // display identifier, e.g. "H1-norm"
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct ProofConfig {
  int K = 24;
  double slack = 0.01;                 // quadrature slack on every certificate
  std::optional<double> norm_bound_1;  // B for R_1; estimated when absent
  std::optional<double> norm_bound_2;  // B for R_2
  FamilySpec probes{"smooth-bumps", 8};
  std::uint64_t probe_seed = 1;
  MaximalOptions maximal{};
};

struct ProofObjects {
  RealFunction h1, H1, h2, H2;
  RealFunction mu1, mu2;  // R_1(h1^delta w^eps), R_2(h2^beta w^gamma)
  RealFunction W;
  RealFunction W_q0;      // H1^{-alpha q0/s} H2 w^q
  double C1 = 0.0;        // 2^{1+1/delta}
  double C2 = 0.0;        // 2^{1/beta}
  double h1_norm = 0.0;   // ||h1||_{L^q(w^q)}, at most 2
  double norm_bound_1 = 0.0;
  double norm_bound_2 = 0.0;
  IterationReport iter1, iter2;
  std::vector<Certificate> certificates;

  bool all_pass() const;
};

/// Case I construction. h2 defaults to f^{q-s} / ||f||_{L^q(w^q)}^{q-s}.
/// Throws CaseUnsupported outside Case I and CertificationFailed naming each
/// failing display.
ProofObjects build_proof_objects(const RealFunction& f, const RealFunction& g, const GridWeight& w,
                                 const ProofExponents& pe, const ExtrapolationRange& range,
                                 const std::optional<RealFunction>& h2 = std::nullopt, const ProofConfig& cfg = {});

struct WeightReport {
  std::vector<IdentityCheck> identities;
  double mu1_a1 = 0.0;
  double mu2_a1 = 0.0;
  double factorization_error = 0.0;  // max relative gap between W^{p0} and mu2^{1-p0/p+} mu1^{1-p0/p-}
  bool w_q0_bitwise = false;          // W_q0 recomputed from the fields matches bit for bit
  WeightClassSpec spec;               // A_{p0/p-} ∩ RH_{(p+/p0)'}
  ClassConstants constants;
  bool constants_finite = false;
  bool ok() const;
};

WeightReport verify_case1_weight(const ProofObjects& po, const ProofExponents& pe, const ExtrapolationRange& range,
                                 const GridWeight& w, int depth = 10);

}  // namespace extrapkit

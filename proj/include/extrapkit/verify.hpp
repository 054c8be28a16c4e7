#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extrapkit/exponent.hpp"
#include "extrapkit/family.hpp"
#include "extrapkit/grid.hpp"
#include "extrapkit/operators.hpp"

namespace extrapkit {

enum class Verdict { BoundedStable, Unstable, Divergent };

std::string to_string(Verdict v);

/// BOUNDED-STABLE if the last doubling moves the sup by less than 10%;
/// DIVERGENT if two successive doublings each grow it by at least 50%;
/// UNSTABLE otherwise (including fewer than two resolutions).
Verdict classify(const std::vector<double>& sup_per_resolution);

inline constexpr const char* kEmpiricalCaveat =
    "empirical evidence on finite grids and seeded families; not a proof of boundedness or unboundedness";

/// "unit", "power:NUM/DEN" (w = |x|^alpha) or "file:PATH" (CSV x,value).
struct WeightDescriptor {
  enum class Kind { Unit, Power, Samples };
  Kind kind = Kind::Unit;
  Rational alpha = 0;
  std::string path;
  std::optional<GridWeight> samples;

  static WeightDescriptor unit() { return {}; }
  static WeightDescriptor power(const Rational& a);
  static WeightDescriptor parse(const std::string& text);

  /// Samples weights must already live on `grid`.
  GridWeight realize(const Grid& grid) const;
  std::string str() const;
};

/// w_i = |x|^{-a/q_i}, so that w_i^{q_i} = |x|^{-a}.
std::array<WeightDescriptor, 2> per_factor_power_weights(const Rational& a, const ExtendedExponent& q1,
                                                         const ExtendedExponent& q2);

using BilinearOperator = std::function<RealFunction(const RealFunction&, const RealFunction&)>;

BilinearOperator product_operator();
BilinearOperator bht_operator(Truncation tr = {});
/// Hf * Hg.
BilinearOperator tensor_hilbert_operator();

struct SweepConfig {
  double L = 8.0;
  std::vector<std::size_t> resolutions{4096, 8192};
  FamilySpec family{};
  std::uint64_t seed = 7;
  double scale = 1.0;  // every member multiplied by this before evaluation
};

struct RatioReport {
  std::string name;
  std::uint64_t seed = 0;
  std::string family;
  std::vector<std::size_t> resolutions;
  std::vector<std::vector<double>> ratios;  // [resolution][member]
  std::vector<double> sup_per_resolution;
  std::vector<std::size_t> skipped;         // members with a zero denominator, per resolution count
  double sup_ratio = 0.0;                   // at the finest resolution
  double stability = 0.0;                   // relative change over the last doubling
  Verdict verdict = Verdict::Unstable;
  std::string caveat = kEmpiricalCaveat;
};

/// ||op(f, g)||_{L^q(w^q)} / (||f||_{L^{q1}(w1^{q1})} ||g||_{L^{q2}(w2^{q2})}) with w = w1 w2.
RatioReport ratio_sweep(const BilinearOperator& op, const ExtendedExponent& q1, const ExtendedExponent& q2,
                        const ExtendedExponent& q, const WeightDescriptor& w1, const WeightDescriptor& w2,
                        const SweepConfig& cfg);

/// Pointwise (sum_k |u_k|^s)^{1/s}; a single entry is returned as |u_0|.
Eigen::ArrayXd lp_aggregate(const std::vector<Eigen::ArrayXd>& parts, const ExtendedExponent& s);

/// The family is split into consecutive runs of K pairs; each run is one
/// sequence (f_k, g_k).
RatioReport vv_sweep(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                     const ExtendedExponent& s2, const WeightDescriptor& w1, const WeightDescriptor& w2,
                     std::size_t K, const SweepConfig& cfg, const BilinearOperator& op = bht_operator());

/// Runs of J*K pairs indexed (j, k); inner l^s over k, outer l^t over j.
RatioReport iterated_vv_sweep(const std::array<ExtendedExponent, 2>& ts, const std::array<ExtendedExponent, 2>& ss,
                              const std::array<ExtendedExponent, 2>& qs, const WeightDescriptor& w1,
                              const WeightDescriptor& w2, std::size_t J, std::size_t K, const SweepConfig& cfg,
                              const BilinearOperator& op = bht_operator());

/// Bilinear surrogate by name: "tensor-hilbert" or "product-identity".
BilinearOperator mz_surrogate(const std::string& name);

/// Runs of K pairs give sequences f_k, g_k; the numerator aggregates
/// |T(f_{k1}, g_{k2})| over all K^2 index pairs in l^r. Validated by mz_plan.
RatioReport mz_sweep(const std::array<ExtendedExponent, 2>& qjs, const Rational& r,
                     const std::array<WeightDescriptor, 2>& wjs, std::size_t K, const SweepConfig& cfg,
                     const std::string& surrogate);

struct TruncationRow {
  double ncut = 0.0;
  double norm = 0.0;   // ||f_N||_{L^q(w^q)}
  double bound = 0.0;  // N * (w^q(B(0, N)))^{1/q}
};

struct TruncationStudy {
  std::vector<TruncationRow> rows;
  double full_norm = 0.0;
  bool monotone = true;
  bool bounded = true;
  bool reaches_full = false;  // last row equals ||f|| once N >= max(|f|, L)
};

/// Ncuts must be increasing.
TruncationStudy truncation_study(const RealFunction& f, const GridWeight& w, const ExtendedExponent& q,
                                 const std::vector<double>& ncuts);

}  // namespace extrapkit

#include "extrapkit/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "extrapkit/parallel.hpp"

namespace extrapkit {

WeightClassSpec::WeightClassSpec(ExtendedExponent p_, ExtendedExponent s_) : p(std::move(p_)), s(std::move(s_)) {
  if (p < ExtendedExponent(1) || p.is_infinite()) throw DomainError("A_p index must satisfy 1 <= p < inf, got " + p.str());
  if (s < ExtendedExponent(1)) throw DomainError("RH_s index must satisfy s >= 1, got " + s.str());
}

std::string WeightClassSpec::str() const { return "A_" + p.str() + " ∩ RH_" + s.str(); }

ExtendedExponent cjn_index(const ExtendedExponent& p, const ExtendedExponent& s) {
  if (p < ExtendedExponent(1) || p.is_infinite()) throw DomainError("cjn_index needs 1 <= p < inf, got " + p.str());
  if (s < ExtendedExponent(1) || s.is_infinite()) throw DomainError("cjn_index needs 1 <= s < inf, got " + s.str());
  return ExtendedExponent(Rational(s.value() * (p.value() - 1) + 1));
}

GridWeight factor_weight(const GridWeight& v1, const GridWeight& v2, const ExtendedExponent& p,
                         const ExtendedExponent& s) {
  require_same_grid(v1, v2);
  if (p < ExtendedExponent(1) || p.is_infinite()) throw DomainError("factor_weight needs 1 <= p < inf");
  if (s <= ExtendedExponent(1)) throw DomainError("factor_weight needs s > 1");
  const double e1 = to_double(s.reciprocal_value());
  const double e2 = to_double(Rational(1 - p.value()));
  Eigen::VectorXd v = (v1.values.array().pow(e1) * v2.values.array().pow(e2)).matrix();
  return {v1.grid, std::move(v)};
}

Rational factor_power_exponent(const Rational& a1, const Rational& a2, const ExtendedExponent& p,
                               const ExtendedExponent& s) {
  return a1 * s.reciprocal_value() + a2 * (1 - p.value());
}

bool power_in_ap(const Rational& alpha, const ExtendedExponent& p) {
  if (p < ExtendedExponent(1)) throw DomainError("A_p index below 1");
  if (alpha <= -1) return false;
  if (p.is_infinite()) return true;
  if (p == ExtendedExponent(1)) return alpha <= 0;
  return alpha < p.value() - 1;
}

bool power_in_rh(const Rational& alpha, const ExtendedExponent& s) {
  if (s < ExtendedExponent(1)) throw DomainError("RH_s index below 1");
  if (s.is_infinite()) return alpha >= 0;
  return alpha > -s.reciprocal_value();
}

bool power_in_class(const PowerWeight& w, const WeightClassSpec& spec) {
  return power_in_ap(w.alpha, spec.p) && power_in_rh(w.alpha, spec.s);
}

std::vector<std::string> power_class_reasons(const PowerWeight& w, const WeightClassSpec& spec) {
  std::vector<std::string> out;
  const std::string a = to_string(w.alpha);
  if (spec.p == ExtendedExponent(1))
    out.push_back("A_1 needs -1 < alpha <= 0; alpha = " + a + (power_in_ap(w.alpha, spec.p) ? " holds" : " fails"));
  else
    out.push_back("A_" + spec.p.str() + " needs -1 < alpha < " + to_string(Rational(spec.p.value() - 1)) +
                  "; alpha = " + a + (power_in_ap(w.alpha, spec.p) ? " holds" : " fails"));
  if (spec.s.is_infinite())
    out.push_back("RH_inf needs alpha >= 0; alpha = " + a + (power_in_rh(w.alpha, spec.s) ? " holds" : " fails"));
  else
    out.push_back("RH_" + spec.s.str() + " needs alpha > " + to_string(Rational(-spec.s.reciprocal_value())) +
                  "; alpha = " + a + (power_in_rh(w.alpha, spec.s) ? " holds" : " fails"));
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

// Pairwise summation; exact for equal summands when n is a power of two.
double pairwise_sum(const double* x, std::size_t n) {
  if (n == 1) return x[0];
  if (n == 2) return x[0] + x[1];
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

Eigen::VectorXd block_average(const GridWeight& w, int depth) {
  if (depth < 0) throw DomainError("depth must be nonnegative");
  if (depth > 62) throw DomainError("depth too large");
  const std::size_t cells = std::size_t{1} << depth;
  if (cells > w.grid.N) throw DomainError("depth " + std::to_string(depth) + " exceeds grid resolution");
  const std::size_t per = w.grid.N / cells;
  Eigen::VectorXd out(static_cast<Eigen::Index>(cells));
  for (std::size_t c = 0; c < cells; ++c)
    out[static_cast<Eigen::Index>(c)] = pairwise_sum(w.values.data() + c * per, per) / static_cast<double>(per);
  return out;
}

struct Functionals {
  double ap = 1.0;
  double rh = 1.0;
  double joint = 1.0;
};

struct Exponents {
  bool p_is_one;
  double p;           // A_p index
  double dual;        // 1/(p-1)
  bool s_is_inf;
  double s;
  bool want_rh;
};

Functionals interval_functionals(const double* cells, std::size_t n, const Exponents& e, std::vector<double>& scratch) {
  Functionals f;
  const double a = pairwise_sum(cells, n) / static_cast<double>(n);
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = cells[i] / a;
  const double mean_u = pairwise_sum(scratch.data(), n) / static_cast<double>(n);
  const double min_u = *std::min_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n));
  const double max_u = *std::max_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n));

  double neg_mean = 0.0;
  if (e.p_is_one) {
    f.ap = mean_u / min_u;
  } else {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::pow(scratch[i], -e.dual);
    neg_mean = pairwise_sum(t.data(), n) / static_cast<double>(n);
    f.ap = mean_u * std::pow(neg_mean, e.p - 1.0);
  }
  if (!e.want_rh) return f;

  if (e.s_is_inf) {
    f.rh = max_u / mean_u;
    f.joint = f.ap * f.rh;
    return f;
  }
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = std::pow(scratch[i], e.s);
  const double s_mean = pairwise_sum(t.data(), n) / static_cast<double>(n);
  f.rh = std::pow(s_mean, 1.0 / e.s) / mean_u;
  if (e.p_is_one)
    f.joint = s_mean / std::pow(min_u, e.s);
  else
    f.joint = s_mean * std::pow(neg_mean, e.s * (e.p - 1.0));
  return f;
}

Exponents make_exponents(const ExtendedExponent& p, const ExtendedExponent& s, bool want_rh) {
  Exponents e{};
  e.p_is_one = p == ExtendedExponent(1);
  e.p = p.to_double();
  e.dual = e.p_is_one ? 0.0 : to_double(Rational(1 / (p.value() - 1)));
  e.s_is_inf = s.is_infinite();
  e.s = s.to_double();
  e.want_rh = want_rh;
  return e;
}

Functionals sup_functionals(const GridWeight& w, const Exponents& e, int depth) {
  const Eigen::VectorXd cells = block_average(w, depth);
  const std::size_t m = static_cast<std::size_t>(cells.size());
  Functionals best;
  for (int level = 0; level <= depth; ++level) {
    const std::size_t count = std::size_t{1} << level;
    const std::size_t len = m / count;
    std::vector<Functionals> per(count);
    parallel_for(count, [&](std::size_t b, std::size_t end) {
      std::vector<double> scratch;
      for (std::size_t i = b; i < end; ++i) per[i] = interval_functionals(cells.data() + i * len, len, e, scratch);
    });
    for (const auto& f : per) {
      best.ap = std::max(best.ap, finite_or_inf(f.ap));
      best.rh = std::max(best.rh, finite_or_inf(f.rh));
      best.joint = std::max(best.joint, finite_or_inf(f.joint));
    }
  }
  return best;
}

}  // namespace

ClassConstants estimate_class_constants(const GridWeight& w, const WeightClassSpec& spec, int depth) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  const auto f = sup_functionals(w, make_exponents(spec.p, spec.s, true), depth);
  return {depth, f.ap, f.rh, f.joint};
}

std::vector<ClassConstants> class_constant_table(const GridWeight& w, const WeightClassSpec& spec, int max_depth) {
  std::vector<ClassConstants> out;
  for (int d = 1; d <= max_depth; ++d) {
    out.push_back(estimate_class_constants(w, spec, d));
    if (out.size() >= 2) {
      const auto& a = out[out.size() - 2];
      const auto& b = out.back();
      auto dropped = [](double lo, double hi) { return hi < lo * (1.0 - 1e-12); };
      if (dropped(a.ap, b.ap) || dropped(a.rh, b.rh) || dropped(a.joint, b.joint))
        throw Error("class constant estimate decreased between depths " + std::to_string(d - 1) + " and " +
                    std::to_string(d));
    }
  }
  return out;
}

double estimate_ap_constant(const GridWeight& w, const ExtendedExponent& p, int depth) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  return sup_functionals(w, make_exponents(p, ExtendedExponent(1), false), depth).ap;
}

DivergenceProbe divergence_probe(const GridWeight& w, const WeightClassSpec& spec, int start_depth, int increments,
                                 double factor) {
  DivergenceProbe probe;
  for (int d = start_depth; d <= start_depth + increments; ++d) probe.joint.push_back(estimate_class_constants(w, spec, d).joint);
  probe.divergent = true;
  for (std::size_t i = 1; i < probe.joint.size(); ++i) {
    const double g = probe.joint[i] / probe.joint[i - 1];
    probe.growth.push_back(g);
    if (!(g >= factor)) probe.divergent = false;
  }
  return probe;
}

ExtendedExponent openness_probe(const GridWeight& w, const ExtendedExponent& p, int budget, const OpennessConfig& cfg) {
  if (p.is_zero() || p.is_infinite()) throw DomainError("openness_probe needs 0 < p < inf");
  if (budget < 1) throw DomainError("budget must be positive");
  if (p >= ExtendedExponent(1) && !std::isfinite(estimate_ap_constant(w, p, cfg.depth)))
    throw SearchFailed("estimated A_" + p.str() + " constant is not finite");

  const Rational pv = p.value();
  Rational lo = 0;
  Rational hi = pv;
  std::optional<Rational> best;
  for (int i = 0; i < budget; ++i) {
    const Rational eps = (lo + hi) / 2;
    const Rational index = pv / eps;
    bool pass = false;
    if (index >= 1) {
      const double c = estimate_ap_constant(w, ExtendedExponent(index), cfg.depth);
      pass = std::isfinite(c) && c <= cfg.ceiling;
    }
    if (pass) {
      best = eps;
      lo = eps;
    } else {
      hi = eps;
    }
  }
  if (!best) throw SearchFailed("no eps in (0, " + p.str() + ") keeps the A_{p/eps} estimate below " + std::to_string(cfg.ceiling));
  return ExtendedExponent(*best);
}

}  // namespace extrapkit

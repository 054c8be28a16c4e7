#include "extrapkit/extrapolation.hpp"

namespace extrapkit {

std::string to_string(ProofCase c) {
  switch (c) {
    case ProofCase::I: return "I";
    case ProofCase::II: return "II";
    case ProofCase::III: return "III";
    case ProofCase::IV: return "IV";
  }
  return "?";
}

void ExtrapolationRange::validate() const {
  if (!(p_minus < p_plus)) throw InvalidRange("need p_- < p_+, got " + p_minus.str() + " and " + p_plus.str());
  if (p0.is_zero() || p0.is_infinite()) throw InvalidRange("p0 must lie in (0, inf), got " + p0.str());
  if (q0.is_zero() || q0.is_infinite()) throw InvalidRange("q0 must lie in (0, inf), got " + q0.str());
  if (p0 < p_minus || p0 > p_plus)
    throw InvalidRange("need p_- <= p0 <= p_+, got p0 = " + p0.str());
  const Rational v = q0.reciprocal_value() - p0.reciprocal_value() + p_plus.reciprocal_value();
  if (v < 0) throw InvalidRange("1/q0 - 1/p0 + 1/p_+ = " + to_string(v) + " < 0");
}

ExtrapolationRange make_range(ExtendedExponent p_minus, ExtendedExponent p_plus, ExtendedExponent p0,
                              ExtendedExponent q0) {
  ExtrapolationRange r{std::move(p_minus), std::move(p_plus), std::move(p0), std::move(q0)};
  r.validate();
  return r;
}

DualRange dual_range(const ExtrapolationRange& range) {
  range.validate();
  const Rational shift = range.shift();
  DualRange d;
  d.q_minus = range.p_minus.is_zero() ? ExtendedExponent() : ExtendedExponent::from_reciprocal(range.p_minus.reciprocal_value() - shift);
  d.q_plus = ExtendedExponent::from_reciprocal(range.p_plus.reciprocal_value() - shift);
  if (!(d.q_minus <= range.q0 && range.q0 <= d.q_plus))
    throw CertificationFailed("dual range does not bracket q0: " + d.q_minus.str() + ", " + range.q0.str() + ", " + d.q_plus.str());
  return d;
}

ExtendedExponent target_exponent(const ExtendedExponent& p, const ExtrapolationRange& range) {
  range.validate();
  if (!(range.p_minus < p && p < range.p_plus))
    throw OutOfRange("p = " + p.str() + " is not inside (" + range.p_minus.str() + ", " + range.p_plus.str() + ")");
  const Rational inv = p.reciprocal_value() - range.shift();
  if (inv <= 0) throw OutOfRange("1/q = " + to_string(inv) + " is not positive");
  return ExtendedExponent::from_reciprocal(inv);
}

ProofCase case_select(const ExtrapolationRange& range) {
  range.validate();
  if (range.p_minus.is_zero()) return ProofCase::IV;
  if (range.p0 == range.p_minus) return ProofCase::II;
  if (range.p0 == range.p_plus) return ProofCase::III;
  return ProofCase::I;
}

bool ProofExponents::all_identities_hold() const {
  for (const auto& c : identities)
    if (!c.holds()) return false;
  return true;
}

ProofExponents proof_exponents(const ExtrapolationRange& range, const ExtendedExponent& p) {
  const ProofCase pc = case_select(range);
  if (pc == ProofCase::IV) throw CaseUnsupported("p_- = 0 needs reduce_case4 first");
  const ExtendedExponent q = target_exponent(p, range);

  const Rational a = range.p_minus.reciprocal_value();
  const Rational b = range.p_plus.reciprocal_value();
  const Rational x = p.reciprocal_value();
  const Rational x0 = range.p0.reciprocal_value();
  const Rational y0 = range.q0.reciprocal_value();
  const Rational y = q.reciprocal_value();

  ProofExponents pe;
  pe.proof_case = pc;
  pe.p = p;
  pe.q = q;
  pe.tau = (a - b) / (x - b);
  pe.tau_prime = (a - b) / (a - x);
  const Rational inv_tau = 1 / pe.tau;
  pe.s = (y - inv_tau * (a - x0)) / (y * y0);
  pe.s_alt = (y0 - (1 - inv_tau) * (x0 - b)) / (y * y0);
  pe.alpha = pe.s * (1 - pe.s * y0);
  pe.phi = ExtendedExponent::from_reciprocal(Rational((y0 / x0) * (1 - pe.s * y)));
  pe.delta = (x - b) / ((a - b) * y);
  pe.epsilon_exp = (1 / y - 1 / (x - b)) * (x - b) / (a - b);
  pe.sigma = 1 / (a - x);
  pe.beta = ExtendedExponent::from_reciprocal(Rational(pe.tau_prime * (1 - pe.s * y)));
  pe.gamma = (pe.sigma + 1 / y) / pe.tau_prime;
  pe.identities = certify_identities(range, pe);

  if (!pe.all_identities_hold()) {
    std::string bad;
    for (const auto& c : pe.identities)
      if (!c.holds()) bad += " " + c.name + " (" + to_string(c.lhs) + " vs " + to_string(c.rhs) + ")";
    throw CertificationFailed("identities failed:" + bad);
  }
  const Rational qv = q.value();
  const Rational q0v = range.q0.value();
  const Rational mn = qv < q0v ? qv : q0v;
  if (!(pe.s > 0 && pe.s <= mn)) throw CertificationFailed("0 < s <= min(q, q0) fails with s = " + to_string(pe.s));
  if (pc == ProofCase::I && !(pe.s < mn && pe.phi > ExtendedExponent(1)))
    throw CertificationFailed("Case I needs s < min(q, q0) and phi > 1");
  if (pc == ProofCase::II && pe.s != q0v) throw CertificationFailed("Case II needs s = q0");
  if (pc == ProofCase::III && pe.s != qv) throw CertificationFailed("Case III needs s = q");
  return pe;
}

std::vector<IdentityCheck> certify_identities(const ExtrapolationRange& range, const ProofExponents& pe) {
  const Rational p = pe.p.value();
  const Rational q = pe.q.value();
  const Rational p0 = range.p0.value();
  const Rational q0 = range.q0.value();
  // 1/(p_+/p0)' = 1 - p0/p_+ and 1/(p_+/p)' = 1 - p/p_+, finite for p_+ = inf.
  const Rational cp0 = conjugate_reciprocal(range.p_plus / range.p0);
  const Rational cp = conjugate_reciprocal(range.p_plus / pe.p);
  const Rational p0_over_pm = (range.p0 / range.p_minus).value();
  const Rational one_minus_sq = 1 - pe.s / q;  // 1/(q/s)'

  std::vector<IdentityCheck> out;
  out.push_back({"s1 = s2", pe.s, pe.s_alt});
  out.push_back({"exp1", pe.alpha * p0 / pe.s, q / pe.tau * (p0_over_pm - 1)});
  out.push_back({"exp2 (cleared)", p0 / q0 * one_minus_sq, cp0 / pe.tau_prime});
  if (one_minus_sq != 0) out.push_back({"exp2", p0 / q0, cp0 / (pe.tau_prime * one_minus_sq)});
  out.push_back({"exp3", q * p0 / q0,
                 (pe.sigma / pe.tau_prime + q / pe.tau_prime) * cp0 +
                     (q / pe.tau - p / (pe.tau * cp)) * (1 - p0_over_pm)});
  out.push_back({"delta tau = q", pe.delta * pe.tau, q});
  out.push_back({"epsilon tau = q - p (p_+/p)'", pe.epsilon_exp * pe.tau, q - p / cp});
  if (pe.beta.is_infinite())
    out.push_back({"beta tau' = (q/s)'", one_minus_sq, Rational(0)});
  else
    out.push_back({"beta tau' = (q/s)'", pe.beta.value() * pe.tau_prime * one_minus_sq, Rational(1)});
  out.push_back({"gamma tau' = sigma + q", pe.gamma * pe.tau_prime, pe.sigma + q});
  if (pe.phi.is_infinite())
    out.push_back({"phi = (q/s)' q0/p0", one_minus_sq, Rational(0)});
  else
    out.push_back({"phi = (q/s)' q0/p0", pe.phi.value() * one_minus_sq, q0 / p0});
  return out;
}

Case4Reduction reduce_case4(const ExtrapolationRange& range, const ExtendedExponent& p, const GridWeight& wp,
                            int budget, const OpennessConfig& cfg) {
  if (case_select(range) != ProofCase::IV) throw CaseUnsupported("reduce_case4 needs p_- = 0");
  target_exponent(p, range);
  Case4Reduction red;
  red.probe_eps = openness_probe(wp, p, budget, cfg);
  const ExtendedExponent half = ExtendedExponent(Rational(std::min(range.p0, p).value() / 2));
  red.eps = std::min(red.probe_eps, half);
  red.range = make_range(red.eps, range.p_plus, range.p0, range.q0);
  red.reduced_case = case_select(red.range);
  if (red.reduced_case != ProofCase::I && red.reduced_case != ProofCase::III)
    throw CertificationFailed("reduced range falls in Case " + to_string(red.reduced_case));
  return red;
}

std::vector<LinearStep> multilinear_plan(const std::vector<ExtendedExponent>& pjs,
                                         const std::vector<ExtendedExponent>& r_minus,
                                         const std::vector<ExtendedExponent>& r_plus,
                                         const std::vector<ExtendedExponent>& qjs) {
  const std::size_t m = pjs.size();
  if (m == 0 || r_minus.size() != m || r_plus.size() != m || qjs.size() != m)
    throw StepInvalid(0, "exponent lists must be nonempty and of equal length");

  Rational aggregate = 0;
  for (const auto& pj : pjs) {
    if (pj.is_zero()) throw StepInvalid(0, "p_j must be positive");
    aggregate += pj.reciprocal_value();
  }

  std::vector<LinearStep> steps;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t idx = j + 1;
    const auto& pj = pjs[j];
    const auto& lo = r_minus[j];
    const auto& hi = r_plus[j];
    const auto& qj = qjs[j];
    if (!(lo <= pj && pj <= hi)) throw StepInvalid(idx, "r^- <= p_j <= r^+ fails for p_j = " + pj.str());
    if (!(lo < qj && qj < hi)) throw StepInvalid(idx, "r^- < q_j < r^+ fails for q_j = " + qj.str());
    LinearStep st;
    st.index = idx;
    try {
      st.range = make_range(lo, hi, pj, ExtendedExponent::from_reciprocal(aggregate));
      st.dual = dual_range(st.range);
      st.result = target_exponent(qj, st.range);
      st.proof_case = case_select(st.range);
    } catch (const PlanError& e) {
      throw StepInvalid(idx, e.what());
    }
    st.target = qj;
    const Rational next = aggregate - pj.reciprocal_value() + qj.reciprocal_value();
    if (st.result.reciprocal_value() != next) throw StepInvalid(idx, "aggregate bookkeeping mismatch");
    aggregate = next;
    steps.push_back(std::move(st));
  }
  if (steps.back().result != harmonic_sum(qjs)) throw StepInvalid(m, "final aggregate differs from the harmonic sum of q_j");
  return steps;
}

}  // namespace extrapkit

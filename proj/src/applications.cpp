#include "extrapkit/applications.hpp"

#include <algorithm>

namespace extrapkit {

namespace {

const Rational kHalf(1, 2);
const Rational kThreeHalves(3, 2);

Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rabs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

void require_open_one_inf(const ExtendedExponent& e, const std::string& name) {
  if (!(ExtendedExponent(1) < e) || e.is_infinite())
    throw Infeasible("1 < " + name + " < inf", name + " = " + e.str());
}

void validate_scalar(const ExtendedExponent& q1, const ExtendedExponent& q2) {
  require_open_one_inf(q1, "q1");
  require_open_one_inf(q2, "q2");
  const Rational inv = q1.reciprocal_value() + q2.reciprocal_value();
  if (inv >= kThreeHalves) throw Infeasible("1/q < 3/2", "1/q ≥ 3/2 (1/q = " + to_string(inv) + ")");
}

void validate_vv(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                 const ExtendedExponent& s2) {
  validate_scalar(q1, q2);
  require_open_one_inf(s1, "s1");
  require_open_one_inf(s2, "s2");
  const Rational sinv = s1.reciprocal_value() + s2.reciprocal_value();
  if (sinv >= kThreeHalves) throw Infeasible("1/s < 3/2", "1/s ≥ 3/2 (1/s = " + to_string(sinv) + ")");
  const ExponentPair q{q1, q2};
  const ExponentPair s{s1, s2};
  Rational sum = 0;
  for (int i = 0; i < 2; ++i) {
    const Rational d = rabs(s[i].reciprocal_value() - q[i].reciprocal_value());
    if (d >= kHalf)
      throw Infeasible("|1/s_" + std::to_string(i + 1) + " - 1/q_" + std::to_string(i + 1) + "| < 1/2",
                       "difference is " + to_string(d));
    sum += rmax(q[i].reciprocal_value(), s[i].reciprocal_value());
  }
  if (sum >= kThreeHalves)
    throw Infeasible("sum max{1/q_i, 1/s_i} < 3/2", "sum is " + to_string(sum));
}

struct EtaFrame {
  Rational budget;
  RationalPair maxes;
  RationalPair caps;
};

EtaFrame eta_frame(const ExponentPair& q, const std::optional<ExponentPair>& s) {
  EtaFrame f;
  Rational total = 0;
  for (int i = 0; i < 2; ++i) {
    const Rational iq = q[i].reciprocal_value();
    Rational mx = rmax(kHalf, iq);
    Rational cap = rmin(iq, Rational(1 - iq));
    if (s) {
      const Rational is = (*s)[i].reciprocal_value();
      mx = rmax(mx, is);
      cap = rmin(cap, rmin(is, Rational(1 - is)));
      cap = rmin(cap, Rational(kHalf - rabs(is - iq)));
    }
    f.maxes[i] = mx;
    f.caps[i] = cap;
    total += mx;
  }
  f.budget = kThreeHalves - total;
  if (f.budget <= 0) throw Infeasible("sum max{1/2, 1/q_i, ...} < 3/2", "sum is " + to_string(total));
  return f;
}

}  // namespace

std::array<WeightClassSpec, 2> bht_base_class(const ExtendedExponent& p1, const ExtendedExponent& p2) {
  for (const auto* p : {&p1, &p2})
    if (!(ExtendedExponent(1) < *p) || p->is_infinite()) throw InfeasibleBase("1 < p_i < inf", "p_i = " + p->str());
  const Rational inv = p1.reciprocal_value() + p2.reciprocal_value();
  if (inv >= 1) throw InfeasibleBase("1/p1 + 1/p2 < 1", "sum is " + to_string(inv));
  return {WeightClassSpec(ExtendedExponent(Rational((p1.value() + 1) / 2)), ExtendedExponent(2)),
          WeightClassSpec(ExtendedExponent(Rational((p2.value() + 1) / 2)), ExtendedExponent(2))};
}

BHTPlan bht_plan_with_eta(const ExtendedExponent& q1, const ExtendedExponent& q2,
                          const std::optional<ExponentPair>& s, const RationalPair& eta) {
  if (s)
    validate_vv(q1, q2, (*s)[0], (*s)[1]);
  else
    validate_scalar(q1, q2);
  BHTPlan plan;
  plan.q = {q1, q2};
  plan.s = s;
  const EtaFrame fr = eta_frame(plan.q, s);
  plan.budget = fr.budget;
  plan.caps = fr.caps;
  plan.eta = eta;
  if (!(eta[0] + eta[1] < fr.budget)) throw Infeasible("eta_1 + eta_2 < budget", "budget is " + to_string(fr.budget));
  for (int i = 0; i < 2; ++i)
    if (!(0 < eta[i] && eta[i] < fr.caps[i]))
      throw Infeasible("0 < eta_i < cap_i", "eta_" + std::to_string(i + 1) + " = " + to_string(eta[i]) + ", cap " +
                                                 to_string(fr.caps[i]));

  Rational inv_p = 0;
  for (int i = 0; i < 2; ++i) {
    const Rational ip = 2 * (fr.maxes[i] - kHalf + eta[i]);
    plan.p[i] = ExtendedExponent::from_reciprocal(ip);
    inv_p += ip;
    plan.r_minus[i] = ExtendedExponent::from_reciprocal(Rational(ip / 2 + kHalf));
    plan.r_plus[i] = ExtendedExponent::from_reciprocal(Rational(ip / 2));
    const Rational iq = plan.q[i].reciprocal_value();
    const Rational ir = 2 * iq - ip;
    if (ir <= 0) throw Infeasible("1 < r_i < inf", "2/q_i - 1/p_i = " + to_string(ir));
    plan.r_class[i] = ExtendedExponent::from_reciprocal(ir);
    plan.weight_specs[i] = WeightClassSpec(ExtendedExponent(Rational(plan.q[i].value() * (ip / 2 + kHalf))),
                                           conjugate(plan.r_plus[i] / plan.q[i]));
  }
  plan.p_total = ExtendedExponent::from_reciprocal(inv_p);
  plan.q_total = ExtendedExponent::from_reciprocal(Rational(q1.reciprocal_value() + q2.reciprocal_value()));
  if (s) plan.s_total = ExtendedExponent::from_reciprocal(Rational((*s)[0].reciprocal_value() + (*s)[1].reciprocal_value()));

  auto bad = check_bht_plan(plan);
  if (!bad.empty()) throw CertificationFailed("plan invariant failed: " + bad.front());
  return plan;
}

namespace {

BHTPlan default_eta_plan(const ExtendedExponent& q1, const ExtendedExponent& q2, const std::optional<ExponentPair>& s) {
  if (s)
    validate_vv(q1, q2, (*s)[0], (*s)[1]);
  else
    validate_scalar(q1, q2);
  const EtaFrame fr = eta_frame({q1, q2}, s);
  const Rational eta = rmin(rmin(Rational(fr.budget / 2), fr.caps[0]), fr.caps[1]) / 2;
  return bht_plan_with_eta(q1, q2, s, {eta, eta});
}

}  // namespace

BHTPlan bht_plan(const ExtendedExponent& q1, const ExtendedExponent& q2) { return default_eta_plan(q1, q2, std::nullopt); }

BHTPlan bht_vv_plan(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                    const ExtendedExponent& s2) {
  return default_eta_plan(q1, q2, ExponentPair{s1, s2});
}

std::vector<std::string> check_bht_plan(const BHTPlan& plan) {
  std::vector<std::string> bad;
  if (!(plan.p_total.reciprocal_value() < 1)) bad.push_back("1/p < 1");
  if (plan.p_total.reciprocal_value() != plan.p[0].reciprocal_value() + plan.p[1].reciprocal_value())
    bad.push_back("1/p = 1/p1 + 1/p2");
  for (int i = 0; i < 2; ++i) {
    const std::string tag = "_" + std::to_string(i + 1);
    const auto& p = plan.p[i];
    if (!(ExtendedExponent(1) < p) || p.is_infinite()) bad.push_back("1 < p" + tag + " < inf");
    const Rational pv = p.is_infinite() ? Rational(0) : p.value();
    if (plan.r_minus[i] != ExtendedExponent(Rational(2 * pv / (1 + pv)))) bad.push_back("r" + tag + "^- = 2p/(1+p)");
    if (plan.r_plus[i] != ExtendedExponent(Rational(2 * pv))) bad.push_back("r" + tag + "^+ = 2p");
    if (!(plan.r_minus[i] < plan.q[i] && plan.q[i] < plan.r_plus[i])) bad.push_back("r" + tag + "^- < q" + tag + " < r" + tag + "^+");
    if (plan.s && !(plan.r_minus[i] < (*plan.s)[i] && (*plan.s)[i] < plan.r_plus[i]))
      bad.push_back("r" + tag + "^- < s" + tag + " < r" + tag + "^+");
    const auto& r = plan.r_class[i];
    if (!(ExtendedExponent(1) < r) || r.is_infinite()) {
      bad.push_back("1 < r" + tag + " < inf");
      continue;
    }
    // w^{q} in A_P ∩ RH_S  <=>  w^{qS} in A_{S(P-1)+1}, and qS = 2 r, S(P-1)+1 = r.
    const auto& spec = plan.weight_specs[i];
    if (spec.s.is_infinite() || cjn_index(spec.p, spec.s) != r) bad.push_back("class index r" + tag);
    else if (Rational(plan.q[i].value() * spec.s.value()) != 2 * r.value()) bad.push_back("class exponent 2 r" + tag);
  }
  return bad;
}

PowerRange bht_power_range(const ExtendedExponent& q1, const ExtendedExponent& q2) {
  validate_scalar(q1, q2);
  const Rational h1 = q1.value() / 2;
  const Rational h2 = q2.value() / 2;
  PowerRange pr;
  pr.a_minus = 1 - rmin(rmax(Rational(1), h1), rmax(Rational(1), h2));
  pr.a_plus = rmin(Rational(1), rmin(h1, h2));
  if (!(pr.a_minus <= 0 && 0 < pr.a_plus)) throw CertificationFailed("a_- <= 0 < a_+ fails");
  return pr;
}

PowerRange bht_vv_power_range(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                              const ExtendedExponent& s2) {
  validate_vv(q1, q2, s1, s2);
  const ExponentPair q{q1, q2};
  const ExponentPair s{s1, s2};
  Rational lower_min;
  Rational upper = 1;
  for (int i = 0; i < 2; ++i) {
    const Rational qi = q[i].value();
    const Rational is = s[i].reciprocal_value();
    const Rational mx = rmax(rmax(Rational(1), Rational(qi / 2)), Rational(qi * is));
    lower_min = i == 0 ? mx : rmin(lower_min, mx);
    upper = rmin(upper, Rational(qi / 2));
    upper = rmin(upper, Rational(1 - qi * (is - kHalf)));
  }
  PowerRange pr;
  pr.a_minus = 1 - lower_min;
  pr.a_plus = upper;
  if (!(pr.a_minus <= 0 && 0 < pr.a_plus)) throw CertificationFailed("a_- <= 0 < a_+ fails");
  return pr;
}

Section5Plan section5_plan(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                           const ExtendedExponent& s2, const Rational& g1, const Rational& g2, const Rational& g3,
                           const std::optional<Rational>& free_p) {
  for (const auto* g : {&g1, &g2, &g3})
    if (*g < 0 || *g >= 1) throw GammaInvalid("each gamma_i must lie in [0, 1), got " + to_string(*g));
  if (g1 + g2 + g3 != 1) throw GammaInvalid("gamma_1 + gamma_2 + gamma_3 must equal 1");
  for (auto [e, name] : {std::pair{&q1, "q1"}, {&q2, "q2"}, {&s1, "s1"}, {&s2, "s2"}}) require_open_one_inf(*e, name);
  const Rational iq_total = q1.reciprocal_value() + q2.reciprocal_value();
  const Rational is_total = s1.reciprocal_value() + s2.reciprocal_value();
  if (iq_total >= kThreeHalves) throw Infeasible("1/q < 3/2", "1/q = " + to_string(iq_total));
  if (is_total >= kThreeHalves) throw Infeasible("1/s < 3/2", "1/s = " + to_string(is_total));

  Section5Plan plan;
  plan.q = {q1, q2};
  plan.s = {s1, s2};
  plan.gamma = {g1, g2, g3};
  const RationalPair gam{g1, g2};
  for (int i = 0; i < 2; ++i) {
    const Rational iq = plan.q[i].reciprocal_value();
    const Rational is = plan.s[i].reciprocal_value();
    if (!(rmax(is, iq) < (1 + gam[i]) / 2))
      throw Infeasible("max{1/s_" + std::to_string(i + 1) + ", 1/q_" + std::to_string(i + 1) + "} < (1 + gamma_" +
                           std::to_string(i + 1) + ")/2",
                       "max is " + to_string(rmax(is, iq)));
    plan.m[i] = rmin(is, iq);
  }
  // Third clause, read with q' in place of the unchosen p'; it follows from the min-sum condition.
  if (!(rmax(Rational(1 - is_total), Rational(1 - iq_total)) < (1 + g3) / 2))
    throw Infeasible("max{1/s', 1/q'} < (1 + gamma_3)/2", "fails");
  if (!(plan.m[0] + plan.m[1] > (1 - g3) / 2))
    throw Infeasible("m_1 + m_2 > (1 - gamma_3)/2", "m_1 + m_2 = " + to_string(Rational(plan.m[0] + plan.m[1])) +
                                                       ", (1 - gamma_3)/2 = " + to_string(Rational((1 - g3) / 2)));
  for (int i = 0; i < 2; ++i) plan.m_tilde[i] = 2 * plan.m[i] / (1 - g3);

  const Rational diff = plan.m_tilde[0] - plan.m_tilde[1];
  if (rabs(diff) < 1) {
    plan.eta = {kHalf + diff / 2, kHalf - diff / 2};
  } else {
    plan.eps_branch = true;
    const int small = diff > 0 ? 1 : 0;
    const Rational eps = rmin(plan.m_tilde[small], kHalf) / 2;
    plan.eta[small] = eps;
    plan.eta[1 - small] = 1 - eps;
  }

  // Free index: the one with the smaller eta (index 1 on ties).
  const int f = plan.eta[0] <= plan.eta[1] ? 0 : 1;
  const int o = 1 - f;
  plan.free_index = static_cast<std::size_t>(f + 1);
  plan.p_interval = {2 * plan.eta[o] / plan.eta[f], 2 / ((1 - g3) * plan.eta[f])};
  Rational pf;
  if (free_p) {
    pf = *free_p;
    if (!(plan.p_interval[0] < pf && pf < plan.p_interval[1]))
      throw Infeasible("p_" + std::to_string(f + 1) + " inside (" + to_string(plan.p_interval[0]) + ", " +
                           to_string(plan.p_interval[1]) + ")",
                       "got " + to_string(pf));
  } else {
    pf = 2 / (1 / plan.p_interval[0] + 1 / plan.p_interval[1]);
  }
  const Rational po = pf * plan.eta[f] / plan.eta[o];
  plan.p[f] = ExtendedExponent(pf);
  plan.p[o] = ExtendedExponent(po);
  const Rational ptot = pf * plan.eta[f];
  plan.p_total = ExtendedExponent(ptot);

  for (int i = 0; i < 2; ++i) plan.theta[i] = conjugate(plan.p[i]).value() * (1 - gam[i]) / 2;
  plan.theta[2] = ptot * (1 - g3) / 2;
  for (int i = 0; i < 2; ++i) {
    const Rational pi = plan.p[i].value();
    plan.r_minus[i] = ExtendedExponent::from_reciprocal(Rational(1 - plan.theta[i] * conjugate_reciprocal(plan.p[i])));
    plan.r_plus[i] = ExtendedExponent::from_reciprocal(Rational(plan.theta[2] / pi));
    plan.weight_specs[i] = WeightClassSpec(ExtendedExponent(Rational(1 + (1 - plan.theta[i]) * (pi - 1))),
                                           ExtendedExponent::from_reciprocal(Rational(1 - plan.theta[2])));
  }
  auto bad = check_section5_plan(plan);
  if (!bad.empty()) throw CertificationFailed("gamma system invariant failed: " + bad.front());
  return plan;
}

std::vector<std::string> check_section5_plan(const Section5Plan& plan) {
  std::vector<std::string> bad;
  if (plan.gamma[0] + plan.gamma[1] + plan.gamma[2] != 1) bad.push_back("gamma sum = 1");
  if (plan.eta[0] + plan.eta[1] != 1) bad.push_back("eta_1 + eta_2 = 1");
  const Rational c1 = plan.theta[0] * conjugate_reciprocal(plan.p[0]);
  const Rational c2 = plan.theta[1] * conjugate_reciprocal(plan.p[1]);
  const Rational c3 = plan.theta[2] * plan.p_total.reciprocal_value();
  if (!(c1 <= kHalf)) bad.push_back("theta_1/p_1' <= 1/2");
  if (!(c2 <= kHalf)) bad.push_back("theta_2/p_2' <= 1/2");
  if (!(c3 <= kHalf)) bad.push_back("theta_3/p <= 1/2");
  if (c1 + c2 + c3 != 1) bad.push_back("theta_1/p_1' + theta_2/p_2' + theta_3/p = 1");
  for (int i = 0; i < 3; ++i)
    if (!(0 < plan.theta[i] && plan.theta[i] < 1)) bad.push_back("theta_" + std::to_string(i + 1) + " in (0, 1)");
  if (plan.p_total.reciprocal_value() != plan.p[0].reciprocal_value() + plan.p[1].reciprocal_value())
    bad.push_back("1/p = 1/p_1 + 1/p_2");
  for (int i = 0; i < 2; ++i) {
    const std::string t = std::to_string(i + 1);
    if (!(0 < plan.eta[i] && plan.eta[i] < 1)) bad.push_back("eta_" + t + " in (0, 1)");
    if (!(plan.eta[i] < plan.m_tilde[i])) bad.push_back("eta_" + t + " < m~_" + t);
    const Rational iq = plan.q[i].reciprocal_value();
    const Rational is = plan.s[i].reciprocal_value();
    const Rational inv_plus = plan.theta[2] / plan.p[i].value();
    const Rational inv_minus = 1 - plan.theta[i] * conjugate_reciprocal(plan.p[i]);
    if (plan.r_plus[i].reciprocal_value() != inv_plus) bad.push_back("1/r_" + t + "^+ = theta_3/p_" + t);
    if (plan.r_minus[i].reciprocal_value() != inv_minus) bad.push_back("1/r_" + t + "^- = 1 - theta_" + t + "/p_" + t + "'");
    if (!(inv_plus < rmin(is, iq))) bad.push_back("theta_3/p_" + t + " < min{1/s_" + t + ", 1/q_" + t + "}");
    if (!(rmax(is, iq) < inv_minus)) bad.push_back("max{1/s_" + t + ", 1/q_" + t + "} < 1 - theta_" + t + "/p_" + t + "'");
  }
  return bad;
}

MZPlan mz_plan(const std::vector<ExtendedExponent>& qjs, const Rational& r) {
  if (qjs.empty()) throw Infeasible("m >= 1", "no exponents given");
  for (std::size_t j = 0; j < qjs.size(); ++j) require_open_one_inf(qjs[j], "q_" + std::to_string(j + 1));
  MZPlan plan;
  plan.q = qjs;
  plan.r = r;
  for (const auto& q : qjs) plan.weight_specs.emplace_back(q, ExtendedExponent(1));
  plan.q_total = harmonic_sum(qjs);
  if (r == 2) {
    plan.base_case = true;
    return plan;
  }
  if (!(1 < r && r < 2)) throw Infeasible("1 < r < 2", "r = " + to_string(r));
  const Rational inv_base = (1 + 1 / r) / 2;
  std::vector<ExtendedExponent> rm(qjs.size(), ExtendedExponent(1));
  std::vector<ExtendedExponent> rp(qjs.size(), ExtendedExponent::infinity());
  plan.base_p.assign(qjs.size(), ExtendedExponent::from_reciprocal(inv_base));
  plan.steps = multilinear_plan(plan.base_p, rm, rp, qjs);
  return plan;
}

}  // namespace extrapkit

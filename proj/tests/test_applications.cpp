#include <doctest.h>

#include "extrapkit/applications.hpp"
#include "extrapkit/errors.hpp"
#include "gen.hpp"

using namespace extrapkit;

namespace {

ExtendedExponent E(const char* s) { return ExtendedExponent::parse(s); }
Rational Q(const char* s) { return parse_rational(s); }
Rational mx(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational mn(const Rational& a, const Rational& b) { return a < b ? a : b; }

// Hand evaluation of the eta rule and the p_i, r_i^± formulas in p-form.
struct BhtOracle {
  Rational eta, p[2], rm[2], rp[2];
};

BhtOracle bht_oracle(const ExtendedExponent& q1, const ExtendedExponent& q2) {
  const Rational iq[2] = {q1.reciprocal_value(), q2.reciprocal_value()};
  const Rational half(1, 2);
  Rational m[2], cap[2];
  for (int i = 0; i < 2; ++i) {
    m[i] = mx(half, iq[i]);
    cap[i] = mn(iq[i], Rational(1 - iq[i]));
  }
  const Rational budget = Rational(3, 2) - m[0] - m[1];
  BhtOracle o;
  o.eta = mn(mn(Rational(budget / 2), cap[0]), cap[1]) / 2;
  for (int i = 0; i < 2; ++i) {
    o.p[i] = 1 / (2 * (m[i] - half + o.eta));
    o.rm[i] = 2 * o.p[i] / (1 + o.p[i]);
    o.rp[i] = 2 * o.p[i];
  }
  return o;
}

}  // namespace

TEST_CASE("base classes") {
  const auto specs = bht_base_class(E("4"), E("4"));
  CHECK(specs[0] == WeightClassSpec(E("5/2"), E("2")));
  CHECK(specs[1] == WeightClassSpec(E("5/2"), E("2")));
  CHECK(cjn_index(specs[0].p, specs[0].s) == E("4"));
  CHECK_THROWS_AS(bht_base_class(E("2"), E("2")), InfeasibleBase);
  CHECK_THROWS_AS(bht_base_class(E("1"), E("5")), InfeasibleBase);
}

TEST_CASE("bht plan at q1 = q2 = 2") {
  const BHTPlan pl = bht_plan(E("2"), E("2"));
  CHECK(pl.budget == Q("1/2"));
  CHECK(pl.eta[0] == Q("1/8"));
  CHECK(pl.eta[1] == Q("1/8"));
  CHECK(pl.p[0] == E("4"));
  CHECK(pl.p[1] == E("4"));
  CHECK(pl.p_total == E("2"));
  CHECK(pl.r_minus[0] == E("8/5"));
  CHECK(pl.r_plus[0] == E("8"));
  CHECK(pl.r_class[0] == E("4/3"));
  CHECK(pl.q_total == E("1"));
  CHECK(pl.weight_specs[0] == WeightClassSpec(E("5/4"), E("4/3")));
  CHECK(check_bht_plan(pl).empty());
  try {
    bht_plan(E("4/3"), E("4/3"));
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(e.condition() == "1/q < 3/2");
    CHECK(std::string(e.what()).find("1/q ≥ 3/2") != std::string::npos);
  }
  CHECK_THROWS_AS(bht_plan(E("1"), E("3")), Infeasible);
  CHECK_THROWS_AS(bht_plan_with_eta(E("2"), E("2"), std::nullopt, {Q("1/4"), Q("1/4")}), Infeasible);
}

TEST_CASE("property: bht plans on the seeded corpus") {
  gen::Gen g(401);
  for (int i = 0; i < 1000; ++i) {
    const auto q = gen::bht_pair(g);
    const BHTPlan pl = bht_plan(q[0], q[1]);
    const BhtOracle o = bht_oracle(q[0], q[1]);
    CHECK(check_bht_plan(pl).empty());
    CHECK(pl.p_total.reciprocal_value() < 1);
    CHECK(pl.eta[0] == o.eta);
    CHECK(pl.eta[1] == o.eta);
    for (int k = 0; k < 2; ++k) {
      CHECK(pl.p[k].value() == o.p[k]);
      CHECK(pl.r_minus[k].value() == o.rm[k]);
      CHECK(pl.r_plus[k].value() == o.rp[k]);
      CHECK(o.rm[k] < q[k].value());
      CHECK(q[k].value() < o.rp[k]);
    }

    // shrinking eta never breaks feasibility
    const Rational f1 = g.open(Rational(0), Rational(1), 10);
    const Rational f2 = g.open(Rational(0), Rational(1), 10);
    CHECK_NOTHROW(bht_plan_with_eta(q[0], q[1], std::nullopt, {Rational(pl.eta[0] * f1), Rational(pl.eta[1] * f2)}));

    const PowerRange pr = bht_power_range(q[0], q[1]);
    const Rational h1 = q[0].value() / 2, h2 = q[1].value() / 2;
    CHECK(pr.a_minus == 1 - mn(mx(Rational(1), h1), mx(Rational(1), h2)));
    CHECK(pr.a_plus == mn(Rational(1), mn(h1, h2)));
    CHECK(pr.includes_zero);
    CHECK(pr.contains(Rational(0)));
    const Rational a = g.open(Rational(0), Rational(1, 2));
    CHECK(pr.contains(a));
  }
}

TEST_CASE("power ranges") {
  const PowerRange pr = bht_power_range(E("2"), E("2"));
  CHECK(pr.a_minus == 0);
  CHECK(pr.a_plus == 1);
  const PowerRange near = bht_power_range(E("41/30"), E("41/30"));
  CHECK(near.a_plus == Q("41/60"));
  CHECK(bht_vv_power_range(E("2"), E("2"), E("2"), E("2")).a_minus == 0);
  CHECK(bht_vv_power_range(E("2"), E("2"), E("2"), E("2")).a_plus == 1);
  for (const char* t : {"11/10", "5/4", "3/2", "7/4", "199/100"}) {
    const Rational tv = Q(t);
    const PowerRange v = bht_vv_power_range(E("2"), E("2"), E("2"), ExtendedExponent(tv));
    CHECK(v.a_minus == 0);
    CHECK(v.a_plus == 2 * (1 - 1 / tv));
  }
  Rational prev = 1;
  for (int n = 2; n <= 64; n *= 2) {
    const Rational t = 1 + Rational(1, n);
    const Rational ap = bht_vv_power_range(E("2"), E("2"), E("2"), ExtendedExponent(t)).a_plus;
    CHECK(ap < prev);
    prev = ap;
  }
  CHECK(prev < Q("1/30"));
}

TEST_CASE("vector-valued plans") {
  const BHTPlan a = bht_vv_plan(E("2"), E("2"), E("2"), E("3/2"));
  CHECK(check_bht_plan(a).empty());
  CHECK_THROWS_AS(bht_vv_plan(E("2"), E("2"), E("2"), E("1")), Infeasible);
  try {
    bht_vv_plan(E("2"), E("4"), E("2"), E("11/10"));
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(e.condition() == "|1/s_2 - 1/q_2| < 1/2");
  }
  CHECK_THROWS_AS(bht_vv_plan(E("2"), E("2"), E("5/4"), E("5/4")), Infeasible);
}

TEST_CASE("property: vector-valued corpus") {
  gen::Gen g(402);
  for (int i = 0; i < 1000; ++i) {
    const auto t = gen::vv_tuple(g);
    const BHTPlan pl = bht_vv_plan(t[0], t[1], t[2], t[3]);
    CHECK(check_bht_plan(pl).empty());
    for (int k = 0; k < 2; ++k) {
      CHECK(pl.r_minus[k] < std::min(t[k], t[k + 2]));
      CHECK(std::max(t[k], t[k + 2]) < pl.r_plus[k]);
    }
    CHECK(pl.p_total.reciprocal_value() < 1);
    const PowerRange pr = bht_vv_power_range(t[0], t[1], t[2], t[3]);
    CHECK(pr.a_minus <= 0);
    CHECK(pr.a_plus > 0);
  }
  for (int i = 0; i < 300; ++i) {
    const auto q = gen::bht_pair(g);
    const BHTPlan s = bht_plan(q[0], q[1]);
    const BHTPlan v = bht_vv_plan(q[0], q[1], q[0], q[1]);
    CHECK(v.eta == s.eta);
    CHECK(v.budget == s.budget);
    CHECK(v.caps == s.caps);
    CHECK(v.p == s.p);
    CHECK(v.r_minus == s.r_minus);
    CHECK(v.r_plus == s.r_plus);
    CHECK(v.r_class == s.r_class);
    CHECK(v.weight_specs == s.weight_specs);
  }
}

TEST_CASE("three-exponent system") {
  // theta = (1/2, 1/2, 1/2) recovers the base classes
  const Section5Plan rec = section5_plan(E("2"), E("2"), E("2"), E("2"), Q("1/4"), Q("1/4"), Q("1/2"), Q("4"));
  CHECK(rec.theta[0] == Q("1/2"));
  CHECK(rec.theta[1] == Q("1/2"));
  CHECK(rec.theta[2] == Q("1/2"));
  const auto base = bht_base_class(rec.p[0], rec.p[1]);
  CHECK(rec.weight_specs[0] == base[0]);
  CHECK(rec.weight_specs[1] == base[1]);
  CHECK(check_section5_plan(rec).empty());

  const Section5Plan mid = section5_plan(E("2"), E("2"), E("2"), E("2"), Q("1/4"), Q("1/4"), Q("1/2"));
  CHECK(mid.m[0] == Q("1/2"));
  CHECK(mid.m_tilde[0] == 2);
  CHECK(mid.eta[0] == Q("1/2"));
  CHECK(mid.eta[1] == Q("1/2"));
  CHECK_FALSE(mid.eps_branch);
  CHECK(mid.p_interval[0] == 2);
  CHECK(mid.p_interval[1] == 8);
  CHECK(mid.p[0] == E("16/5"));
  CHECK(mid.p[1] == E("16/5"));
  CHECK(mid.p_total == E("8/5"));

  const Section5Plan three = section5_plan(E("2"), E("2"), E("2"), E("2"), Q("1/4"), Q("1/4"), Q("1/2"), Q("3"));
  CHECK(three.p_total == E("3/2"));
  CHECK(three.theta[2] == Q("3/8"));
  CHECK(check_section5_plan(three).empty());
  CHECK_THROWS_AS(section5_plan(E("2"), E("2"), E("2"), E("2"), Q("1/4"), Q("1/4"), Q("1/2"), Q("8")), Infeasible);

  const Section5Plan eps = section5_plan(E("10/7"), E("10"), E("10/7"), E("10"), Q("1/2"), Q("0"), Q("1/2"));
  CHECK(eps.eps_branch);
  CHECK(eps.eta[1] == Q("1/5"));
  CHECK(eps.eta[0] == Q("4/5"));
  CHECK(check_section5_plan(eps).empty());

  // gamma_3 = 0 and m_1 + m_2 = 1/2 exactly
  try {
    section5_plan(E("4"), E("2"), E("2"), E("4"), Q("1/2"), Q("1/2"), Q("0"));
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(e.condition() == "m_1 + m_2 > (1 - gamma_3)/2");
  }
  CHECK_THROWS_AS(section5_plan(E("2"), E("2"), E("2"), E("2"), Q("1/2"), Q("1/2"), Q("1/2")), GammaInvalid);
  CHECK_THROWS_AS(section5_plan(E("2"), E("2"), E("2"), E("2"), Q("1"), Q("0"), Q("0")), GammaInvalid);
}

TEST_CASE("property: three-exponent corpus") {
  gen::Gen g(403);
  int eps_seen = 0;
  for (int i = 0; i < 500; ++i) {
    const gen::Section5Tuple t = gen::section5_tuple(g);
    const Section5Plan pl = section5_plan(t.q1, t.q2, t.s1, t.s2, t.g1, t.g2, t.g3);
    eps_seen += pl.eps_branch ? 1 : 0;
    CHECK(check_section5_plan(pl).empty());
    const Rational c1 = pl.theta[0] * (1 - pl.p[0].reciprocal_value());
    const Rational c2 = pl.theta[1] * (1 - pl.p[1].reciprocal_value());
    const Rational c3 = pl.theta[2] / pl.p_total.value();
    CHECK(c1 + c2 + c3 == 1);
    CHECK(c1 <= Q("1/2"));
    CHECK(c2 <= Q("1/2"));
    CHECK(c3 <= Q("1/2"));
    CHECK(pl.eta[0] + pl.eta[1] == 1);
    const ExtendedExponent qs[2] = {t.q1, t.q2}, ss[2] = {t.s1, t.s2};
    const Rational cs[2] = {c1, c2};
    for (int k = 0; k < 2; ++k) {
      CHECK(pl.eta[k] < pl.m_tilde[k]);
      const Rational lo = mn(qs[k].reciprocal_value(), ss[k].reciprocal_value());
      const Rational hi = mx(qs[k].reciprocal_value(), ss[k].reciprocal_value());
      CHECK(pl.theta[2] / pl.p[k].value() < lo);
      CHECK(hi < 1 - cs[k]);
    }
  }
  CHECK(eps_seen > 0);
}

TEST_CASE("Marcinkiewicz-Zygmund plans") {
  const MZPlan pl = mz_plan({E("3"), E("3")}, Q("3/2"));
  CHECK_FALSE(pl.base_case);
  CHECK(pl.q_total == E("3/2"));
  CHECK(pl.steps.size() == 2);
  CHECK(pl.weight_specs[0] == WeightClassSpec(E("3"), E("1")));
  for (const auto& st : pl.steps) {
    CHECK(st.range.p_minus == E("1"));
    CHECK(st.range.p_plus.is_infinite());
  }
  CHECK(mz_plan({E("3"), E("3")}, Q("2")).base_case);
  CHECK_THROWS_AS(mz_plan({E("3"), E("3")}, Q("5/2")), Infeasible);
  CHECK_THROWS_AS(mz_plan({E("3"), E("3")}, Q("1")), Infeasible);
  CHECK_THROWS_AS(mz_plan({E("1"), E("3")}, Q("3/2")), Infeasible);
  // q_j above r is fine
  CHECK_NOTHROW(mz_plan({E("5"), E("7"), E("9")}, Q("5/4")));
}

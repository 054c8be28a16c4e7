#include "extrapkit/report.hpp"

#include <typeinfo>

namespace extrapkit {

namespace {

template <typename T>
Json list(const T& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

Json doubles(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(x);
  return out;
}

std::vector<ExtendedExponent> exps_from(const Json& j) {
  std::vector<ExtendedExponent> out;
  for (const auto& e : j) out.push_back(ExtendedExponent::parse(e.get<std::string>()));
  return out;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const InfeasibleBase*>(&e)) return "InfeasibleBase";
  if (dynamic_cast<const Infeasible*>(&e)) return "Infeasible";
  if (dynamic_cast<const InvalidRange*>(&e)) return "InvalidRange";
  if (dynamic_cast<const OutOfRange*>(&e)) return "OutOfRange";
  if (dynamic_cast<const CaseUnsupported*>(&e)) return "CaseUnsupported";
  if (dynamic_cast<const GammaInvalid*>(&e)) return "GammaInvalid";
  if (dynamic_cast<const StepInvalid*>(&e)) return "StepInvalid";
  if (dynamic_cast<const SearchFailed*>(&e)) return "SearchFailed";
  if (dynamic_cast<const CertificationFailed*>(&e)) return "CertificationFailed";
  if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
  if (dynamic_cast<const TruncationInvalid*>(&e)) return "TruncationInvalid";
  if (dynamic_cast<const NormBoundTooSmall*>(&e)) return "NormBoundTooSmall";
  if (dynamic_cast<const DivergentProbe*>(&e)) return "DivergentProbe";
  if (dynamic_cast<const UnknownSpec*>(&e)) return "UnknownSpec";
  if (dynamic_cast<const UnknownSurrogate*>(&e)) return "UnknownSurrogate";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  return "Error";
}

}  // namespace

Json envelope(const std::string& command, const std::vector<std::string>& clauses, std::optional<std::uint64_t> seed,
              std::optional<Grid> grid) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["status"] = "ok";
  j["clauses"] = clauses;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["grid"] = grid ? to_json(*grid) : Json(nullptr);
  return j;
}

Json error_payload(const std::exception& e) {
  Json j;
  j["type"] = error_kind(e);
  j["message"] = e.what();
  if (const auto* inf = dynamic_cast<const Infeasible*>(&e)) j["condition"] = inf->condition();
  if (const auto* st = dynamic_cast<const StepInvalid*>(&e)) j["index"] = st->index();
  return j;
}

Json to_json(const Rational& r) { return to_string(r); }
Json to_json(const ExtendedExponent& e) { return e.str(); }

Json to_json(const WeightClassSpec& s) { return Json{{"A", s.p.str()}, {"RH", s.s.str()}}; }

Json to_json(const Grid& g) { return Json{{"L", g.L}, {"N", g.N}}; }

Json to_json(const ExtrapolationRange& r) {
  return Json{{"p_minus", r.p_minus.str()}, {"p_plus", r.p_plus.str()}, {"p0", r.p0.str()}, {"q0", r.q0.str()}};
}

Json to_json(const DualRange& d) { return Json{{"q_minus", d.q_minus.str()}, {"q_plus", d.q_plus.str()}}; }

Json to_json(const IdentityCheck& c) {
  return Json{{"name", c.name}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}, {"holds", c.holds()}};
}

Json to_json(const ProofExponents& pe) {
  Json j;
  j["case"] = to_string(pe.proof_case);
  j["p"] = pe.p.str();
  j["q"] = pe.q.str();
  j["tau"] = to_string(pe.tau);
  j["tau_prime"] = to_string(pe.tau_prime);
  j["s"] = to_string(pe.s);
  j["alpha"] = to_string(pe.alpha);
  j["phi"] = pe.phi.str();
  j["delta"] = to_string(pe.delta);
  j["epsilon"] = to_string(pe.epsilon_exp);
  j["sigma"] = to_string(pe.sigma);
  j["beta"] = pe.beta.str();
  j["gamma"] = to_string(pe.gamma);
  j["identities"] = list(pe.identities);
  return j;
}

Json to_json(const LinearStep& st) {
  return Json{{"index", st.index},     {"range", to_json(st.range)},   {"target", st.target.str()},
              {"result", st.result.str()}, {"dual", to_json(st.dual)}, {"case", to_string(st.proof_case)}};
}

Json to_json(const BHTPlan& plan) {
  Json j;
  j["q"] = list(plan.q);
  if (plan.s) j["s"] = list(*plan.s);
  j["budget"] = to_string(plan.budget);
  j["caps"] = list(plan.caps);
  j["eta"] = list(plan.eta);
  j["p_i"] = list(plan.p);
  j["p"] = plan.p_total.str();
  j["r_minus"] = list(plan.r_minus);
  j["r_plus"] = list(plan.r_plus);
  j["r_class"] = list(plan.r_class);
  j["weight_classes"] = list(plan.weight_specs);
  j["q_total"] = plan.q_total.str();
  if (plan.s_total) j["s_total"] = plan.s_total->str();
  return j;
}

Json to_json(const PowerRange& pr) {
  return Json{{"a_minus", to_string(pr.a_minus)}, {"a_plus", to_string(pr.a_plus)}, {"includes_zero", pr.includes_zero}};
}

Json to_json(const Section5Plan& plan) {
  Json j;
  j["q"] = list(plan.q);
  j["s"] = list(plan.s);
  j["gamma"] = list(plan.gamma);
  j["m"] = list(plan.m);
  j["m_tilde"] = list(plan.m_tilde);
  j["eta"] = list(plan.eta);
  j["eps_branch"] = plan.eps_branch;
  j["p_interval"] = list(plan.p_interval);
  j["free_index"] = plan.free_index;
  j["p_i"] = list(plan.p);
  j["p"] = plan.p_total.str();
  j["theta"] = list(plan.theta);
  j["r_minus"] = list(plan.r_minus);
  j["r_plus"] = list(plan.r_plus);
  j["weight_classes"] = list(plan.weight_specs);
  return j;
}

Json to_json(const MZPlan& plan) {
  Json j;
  j["q"] = list(plan.q);
  j["r"] = to_string(plan.r);
  j["base_case"] = plan.base_case;
  j["base_p"] = list(plan.base_p);
  j["weight_classes"] = list(plan.weight_specs);
  j["steps"] = list(plan.steps);
  j["q_total"] = plan.q_total.str();
  return j;
}

Json to_json(const ClassConstants& c) {
  return Json{{"depth", c.depth}, {"ap", c.ap}, {"rh", c.rh}, {"joint", c.joint}};
}

Json to_json(const DivergenceProbe& d) {
  return Json{{"joint", doubles(d.joint)}, {"growth", doubles(d.growth)}, {"divergent", d.divergent}};
}

Json to_json(const IterationReport& r) {
  Json j;
  j["K"] = r.K;
  j["tail_bound"] = r.tail_bound;
  j["input_norm"] = r.input_norm;
  j["output_norm"] = r.output_norm;
  j["norm_ratio"] = r.input_norm > 0.0 ? r.output_norm / r.input_norm : 0.0;
  j["truncation_gap"] = r.truncation_gap;
  j["a1_ratio"] = r.a1_ratio;
  j["dominates_input"] = r.dominates_input;
  return j;
}

Json to_json(const Certificate& c) {
  return Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
}

Json to_json(const WeightReport& r) {
  Json j;
  j["identities"] = list(r.identities);
  j["mu1_a1_ratio"] = r.mu1_a1;
  j["mu2_a1_ratio"] = r.mu2_a1;
  j["factorization_error"] = r.factorization_error;
  j["w_q0_bitwise"] = r.w_q0_bitwise;
  j["class"] = to_json(r.spec);
  j["constants"] = to_json(r.constants);
  j["constants_finite"] = r.constants_finite;
  return j;
}

Json to_json(const RatioReport& r) {
  Json j;
  j["name"] = r.name;
  j["seed"] = r.seed;
  j["family"] = r.family;
  j["resolutions"] = r.resolutions;
  j["sup_per_resolution"] = doubles(r.sup_per_resolution);
  j["sup_ratio"] = r.sup_ratio;
  j["stability"] = r.stability;
  j["verdict"] = to_string(r.verdict);
  j["skipped"] = r.skipped;
  Json per = Json::array();
  for (const auto& row : r.ratios) per.push_back(doubles(row));
  j["ratios"] = per;
  j["caveat"] = r.caveat;
  return j;
}

Json to_json(const TruncationStudy& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(Json{{"ncut", r.ncut}, {"norm", r.norm}, {"bound", r.bound}});
  return Json{{"rows", rows},
              {"full_norm", t.full_norm},
              {"monotone", t.monotone},
              {"bounded", t.bounded},
              {"reaches_full", t.reaches_full}};
}

Json to_json(const VerifyConfig& c) {
  Json j;
  j["target"] = c.target;
  j["q"] = list(c.q);
  j["s"] = list(c.s);
  j["t"] = list(c.t);
  j["a"] = c.a ? to_json(*c.a) : Json(nullptr);
  j["r"] = c.r ? to_json(*c.r) : Json(nullptr);
  j["weights"] = c.weights;
  j["family"] = c.family;
  j["count"] = c.count;
  j["K"] = c.K;
  j["J"] = c.J;
  j["surrogate"] = c.surrogate;
  j["seed"] = c.seed;
  j["L"] = c.L;
  j["resolutions"] = c.resolutions;
  return j;
}

VerifyConfig verify_config_from_json(const Json& j) {
  VerifyConfig c;
  c.target = j.at("target").get<std::string>();
  c.q = exps_from(j.at("q"));
  c.s = exps_from(j.at("s"));
  c.t = exps_from(j.at("t"));
  if (!j.at("a").is_null()) c.a = parse_rational(j.at("a").get<std::string>());
  if (!j.at("r").is_null()) c.r = parse_rational(j.at("r").get<std::string>());
  c.weights = j.at("weights").get<std::vector<std::string>>();
  c.family = j.at("family").get<std::string>();
  c.count = j.at("count").get<std::size_t>();
  c.K = j.at("K").get<std::size_t>();
  c.J = j.at("J").get<std::size_t>();
  c.surrogate = j.at("surrogate").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.L = j.at("L").get<double>();
  c.resolutions = j.at("resolutions").get<std::vector<std::size_t>>();
  return c;
}

}  // namespace extrapkit

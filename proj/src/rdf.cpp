#include "extrapkit/rdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extrapkit {

void IterationConfig::validate() const {
  if (K < 1) throw DomainError("iteration needs K >= 1");
  if (!(norm_bound >= 1.0) || !std::isfinite(norm_bound)) throw DomainError("norm_bound must be finite and >= 1");
  if (exponent.is_zero()) throw DomainError("iteration exponent must be positive");
}

namespace {

double max_ratio(const Eigen::ArrayXd& num, const Eigen::ArrayXd& den) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < num.size(); ++i) {
    if (num[i] <= 0.0) continue;
    if (den[i] <= 0.0) return std::numeric_limits<double>::infinity();
    r = std::max(r, num[i] / den[i]);
  }
  return r;
}

void require_nonnegative(const RealFunction& f, const char* what) {
  if ((f.values.array() < 0.0).any()) throw DomainError(std::string(what) + " must be non-negative");
}

Eigen::ArrayXd compose_w_q0(const Eigen::ArrayXd& H1, const Eigen::ArrayXd& H2, const Eigen::ArrayXd& w, double alpha,
                            double q0, double s, double q) {
  return H1.pow(-alpha * q0 / s) * H2 * w.pow(q);
}

}  // namespace

IterationReport rdf_iterate(const RealFunction& G, const IterationConfig& cfg) {
  cfg.validate();
  require_same_grid(G, cfg.weight);
  require_nonnegative(G, "iteration input");
  IterationReport rep;
  rep.K = cfg.K;
  rep.tail_bound = std::ldexp(1.0, -cfg.K);
  rep.input_norm = measure_norm(G, cfg.weight, cfg.exponent);
  rep.term_growth.push_back(1.0);

  const double B = cfg.norm_bound;
  RealFunction acc = G;
  RealFunction term = G;
  double scale = 1.0;
  for (int k = 1; k <= cfg.K; ++k) {
    term = maximal(term, cfg.maximal);
    scale /= 2.0 * B;
    const double nk = measure_norm(term, cfg.weight, cfg.exponent);
    const double growth = rep.input_norm > 0.0 ? nk / rep.input_norm : 0.0;
    rep.term_growth.push_back(growth);
    if (growth > std::pow(B, k) * (1.0 + 1e-9))
      throw NormBoundTooSmall("||M^" + std::to_string(k) + " G|| / ||G|| = " + std::to_string(growth) +
                              " exceeds norm_bound^k = " + std::to_string(std::pow(B, k)));
    if (k < cfg.K)
      acc.values += scale * term.values;
    else
      rep.truncation_gap = scale * nk;
  }
  rep.output_norm = measure_norm(acc, cfg.weight, cfg.exponent);
  rep.dominates_input = (acc.values.array() >= G.values.array()).all();
  const RealFunction Macc = maximal(acc, cfg.maximal);
  rep.a1_ratio = max_ratio(Macc.values.array(), acc.values.array());
  rep.result = std::move(acc);
  return rep;
}

double maximal_ratio(const RealFunction& f, const ExtendedExponent& p, const GridWeight& w, const MaximalOptions& opt) {
  const double den = measure_norm(f, w, p);
  if (den == 0.0) throw DomainError("maximal_ratio of a zero function");
  return measure_norm(maximal(f, opt), w, p) / den;
}

double estimate_maximal_norm(const ExtendedExponent& p, const GridWeight& w, const TestFamily& probes, double ceiling,
                             const MaximalOptions& opt) {
  if (!(ExtendedExponent(1) < p)) throw DomainError("estimate_maximal_norm needs p > 1");
  double best = 0.0;
  for (const auto& [f, g] : probes.members) {
    for (const RealFunction* u : {&f, &g}) {
      RealFunction a(u->grid, u->values.cwiseAbs());
      if (measure_norm(a, w, p) == 0.0) continue;
      const double r = maximal_ratio(a, p, w, opt);
      if (!(r <= ceiling)) throw DivergentProbe("probe ratio " + std::to_string(r) + " exceeds ceiling " + std::to_string(ceiling));
      best = std::max(best, r);
    }
  }
  return std::max(1.0, 2.0 * best);
}

bool ProofObjects::all_pass() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.pass; });
}

ProofObjects build_proof_objects(const RealFunction& f, const RealFunction& g, const GridWeight& w,
                                 const ProofExponents& pe, const ExtrapolationRange& range,
                                 const std::optional<RealFunction>& h2_in, const ProofConfig& cfg) {
  if (pe.proof_case != ProofCase::I) throw CaseUnsupported("proof objects are built for Case I only");
  require_same_grid(f, w);
  require_same_grid(g, w);
  require_nonnegative(f, "f");
  require_nonnegative(g, "g");
  const Grid& grid = w.grid;

  const double p = pe.p.to_double();
  const double q = pe.q.to_double();
  const double s = to_double(pe.s);
  const double q0 = range.q0.to_double();
  const double alpha = to_double(pe.alpha);
  const double delta = to_double(pe.delta);
  const double eps = to_double(pe.epsilon_exp);
  const double sigma = to_double(pe.sigma);
  const double beta = pe.beta.to_double();
  const double gamma = to_double(pe.gamma);
  const ExtendedExponent qs_dual = conjugate(pe.q / ExtendedExponent(pe.s));  // (q/s)'
  const double v1_exp = p * conjugate(range.p_plus / pe.p).to_double();       // p (p_+/p)'

  const Eigen::ArrayXd wv = w.values.array();
  const double nf = weighted_norm(f, w, pe.q);
  const double ng = weighted_norm(g, w, pe.p);
  if (nf == 0.0 || ng == 0.0) throw DomainError("f and g must be nonzero");

  ProofObjects po;
  const Eigen::ArrayXd f_part = f.values.array() / nf;
  const Eigen::ArrayXd g_part = g.values.array().pow(p / q) * wv.pow(p / q - 1.0) / std::pow(ng, p / q);
  po.h1 = RealFunction(grid, (f_part + g_part).matrix());
  po.h1_norm = weighted_norm(po.h1, w, pe.q);

  if (h2_in) {
    require_same_grid(*h2_in, w);
    require_nonnegative(*h2_in, "h2");
    po.h2 = *h2_in;
  } else {
    po.h2 = RealFunction(grid, (f.values.array().pow(q - s) / std::pow(nf, q - s)).matrix());
  }

  const GridWeight v1 = w.pow(v1_exp);
  const GridWeight v2 = w.pow(-sigma);
  const RealFunction G1(grid, (po.h1.values.array().pow(delta) * wv.pow(eps)).matrix());
  const RealFunction G2(grid, (po.h2.values.array().pow(beta) * wv.pow(gamma)).matrix());

  // The series inputs join the probe set so the bound covers them too.
  auto bound = [&](const std::optional<double>& given, const ExtendedExponent& e, const GridWeight& v,
                   const RealFunction& G) {
    if (given) return *given;
    TestFamily fam = make_family(cfg.probes, cfg.probe_seed, grid);
    fam.members.emplace_back(G, G);
    return estimate_maximal_norm(e, v, fam, 1e3, cfg.maximal);
  };
  const ExtendedExponent tau_e(pe.tau);
  const ExtendedExponent tau_pe(pe.tau_prime);
  po.norm_bound_1 = bound(cfg.norm_bound_1, tau_e, v1, G1);
  po.norm_bound_2 = bound(cfg.norm_bound_2, tau_pe, v2, G2);

  po.iter1 = rdf_iterate(G1, {po.norm_bound_1, cfg.K, v1, tau_e, cfg.maximal});
  po.iter2 = rdf_iterate(G2, {po.norm_bound_2, cfg.K, v2, tau_pe, cfg.maximal});
  po.mu1 = po.iter1.result;
  po.mu2 = po.iter2.result;
  po.H1 = RealFunction(grid, (po.mu1.values.array().pow(1.0 / delta) * wv.pow(-eps / delta)).matrix());
  po.H2 = RealFunction(grid, (po.mu2.values.array().pow(1.0 / beta) * wv.pow(-gamma / beta)).matrix());
  po.W_q0 = RealFunction(grid, compose_w_q0(po.H1.values.array(), po.H2.values.array(), wv, alpha, q0, s, q).matrix());
  po.W = RealFunction(grid, po.W_q0.values.array().pow(1.0 / q0).matrix());
  po.C1 = std::pow(2.0, 1.0 + 1.0 / delta);
  po.C2 = std::pow(2.0, 1.0 / beta);

  const double tol = 1.0 + cfg.slack;
  const double n1 = weighted_norm(po.H1, w, pe.q);
  po.certificates.push_back({"H1-norm", n1, po.C1, n1 <= po.C1 * tol});
  const double r_f = max_ratio(f.values.array(), po.H1.values.array() * nf);
  po.certificates.push_back({"H1-f", r_f, 1.0, r_f <= tol});
  const double r_g = max_ratio(g_part, po.H1.values.array());
  po.certificates.push_back({"H1-pt3", r_g, 1.0, r_g <= tol});
  const double n2 = measure_norm(po.H2, w.pow(q), qs_dual);
  po.certificates.push_back({"H2-norm", n2, po.C2, n2 <= po.C2 * tol});
  const double r_h = max_ratio(po.h2.values.array(), po.H2.values.array());
  po.certificates.push_back({"H2-pt", r_h, 1.0, r_h <= tol});

  if (!po.all_pass()) {
    std::string msg = "certificates failed:";
    for (const auto& c : po.certificates)
      if (!c.pass) msg += " " + c.name + " (" + std::to_string(c.lhs) + " > " + std::to_string(c.rhs) + ")";
    throw CertificationFailed(msg);
  }
  return po;
}

bool WeightReport::ok() const {
  const bool ids = std::all_of(identities.begin(), identities.end(), [](const IdentityCheck& c) { return c.holds(); });
  return ids && w_q0_bitwise && constants_finite && factorization_error < 1e-8 && std::isfinite(mu1_a1) &&
         std::isfinite(mu2_a1);
}

WeightReport verify_case1_weight(const ProofObjects& po, const ProofExponents& pe, const ExtrapolationRange& range,
                                 const GridWeight& w, int depth) {
  require_same_grid(po.W, w);
  WeightReport rep;
  rep.identities = certify_identities(range, pe);
  for (const auto& c : rep.identities)
    if (!c.holds()) throw CertificationFailed("identity " + c.name + " fails");

  const double p0 = range.p0.to_double();
  const Eigen::ArrayXd recomputed = compose_w_q0(po.H1.values.array(), po.H2.values.array(), w.values.array(),
                                                 to_double(pe.alpha), range.q0.to_double(), to_double(pe.s),
                                                 pe.q.to_double());
  rep.w_q0_bitwise = (recomputed == po.W_q0.values.array()).all();
  if (!rep.w_q0_bitwise) throw CertificationFailed("W^{q0} is not reproduced from H1, H2 and w");

  rep.mu1_a1 = max_ratio(maximal(po.mu1).values.array(), po.mu1.values.array());
  rep.mu2_a1 = max_ratio(maximal(po.mu2).values.array(), po.mu2.values.array());

  const double e2 = to_double(conjugate_reciprocal(range.p_plus / range.p0));
  const double e1 = to_double(Rational(1 - (range.p0 / range.p_minus).value()));
  const Eigen::ArrayXd lhs = po.W.values.array().pow(p0);
  const Eigen::ArrayXd rhs = po.mu2.values.array().pow(e2) * po.mu1.values.array().pow(e1);
  rep.factorization_error = ((lhs - rhs).abs() / lhs).maxCoeff();
  if (!(rep.factorization_error < 1e-8))
    throw CertificationFailed("factorization of W^{p0} off by " + std::to_string(rep.factorization_error));

  rep.spec = WeightClassSpec(range.p0 / range.p_minus, conjugate(range.p_plus / range.p0));
  rep.constants = estimate_class_constants(GridWeight(w.grid, lhs.matrix()), rep.spec, depth);
  rep.constants_finite = std::isfinite(rep.constants.ap) && std::isfinite(rep.constants.rh) &&
                         std::isfinite(rep.constants.joint);
  if (!rep.constants_finite) throw CertificationFailed("class constants of W^{p0} are not finite");
  return rep;
}

}  // namespace extrapkit

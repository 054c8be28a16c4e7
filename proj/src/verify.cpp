#include "extrapkit/verify.hpp"

#include <algorithm>
#include <cmath>

#include "extrapkit/applications.hpp"
#include "extrapkit/errors.hpp"

namespace extrapkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::BoundedStable: return "BOUNDED-STABLE";
    case Verdict::Unstable: return "UNSTABLE";
    case Verdict::Divergent: return "DIVERGENT";
  }
  return "?";
}

Verdict classify(const std::vector<double>& sups) {
  if (sups.size() < 2) return Verdict::Unstable;
  std::vector<double> change;
  for (std::size_t i = 0; i + 1 < sups.size(); ++i) change.push_back(sups[i + 1] / sups[i] - 1.0);
  for (std::size_t i = 0; i + 1 < change.size(); ++i)
    if (change[i] >= 0.5 && change[i + 1] >= 0.5) return Verdict::Divergent;
  if (std::abs(change.back()) < 0.1) return Verdict::BoundedStable;
  return Verdict::Unstable;
}

WeightDescriptor WeightDescriptor::power(const Rational& a) {
  WeightDescriptor d;
  d.kind = Kind::Power;
  d.alpha = a;
  return d;
}

WeightDescriptor WeightDescriptor::parse(const std::string& text) {
  if (text == "unit") return unit();
  if (text.rfind("power:", 0) == 0) return power(parse_rational(text.substr(6)));
  if (text.rfind("file:", 0) == 0) {
    WeightDescriptor d;
    d.kind = Kind::Samples;
    d.path = text.substr(5);
    d.samples = read_weight_csv(d.path);
    return d;
  }
  throw DomainError("weight descriptor must be unit, power:NUM/DEN or file:PATH, got '" + text + "'");
}

GridWeight WeightDescriptor::realize(const Grid& grid) const {
  switch (kind) {
    case Kind::Unit: return GridWeight::unit(grid);
    case Kind::Power: return GridWeight::power(grid, to_double(alpha));
    case Kind::Samples:
      if (!samples || !(samples->grid == grid)) throw GridMismatch("weight file " + path + " does not match the grid");
      return *samples;
  }
  return GridWeight::unit(grid);
}

std::string WeightDescriptor::str() const {
  switch (kind) {
    case Kind::Unit: return "unit";
    case Kind::Power: return "power:" + to_string(alpha);
    case Kind::Samples: return "file:" + path;
  }
  return "?";
}

std::array<WeightDescriptor, 2> per_factor_power_weights(const Rational& a, const ExtendedExponent& q1,
                                                         const ExtendedExponent& q2) {
  return {WeightDescriptor::power(Rational(-a * q1.reciprocal_value())),
          WeightDescriptor::power(Rational(-a * q2.reciprocal_value()))};
}

BilinearOperator product_operator() {
  return [](const RealFunction& f, const RealFunction& g) {
    require_same_grid(f, g);
    return RealFunction(f.grid, f.values.cwiseProduct(g.values));
  };
}

BilinearOperator bht_operator(Truncation tr) {
  return [tr](const RealFunction& f, const RealFunction& g) { return bht(f, g, tr); };
}

BilinearOperator tensor_hilbert_operator() {
  return [](const RealFunction& f, const RealFunction& g) {
    return RealFunction(f.grid, hilbert(f).values.cwiseProduct(hilbert(g).values));
  };
}

BilinearOperator mz_surrogate(const std::string& name) {
  if (name == "tensor-hilbert") return tensor_hilbert_operator();
  if (name == "product-identity") return product_operator();
  throw UnknownSurrogate("unknown surrogate '" + name + "'");
}

Eigen::ArrayXd lp_aggregate(const std::vector<Eigen::ArrayXd>& parts, const ExtendedExponent& s) {
  if (parts.empty()) throw DomainError("nothing to aggregate");
  if (parts.size() == 1) return parts.front().abs();
  if (s.is_infinite()) {
    Eigen::ArrayXd m = parts.front().abs();
    for (std::size_t i = 1; i < parts.size(); ++i) m = m.max(parts[i].abs());
    return m;
  }
  const double e = s.to_double();
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(parts.front().size());
  for (const auto& u : parts) acc += u.abs().pow(e);
  return acc.pow(1.0 / e);
}

namespace {

using Members = std::vector<std::pair<RealFunction, RealFunction>>;

struct Level {
  Grid grid;
  GridWeight w1, w2, w;
  Members members;
};

// Evaluates `unit` on consecutive runs of `group` members at every
// resolution; unit returns a negative value for a zero denominator.
template <typename Unit>
RatioReport run_sweep(const std::string& name, const SweepConfig& cfg, const WeightDescriptor& d1,
                      const WeightDescriptor& d2, std::size_t group, Unit&& unit) {
  if (group == 0) throw DomainError("group size must be positive");
  if (cfg.resolutions.empty()) throw DomainError("no resolutions given");
  RatioReport rep;
  rep.name = name;
  rep.seed = cfg.seed;
  rep.family = cfg.family.name;
  rep.resolutions = cfg.resolutions;
  for (std::size_t N : cfg.resolutions) {
    Level lv;
    lv.grid = Grid{cfg.L, N};
    lv.grid.validate();
    lv.w1 = d1.realize(lv.grid);
    lv.w2 = d2.realize(lv.grid);
    lv.w = GridWeight(lv.grid, lv.w1.values.cwiseProduct(lv.w2.values));
    TestFamily fam = make_family(cfg.family, cfg.seed, lv.grid);
    lv.members = std::move(fam.members);
    if (cfg.scale != 1.0)
      for (auto& [f, g] : lv.members) {
        f.values *= cfg.scale;
        g.values *= cfg.scale;
      }
    std::vector<double> ratios;
    std::size_t skipped = 0;
    for (std::size_t b = 0; b + group <= lv.members.size(); b += group) {
      const double r = unit(lv, b);
      if (r < 0.0)
        ++skipped;
      else
        ratios.push_back(r);
    }
    rep.sup_per_resolution.push_back(ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end()));
    rep.ratios.push_back(std::move(ratios));
    rep.skipped.push_back(skipped);
  }
  rep.sup_ratio = rep.sup_per_resolution.back();
  const auto& sp = rep.sup_per_resolution;
  rep.stability = sp.size() >= 2 ? std::abs(sp.back() / sp[sp.size() - 2] - 1.0) : 0.0;
  rep.verdict = classify(sp);
  return rep;
}

ExtendedExponent harmonic(const ExtendedExponent& a, const ExtendedExponent& b) {
  return ExtendedExponent::from_reciprocal(Rational(a.reciprocal_value() + b.reciprocal_value()));
}

double quotient(double num, double d1, double d2) {
  if (d1 == 0.0 || d2 == 0.0) return -1.0;
  return num / (d1 * d2);
}

}  // namespace

RatioReport ratio_sweep(const BilinearOperator& op, const ExtendedExponent& q1, const ExtendedExponent& q2,
                        const ExtendedExponent& q, const WeightDescriptor& w1, const WeightDescriptor& w2,
                        const SweepConfig& cfg) {
  return run_sweep("ratio", cfg, w1, w2, 1, [&](const Level& lv, std::size_t b) {
    const auto& [f, g] = lv.members[b];
    const double d1 = weighted_norm(f, lv.w1, q1);
    const double d2 = weighted_norm(g, lv.w2, q2);
    if (d1 == 0.0 || d2 == 0.0) return -1.0;
    return quotient(weighted_norm(op(f, g), lv.w, q), d1, d2);
  });
}

RatioReport vv_sweep(const ExtendedExponent& q1, const ExtendedExponent& q2, const ExtendedExponent& s1,
                     const ExtendedExponent& s2, const WeightDescriptor& w1, const WeightDescriptor& w2,
                     std::size_t K, const SweepConfig& cfg, const BilinearOperator& op) {
  const ExtendedExponent q = harmonic(q1, q2);
  const ExtendedExponent s = harmonic(s1, s2);
  return run_sweep("vv", cfg, w1, w2, K, [&](const Level& lv, std::size_t b) {
    std::vector<Eigen::ArrayXd> fs, gs, outs;
    for (std::size_t k = 0; k < K; ++k) {
      const auto& [f, g] = lv.members[b + k];
      fs.push_back(f.values.array());
      gs.push_back(g.values.array());
    }
    const RealFunction F(lv.grid, lp_aggregate(fs, s1).matrix());
    const RealFunction G(lv.grid, lp_aggregate(gs, s2).matrix());
    const double d1 = weighted_norm(F, lv.w1, q1);
    const double d2 = weighted_norm(G, lv.w2, q2);
    if (d1 == 0.0 || d2 == 0.0) return -1.0;
    for (std::size_t k = 0; k < K; ++k) {
      const auto& [f, g] = lv.members[b + k];
      outs.push_back(op(f, g).values.array());
    }
    const RealFunction T(lv.grid, lp_aggregate(outs, s).matrix());
    return quotient(weighted_norm(T, lv.w, q), d1, d2);
  });
}

RatioReport iterated_vv_sweep(const std::array<ExtendedExponent, 2>& ts, const std::array<ExtendedExponent, 2>& ss,
                              const std::array<ExtendedExponent, 2>& qs, const WeightDescriptor& w1,
                              const WeightDescriptor& w2, std::size_t J, std::size_t K, const SweepConfig& cfg,
                              const BilinearOperator& op) {
  if (J == 0 || K == 0) throw DomainError("J and K must be positive");
  const ExtendedExponent q = harmonic(qs[0], qs[1]);
  const ExtendedExponent s = harmonic(ss[0], ss[1]);
  const ExtendedExponent t = harmonic(ts[0], ts[1]);
  return run_sweep("iterated", cfg, w1, w2, J * K, [&](const Level& lv, std::size_t b) {
    std::vector<Eigen::ArrayXd> Fj, Gj, Tj;
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<Eigen::ArrayXd> fs, gs, outs;
      for (std::size_t k = 0; k < K; ++k) {
        const auto& [f, g] = lv.members[b + j * K + k];
        fs.push_back(f.values.array());
        gs.push_back(g.values.array());
        outs.push_back(op(f, g).values.array());
      }
      Fj.push_back(lp_aggregate(fs, ss[0]));
      Gj.push_back(lp_aggregate(gs, ss[1]));
      Tj.push_back(lp_aggregate(outs, s));
    }
    const RealFunction F(lv.grid, lp_aggregate(Fj, ts[0]).matrix());
    const RealFunction G(lv.grid, lp_aggregate(Gj, ts[1]).matrix());
    const RealFunction T(lv.grid, lp_aggregate(Tj, t).matrix());
    return quotient(weighted_norm(T, lv.w, q), weighted_norm(F, lv.w1, qs[0]), weighted_norm(G, lv.w2, qs[1]));
  });
}

RatioReport mz_sweep(const std::array<ExtendedExponent, 2>& qjs, const Rational& r,
                     const std::array<WeightDescriptor, 2>& wjs, std::size_t K, const SweepConfig& cfg,
                     const std::string& surrogate) {
  const bool hilbert_factors = surrogate == "tensor-hilbert";
  if (!hilbert_factors && surrogate != "product-identity")
    throw UnknownSurrogate("unknown surrogate '" + surrogate + "'");
  mz_plan({qjs[0], qjs[1]}, r);
  const ExtendedExponent re(r);
  const ExtendedExponent q = harmonic(qjs[0], qjs[1]);
  // T(f, g) = Lf * Lg with L the identity or H, so each factor is mapped once.
  return run_sweep("mz/" + surrogate, cfg, wjs[0], wjs[1], K, [&](const Level& lv, std::size_t b) {
    std::vector<Eigen::ArrayXd> fs, gs, Lf, Lg, outs;
    for (std::size_t k = 0; k < K; ++k) {
      const auto& [f, g] = lv.members[b + k];
      fs.push_back(f.values.array());
      gs.push_back(g.values.array());
      Lf.push_back(hilbert_factors ? Eigen::ArrayXd(hilbert(f).values.array()) : Eigen::ArrayXd(f.values.array()));
      Lg.push_back(hilbert_factors ? Eigen::ArrayXd(hilbert(g).values.array()) : Eigen::ArrayXd(g.values.array()));
    }
    for (std::size_t k1 = 0; k1 < K; ++k1)
      for (std::size_t k2 = 0; k2 < K; ++k2) outs.push_back(Lf[k1] * Lg[k2]);
    const RealFunction F(lv.grid, lp_aggregate(fs, re).matrix());
    const RealFunction G(lv.grid, lp_aggregate(gs, re).matrix());
    const RealFunction T(lv.grid, lp_aggregate(outs, re).matrix());
    return quotient(weighted_norm(T, lv.w, q), weighted_norm(F, lv.w1, qjs[0]), weighted_norm(G, lv.w2, qjs[1]));
  });
}

TruncationStudy truncation_study(const RealFunction& f, const GridWeight& w, const ExtendedExponent& q,
                                 const std::vector<double>& ncuts) {
  require_same_grid(f, w);
  if (q.is_zero() || q.is_infinite()) throw DomainError("truncation study needs 0 < q < inf");
  for (std::size_t i = 1; i < ncuts.size(); ++i)
    if (!(ncuts[i] > ncuts[i - 1])) throw DomainError("Ncuts must be increasing");
  TruncationStudy st;
  st.full_norm = weighted_norm(f, w, q);
  const double e = q.to_double();
  const double h = f.grid.h();
  const Eigen::ArrayXd wq = w.values.array().pow(e);
  for (double n : ncuts) {
    TruncationRow row;
    row.ncut = n;
    row.norm = weighted_norm(truncate(f, n), w, q);
    double mass = 0.0;
    for (std::size_t j = 0; j < f.grid.N; ++j)
      if (std::abs(f.grid.x(j)) < n) mass += wq[static_cast<Eigen::Index>(j)] * h;
    row.bound = n * std::pow(mass, 1.0 / e);
    if (!(row.norm <= row.bound * (1.0 + 1e-12))) st.bounded = false;
    if (!st.rows.empty() && row.norm < st.rows.back().norm) st.monotone = false;
    st.rows.push_back(row);
  }
  if (!st.rows.empty()) {
    const double top = f.values.cwiseAbs().maxCoeff();
    const auto& last = st.rows.back();
    st.reaches_full = last.ncut >= std::max(top, f.grid.L) && last.norm == st.full_norm;
  }
  return st;
}

}  // namespace extrapkit

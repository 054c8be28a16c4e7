// extrapkit command-line driver. Reports are JSON on stdout; usage errors go
// to stderr with exit code 1, plan and certification failures still print a
// report and exit with 2.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "extrapkit/applications.hpp"
#include "extrapkit/extrapolation.hpp"
#include "extrapkit/family.hpp"
#include "extrapkit/operators.hpp"
#include "extrapkit/rdf.hpp"
#include "extrapkit/report.hpp"
#include "extrapkit/verify.hpp"
#include "extrapkit/weights.hpp"

using namespace extrapkit;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExtendedExponent exp_arg(const std::string& text, const std::string& flag) {
  try {
    return ExtendedExponent::parse(text);
  } catch (const DomainError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

Rational rat_arg(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const DomainError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<ExtendedExponent> exp_list(const std::string& text, const std::string& flag) {
  std::vector<ExtendedExponent> out;
  for (const auto& s : split(text)) out.push_back(exp_arg(s, flag));
  if (out.empty()) throw UsageError("--" + flag + " is empty");
  return out;
}

std::vector<std::size_t> size_list(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoul(s, &pos));
      if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw UsageError("--" + flag + ": '" + s + "' is not a size");
    }
  }
  if (out.empty()) throw UsageError("--" + flag + " is empty");
  return out;
}

std::vector<double> double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& s : split(text)) {
    try {
      out.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw UsageError("--" + flag + ": '" + s + "' is not a number");
    }
  }
  return out;
}

WeightDescriptor weight_arg(const std::string& text, const std::string& flag) {
  try {
    return WeightDescriptor::parse(text);
  } catch (const DomainError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

Grid grid_arg(double L, std::size_t N) {
  Grid g{L, N};
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return g;
}

struct Run {
  std::string command;
  std::vector<std::string> clauses;
  std::optional<std::uint64_t> seed;
  std::optional<Grid> grid;
  std::string out_path;
  bool emitted = false;  // body already wrote its own stdout output
};

// Runs body inside the report envelope and maps failures to exit codes.
int execute(Run run, const std::function<Json(Run&)>& body) {
  Json result;
  std::optional<Json> error;
  std::string status = "ok";
  int code = 0;
  try {
    result = body(run);
  } catch (const UsageError&) {
    throw;
  } catch (const PlanError& e) {
    status = "infeasible";
    if (dynamic_cast<const CertificationFailed*>(&e)) status = "certification-failed";
    error = error_payload(e);
    code = 2;
  } catch (const Error& e) {
    status = "error";
    error = error_payload(e);
    code = 2;
  }
  if (run.emitted) return code;
  Json rep = envelope(run.command, run.clauses, run.seed, run.grid);
  rep["status"] = status;
  if (error) {
    rep["reason"] = (*error)["message"];
    rep["error"] = *error;
  } else {
    rep["result"] = result;
  }
  const std::string text = rep.dump(2);
  std::cout << text << "\n";
  if (!run.out_path.empty()) {
    std::ofstream out(run.out_path);
    if (!out) throw UsageError("cannot write " + run.out_path);
    out << text << "\n";
  }
  return code;
}

RealFunction family_member(const std::string& family, std::uint64_t seed, std::size_t index, const Grid& grid,
                           bool second) {
  FamilySpec spec;
  spec.name = family;
  spec.count = index + 1;
  TestFamily fam = make_family(spec, seed, grid);
  if (index >= fam.members.size()) throw UsageError("family has no member " + std::to_string(index));
  return second ? fam.members[index].second : fam.members[index].first;
}

RatioReport run_verify(const VerifyConfig& c) {
  SweepConfig sc;
  sc.L = c.L;
  sc.resolutions = c.resolutions;
  sc.family.name = c.family;
  sc.family.count = c.count;
  sc.seed = c.seed;
  auto weights = [&](const std::vector<ExtendedExponent>& q) -> std::array<WeightDescriptor, 2> {
    if (c.a) return per_factor_power_weights(*c.a, q.at(0), q.at(1));
    if (c.weights.size() != 2) throw UsageError("two weight descriptors are needed");
    return {weight_arg(c.weights[0], "w1"), weight_arg(c.weights[1], "w2")};
  };
  if (c.q.size() != 2) throw UsageError("two q exponents are needed");
  const auto w = weights(c.q);
  if (c.target == "bht") {
    const ExtendedExponent q = ExtendedExponent::from_reciprocal(Rational(c.q[0].reciprocal_value() + c.q[1].reciprocal_value()));
    return ratio_sweep(bht_operator(), c.q[0], c.q[1], q, w[0], w[1], sc);
  }
  if (c.target == "vv") {
    if (c.s.size() != 2) throw UsageError("two s exponents are needed");
    bht_vv_plan(c.q[0], c.q[1], c.s[0], c.s[1]);
    return vv_sweep(c.q[0], c.q[1], c.s[0], c.s[1], w[0], w[1], c.K, sc);
  }
  if (c.target == "iterated") {
    if (c.s.size() != 2 || c.t.size() != 2) throw UsageError("two s and two t exponents are needed");
    bht_vv_plan(c.q[0], c.q[1], c.s[0], c.s[1]);
    bht_vv_plan(c.q[0], c.q[1], c.t[0], c.t[1]);
    return iterated_vv_sweep({c.t[0], c.t[1]}, {c.s[0], c.s[1]}, {c.q[0], c.q[1]}, w[0], w[1], c.J, c.K, sc);
  }
  if (c.target == "mz") {
    if (!c.r) throw UsageError("mz needs --r");
    return mz_sweep({c.q[0], c.q[1]}, *c.r, w, c.K, sc, c.surrogate);
  }
  throw UsageError("unknown verification target '" + c.target + "'");
}

void write_ratio_csv(const std::string& path, const RatioReport& r) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << "N,member,ratio\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.ratios.size(); ++i)
    for (std::size_t m = 0; m < r.ratios[i].size(); ++m) out << r.resolutions[i] << "," << m << "," << r.ratios[i][m] << "\n";
}

VerifyConfig load_plan_file(const std::string& path, const std::string& target) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read plan file " + path);
  Json j;
  try {
    j = Json::parse(in);
    const Json& node = j.contains("result") ? j.at("result").at("verification") : j.at("verification");
    VerifyConfig c = verify_config_from_json(node);
    if (c.target != target) throw UsageError("plan file targets '" + c.target + "', not '" + target + "'");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("plan file " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extrapkit: limited-range off-diagonal extrapolation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "Also write the JSON report to this file");

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> fn) { sub->callback([&action, fn] { action = fn; }); };

  // Shared option storage; each subcommand reads only what it registered.
  std::string pm, pp, p0, q0, p, q1 = "2", q2 = "2", s1, s2, t1, t2, g1, g2, g3, pfree, eta1, eta2, a, r, qlist;
  std::string alpha, ap = "2", rh = "1", wdesc = "unit", w1 = "unit", w2 = "unit", family = "smooth-bumps";
  std::string ns = "4096,8192", ncuts = "1,2,4,8,16", op = "hilbert", fpath, gpath, csv_path, plan_file, trace, trace_out = "trace.csv";
  std::string surrogate = "tensor-hilbert", mode = "fast", format = "csv", case_name = "I";
  double L = 8.0, tmin = 0.0, tmax = 0.0;
  std::size_t N = 4096, count = 16, K = 0, J = 1, member = 0;
  std::uint64_t seed = 7;
  int depth = 10, budget = 24, kterms = 24, probe_start = 0;

  auto grid_opts = [&](CLI::App* sub) {
    sub->add_option("--L", L, "Half-width of the grid interval");
    sub->add_option("--N", N, "Number of grid cells (power of two)");
  };

  // ---- plan
  auto* plan = app.add_subcommand("plan", "Exact exponent planning");
  plan->require_subcommand(1);

  auto* pe_cmd = plan->add_subcommand("extrapolate", "Limited-range off-diagonal extrapolation");
  pe_cmd->add_option("--pm", pm, "p_-")->required();
  pe_cmd->add_option("--pp", pp, "p_+")->required();
  pe_cmd->add_option("--p0", p0, "p0")->required();
  pe_cmd->add_option("--q0", q0, "q0")->required();
  pe_cmd->add_option("--p", p, "target p")->required();
  pe_cmd->add_option("--w", wdesc, "weight w (needed when p_- = 0)");
  pe_cmd->add_option("--budget", budget, "openness search budget");
  grid_opts(pe_cmd);
  bind(pe_cmd, [&] {
    return execute({"plan extrapolate", {"range-validity", "case-select", "s1=s2", "exp1", "exp2", "exp3"}, {}, {}, out_path},
                    [&](Run& run) {
      const ExtrapolationRange range =
          make_range(exp_arg(pm, "pm"), exp_arg(pp, "pp"), exp_arg(p0, "p0"), exp_arg(q0, "q0"));
      const ExtendedExponent pv = exp_arg(p, "p");
      Json j;
      j["range"] = to_json(range);
      j["case"] = to_string(case_select(range));
      j["dual"] = to_json(dual_range(range));
      j["q"] = target_exponent(pv, range).str();
      ExtrapolationRange used = range;
      if (case_select(range) == ProofCase::IV) {
        const Grid grid = grid_arg(L, N);
        run.grid = grid;
        run.clauses.push_back("openness");
        const GridWeight wp = weight_arg(wdesc, "w").realize(grid).pow(pv.to_double());
        const Case4Reduction red = reduce_case4(range, pv, wp, budget);
        j["reduction"] = Json{{"probe_eps", red.probe_eps.str()}, {"eps", red.eps.str()},
                              {"range", to_json(red.range)}, {"case", to_string(red.reduced_case)}};
        used = red.range;
      }
      j["proof"] = to_json(proof_exponents(used, pv));
      return j;
    });
  });

  auto plan_verification_opts = [&](CLI::App* sub) {
    sub->add_option("--a", a, "power-weight parameter carried to verification");
    sub->add_option("--family", family, "verification family");
    sub->add_option("--count", count, "verification family size");
    sub->add_option("--seed", seed, "verification seed");
    sub->add_option("--Ns", ns, "verification resolutions, comma separated");
    sub->add_option("--L", L, "verification grid half-width");
  };
  auto base_config = [&](const std::string& target) {
    VerifyConfig c;
    c.target = target;
    if (!a.empty()) c.a = rat_arg(a, "a");
    c.family = family;
    c.count = count;
    c.seed = seed;
    c.L = L;
    c.resolutions = size_list(ns, "Ns");
    return c;
  };

  auto* pb = plan->add_subcommand("bht", "Exponents for the weighted bilinear Hilbert transform");
  pb->add_option("--q1", q1, "required unless --emit csv");
  pb->add_option("--q2", q2, "required unless --emit csv");
  pb->add_option("--s1", s1, "vector-valued: s_1 (with --s2)");
  pb->add_option("--s2", s2, "vector-valued: s_2 (with --s1)");
  pb->add_option("--eta1", eta1, "override eta_1");
  pb->add_option("--eta2", eta2, "override eta_2");
  std::string emit = "json";
  int steps = 8;
  pb->add_option("--emit", emit, "json, or csv for a range table over 1/q_i = k/steps");
  pb->add_option("--steps", steps, "grid size for --emit csv");
  plan_verification_opts(pb);
  bind(pb, [&] {
    if (emit != "json" && emit != "csv") throw UsageError("--emit must be json or csv");
    if (s1.empty() != s2.empty()) throw UsageError("--s1 and --s2 go together");
    if (emit == "csv") {
      if (steps < 2) throw UsageError("--steps must be at least 2");
      std::cout << "q1,q2,status,p1,p2,eta1,eta2,a_minus,a_plus\n";
      for (int k1 = 1; k1 < steps; ++k1)
        for (int k2 = 1; k2 < steps; ++k2) {
          const auto e1 = ExtendedExponent::from_reciprocal(Rational(k1, steps));
          const auto e2 = ExtendedExponent::from_reciprocal(Rational(k2, steps));
          std::cout << e1.str() << "," << e2.str() << ",";
          try {
            BHTPlan pl;
            PowerRange pr;
            if (s1.empty()) {
              pl = bht_plan(e1, e2);
              pr = bht_power_range(e1, e2);
            } else {
              const ExtendedExponent f1 = exp_arg(s1, "s1"), f2 = exp_arg(s2, "s2");
              pl = bht_vv_plan(e1, e2, f1, f2);
              pr = bht_vv_power_range(e1, e2, f1, f2);
            }
            std::cout << "ok," << pl.p[0].str() << "," << pl.p[1].str() << "," << to_string(pl.eta[0]) << ","
                      << to_string(pl.eta[1]) << "," << to_string(pr.a_minus) << "," << to_string(pr.a_plus) << "\n";
          } catch (const PlanError&) {
            std::cout << "infeasible,,,,,,\n";
          }
        }
      return 0;
    }
    if (pb->count("--q1") == 0 || pb->count("--q2") == 0) throw UsageError("--q1 and --q2 are required");
    if (!s1.empty()) {
      return execute({"plan bht", {"vv-restriction", "bht-eta-rule", "bht-vv-power-range"}, seed, {}, out_path},
                     [&](Run&) {
        const ExtendedExponent e1 = exp_arg(q1, "q1"), e2 = exp_arg(q2, "q2"), f1 = exp_arg(s1, "s1"),
                               f2 = exp_arg(s2, "s2");
        Json j = to_json(bht_vv_plan(e1, e2, f1, f2));
        j["power_range"] = to_json(bht_vv_power_range(e1, e2, f1, f2));
        VerifyConfig c = base_config("vv");
        c.q = {e1, e2};
        c.s = {f1, f2};
        c.K = K == 0 ? 8 : K;
        j["verification"] = to_json(c);
        return j;
      });
    }
    return execute({"plan bht", {"bht-eta-rule", "bht-class-equivalence", "bht-power-range"}, seed, {}, out_path},
                   [&](Run&) {
      const ExtendedExponent e1 = exp_arg(q1, "q1"), e2 = exp_arg(q2, "q2");
      const BHTPlan pl = (eta1.empty() && eta2.empty())
                             ? bht_plan(e1, e2)
                             : bht_plan_with_eta(e1, e2, std::nullopt, {rat_arg(eta1, "eta1"), rat_arg(eta2, "eta2")});
      Json j = to_json(pl);
      j["power_range"] = to_json(bht_power_range(e1, e2));
      VerifyConfig c = base_config("bht");
      c.q = {e1, e2};
      j["verification"] = to_json(c);
      return j;
    });
  });

  auto* pbv = plan->add_subcommand("bht-vv", "Vector-valued bilinear Hilbert transform exponents");
  pbv->add_option("--q1", q1)->required();
  pbv->add_option("--q2", q2)->required();
  pbv->add_option("--s1", s1)->required();
  pbv->add_option("--s2", s2)->required();
  pbv->add_option("--K", K, "sequence length carried to verification");
  plan_verification_opts(pbv);
  bind(pbv, [&] {
    return execute({"plan bht-vv", {"vv-restriction", "bht-eta-rule", "bht-vv-power-range"}, seed, {}, out_path},
                   [&](Run&) {
      const ExtendedExponent e1 = exp_arg(q1, "q1"), e2 = exp_arg(q2, "q2"), f1 = exp_arg(s1, "s1"), f2 = exp_arg(s2, "s2");
      Json j = to_json(bht_vv_plan(e1, e2, f1, f2));
      j["power_range"] = to_json(bht_vv_power_range(e1, e2, f1, f2));
      VerifyConfig c = base_config("vv");
      c.q = {e1, e2};
      c.s = {f1, f2};
      c.K = K == 0 ? 8 : K;
      j["verification"] = to_json(c);
      return j;
    });
  });

  auto* p5 = plan->add_subcommand("section5", "Three-exponent system with gamma weights");
  p5->add_option("--q1", q1)->required();
  p5->add_option("--q2", q2)->required();
  p5->add_option("--s1", s1)->required();
  p5->add_option("--s2", s2)->required();
  p5->add_option("--g1", g1)->required();
  p5->add_option("--g2", g2)->required();
  p5->add_option("--g3", g3)->required();
  p5->add_option("--p-free", pfree, "choice of the free p_i inside its interval");
  bind(p5, [&] {
    return execute({"plan section5", {"new-cond-vv:1", "new-cond-vv:2", "p1-2-3:conds", "needed-finish"}, {}, {}, out_path},
                   [&](Run&) {
      std::optional<Rational> fp;
      if (!pfree.empty()) fp = rat_arg(pfree, "p-free");
      return to_json(section5_plan(exp_arg(q1, "q1"), exp_arg(q2, "q2"), exp_arg(s1, "s1"), exp_arg(s2, "s2"),
                                   rat_arg(g1, "g1"), rat_arg(g2, "g2"), rat_arg(g3, "g3"), fp));
    });
  });

  auto* pmz = plan->add_subcommand("mz", "Marcinkiewicz-Zygmund extrapolation plan");
  pmz->add_option("--q", qlist, "comma-separated q_j")->required();
  pmz->add_option("--r", r)->required();
  pmz->add_option("--K", K, "sequence length carried to verification");
  pmz->add_option("--surrogate", surrogate, "tensor-hilbert or product-identity");
  plan_verification_opts(pmz);
  bind(pmz, [&] {
    return execute({"plan mz", {"mz-hypotheses", "multilinear-steps"}, seed, {}, out_path}, [&](Run&) {
      const auto qs = exp_list(qlist, "q");
      const Rational rv = rat_arg(r, "r");
      Json j = to_json(mz_plan(qs, rv));
      if (qs.size() == 2) {
        VerifyConfig c = base_config("mz");
        c.q = qs;
        c.r = rv;
        c.K = K == 0 ? 4 : K;
        c.surrogate = surrogate;
        j["verification"] = to_json(c);
      }
      return j;
    });
  });

  // ---- weights
  auto* weights = app.add_subcommand("weights", "Weight classes and constants");
  weights->require_subcommand(1);
  auto* wc = weights->add_subcommand("check", "Closed-form class membership of |x|^alpha");
  wc->add_option("--alpha", alpha)->required();
  wc->add_option("--ap", ap, "A_p index");
  wc->add_option("--rh", rh, "RH_s index");
  bind(wc, [&] {
    return execute({"weights check", {"power-weight-class"}, {}, {}, out_path}, [&](Run&) {
      const PowerWeight w{rat_arg(alpha, "alpha")};
      const WeightClassSpec spec(exp_arg(ap, "ap"), exp_arg(rh, "rh"));
      Json j;
      j["alpha"] = to_string(w.alpha);
      j["class"] = to_json(spec);
      j["member"] = power_in_class(w, spec);
      j["reasons"] = power_class_reasons(w, spec);
      j["joint_index"] = cjn_index(spec.p, spec.s).str();
      return j;
    });
  });

  auto* we = weights->add_subcommand("estimate", "Dyadic estimates of class constants");
  std::string wfile;
  we->add_option("--w", wdesc, "weight descriptor");
  we->add_option("--file", wfile, "CSV weight samples x,value (same as --w file:PATH)");
  we->add_option("--ap", ap, "A_p index");
  we->add_option("--rh", rh, "RH_s index");
  we->add_option("--depth", depth, "finest dyadic depth");
  we->add_option("--probe-start", probe_start, "also run a divergence probe from this depth");
  grid_opts(we);
  bind(we, [&] {
    if (!wfile.empty()) wdesc = "file:" + wfile;
    const WeightDescriptor wd = weight_arg(wdesc, "w");
    const Grid grid = wd.samples ? wd.samples->grid : grid_arg(L, N);
    return execute({"weights estimate", {"class-constants"}, {}, grid, out_path}, [&](Run&) {
      const GridWeight w = wd.realize(grid);
      const WeightClassSpec spec(exp_arg(ap, "ap"), exp_arg(rh, "rh"));
      Json j;
      j["weight"] = wdesc;
      j["class"] = to_json(spec);
      j["table"] = Json::array();
      for (const auto& c : class_constant_table(w, spec, depth)) j["table"].push_back(to_json(c));
      if (probe_start > 0) j["divergence"] = to_json(divergence_probe(w, spec, probe_start));
      return j;
    });
  });

  // ---- operator
  auto* oper = app.add_subcommand("operator", "Discrete operators");
  oper->require_subcommand(1);
  auto* oa = oper->add_subcommand("apply", "Apply an operator to sampled functions");
  oa->add_option("--op", op, "hilbert | maximal | bht | product");
  oa->add_option("--in,--f", fpath, "CSV file x,re[,im]; a family member is used when absent");
  oa->add_option("--in2,--g", gpath, "second argument for bht/product");
  oa->add_option("--format", format, "csv (samples on stdout) or json (summary report)");
  oa->add_option("--family", family);
  oa->add_option("--seed", seed);
  oa->add_option("--member", member);
  oa->add_option("--tmin", tmin, "bht truncation t_min (0 selects h)");
  oa->add_option("--tmax", tmax, "bht truncation t_max (0 selects L/2)");
  oa->add_option("--mode", mode, "maximal mode: fast or reference");
  oa->add_option("--csv", csv_path, "write the output samples here");
  grid_opts(oa);
  bind(oa, [&] {
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    const bool to_stdout = format == "csv";
    return execute({"operator apply", {"operator-" + op}, seed, {}, out_path}, [&](Run& run) {
      RealFunction f, g;
      if (!fpath.empty()) {
        f = real_part(read_function_csv(fpath));
        g = gpath.empty() ? f : real_part(read_function_csv(gpath));
      } else {
        const Grid grid = grid_arg(L, N);
        f = family_member(family, seed, member, grid, false);
        g = family_member(family, seed, member, grid, true);
      }
      run.grid = f.grid;
      RealFunction outf;
      if (op == "hilbert") {
        outf = hilbert(f);
      } else if (op == "maximal") {
        if (mode != "fast" && mode != "reference") throw UsageError("--mode must be fast or reference");
        outf = maximal(f, {mode == "fast" ? MaximalMode::Fast : MaximalMode::Reference});
      } else if (op == "bht") {
        outf = bht(f, g, {tmin, tmax});
      } else if (op == "product") {
        outf = product_operator()(f, g);
      } else {
        throw UsageError("--op must be hilbert, maximal, bht or product");
      }
      if (!csv_path.empty()) write_function_csv(csv_path, to_complex(outf), false);
      if (to_stdout) {
        std::cout << "x,value\n" << std::setprecision(17);
        for (std::size_t i = 0; i < outf.grid.N; ++i)
          std::cout << outf.grid.x(i) << "," << outf.values[static_cast<Eigen::Index>(i)] << "\n";
        run.emitted = true;
        return Json();
      }
      const GridWeight one = GridWeight::unit(outf.grid);
      return Json{{"op", op},
                  {"l2_norm", weighted_norm(outf, one, ExtendedExponent(2))},
                  {"sup", outf.values.cwiseAbs().maxCoeff()},
                  {"csv", csv_path}};
    });
  });

  // ---- rdf
  auto* rdf = app.add_subcommand("rdf", "Rubio de Francia constructions");
  rdf->require_subcommand(1);
  auto* rd = rdf->add_subcommand("demo", "Build and certify the Case I proof objects");
  rd->add_option("--case", case_name, "proof case (I)");
  rd->add_option("--w", wdesc, "weight descriptor");
  rd->add_option("--pm", pm)->required();
  rd->add_option("--pp", pp)->required();
  rd->add_option("--p0", p0)->required();
  rd->add_option("--q0", q0)->required();
  rd->add_option("--p", p)->required();
  rd->add_option("--seed", seed);
  rd->add_option("--K", kterms, "series terms");
  rd->add_option("--depth", depth, "depth for the constants of W^{p0}");
  rd->add_option("--trace", trace, "dump h1,H1,h2,H2,mu1,mu2,W (format: csv)");
  rd->add_option("--trace-out", trace_out, "trace file");
  grid_opts(rd);
  bind(rd, [&] {
    const Grid grid = grid_arg(L, N);
    if (!trace.empty() && trace != "csv") throw UsageError("--trace supports csv only");
    return execute({"rdf demo", {"H1-norm", "H1-f", "H1-pt3", "H2-norm", "H2-pt", "Ap-factorization"}, seed, grid, out_path},
                   [&](Run&) {
      if (case_name != "I") throw CaseUnsupported("rdf demo builds Case I objects only");
      const ExtrapolationRange range =
          make_range(exp_arg(pm, "pm"), exp_arg(pp, "pp"), exp_arg(p0, "p0"), exp_arg(q0, "q0"));
      const ProofExponents pe = proof_exponents(range, exp_arg(p, "p"));
      const GridWeight w = weight_arg(wdesc, "w").realize(grid);
      RealFunction f = family_member("smooth-bumps", seed, 0, grid, false);
      RealFunction g = family_member("smooth-bumps", seed, 0, grid, true);
      f.values = f.values.cwiseAbs();
      g.values = g.values.cwiseAbs();
      ProofConfig cfg;
      cfg.K = kterms;
      cfg.probe_seed = seed;
      const ProofObjects po = build_proof_objects(f, g, w, pe, range, std::nullopt, cfg);
      const WeightReport wr = verify_case1_weight(po, pe, range, w, depth);
      if (!trace.empty()) {
        std::ofstream out(trace_out);
        if (!out) throw UsageError("cannot write " + trace_out);
        out << "x,h1,H1,h2,H2,mu1,mu2,W\n" << std::setprecision(17);
        for (std::size_t i = 0; i < grid.N; ++i) {
          const auto k = static_cast<Eigen::Index>(i);
          out << grid.x(i) << "," << po.h1[k] << "," << po.H1[k] << "," << po.h2[k] << "," << po.H2[k] << ","
              << po.mu1[k] << "," << po.mu2[k] << "," << po.W[k] << "\n";
        }
      }
      Json j;
      j["proof"] = to_json(pe);
      j["C1"] = po.C1;
      j["C2"] = po.C2;
      j["h1_norm"] = po.h1_norm;
      j["norm_bound_1"] = po.norm_bound_1;
      j["norm_bound_2"] = po.norm_bound_2;
      j["norm_bound_note"] = "norm bounds are empirical and may under-estimate the operator norm of M";
      j["iteration_1"] = to_json(po.iter1);
      j["iteration_2"] = to_json(po.iter2);
      j["certificates"] = Json::array();
      for (const auto& c : po.certificates) j["certificates"].push_back(to_json(c));
      j["weight"] = to_json(wr);
      if (!trace.empty()) j["trace"] = trace_out;
      return j;
    });
  });

  // ---- verify
  auto* ver = app.add_subcommand("verify", "Empirical ratio sweeps");
  ver->require_subcommand(1);
  auto verify_opts = [&](CLI::App* sub) {
    sub->add_option("--a", a, "power-weight parameter: w_i = |x|^{-a/q_i}");
    sub->add_option("--w1", w1, "weight descriptor for the first factor");
    sub->add_option("--w2", w2, "weight descriptor for the second factor");
    sub->add_option("--family", family);
    sub->add_option("--count", count, "family size");
    sub->add_option("--seed", seed);
    sub->add_option("--N", ns, "resolutions, comma separated");
    sub->add_option("--L", L);
    sub->add_option("--csv", csv_path, "per-member ratios");
    sub->add_option("--plan-file", plan_file, "take the configuration from a plan report");
  };
  auto verify_cmd = [&](const std::string& target, const std::string& clause, const std::function<void(VerifyConfig&)>& fill) {
    VerifyConfig c;
    if (!plan_file.empty()) {
      c = load_plan_file(plan_file, target);
    } else {
      c.target = target;
      if (!a.empty()) c.a = rat_arg(a, "a");
      c.weights = {w1, w2};
      c.family = family;
      c.count = count;
      c.seed = seed;
      c.L = L;
      c.resolutions = size_list(ns, "N");
      fill(c);
    }
    return execute({"verify " + target, {clause}, c.seed, {}, out_path}, [&, c](Run&) {
      const RatioReport rep = run_verify(c);
      if (!csv_path.empty()) write_ratio_csv(csv_path, rep);
      Json j;
      j["config"] = to_json(c);
      j["report"] = to_json(rep);
      return j;
    });
  };

  auto* vb = ver->add_subcommand("bht", "Weighted scalar bound");
  vb->add_option("--q1", q1);
  vb->add_option("--q2", q2);
  verify_opts(vb);
  bind(vb, [&] {
    return verify_cmd("bht", "bht-weighted-bound", [&](VerifyConfig& c) { c.q = {exp_arg(q1, "q1"), exp_arg(q2, "q2")}; });
  });

  auto* vv = ver->add_subcommand("vv", "Vector-valued bound");
  vv->add_option("--q1", q1);
  vv->add_option("--q2", q2);
  vv->add_option("--s1", s1)->required();
  vv->add_option("--s2", s2)->required();
  vv->add_option("--K", K, "sequence length");
  verify_opts(vv);
  bind(vv, [&] {
    return verify_cmd("vv", "bht-vv-bound", [&](VerifyConfig& c) {
      c.q = {exp_arg(q1, "q1"), exp_arg(q2, "q2")};
      c.s = {exp_arg(s1, "s1"), exp_arg(s2, "s2")};
      c.K = K == 0 ? 8 : K;
    });
  });

  auto* vi = ver->add_subcommand("iterated", "Iterated vector-valued bound");
  vi->add_option("--q1", q1);
  vi->add_option("--q2", q2);
  vi->add_option("--s1", s1)->required();
  vi->add_option("--s2", s2)->required();
  vi->add_option("--t1", t1)->required();
  vi->add_option("--t2", t2)->required();
  vi->add_option("--J", J, "outer length");
  vi->add_option("--K", K, "inner length");
  verify_opts(vi);
  bind(vi, [&] {
    return verify_cmd("iterated", "iterated-vv-bound", [&](VerifyConfig& c) {
      c.q = {exp_arg(q1, "q1"), exp_arg(q2, "q2")};
      c.s = {exp_arg(s1, "s1"), exp_arg(s2, "s2")};
      c.t = {exp_arg(t1, "t1"), exp_arg(t2, "t2")};
      c.J = J;
      c.K = K == 0 ? 4 : K;
    });
  });

  auto* vm = ver->add_subcommand("mz", "Marcinkiewicz-Zygmund bound with a surrogate operator");
  vm->add_option("--q", qlist, "q1,q2");
  vm->add_option("--r", r);
  vm->add_option("--K", K, "sequence length");
  vm->add_option("--surrogate", surrogate);
  verify_opts(vm);
  bind(vm, [&] {
    return verify_cmd("mz", "mz-bound", [&](VerifyConfig& c) {
      c.q = exp_list(qlist.empty() ? std::string("3,3") : qlist, "q");
      if (r.empty()) throw UsageError("--r is required");
      c.r = rat_arg(r, "r");
      c.K = K == 0 ? 4 : K;
      c.surrogate = surrogate;
    });
  });

  auto* vt = ver->add_subcommand("truncation", "Truncation f_N against its displayed bound");
  vt->add_option("--f", fpath, "CSV file; a family member is used when absent");
  vt->add_option("--w", wdesc, "weight descriptor");
  vt->add_option("--q", q1, "exponent");
  vt->add_option("--ncuts", ncuts, "increasing cut levels, comma separated");
  vt->add_option("--family", family);
  vt->add_option("--seed", seed);
  vt->add_option("--member", member);
  grid_opts(vt);
  bind(vt, [&] {
    return execute({"verify truncation", {"truncation-bound"}, seed, {}, out_path}, [&](Run& run) {
      RealFunction f = fpath.empty() ? family_member(family, seed, member, grid_arg(L, N), false)
                                     : real_part(read_function_csv(fpath));
      run.grid = f.grid;
      const GridWeight w = weight_arg(wdesc, "w").realize(f.grid);
      return to_json(truncation_study(f, w, exp_arg(q1, "q"), double_list(ncuts, "ncuts")));
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    return action ? action() : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

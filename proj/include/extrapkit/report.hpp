#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "extrapkit/applications.hpp"
#include "extrapkit/extrapolation.hpp"
#include "extrapkit/rdf.hpp"
#include "extrapkit/verify.hpp"
#include "extrapkit/weights.hpp"

namespace extrapkit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Common envelope: schema_version, command, status, clauses, seed, grid,
/// then the command's payload under "result".
Json envelope(const std::string& command, const std::vector<std::string>& clauses,
              std::optional<std::uint64_t> seed, std::optional<Grid> grid);

/// status "error" plus the exception type and message.
Json error_payload(const std::exception& e);

Json to_json(const Rational& r);
Json to_json(const ExtendedExponent& e);
Json to_json(const WeightClassSpec& s);
Json to_json(const Grid& g);
Json to_json(const ExtrapolationRange& r);
Json to_json(const DualRange& d);
Json to_json(const IdentityCheck& c);
Json to_json(const ProofExponents& pe);
Json to_json(const LinearStep& st);
Json to_json(const BHTPlan& plan);
Json to_json(const PowerRange& pr);
Json to_json(const Section5Plan& plan);
Json to_json(const MZPlan& plan);
Json to_json(const ClassConstants& c);
Json to_json(const DivergenceProbe& d);
Json to_json(const IterationReport& r);
Json to_json(const Certificate& c);
Json to_json(const WeightReport& r);
Json to_json(const RatioReport& r);
Json to_json(const TruncationStudy& t);

/// Verification settings carried from a plan report to `verify` through
/// --plan-file. Serialisation is canonical so that a round trip is an
/// identity on the JSON text.
struct VerifyConfig {
  std::string target = "bht";  // bht | vv | iterated | mz
  std::vector<ExtendedExponent> q;
  std::vector<ExtendedExponent> s;
  std::vector<ExtendedExponent> t;
  std::optional<Rational> a;  // power-weight parameter, w_i = |x|^{-a/q_i}
  std::optional<Rational> r;
  std::vector<std::string> weights{"unit", "unit"};
  std::string family = "smooth-bumps";
  std::size_t count = 16;
  std::size_t K = 1;
  std::size_t J = 1;
  std::string surrogate = "tensor-hilbert";
  std::uint64_t seed = 7;
  double L = 8.0;
  std::vector<std::size_t> resolutions{4096, 8192};

  friend bool operator==(const VerifyConfig&, const VerifyConfig&) = default;
};

Json to_json(const VerifyConfig& c);
VerifyConfig verify_config_from_json(const Json& j);

}  // namespace extrapkit

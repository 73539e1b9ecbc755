#pragma once

#include "gitstab/ample_cone.hpp"
#include "gitstab/balance.hpp"
#include "gitstab/correspondence.hpp"
#include "gitstab/filtrations.hpp"

#include <json.hpp>

#include <filesystem>
#include <variant>

namespace gitstab {

using Json = nlohmann::ordered_json;

/// Parsing throws Error(Schema) with a field path such as items[0].weight.
Rational rational_from_json(const Json& j, const std::string& path);
Json to_json(const Rational& r);

/// A subspace as a list of spanning vectors of rational strings.
Subspace subspace_from_json(const Json& j, std::size_t ambient, const std::string& path);
Json to_json(const Subspace& s);

/// {"n", "d", "items": [{"weight", "basis"}]}. Rejects empty configurations,
/// rank-deficient bases and nonpositive weights.
WeightedConfiguration config_from_json(const Json& j);
Json to_json(const WeightedConfiguration& c);

/// {"N", "points": [{"volume", "frames": [item][column][row] = [re, im]}],
///  "weights", "ranks"}.
SampledBundleConfig bundle_from_json(const Json& j);
Json to_json(const SampledBundleConfig& b);

/// {"n", "filtrations": [{"steps": [subspace, ...], "weights": [...]}]}.
MFiltration mfiltration_from_json(const Json& j);
Json to_json(const MFiltration& f);

/// Accepts a list of subspaces, {"subspaces": [...]}, or a verdict document
/// (its certificate and decomposition are used).
std::vector<Subspace> extras_from_json(const Json& j, std::size_t n);

using ParsedInput = std::variant<WeightedConfiguration, SampledBundleConfig, MFiltration>;

/// Reads a file and dispatches on its keys: "points" for bundles,
/// "filtrations" for m-filtrations, otherwise a configuration.
Json read_json(const std::filesystem::path& path);
ParsedInput parse_config(const std::filesystem::path& path);

Json to_json(const Verdict& v);
Json to_json(const FiltrationReport& r);
Json to_json(const ComplexMatrix& m);
Json to_json(const BalanceResult& r);
Json to_json(const BundleBalanceResult& r);
Json to_json(const PackedPoint& p);
Json to_json(const GaleResult& g);
Json to_json(const OrbitResult& o);
Json to_json(const MembershipReport& m);
Json to_json(const ProbeReport& p);

}  // namespace gitstab

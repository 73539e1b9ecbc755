#include "gitstab/io.hpp"

#include "gitstab/error.hpp"

#include <fstream>
#include <sstream>

namespace gitstab {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Schema, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path.empty() ? "<root>" : path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join_path(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& array_field(const Json& j, const char* key, const std::string& path) {
  const Json& value = field(j, key, path);
  if (!value.is_array()) schema(join_path(path, key), "expected an array");
  return value;
}

std::size_t count_field(const Json& j, const char* key, const std::string& path) {
  const Json& value = field(j, key, path);
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    schema(join_path(path, key), "expected a positive integer");
  }
  return value.get<std::size_t>();
}

double real_from_json(const Json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) schema(path, "expected a rational string such as \"3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

Json to_json(const Rational& r) { return to_string(r); }

Subspace subspace_from_json(const Json& j, std::size_t ambient, const std::string& path) {
  if (!j.is_array()) schema(path, "expected a list of vectors");
  std::vector<RationalVector> vectors;
  for (std::size_t v = 0; v < j.size(); ++v) {
    const std::string vpath = index_path(path, v);
    if (!j[v].is_array()) schema(vpath, "expected a vector");
    if (j[v].size() != ambient) {
      schema(vpath, "expected length " + std::to_string(ambient) + ", got " + std::to_string(j[v].size()));
    }
    RationalVector vec;
    for (std::size_t e = 0; e < ambient; ++e) vec.push_back(rational_from_json(j[v][e], index_path(vpath, e)));
    vectors.push_back(std::move(vec));
  }
  return Subspace::span(ambient, vectors);
}

Json to_json(const Subspace& s) {
  Json out = Json::array();
  for (std::size_t col = 0; col < s.dim(); ++col) {
    Json vec = Json::array();
    for (std::size_t r = 0; r < s.ambient_dim(); ++r) vec.push_back(to_string(s.basis()(r, col)));
    out.push_back(std::move(vec));
  }
  return out;
}

WeightedConfiguration config_from_json(const Json& j) {
  const std::size_t n = count_field(j, "n", "");
  const std::size_t d = j.contains("d") ? count_field(j, "d", "") : 1;
  const Json& items = array_field(j, "items", "");
  if (items.empty()) schema("items", "a configuration needs at least one item");
  std::vector<WeightedItem> parsed;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string path = index_path("items", i);
    const Rational weight = rational_from_json(field(items[i], "weight", path), path + ".weight");
    if (weight <= 0) schema(path + ".weight", "must be positive");
    const Json& basis = array_field(items[i], "basis", path);
    const Subspace s = subspace_from_json(basis, n * d, path + ".basis");
    if (s.dim() != basis.size()) schema(path + ".basis", "vectors are linearly dependent");
    parsed.push_back({s, weight});
  }
  return WeightedConfiguration(n, d, std::move(parsed));
}

Json to_json(const WeightedConfiguration& c) {
  Json items = Json::array();
  for (const auto& item : c.items()) items.push_back({{"weight", to_string(item.weight)}, {"basis", to_json(item.subspace)}});
  return {{"n", c.n()}, {"d", c.d()}, {"items", std::move(items)}};
}

namespace {

ComplexMatrix complex_from_json(const Json& j, std::size_t rows, const std::string& path) {
  if (!j.is_array()) schema(path, "expected a list of columns");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(j.size()));
  for (std::size_t col = 0; col < j.size(); ++col) {
    const std::string cpath = index_path(path, col);
    if (!j[col].is_array() || j[col].size() != rows) schema(cpath, "expected " + std::to_string(rows) + " entries");
    for (std::size_t r = 0; r < rows; ++r) {
      const Json& z = j[col][r];
      const std::string zpath = index_path(cpath, r);
      if (z.is_number()) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = z.get<double>();
        continue;
      }
      if (!z.is_array() || z.size() != 2) schema(zpath, "expected [re, im]");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
          Complex(real_from_json(z[0], zpath + "[0]"), real_from_json(z[1], zpath + "[1]"));
    }
  }
  return m;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Json column = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) column.push_back({m(r, col).real(), m(r, col).imag()});
    out.push_back(std::move(column));
  }
  return out;
}

SampledBundleConfig bundle_from_json(const Json& j) {
  SampledBundleConfig b;
  b.N = count_field(j, "N", "");
  const Json& weights = array_field(j, "weights", "");
  const Json& ranks = array_field(j, "ranks", "");
  if (weights.size() != ranks.size()) schema("ranks", "needs one entry per weight");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = real_from_json(weights[i], index_path("weights", i));
    if (!(w > 0)) schema(index_path("weights", i), "must be positive");
    b.weights.push_back(w);
    if (!ranks[i].is_number_integer() || ranks[i].get<long long>() < 0) {
      schema(index_path("ranks", i), "expected a nonnegative integer");
    }
    b.ranks.push_back(ranks[i].get<std::size_t>());
  }
  const Json& points = array_field(j, "points", "");
  if (points.empty()) schema("points", "at least one sample point required");
  for (std::size_t t = 0; t < points.size(); ++t) {
    const std::string path = index_path("points", t);
    const double v = real_from_json(field(points[t], "volume", path), path + ".volume");
    if (!(v > 0)) schema(path + ".volume", "must be positive");
    b.volumes.push_back(v);
    const Json& frames = array_field(points[t], "frames", path);
    if (frames.size() != b.weights.size()) schema(path + ".frames", "needs one frame per item");
    std::vector<ComplexMatrix> at;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::string fpath = index_path(path + ".frames", i);
      at.push_back(complex_from_json(frames[i], b.N, fpath));
      if (static_cast<std::size_t>(at.back().cols()) != b.ranks[i]) schema(fpath, "column count differs from rank");
    }
    b.frames.push_back(std::move(at));
  }
  try {
    validate(b);
  } catch (const Error& e) {
    schema("points", e.what());
  }
  return b;
}

Json to_json(const SampledBundleConfig& b) {
  Json points = Json::array();
  for (std::size_t t = 0; t < b.volumes.size(); ++t) {
    Json frames = Json::array();
    for (const auto& f : b.frames[t]) frames.push_back(to_json(f));
    points.push_back({{"volume", b.volumes[t]}, {"frames", std::move(frames)}});
  }
  return {{"N", b.N}, {"points", std::move(points)}, {"weights", b.weights}, {"ranks", b.ranks}};
}

MFiltration mfiltration_from_json(const Json& j) {
  MFiltration f;
  f.n = count_field(j, "n", "");
  const Json& chains = array_field(j, "filtrations", "");
  for (std::size_t s = 0; s < chains.size(); ++s) {
    const std::string path = index_path("filtrations", s);
    const Json& steps = array_field(chains[s], "steps", path);
    const Json& weights = array_field(chains[s], "weights", path);
    if (steps.size() != weights.size()) schema(path + ".weights", "needs one weight per step");
    Filtration chain;
    for (std::size_t p = 0; p < steps.size(); ++p) {
      chain.steps.push_back(subspace_from_json(steps[p], f.n, index_path(path + ".steps", p)));
      const Rational w = rational_from_json(weights[p], index_path(path + ".weights", p));
      if (w <= 0) schema(index_path(path + ".weights", p), "must be positive");
      chain.weights.push_back(w);
    }
    f.filtrations.push_back(std::move(chain));
  }
  try {
    validate(f);
  } catch (const Error& e) {
    schema("filtrations", e.what());
  }
  return f;
}

Json to_json(const MFiltration& f) {
  Json chains = Json::array();
  for (const auto& chain : f.filtrations) {
    Json steps = Json::array();
    Json weights = Json::array();
    for (std::size_t p = 0; p < chain.steps.size(); ++p) {
      steps.push_back(to_json(chain.steps[p]));
      weights.push_back(to_string(chain.weights[p]));
    }
    chains.push_back({{"steps", std::move(steps)}, {"weights", std::move(weights)}});
  }
  return {{"n", f.n}, {"filtrations", std::move(chains)}};
}

std::vector<Subspace> extras_from_json(const Json& j, std::size_t n) {
  std::vector<Subspace> out;
  auto add_list = [&](const Json& list, const std::string& path) {
    if (!list.is_array()) schema(path, "expected a list of subspaces");
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(subspace_from_json(list[i], n, index_path(path, i)));
  };
  if (j.is_array()) {
    add_list(j, "extra");
  } else if (j.is_object() && j.contains("subspaces")) {
    add_list(j["subspaces"], "subspaces");
  } else if (j.is_object() && (j.contains("certificate") || j.contains("decomposition"))) {
    if (j.contains("certificate") && !j["certificate"].is_null()) {
      out.push_back(subspace_from_json(j["certificate"], n, "certificate"));
    }
    if (j.contains("decomposition")) add_list(j["decomposition"], "decomposition");
  } else {
    schema("<root>", "expected a list of subspaces, {\"subspaces\": ...} or a verdict");
  }
  return out;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Schema, path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, path.string() + ": " + e.what());
  }
}

ParsedInput parse_config(const std::filesystem::path& path) {
  const Json j = read_json(path);
  if (j.is_object() && j.contains("points")) return bundle_from_json(j);
  if (j.is_object() && j.contains("filtrations")) return mfiltration_from_json(j);
  return config_from_json(j);
}

Json to_json(const Verdict& v) {
  Json out{{"status", to_string(v.status)},
           {"confidence", to_string(v.confidence)},
           {"slope_total", to_string(v.slope_total)}};
  out["certificate"] = v.certificate ? to_json(*v.certificate) : Json(nullptr);
  out["certificate_slope"] = v.certificate_slope ? Json(to_string(*v.certificate_slope)) : Json(nullptr);
  Json pieces = Json::array();
  for (const auto& s : v.decomposition) pieces.push_back(to_json(s));
  out["decomposition"] = std::move(pieces);
  out["candidates_tested"] = v.candidates_tested;
  out["candidate_digest"] = v.candidate_digest;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json to_json(const FiltrationReport& r) {
  Json flag = Json::array();
  for (const auto& s : r.flag.steps) flag.push_back(to_json(s));
  Json graded = Json::array();
  for (const auto& g : r.graded) {
    graded.push_back({{"slope", to_string(g.slope)},
                      {"status", to_string(g.status)},
                      {"configuration", to_json(g.graded)}});
  }
  return {{"flag", std::move(flag)}, {"graded", std::move(graded)}, {"confidence", to_string(r.confidence)}};
}

Json to_json(const BalanceResult& r) {
  Json hints = Json::array();
  for (const auto& h : r.destabilizer_hint) hints.push_back(to_json(h));
  return {{"status", to_string(r.status)},
          {"residual", r.residual},
          {"iterations", r.iterations},
          {"metric", to_json(r.metric.matrix())},
          {"transform", to_json(r.transform)},
          {"destabilizer_hint", std::move(hints)},
          {"kempf_ness_final", r.kempf_ness_trace.empty() ? Json(nullptr) : Json(r.kempf_ness_trace.back())}};
}

Json to_json(const BundleBalanceResult& r) {
  Json out = to_json(r.result);
  out["unique"] = r.unique ? Json(*r.unique) : Json(nullptr);
  out["uniqueness_gap"] = r.uniqueness_gap;
  return out;
}

Json to_json(const PackedPoint& p) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < p.matrix.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < p.matrix.cols(); ++c) row.push_back(to_string(p.matrix(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"matrix", std::move(rows)}, {"blocks", p.blocks}};
}

Json to_json(const GaleResult& g) {
  return {{"configuration", to_json(g.configuration)}, {"degenerate_blocks", g.degenerate_blocks}};
}

Json to_json(const OrbitResult& o) {
  Json out{{"answer", to_string(o.answer)}};
  if (o.g) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < o.g->rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < o.g->cols(); ++c) row.push_back(to_string((*o.g)(r, c)));
      rows.push_back(std::move(row));
    }
    out["g"] = std::move(rows);
  }
  if (!o.reason.empty()) out["reason"] = o.reason;
  return out;
}

Json to_json(const MembershipReport& m) {
  Json x = Json::array();
  for (const auto& v : m.x) x.push_back(to_string(v));
  return {{"membership", to_string(m.membership)}, {"x", std::move(x)}};
}

Json to_json(const ProbeReport& p) {
  Json weights = Json::array();
  for (const auto& w : p.weights) weights.push_back(to_string(w));
  auto fraction = [&](std::size_t count) { return to_string(Rational(static_cast<long>(count), static_cast<long>(std::max<std::size_t>(p.trials, 1)))); };
  return {{"n", p.spec.n},
          {"k", p.spec.k},
          {"weights", std::move(weights)},
          {"hypersimplex", to_json(p.membership)},
          {"trials", p.trials},
          {"seed", p.seed},
          {"unstable", p.unstable},
          {"strictly_semistable", p.strictly_semistable},
          {"stable", p.stable},
          {"fraction_semistable", fraction(p.strictly_semistable + p.stable)},
          {"fraction_stable", fraction(p.stable)},
          {"soundness_violations", p.soundness_violations},
          {"free_dimension_condition", p.free_dimension_condition},
          {"free_codimension_condition", p.free_codimension_condition}};
}

}  // namespace gitstab

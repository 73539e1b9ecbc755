// gitstab: command-line front end; every command prints one JSON report.

#include "gitstab/corpus.hpp"
#include "gitstab/digest.hpp"
#include "gitstab/error.hpp"
#include "gitstab/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gitstab;

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::size_t depth = kDefaultDepth;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 0;
  std::size_t trials = 32;
  std::string weights;
  std::size_t n = 0;
  std::string k;
  std::string extra_h;
  std::string expect;
  bool numeric = false;
  bool no_timestamp = false;
  std::vector<std::string> inputs;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Schema, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(const std::string& text, const char* flag) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) out.push_back(piece);
  if (out.empty()) throw Error(ErrorCode::Schema, std::string(flag) + ": empty list");
  return out;
}

std::vector<Rational> parse_weights(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& p : split_list(text, "--weights")) out.push_back(parse_rational(p));
  return out;
}

ConeSpec parse_spec(const Common& o) {
  ConeSpec spec{o.n, {}};
  for (const auto& p : split_list(o.k, "--k")) {
    try {
      spec.k.push_back(static_cast<std::size_t>(std::stoul(p)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Schema, "--k: '" + p + "' is not a count");
    }
  }
  validate(spec);
  return spec;
}

WeightedConfiguration load_config(const std::string& path) {
  const Json j = read_json(path);
  return config_from_json(j);
}

SearchOptions search_options(const Common& o, std::size_t n) {
  SearchOptions opts;
  opts.depth = o.depth;
  if (!o.extra_h.empty()) opts.extra = extras_from_json(read_json(o.extra_h), n);
  return opts;
}

BalanceOptions balance_options(const Common& o) {
  BalanceOptions opts;
  opts.tol = o.tol;
  opts.max_iter = o.max_iter;
  opts.seed = o.seed;
  return opts;
}

Status parse_status(const std::string& text) {
  for (Status s : {Status::Unstable, Status::StrictlySemistable, Status::Stable, Status::Polystable}) {
    if (text == to_string(s)) return s;
  }
  throw Error(ErrorCode::Schema, "--expect: unknown status '" + text + "'");
}

struct Outcome {
  Json result;
  int exit_code = 0;
};

Outcome run(const std::string& command, const Common& o) {
  const auto& in = o.inputs;
  if (command == "check") {
    const WeightedConfiguration c = load_config(in.at(0));
    DecideOptions opts;
    static_cast<SearchOptions&>(opts) = search_options(o, c.n());
    opts.numeric = o.numeric;
    const Verdict v = decide(c, opts);
    Outcome out{to_json(v)};
    if (!o.expect.empty() && parse_status(o.expect) != v.status) out.exit_code = 1;
    return out;
  }
  if (command == "hn") {
    const WeightedConfiguration c = load_config(in.at(0));
    return {to_json(hn_filtration(c, search_options(o, c.n())))};
  }
  if (command == "jh") {
    const WeightedConfiguration c = load_config(in.at(0));
    return {to_json(jh_filtration(c, search_options(o, c.n())))};
  }
  if (command == "balance") {
    return {to_json(balance_solve(load_config(in.at(0)), balance_options(o)))};
  }
  if (command == "bundle-balance") {
    return {to_json(bundle_balance_solve(bundle_from_json(read_json(in.at(0))), balance_options(o)))};
  }
  if (command == "gm") {
    const WeightedConfiguration c = load_config(in.at(0));
    Json j = to_json(gm_forward(c));
    Json weights = Json::array();
    for (const auto& w : c.weights()) weights.push_back(to_string(w));
    j["character"] = std::move(weights);
    return {std::move(j)};
  }
  if (command == "gale") {
    return {to_json(gale_transform(load_config(in.at(0))))};
  }
  if (command == "orbit-eq") {
    return {to_json(orbit_equivalent(load_config(in.at(0)), load_config(in.at(1)), o.trials, o.seed))};
  }
  if (command == "tensor") {
    const MFiltration a = mfiltration_from_json(read_json(in.at(0)));
    const MFiltration b = mfiltration_from_json(read_json(in.at(1)));
    const MFiltration t = tensor_filtrations(a, b);
    const WeightedConfiguration c = mfiltration_to_config(t);
    DecideOptions opts;
    opts.depth = o.depth;
    Json j{{"filtration", to_json(t)}};
    j["verdict"] = c.size() == 0 ? Json(nullptr) : to_json(decide(c, opts));
    return {std::move(j)};
  }
  if (command == "cone") {
    return {to_json(hypersimplex_membership(parse_spec(o), parse_weights(o.weights)))};
  }
  if (command == "probe") {
    SearchOptions opts;
    opts.depth = o.depth;
    return {to_json(conjecture_probe(parse_spec(o), parse_weights(o.weights), o.trials, o.seed, opts))};
  }
  if (command == "corpus") {
    Json cases = Json::array();
    bool all = true;
    for (const auto& c : corpus_cases()) {
      const CorpusOutcome r = run_case(c);
      all = all && r.pass;
      Json entry{{"name", r.name}, {"pass", r.pass}};
      if (!r.detail.empty()) entry["detail"] = r.detail;
      cases.push_back(std::move(entry));
    }
    return {{{"cases", std::move(cases)}, {"all_pass", all}}, all ? 0 : 1};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GIT stability of weighted subspace configurations"};
  app.require_subcommand(1);
  Common o;

  struct Spec {
    const char* name;
    const char* help;
    std::size_t inputs;
  };
  const Spec specs[] = {
      {"check", "decide semistability and print a verdict", 1},
      {"hn", "Harder-Narasimhan filtration", 1},
      {"jh", "Jordan-Holder filtration of a semistable configuration", 1},
      {"balance", "moment-map descent towards a balance metric", 1},
      {"bundle-balance", "balance a sampled configuration of maps", 1},
      {"gm", "pack a configuration into one Grassmannian point", 1},
      {"gale", "Gale transform", 1},
      {"orbit-eq", "test whether two configurations lie in one orbit", 2},
      {"tensor", "tensor product of two m-filtrations", 2},
      {"cone", "diagonal hypersimplex membership", 0},
      {"probe", "sample random configurations at fixed weights", 0},
      {"corpus", "run the built-in hand-derived cases", 0},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.inputs > 0) sub->add_option("inputs", o.inputs, "input JSON files")->required()->expected(static_cast<int>(s.inputs));
    sub->add_option("--depth", o.depth, "lattice closure depth");
    sub->add_option("--tol", o.tol, "moment-map residual tolerance");
    sub->add_option("--max-iter", o.max_iter, "iteration cap");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--trials", o.trials, "random samples");
    sub->add_option("--weights", o.weights, "comma-separated rational weights");
    sub->add_option("--n", o.n, "dim V");
    sub->add_option("--k", o.k, "comma-separated item dimensions");
    sub->add_option("--extra-h", o.extra_h, "JSON file of extra subspaces to test first");
    sub->add_option("--expect", o.expect, "expected status; exit 1 when contradicted");
    sub->add_flag("--numeric", o.numeric, "corroborate with the balance solver");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and wall clock");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Json report{{"command", command}, {"version", kVersion}};
  Json args = Json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  report["argv"] = std::move(args);
  report["seed"] = o.seed;
  try {
    Fnv1a digest;
    for (const auto& path : o.inputs) digest.update(slurp(path));
    report["input_digest"] = digest.hex();
    Outcome out = run(command, o);
    report["result"] = std::move(out.result);
    if (!o.no_timestamp) {
      const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report["wall_clock_seconds"] = elapsed;
      report["timestamp"] = static_cast<long long>(std::time(nullptr));
    }
    std::cout << report.dump(2) << "\n";
    return out.exit_code;
  } catch (const Error& e) {
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    std::cout << report.dump(2) << "\n";
    std::cerr << "gitstab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    report["error"] = {{"code", "Internal"}, {"message", e.what()}};
    std::cout << report.dump(2) << "\n";
    std::cerr << "gitstab: " << e.what() << "\n";
    return 2;
  }
}

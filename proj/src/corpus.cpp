#include "gitstab/corpus.hpp"

#include "gitstab/error.hpp"

#include <sstream>

namespace gitstab {

WeightedConfiguration make_config(std::size_t n, std::size_t d,
                                  const std::vector<std::pair<std::vector<std::vector<long>>, Rational>>& items) {
  std::vector<WeightedItem> parsed;
  for (const auto& [vectors, weight] : items) {
    std::vector<RationalVector> columns;
    for (const auto& v : vectors) {
      if (v.size() != n * d) throw Error(ErrorCode::DimensionMismatch, "make_config: vector length");
      columns.emplace_back(v.begin(), v.end());
    }
    parsed.push_back({Subspace::span(n * d, columns), weight});
  }
  return WeightedConfiguration(n, d, std::move(parsed));
}

namespace {

using R = Rational;

std::vector<Rational> slopes(std::initializer_list<Rational> values) { return values; }

}  // namespace

std::vector<CorpusCase> corpus_cases() {
  using S = Status;
  std::vector<CorpusCase> cases;
  cases.push_back({"single_line", make_config(2, 1, {{{{1, 0}}, 1}}), S::Unstable, S::Unstable,
                   slopes({1, 0}), {}});
  cases.push_back({"two_equal_lines", make_config(2, 1, {{{{1, 0}}, 1}, {{{1, 0}}, 1}}), S::Unstable, S::Unstable,
                   slopes({2, 0}), {}});
  cases.push_back({"two_transverse_lines", make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}}), S::StrictlySemistable,
                   S::Polystable, slopes({1}), slopes({1, 1})});
  cases.push_back({"three_generic_lines", make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}, {{{1, 1}}, 1}}),
                   S::Stable, S::Polystable, slopes({R(3, 2)}), slopes({R(3, 2)})});
  cases.push_back({"four_generic_lines",
                   make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}, {{{1, 1}}, 1}, {{{1, 2}}, 1}}), S::Stable,
                   S::Polystable, slopes({2}), slopes({2})});
  cases.push_back({"dominant_weight_unstable", make_config(2, 1, {{{{1, 0}}, 3}, {{{0, 1}}, 1}, {{{1, 1}}, 1}}),
                   S::Unstable, S::Unstable, slopes({3, 2}), {}});
  cases.push_back({"dominant_weight_boundary", make_config(2, 1, {{{{1, 0}}, 2}, {{{0, 1}}, 1}, {{{1, 1}}, 1}}),
                   S::StrictlySemistable, S::StrictlySemistable, slopes({2}), slopes({2, 2})});
  cases.push_back({"full_space_item", make_config(2, 1, {{{{1, 0}, {0, 1}}, 1}}), S::StrictlySemistable,
                   S::Polystable, slopes({1}), slopes({1, 1})});
  cases.push_back({"supp_v_unstable_d2", make_config(2, 2, {{{{1, 0, 0, 0}, {0, 1, 0, 0}}, 1}}), S::Unstable,
                   S::Unstable, slopes({2, 0}), {}});
  cases.push_back({"entangled_line_d2", make_config(2, 2, {{{{1, 0, 0, 1}}, 1}}), S::Stable, S::Polystable,
                   slopes({R(1, 2)}), slopes({R(1, 2)})});
  cases.push_back({"coordinate_lines_c3",
                   make_config(3, 1, {{{{1, 0, 0}}, 1}, {{{0, 1, 0}}, 1}, {{{0, 0, 1}}, 1}}),
                   S::StrictlySemistable, S::Polystable, slopes({1}), slopes({1, 1, 1})});
  cases.push_back({"plane_and_heavy_line", make_config(3, 1, {{{{1, 0, 0}, {0, 1, 0}}, 1}, {{{0, 0, 1}}, 2}}),
                   S::Unstable, S::Unstable, slopes({2, 1}), {}});
  cases.push_back({"plane_and_line", make_config(3, 1, {{{{1, 0, 0}, {0, 1, 0}}, 1}, {{{0, 0, 1}}, 1}}),
                   S::StrictlySemistable, S::Polystable, slopes({1}), slopes({1, 1, 1})});
  cases.push_back({"line_inside_plane", make_config(3, 1, {{{{1, 0, 0}}, 1}, {{{1, 0, 0}, {0, 1, 0}}, 1}}),
                   S::Unstable, S::Unstable, slopes({2, 1, 0}), {}});
  return cases;
}

namespace {

std::string render(const std::vector<Rational>& values) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  out << ")";
  return out.str();
}

std::vector<Rational> graded_slopes(const FiltrationReport& r) {
  std::vector<Rational> out;
  for (const auto& g : r.graded) out.push_back(g.slope);
  return out;
}

}  // namespace

CorpusOutcome run_case(const CorpusCase& c) {
  CorpusOutcome outcome{c.name, true, {}};
  auto fail = [&](const std::string& what) {
    outcome.pass = false;
    outcome.detail += (outcome.detail.empty() ? "" : "; ") + what;
  };
  try {
    const Verdict v = decide(c.config);
    if (v.status != c.status) {
      fail(std::string("decide ") + to_string(v.status) + ", expected " + to_string(c.status));
    }
    if (!verify_certificate(c.config, v)) fail("certificate does not re-verify");
    const Verdict split = polystable_split(c.config);
    if (split.status != c.split_status) {
      fail(std::string("polystable_split ") + to_string(split.status) + ", expected " + to_string(c.split_status));
    }
    const auto hn = graded_slopes(hn_filtration(c.config));
    if (hn != c.hn_slopes) fail("hn slopes " + render(hn) + ", expected " + render(c.hn_slopes));
    if (is_semistable(c.status)) {
      const auto jh = graded_slopes(jh_filtration(c.config));
      if (jh != c.jh_slopes) fail("jh slopes " + render(jh) + ", expected " + render(c.jh_slopes));
    }
  } catch (const std::exception& e) {
    fail(std::string("threw: ") + e.what());
  }
  return outcome;
}

}  // namespace gitstab

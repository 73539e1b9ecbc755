#include <catch_amalgamated.hpp>

#include "gitstab/corpus.hpp"
#include "gitstab/error.hpp"

using namespace gitstab;

namespace {

Subspace span_of(std::size_t ambient, std::vector<std::vector<long>> vectors) {
  std::vector<RationalVector> v;
  for (auto& x : vectors) v.emplace_back(x.begin(), x.end());
  return Subspace::span(ambient, v);
}

}  // namespace

TEST_CASE("HN of a line inside a plane") {
  const auto c = make_config(3, 1, {{{{1, 0, 0}}, 1}, {{{1, 0, 0}, {0, 1, 0}}, 1}});
  const FiltrationReport r = hn_filtration(c);
  REQUIRE(r.flag.steps.size() == 4);
  CHECK(r.flag.steps[1] == span_of(3, {{1, 0, 0}}));
  CHECK(r.flag.steps[2] == span_of(3, {{1, 0, 0}, {0, 1, 0}}));
  CHECK_NOTHROW(validate(r.flag));
  for (const auto& g : r.graded) CHECK(is_semistable(g.status));
}

TEST_CASE("HN of a semistable configuration is trivial") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}});
  const FiltrationReport r = hn_filtration(c);
  CHECK(r.flag.is_trivial());
  CHECK(r.graded.size() == 1);
  CHECK(r.confidence == Confidence::ExactComplete);
}

TEST_CASE("JH rejects unstable input") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}});
  CHECK_THROWS_AS(jh_filtration(c), Error);
}

TEST_CASE("JH of boundary weights ends in stable pieces") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 2}, {{{0, 1}}, 1}, {{{1, 1}}, 1}});
  const FiltrationReport r = jh_filtration(c);
  REQUIRE(r.flag.steps.size() == 3);
  CHECK(r.flag.steps[1] == span_of(2, {{1, 0}}));
  for (const auto& g : r.graded) {
    CHECK(g.slope == 2);
    CHECK(g.status == Status::Stable);
  }
}

TEST_CASE("polystable split of coordinate lines") {
  const auto c = make_config(3, 1, {{{{1, 0, 0}}, 1}, {{{0, 1, 0}}, 1}, {{{0, 0, 1}}, 1}});
  const Verdict v = polystable_split(c);
  CHECK(v.status == Status::Polystable);
  REQUIRE(v.decomposition.size() == 3);
  CHECK(verify_certificate(c, v));
}

TEST_CASE("no split for boundary-weight generic lines") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 2}, {{{0, 1}}, 1}, {{{1, 1}}, 1}});
  CHECK(polystable_split(c).status == Status::StrictlySemistable);
}

TEST_CASE("m-filtration validation and flattening") {
  MFiltration f;
  f.n = 2;
  f.filtrations.push_back({{span_of(2, {{1, 0}})}, {Rational(1)}});
  f.filtrations.push_back({{span_of(2, {{0, 1}})}, {Rational(1)}});
  const auto c = mfiltration_to_config(f);
  CHECK(c.size() == 2);
  CHECK(decide(c).status == Status::StrictlySemistable);

  MFiltration bad = f;
  bad.filtrations[0].weights[0] = 0;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = f;
  bad.filtrations[0].steps.push_back(span_of(2, {{0, 1}}));
  bad.filtrations[0].weights.push_back(1);
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("tensor of two one-step filtrations") {
  MFiltration a;
  a.n = 2;
  a.filtrations.push_back({{span_of(2, {{1, 0}})}, {Rational(1)}});
  MFiltration b = a;
  const MFiltration t = tensor_filtrations(a, b);
  REQUIRE(t.m() == 1);
  REQUIRE(t.filtrations[0].steps.size() == 2);
  // L⊗W + V⊗M has dimension 3, then L⊗M.
  CHECK(t.filtrations[0].steps[0].dim() == 3);
  CHECK(t.filtrations[0].steps[1] == span_of(4, {{1, 0, 0, 0}}));
  CHECK(t.filtrations[0].weights == std::vector<Rational>{1, 1});
}

TEST_CASE("tensor with trivial filtrations") {
  MFiltration a;
  a.n = 2;
  a.filtrations.push_back({{}, {}});
  const MFiltration t = tensor_filtrations(a, a);
  CHECK(t.filtrations[0].steps.empty());

  MFiltration b;
  b.n = 3;
  CHECK_THROWS_AS(tensor_filtrations(a, b), Error);
}

#include <catch_amalgamated.hpp>

#include "gitstab/corpus.hpp"
#include "gitstab/error.hpp"

using namespace gitstab;

namespace {

Subspace line(std::vector<long> v) {
  RationalVector r(v.begin(), v.end());
  return Subspace::span(v.size(), std::span<const RationalVector>(&r, 1));
}

}  // namespace

TEST_CASE("one-parameter subgroup validation") {
  const RationalMatrix id = RationalMatrix::identity(2);
  CHECK_NOTHROW(OnePS(id, {1, -1}));
  CHECK_THROWS_AS(OnePS(id, {-1, 1}), Error);
  CHECK_THROWS_AS(OnePS(id, {1, 0}), Error);
  CHECK_THROWS_AS(OnePS(RationalMatrix(2, 2), {1, -1}), Error);
  const OnePS lambda(id, {1, -1});
  CHECK(lambda.flag_step(1) == line({1, 0}));
}

TEST_CASE("lambda_s vectors and coefficients") {
  CHECK(lambda_s_vector(3, 1) == std::vector<std::int64_t>{2, -1, -1});
  CHECK(lambda_s_vector(3, 2) == std::vector<std::int64_t>{1, 1, -2});
  const std::int64_t q[] = {3, 0, -3};
  CHECK(lambda_s_coefficients(q) == std::vector<Rational>{1, 1});
}

TEST_CASE("mu values for two equal lines") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{1, 0}}, 1}});
  CHECK(mu_lambda_s(c, line({1, 0})) == 2);
  CHECK(mu_lambda_s(c, line({0, 1})) == -2);
  const OnePS lambda(RationalMatrix::identity(2), {1, -1});
  CHECK(mu_general(c, lambda) == 2);
}

TEST_CASE("mu_general decomposes into lambda_s terms") {
  const auto c = make_config(3, 1, {{{{1, 2, 0}}, 2}, {{{1, 0, 0}, {0, 1, 1}}, 1}, {{{0, 0, 1}}, Rational(1, 2)}});
  const RationalMatrix frame = RationalMatrix::from_rows(3, std::vector<RationalVector>{{1, 0, 1}, {2, 1, 0}, {0, 1, 1}});
  const std::vector<std::int64_t> q{4, 1, -5};
  const OnePS lambda(frame, q);
  Rational sum = 0;
  const auto coeffs = lambda_s_coefficients(q);
  for (std::size_t s = 1; s < 3; ++s) sum += coeffs[s - 1] * mu_lambda_s(c, lambda.flag_step(s));
  CHECK(mu_general(c, lambda) == sum);
}

TEST_CASE("candidate lattice of three lines in the plane") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}, {{{1, 1}}, 1}});
  const auto cands = candidate_subspaces(c, kDefaultDepth);
  CHECK(cands.size() == 3);
}

TEST_CASE("candidate lattice closes under meet and join") {
  const auto c = make_config(3, 1, {{{{1, 0, 0}, {0, 1, 0}}, 1}, {{{0, 1, 0}, {0, 0, 1}}, 1}, {{{1, 0, 1}}, 1}});
  const auto cands = candidate_subspaces(c, kDefaultDepth);
  auto has = [&](const Subspace& s) { return std::find(cands.begin(), cands.end(), s) != cands.end(); };
  CHECK(has(line({0, 1, 0})));
  CHECK(has(join(line({0, 1, 0}), line({1, 0, 1}))));
}

TEST_CASE("decide: single line is unstable with that line as certificate") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}});
  const Verdict v = decide(c);
  CHECK(v.status == Status::Unstable);
  REQUIRE(v.certificate);
  CHECK(*v.certificate == line({1, 0}));
  CHECK(*v.certificate_slope == 1);
  CHECK(v.slope_total == Rational(1, 2));
  CHECK(verify_certificate(c, v));
}

TEST_CASE("decide: two transverse lines strictly semistable") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}});
  const Verdict v = decide(c);
  CHECK(v.status == Status::StrictlySemistable);
  CHECK(v.confidence == Confidence::ExactComplete);
  REQUIRE(v.certificate);
  CHECK(slope_at(c, *v.certificate) == 1);
}

TEST_CASE("decide: generic lines stable, reweighting flips") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}, {{{1, 1}}, 1}});
  const SearchTable table = build_search_table(c);
  CHECK(evaluate(table, std::vector<Rational>{1, 1, 1}).status == Status::Stable);
  CHECK(evaluate(table, std::vector<Rational>{2, 1, 1}).status == Status::StrictlySemistable);
  CHECK(evaluate(table, std::vector<Rational>{3, 1, 1}).status == Status::Unstable);
}

TEST_CASE("extras come first and are preferred as certificates") {
  const auto c = make_config(2, 1, {{{{1, 0}, {0, 1}}, 1}});
  DecideOptions opts;
  opts.extra = {line({3, 7})};
  const Verdict v = decide(c, opts);
  CHECK(v.status == Status::StrictlySemistable);
  CHECK(*v.certificate == line({3, 7}));
}

TEST_CASE("d = 2: support of a product item destabilizes") {
  const auto c = make_config(2, 2, {{{{1, 0, 0, 0}, {0, 1, 0, 0}}, 1}});
  const Verdict v = decide(c);
  CHECK(v.status == Status::Unstable);
  CHECK(*v.certificate == line({1, 0}));
}

TEST_CASE("numeric corroboration upgrades confidence") {
  const auto c = make_config(3, 1, {{{{1, 0, 0}}, 1}, {{{0, 1, 0}}, 1}, {{{0, 0, 1}}, 1}, {{{1, 1, 1}}, 1}});
  DecideOptions opts;
  opts.numeric = true;
  const Verdict v = decide(c, opts);
  CHECK(v.status == Status::Stable);
  CHECK(v.confidence == Confidence::NumericallyCorroborated);
}

TEST_CASE("dominant weight forces the single-item verdict") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 10}, {{{0, 1}}, 1}, {{{1, 1}}, 1}});
  const DominantWeightReport r = dominant_weight_check(c, 0);
  CHECK(r.threshold == 4);
  CHECK(r.dominant);
  CHECK(r.configuration_status == Status::Unstable);
  CHECK(r.item_status == Status::Unstable);
  CHECK(r.semistable_implication);
  CHECK(r.stable_implication);
}

TEST_CASE("candidate digest is deterministic") {
  const auto c = make_config(3, 1, {{{{1, 2, 3}}, 1}, {{{0, 1, 1}, {1, 0, 0}}, 2}});
  CHECK(build_search_table(c).digest == build_search_table(c).digest);
}

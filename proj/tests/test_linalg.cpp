#include <catch_amalgamated.hpp>

#include "gitstab/error.hpp"
#include "gitstab/subspace.hpp"

using namespace gitstab;

namespace {

RationalMatrix rows(std::size_t cols, std::vector<std::vector<long>> entries) {
  std::vector<RationalVector> r;
  for (auto& row : entries) r.emplace_back(row.begin(), row.end());
  return RationalMatrix::from_rows(cols, r);
}

Subspace span_of(std::size_t ambient, std::vector<std::vector<long>> vectors) {
  std::vector<RationalVector> v;
  for (auto& x : vectors) v.emplace_back(x.begin(), x.end());
  return Subspace::span(ambient, v);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("determinant, rank and inverse") {
  const RationalMatrix m = rows(3, {{2, 0, 1}, {1, 3, 2}, {1, 1, 1}});
  // 2(3-2) - 0 + 1(1-3) = 0
  CHECK(m.determinant() == 0);
  CHECK(m.rank() == 2);
  CHECK_THROWS_AS(inverse(m), Error);

  const RationalMatrix a = rows(2, {{2, 1}, {7, 4}});
  CHECK(a.determinant() == 1);
  CHECK(inverse(a) == rows(2, {{4, -1}, {-7, 2}}));
  CHECK(a * inverse(a) == RationalMatrix::identity(2));
}

TEST_CASE("row reduction pivots") {
  const RowEchelon e = row_reduce(rows(4, {{0, 2, 4, 2}, {0, 1, 2, 3}, {0, 0, 0, 0}}));
  CHECK(e.pivots == std::vector<std::size_t>{1, 3});
  CHECK(e.reduced == rows(4, {{0, 1, 2, 0}, {0, 0, 0, 1}}));
}

TEST_CASE("kronecker ordering") {
  const RationalMatrix k = kronecker(rows(2, {{1, 2}}), rows(1, {{1}, {3}}));
  CHECK(k == rows(2, {{1, 2}, {3, 6}}));
}

TEST_CASE("canonical form is unique") {
  const Subspace a = span_of(3, {{1, 1, 0}, {0, 1, 1}});
  const Subspace b = span_of(3, {{2, 3, 1}, {1, 0, -1}});
  CHECK(a == b);
  CHECK(a.pivots() == std::vector<std::size_t>{0, 1});
  CHECK(a.basis() == rows(2, {{1, 0}, {0, 1}, {-1, 1}}));
  CHECK(a.contains(RationalVector{1, 2, 1}));
  CHECK_FALSE(a.contains(RationalVector{0, 0, 1}));
}

TEST_CASE("join and meet") {
  const Subspace x = span_of(3, {{1, 0, 0}, {0, 1, 0}});
  const Subspace y = span_of(3, {{0, 1, 0}, {0, 0, 1}});
  CHECK(meet(x, y) == span_of(3, {{0, 1, 0}}));
  CHECK(join(x, y).is_full());
  CHECK(meet(x, Subspace::zero(3)).is_zero());
  CHECK(join(x, Subspace::zero(3)) == x);
  // dim(x) + dim(y) = dim(x + y) + dim(x ∩ y)
  CHECK(x.dim() + y.dim() == join(x, y).dim() + meet(x, y).dim());
}

TEST_CASE("kernel of the packed three-line matrix") {
  const Subspace k = kernel(rows(3, {{1, 0, 1}, {0, 1, 1}}));
  CHECK(k == span_of(3, {{1, 1, -1}}));
  CHECK(k.basis() == rows(1, {{1}, {1}, {-1}}));
}

TEST_CASE("quotient chart round trip") {
  const Subspace h = span_of(3, {{1, 1, 0}});
  CHECK(quotient_chart(h) == std::vector<std::size_t>{1, 2});
  const Subspace k = span_of(3, {{1, 1, 0}, {0, 0, 1}});
  const Subspace image = quotient_image(k, h);
  CHECK(image.ambient_dim() == 2);
  CHECK(image.dim() == 1);
  CHECK(quotient_preimage(image, h) == k);
  CHECK(quotient_image(h, h).is_zero());
}

TEST_CASE("restrict and embed are inverse") {
  const Subspace frame = span_of(4, {{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}});
  const Subspace s = span_of(4, {{1, 1, 1, 1}});
  const Subspace local = restrict_to(s, frame);
  CHECK(local.ambient_dim() == 3);
  CHECK(embed_into(local, frame) == s);
}

TEST_CASE("tensor of subspaces") {
  const Subspace a = span_of(2, {{1, 1}});
  const Subspace b = span_of(2, {{1, 0}});
  CHECK(tensor(a, b) == span_of(4, {{1, 0, 1, 0}}));
  CHECK(tensor(Subspace::full(2), b).dim() == 2);
}

TEST_CASE("transform by an invertible matrix") {
  const RationalMatrix g = rows(2, {{1, 1}, {0, 1}});
  CHECK(transform(g, span_of(2, {{0, 1}})) == span_of(2, {{1, 1}}));
}

TEST_CASE("ordering is total and deterministic") {
  const Subspace l1 = span_of(2, {{1, 0}});
  const Subspace l2 = span_of(2, {{0, 1}});
  CHECK((l1 < l2) != (l2 < l1));
  CHECK(Subspace::zero(2) < l1);
}

#include <catch_amalgamated.hpp>

#include "gitstab/balance.hpp"
#include "gitstab/corpus.hpp"
#include "gitstab/error.hpp"
#include "gitstab/hilbert_mumford.hpp"

#include <cmath>
#include <random>

using namespace gitstab;
using Catch::Approx;

namespace {

ComplexMatrix column(std::initializer_list<Complex> entries) {
  ComplexMatrix m(static_cast<Eigen::Index>(entries.size()), 1);
  Eigen::Index r = 0;
  for (const auto& z : entries) m(r++, 0) = z;
  return m;
}

NumericConfiguration lines(std::vector<ComplexMatrix> bases, std::vector<double> weights) {
  NumericConfiguration c;
  c.n = static_cast<std::size_t>(bases.front().rows());
  c.bases = std::move(bases);
  c.weights = std::move(weights);
  return c;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  ComplexMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index a = 0; a < x.rows(); ++a)
    for (Eigen::Index b = 0; b < x.cols(); ++b) x(a, b) = Complex(dist(rng), dist(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(x);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("moment map of two orthogonal lines vanishes") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}});
  CHECK(moment_map(c, HermitianMetric::identity(2)).norm() < 1e-15);
  const BalanceResult r = balance_solve(c);
  CHECK(r.status == BalanceStatus::Balanced);
  CHECK(r.iterations == 0);
}

TEST_CASE("equiangular lines are balanced") {
  const double pi = std::acos(-1.0);
  std::vector<ComplexMatrix> bases;
  for (int j = 0; j < 3; ++j) bases.push_back(column({std::cos(j * pi / 3), std::sin(j * pi / 3)}));
  const auto c = lines(bases, {1, 1, 1});
  CHECK(moment_map(c, HermitianMetric::identity(2)).norm() < 1e-14);
}

TEST_CASE("two equal lines: norm sqrt 2 and divergence towards the line") {
  const auto c = make_config(2, 1, {{{{1, 1}}, 1}, {{{1, 1}}, 1}});
  CHECK(moment_map(c, HermitianMetric::identity(2)).norm() == Approx(std::sqrt(2.0)));
  const BalanceResult r = balance_solve(c);
  REQUIRE(r.status == BalanceStatus::Diverged);
  const auto exact = exact_destabilizers(c, r, candidate_subspaces(c, kDefaultDepth));
  REQUIRE_FALSE(exact.empty());
  CHECK(exact.front() == c[0].subspace);
  CHECK(mu_lambda_s(c, exact.front()) > 0);
}

TEST_CASE("generic three lines reach a balance metric") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{0, 1}}, 1}, {{{1, 1}}, 1}});
  const BalanceResult r = balance_solve(c);
  CHECK(r.status == BalanceStatus::Balanced);
  CHECK(r.residual < 1e-8);
  for (std::size_t k = 1; k < r.kempf_ness_trace.size(); ++k) {
    CHECK(r.kempf_ness_trace[k] <= r.kempf_ness_trace[k - 1] + 1e-12);
  }
  // The balanced configuration g · c has vanishing moment map.
  const NumericConfiguration moved = transform(r.transform, to_numeric(c));
  CHECK(moment_map(moved, HermitianMetric::identity(2)).norm() < 1e-8);
}

TEST_CASE("trace zero and unitary equivariance") {
  std::mt19937_64 rng(11);
  const auto c = make_config(3, 1, {{{{1, 2, 0}}, 2}, {{{1, 0, 0}, {0, 1, 1}}, 1}});
  const NumericConfiguration nc = to_numeric(c);
  const ComplexMatrix phi = moment_map(nc, HermitianMetric::identity(3)).phi;
  CHECK(std::abs(phi.trace()) < 1e-12);
  const ComplexMatrix u = random_unitary(3, rng);
  const ComplexMatrix moved = moment_map(transform(u, nc), HermitianMetric::identity(3)).phi;
  CHECK((moved - u * phi * u.adjoint()).norm() < 1e-12);
}

TEST_CASE("d = 2 partial trace moment map is traceless") {
  const auto c = make_config(2, 2, {{{{1, 0, 0, 1}}, 1}, {{{1, 0, 0, 0}, {0, 0, 1, 0}}, 1}});
  const ComplexMatrix phi = moment_map(c, HermitianMetric::identity(2)).phi;
  CHECK(std::abs(phi.trace()) < 1e-12);
}

TEST_CASE("Kempf-Ness gradient matches the moment map") {
  const auto c = make_config(2, 1, {{{{1, 0}}, 1}, {{{1, 1}}, 2}});
  const NumericConfiguration nc = to_numeric(c);
  const ComplexMatrix phi = moment_map(nc, HermitianMetric::identity(2)).phi;
  ComplexMatrix a(2, 2);
  a << Complex(0.3, 0), Complex(0.2, -0.4), Complex(0.2, 0.4), Complex(-0.3, 0);
  const double t = 1e-5;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double fd = (kempf_ness_value(nc, HermitianMetric::normalized(id + t * a)) -
                     kempf_ness_value(nc, HermitianMetric::normalized(id - t * a))) /
                    (2 * t);
  CHECK(fd == Approx(frobenius_inner(phi, a)).epsilon(1e-6));
}

TEST_CASE("metric validation") {
  ComplexMatrix h(2, 2);
  h << 1, 2, 2, 1;
  CHECK_THROWS_AS(HermitianMetric::normalized(h), Error);
  h << 4, 0, 0, 1;
  CHECK(HermitianMetric::normalized(h).matrix()(0, 0).real() == Approx(2.0));
}

TEST_CASE("destabilizer extraction") {
  MomentValue phi{ComplexMatrix(2, 2)};
  phi.phi << 1, 0, 0, -1;
  const auto flags = extract_destabilizer(phi, 1e-4);
  REQUIRE(flags.size() == 1);
  CHECK(subspace_distance(flags[0], column({1, 0})) < 1e-12);
  CHECK_THROWS_AS(extract_destabilizer(MomentValue{ComplexMatrix::Zero(2, 2)}, 1e-4), Error);
}

TEST_CASE("rationalization by continued fractions") {
  const ComplexMatrix v = column({1.0 / 3.0, 2.0 / 3.0}).normalized();
  const auto exact = rationalize(v, {});
  REQUIRE(exact);
  CHECK(*exact == Subspace::span(2, std::vector<RationalVector>{{1, 2}}));
}

namespace {

SampledBundleConfig two_point(bool constant) {
  SampledBundleConfig b;
  b.N = 2;
  b.volumes = {0.5, 0.5};
  b.weights = {1.0};
  b.ranks = {1};
  b.frames = {{column({1, 0})}, {constant ? column({1, 0}) : column({0, 1})}};
  return b;
}

}  // namespace

TEST_CASE("bundle moment map examples") {
  CHECK(bundle_moment_map(two_point(false)).norm() < 1e-15);
  ComplexMatrix expected(2, 2);
  expected << 0.5, 0, 0, -0.5;
  CHECK((bundle_moment_map(two_point(true)).phi - expected).norm() < 1e-15);
}

TEST_CASE("single sample point reduces to the pointwise moment map") {
  SampledBundleConfig b;
  b.N = 2;
  b.volumes = {1.0};
  b.weights = {1.0, 2.0};
  b.ranks = {1, 1};
  b.frames = {{column({1, 0}), column({std::sqrt(0.5), std::sqrt(0.5)})}};
  NumericConfiguration c = lines({b.frames[0][0], b.frames[0][1]}, {1.0, 2.0});
  const ComplexMatrix lhs = bundle_moment_map(b).phi;
  const ComplexMatrix rhs = moment_map(c, HermitianMetric::identity(2)).phi;
  CHECK(lhs == rhs);
}

TEST_CASE("bundle balance solve") {
  const BundleBalanceResult sym = bundle_balance_solve(two_point(false));
  CHECK(sym.result.status == BalanceStatus::Balanced);
  CHECK(sym.result.iterations == 0);
  CHECK(bundle_balance_solve(two_point(true)).result.status == BalanceStatus::Diverged);

  SampledBundleConfig three;
  three.N = 2;
  three.volumes = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  three.weights = {1.0};
  three.ranks = {1};
  three.frames = {{column({1, 0})}, {column({0, 1})}, {column({std::sqrt(0.5), std::sqrt(0.5)})}};
  const BundleBalanceResult r = bundle_balance_solve(three);
  CHECK(r.result.status == BalanceStatus::Balanced);
  REQUIRE(r.unique);
  CHECK(*r.unique);
  CHECK(r.uniqueness_gap < 1e-6);
}

TEST_CASE("bundle validation rejects non-orthonormal frames") {
  SampledBundleConfig b = two_point(false);
  b.frames[0][0] = column({2, 0});
  CHECK_THROWS_AS(validate(b), Error);
  b = two_point(false);
  b.volumes[1] = 0;
  CHECK_THROWS_AS(validate(b), Error);
}

#include "gitstab/ample_cone.hpp"

#include "gitstab/error.hpp"
#include "gitstab/parallel.hpp"

#include <algorithm>
#include <random>

namespace gitstab {

void validate(const ConeSpec& spec) {
  if (spec.n == 0) throw Error(ErrorCode::InvalidArgument, "cone spec needs n >= 1");
  for (std::size_t i = 0; i < spec.k.size(); ++i) {
    if (spec.k[i] == 0) throw Error(ErrorCode::InvalidArgument, "k[" + std::to_string(i) + "] must be >= 1");
  }
}

const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

std::vector<Rational> hypersimplex_coordinates(const ConeSpec& spec, std::span<const Rational> weights) {
  validate(spec);
  if (weights.size() != spec.m()) throw Error(ErrorCode::DimensionMismatch, "one weight per k_i required");
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) throw Error(ErrorCode::InvalidArgument, "weights[" + std::to_string(i) + "] must be positive");
    total += static_cast<long>(spec.k[i]) * weights[i];
  }
  std::vector<Rational> x;
  for (const auto& w : weights) x.push_back(static_cast<long>(spec.n) * w / total);
  return x;
}

namespace {

Membership classify(std::span<const Rational> x) {
  Rational top = 0;
  for (const auto& v : x) top = std::max(top, v);
  if (top > 1) return Membership::Outside;
  if (top == 1) return Membership::Boundary;
  return Membership::Interior;
}

}  // namespace

MembershipReport hypersimplex_membership(const ConeSpec& spec, std::span<const Rational> weights) {
  MembershipReport report;
  report.x = hypersimplex_coordinates(spec, weights);
  report.membership = classify(report.x);
  return report;
}

Membership standard_hypersimplex_membership(std::size_t k, std::span<const Rational> x) {
  Rational sum = 0;
  for (const auto& v : x) {
    if (v < 0) return Membership::Outside;
    sum += v;
  }
  if (sum != static_cast<long>(k)) return Membership::Outside;
  return classify(x);
}

NecessaryReport necessary_direction_check(const WeightedConfiguration& c, const SearchOptions& options) {
  if (c.d() != 1) throw Error(ErrorCode::InvalidArgument, "necessary_direction_check needs d = 1");
  DecideOptions opts;
  static_cast<SearchOptions&>(opts) = options;
  NecessaryReport report;
  report.status = decide(c, opts).status;
  const Rational bound = slope_total(c);
  for (const auto& item : c.items()) report.margins.push_back(bound - item.weight);

  ConeSpec spec{c.n(), {}};
  std::vector<Rational> weights;
  bool zero_item = false;
  for (const auto& item : c.items()) {
    zero_item = zero_item || item.subspace.is_zero();
    spec.k.push_back(item.subspace.dim());
    weights.push_back(item.weight);
  }
  if (!zero_item && c.size() > 0) report.membership = hypersimplex_membership(spec, weights).membership;

  if (is_semistable(report.status)) {
    for (std::size_t i = 0; i < report.margins.size(); ++i) {
      if (report.margins[i] < 0 && !c[i].subspace.is_zero()) {
        throw Error(ErrorCode::Internal, "semistable verdict with item " + std::to_string(i) +
                                             " above the necessary bound");
      }
    }
  }
  return report;
}

WeightedConfiguration random_configuration(const ConeSpec& spec, std::span<const Rational> weights,
                                           std::uint64_t seed) {
  validate(spec);
  if (weights.size() != spec.m()) throw Error(ErrorCode::DimensionMismatch, "one weight per k_i required");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::vector<WeightedItem> items;
  for (std::size_t i = 0; i < spec.m(); ++i) {
    if (spec.k[i] > spec.n) throw Error(ErrorCode::InvalidArgument, "k_i exceeds n");
    RationalMatrix basis;
    do {
      basis = RationalMatrix(spec.n, spec.k[i]);
      for (std::size_t r = 0; r < spec.n; ++r)
        for (std::size_t col = 0; col < spec.k[i]; ++col) basis(r, col) = dist(rng);
    } while (basis.rank() != spec.k[i]);
    items.push_back({Subspace::span(basis), weights[i]});
  }
  return WeightedConfiguration(spec.n, 1, std::move(items));
}

ProbeReport conjecture_probe(const ConeSpec& spec, std::span<const Rational> weights, std::size_t trials,
                             std::uint64_t seed, const SearchOptions& options) {
  ProbeReport report;
  report.spec = spec;
  report.weights.assign(weights.begin(), weights.end());
  report.membership = hypersimplex_membership(spec, weights);
  report.trials = trials;
  report.seed = seed;
  std::size_t sum_k = 0;
  std::size_t codim = 0;
  for (std::size_t k : spec.k) {
    sum_k += k;
    codim += k * (spec.n - std::min(k, spec.n));
  }
  report.free_dimension_condition = spec.n < sum_k;
  report.free_codimension_condition = spec.n * spec.n <= codim;

  std::vector<Status> outcomes(trials);
  parallel_for(trials, [&](std::size_t t) {
    const WeightedConfiguration c = random_configuration(spec, weights, seed + t);
    DecideOptions opts;
    static_cast<SearchOptions&>(opts) = options;
    outcomes[t] = decide(c, opts).status;
  });
  for (Status s : outcomes) {
    switch (s) {
      case Status::Unstable: ++report.unstable; break;
      case Status::StrictlySemistable: ++report.strictly_semistable; break;
      case Status::Stable:
      case Status::Polystable: ++report.stable; break;
    }
    if (is_semistable(s) && report.membership.membership == Membership::Outside) ++report.soundness_violations;
  }
  return report;
}

FothWitness foth_witness(std::size_t m, std::span<const Rational> weights) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "foth_witness needs m >= 2");
  const ConeSpec spec{4, std::vector<std::size_t>(m, 2)};
  if (hypersimplex_membership(spec, weights).membership == Membership::Outside) {
    throw Error(ErrorCode::InvalidArgument, "weights outside the hypersimplex");
  }
  std::vector<WeightedItem> items;
  for (std::size_t i = 0; i < m; ++i) {
    // V_i = span(e1 + t e2, e3 + s e4 + r e1) with t, s distinct across i.
    const Rational t = static_cast<long>(i);
    const Rational s = static_cast<long>(2 * i + 1);
    const Rational r = static_cast<long>(i * i + 1);
    RationalMatrix basis(4, 2);
    basis(0, 0) = 1;
    basis(1, 0) = t;
    basis(0, 1) = r;
    basis(2, 1) = 1;
    basis(3, 1) = s;
    items.push_back({Subspace::span(basis), weights[i]});
  }
  const std::size_t plane[] = {0, 1};
  return {WeightedConfiguration(4, 1, std::move(items)), Subspace::coordinate(4, plane)};
}

}  // namespace gitstab

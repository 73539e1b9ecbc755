#pragma once

#include "gitstab/hilbert_mumford.hpp"

#include <cstdint>
#include <vector>

namespace gitstab {

struct ConeSpec {
  std::size_t n = 0;
  std::vector<std::size_t> k;

  std::size_t m() const noexcept { return k.size(); }
};

/// Throws Error(InvalidArgument) for n = 0 or some k_i = 0.
void validate(const ConeSpec& spec);

enum class Membership { Interior, Boundary, Outside };
const char* to_string(Membership m) noexcept;

/// x_i = n ω_i / Σ_j k_j ω_j. Throws for nonpositive weights or a length
/// mismatch.
std::vector<Rational> hypersimplex_coordinates(const ConeSpec& spec, std::span<const Rational> weights);

struct MembershipReport {
  Membership membership = Membership::Interior;
  std::vector<Rational> x;
};

MembershipReport hypersimplex_membership(const ConeSpec& spec, std::span<const Rational> weights);

/// Membership of x in the standard hypersimplex {0 ≤ x_i ≤ 1, Σ x_i = k}.
Membership standard_hypersimplex_membership(std::size_t k, std::span<const Rational> x);

struct NecessaryReport {
  Status status = Status::Stable;
  /// (1/n) Σ_j k_j ω_j − ω_i per item; all ≥ 0 whenever status is semistable.
  std::vector<Rational> margins;
  Membership membership = Membership::Interior;
};

/// Decides c (d = 1) and checks ω_i ≤ (1/n) Σ k_j ω_j when semistable.
/// A violation throws Error(Internal): it would be a checker bug.
NecessaryReport necessary_direction_check(const WeightedConfiguration& c, const SearchOptions& options = {});

/// Items of dimensions spec.k with entries uniform in −9..9, resampled until
/// every basis has full rank.
WeightedConfiguration random_configuration(const ConeSpec& spec, std::span<const Rational> weights,
                                           std::uint64_t seed);

struct ProbeReport {
  ConeSpec spec;
  std::vector<Rational> weights;
  MembershipReport membership;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t unstable = 0;
  std::size_t strictly_semistable = 0;
  std::size_t stable = 0;
  /// Semistable samples whose weights fall outside the hypersimplex.
  std::size_t soundness_violations = 0;
  /// n < Σ k_i and n² ≤ Σ k_i (n − k_i); recorded, not verified.
  bool free_dimension_condition = false;
  bool free_codimension_condition = false;
};

/// Seeded sampling of random configurations; trial t uses seed + t. Runs in
/// parallel up to GITSTAB_THREADS; the report is order-independent.
ProbeReport conjecture_probe(const ConeSpec& spec, std::span<const Rational> weights, std::size_t trials,
                             std::uint64_t seed, const SearchOptions& options = {});

struct FothWitness {
  WeightedConfiguration configuration;
  /// span(e_1, e_2): meets every plane in a line and has slope ℘.
  Subspace f;
};

/// m pairwise transverse planes in Q^4 meeting F = span(e_1, e_2) in
/// distinct lines. Throws Error(InvalidArgument) for m < 2 or ω outside the
/// hypersimplex Δ^m_{4,{2,...,2}}.
FothWitness foth_witness(std::size_t m, std::span<const Rational> weights);

}  // namespace gitstab

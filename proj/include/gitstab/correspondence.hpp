#pragma once

#include "gitstab/configuration.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gitstab {

/// M = (M_1, ..., M_m), an n × Σk_i matrix whose row space is a point of
/// Gr(n, Σk_i) and whose column blocks are the item bases.
struct PackedPoint {
  RationalMatrix matrix;
  std::vector<std::size_t> blocks;

  std::size_t total() const;
  RationalMatrix block(std::size_t i) const;
};

/// Throws Error(BlockDegenerate) unless M has rank n and every block has
/// full column rank.
void validate(const PackedPoint& p);

/// Requires d = 1, nonzero items and n < Σk_i (Error(InvalidArgument)).
PackedPoint gm_forward(const WeightedConfiguration& c);

/// Item i = column span of block i.
WeightedConfiguration gm_backward(const PackedPoint& p, std::span<const Rational> weights);

struct GaleResult {
  /// Items in Q^{Σk_i − n}; a degenerate block appears with its actual span.
  WeightedConfiguration configuration;
  /// Indices of blocks whose Gale block lost column rank.
  std::vector<std::size_t> degenerate_blocks;
  /// Σk_i × (Σk_i − n) kernel basis, rows in block order.
  RationalMatrix kernel_basis;
};

/// Blocks of the rows of a kernel basis of M, read as item bases. Zero
/// blocks are dropped from the configuration and reported as degenerate.
GaleResult gale_transform(const WeightedConfiguration& c);

enum class OrbitAnswer { Yes, No, Inconclusive };
const char* to_string(OrbitAnswer a) noexcept;

struct OrbitResult {
  OrbitAnswer answer = OrbitAnswer::Inconclusive;
  /// Yes: g with g · a = b exactly.
  std::optional<RationalMatrix> g;
  std::string reason;
};

/// Solves g B_i = B'_i C_i jointly; samples `trials` random points of the
/// solution space and certifies invertibility by an exact determinant.
OrbitResult orbit_equivalent(const WeightedConfiguration& a, const WeightedConfiguration& b,
                             std::size_t trials = 32, std::uint64_t seed = 0);

}  // namespace gitstab

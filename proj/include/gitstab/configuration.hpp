#pragma once

#include "gitstab/rational.hpp"
#include "gitstab/subspace.hpp"

#include <cstddef>
#include <vector>

namespace gitstab {

struct WeightedItem {
  Subspace subspace;
  Rational weight;

  friend bool operator==(const WeightedItem&, const WeightedItem&) = default;
};

/// Weighted subspaces K_i of V ⊗ W with n = dim V and d = dim W. Coordinates
/// of V ⊗ W are ordered v_1⊗w_1, v_1⊗w_2, ..., v_n⊗w_d.
class WeightedConfiguration {
 public:
  WeightedConfiguration() = default;
  /// Throws Error(DimensionMismatch) for items outside Q^{n d} and
  /// Error(InvalidArgument) for nonpositive weights or n = 0.
  WeightedConfiguration(std::size_t n, std::size_t d, std::vector<WeightedItem> items);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<WeightedItem>& items() const noexcept { return items_; }
  const WeightedItem& operator[](std::size_t i) const { return items_[i]; }

  std::vector<Rational> weights() const;
  /// Σ ω_i dim K_i.
  Rational weighted_dimension() const;

  friend bool operator==(const WeightedConfiguration&, const WeightedConfiguration&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 1;
  std::vector<WeightedItem> items_;
};

/// h ⊗ W inside V ⊗ W, spanned by h_j ⊗ w_l in j-major order.
Subspace tensor_with_w(const Subspace& h, std::size_t d);

/// Smallest h ⊆ V with k ⊆ h ⊗ W.
Subspace v_support(const Subspace& k, std::size_t n, std::size_t d);

/// (1/n) Σ ω_i dim K_i.
Rational slope_total(const WeightedConfiguration& c);

/// (1/dim h) Σ ω_i dim(K_i ∩ (h ⊗ W)); throws for dim h = 0.
Rational slope_at(const WeightedConfiguration& c, const Subspace& h);

/// Σ ω_i dim(K_i ∩ (h ⊗ W)).
Rational weighted_dimension_at(const WeightedConfiguration& c, const Subspace& h);

/// Items K_i ∩ (h ⊗ W) written in the canonical basis of h ⊗ W.
WeightedConfiguration induced_sub(const WeightedConfiguration& c, const Subspace& h);

/// Images of K_i in (V/h) ⊗ W, using the quotient chart of h.
WeightedConfiguration induced_quotient(const WeightedConfiguration& c, const Subspace& h);

/// Replaces item `index` by two copies with weights s and t (s + t = ω_index).
/// The copies sit at positions index and index + 1.
WeightedConfiguration split(const WeightedConfiguration& c, std::size_t index, const Rational& s,
                            const Rational& t);

/// Merges equal items i and j into one item at position min(i, j).
WeightedConfiguration merge(const WeightedConfiguration& c, std::size_t i, std::size_t j);

/// Merges every group of equal items, keeping first-occurrence order.
WeightedConfiguration merge_duplicates(const WeightedConfiguration& c);

/// g · c for g ∈ GL(V), acting as g ⊗ I on V ⊗ W.
WeightedConfiguration transform(const RationalMatrix& g, const WeightedConfiguration& c);

WeightedConfiguration permute(const WeightedConfiguration& c, std::span<const std::size_t> order);

WeightedConfiguration scale_weights(const WeightedConfiguration& c, const Rational& factor);

}  // namespace gitstab

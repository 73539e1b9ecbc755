#pragma once

#include "gitstab/matrix.hpp"

#include <compare>
#include <cstddef>
#include <vector>

namespace gitstab {

/// A linear subspace of Q^ambient, stored as the unique reduced column
/// echelon basis: column j has a 1 in row pivots()[j], zeros in every other
/// pivot row and above its pivot. Equal subspaces have identical storage.
class Subspace {
 public:
  /// Zero subspace of Q^0.
  Subspace() = default;

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  /// Span of the columns of `spanning`; this is canonicalize().
  static Subspace span(const RationalMatrix& spanning);
  static Subspace span(std::size_t ambient, std::span<const RationalVector> vectors);
  /// Span of standard basis vectors e_i for i in `indices`.
  static Subspace coordinate(std::size_t ambient, std::span<const std::size_t> indices);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  bool is_zero() const noexcept { return pivots_.empty(); }
  bool is_full() const noexcept { return pivots_.size() == ambient_; }

  const RationalMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Rational> vector) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of a vector of this subspace in the canonical basis.
  RationalVector coordinates(std::span<const Rational> vector) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;
  /// Ordering by (dim, pivot rows, entries); used for deterministic
  /// candidate lists and certificate tie-breaking.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  RationalMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace canonicalize(const RationalMatrix& spanning);

Subspace join(const Subspace& a, const Subspace& b);
Subspace meet(const Subspace& a, const Subspace& b);

/// Null space of m, a subspace of Q^{m.cols()}.
Subspace kernel(const RationalMatrix& m);

/// Image of k in ambient/h. The quotient is charted by the coordinates that
/// are not pivot rows of h, in increasing order.
Subspace quotient_image(const Subspace& k, const Subspace& h);

/// Full preimage in the ambient space of a subspace q of the chart of ambient/h.
Subspace quotient_preimage(const Subspace& q, const Subspace& h);

/// Non-pivot rows of h: the coordinates of the quotient chart.
std::vector<std::size_t> quotient_chart(const Subspace& h);

/// Subspace s of `frame` (s ⊆ frame) expressed in frame's canonical basis.
Subspace restrict_to(const Subspace& s, const Subspace& frame);

/// Inverse of restrict_to: s given in frame coordinates, mapped to ambient.
Subspace embed_into(const Subspace& s, const Subspace& frame);

/// a ⊗ b in Q^{n_a * n_b}, index (i, k) -> i * n_b + k.
Subspace tensor(const Subspace& a, const Subspace& b);

/// g * s for a square matrix g acting on the ambient space.
Subspace transform(const RationalMatrix& g, const Subspace& s);

}  // namespace gitstab

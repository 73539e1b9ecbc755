#include "gitstab/subspace.hpp"

#include "gitstab/error.hpp"

#include <algorithm>

namespace gitstab {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": ambient dimensions " + std::to_string(a.ambient_dim()) +
                    " and " + std::to_string(b.ambient_dim()) + " differ");
  }
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = RationalMatrix(ambient, 0);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  return span(RationalMatrix::identity(ambient));
}

Subspace Subspace::span(const RationalMatrix& spanning) {
  Subspace s;
  s.ambient_ = spanning.rows();
  RowEchelon e = row_reduce(spanning.transpose());
  s.basis_ = e.reduced.transpose();
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::span(std::size_t ambient, std::span<const RationalVector> vectors) {
  return span(RationalMatrix::from_columns(ambient, vectors));
}

Subspace Subspace::coordinate(std::size_t ambient, std::span<const std::size_t> indices) {
  RationalMatrix m(ambient, indices.size());
  for (std::size_t c = 0; c < indices.size(); ++c) {
    if (indices[c] >= ambient) throw Error(ErrorCode::DimensionMismatch, "coordinate index out of range");
    m(indices[c], c) = 1;
  }
  return span(m);
}

bool Subspace::contains(std::span<const Rational> vector) const {
  if (vector.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  // Reduce by the canonical basis: v - sum_j v[p_j] b_j must vanish.
  for (std::size_t r = 0; r < ambient_; ++r) {
    Rational acc = vector[r];
    for (std::size_t j = 0; j < pivots_.size(); ++j) {
      if (basis_(r, j) != 0) acc -= vector[pivots_[j]] * basis_(r, j);
    }
    if (acc != 0) return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other, "contains");
  if (other.dim() > dim()) return false;
  for (std::size_t j = 0; j < other.dim(); ++j) {
    if (!contains(other.basis_.column(j))) return false;
  }
  return true;
}

RationalVector Subspace::coordinates(std::span<const Rational> vector) const {
  if (!contains(vector)) throw Error(ErrorCode::InvalidArgument, "vector is not in the subspace");
  RationalVector c(pivots_.size());
  for (std::size_t j = 0; j < pivots_.size(); ++j) c[j] = vector[pivots_[j]];
  return c;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.pivots_ <=> b.pivots_; c != 0) return c;
  // Column-major walk so that earlier basis vectors dominate.
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t r = 0; r < a.ambient_; ++r) {
      const Rational& x = a.basis_(r, j);
      const Rational& y = b.basis_(r, j);
      if (x < y) return std::strong_ordering::less;
      if (y < x) return std::strong_ordering::greater;
    }
  return std::strong_ordering::equal;
}

Subspace canonicalize(const RationalMatrix& spanning) {
  return Subspace::span(spanning);
}

Subspace join(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "join");
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  return Subspace::span(a.basis().hconcat(b.basis()));
}

Subspace meet(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "meet");
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  // Solve A x = B y; the intersection is spanned by A x over the solutions.
  const std::size_t ka = a.dim();
  RationalMatrix system(a.ambient_dim(), ka + b.dim());
  for (std::size_t r = 0; r < a.ambient_dim(); ++r) {
    for (std::size_t j = 0; j < ka; ++j) system(r, j) = a.basis()(r, j);
    for (std::size_t j = 0; j < b.dim(); ++j) system(r, ka + j) = -b.basis()(r, j);
  }
  const Subspace solutions = kernel(system);
  return Subspace::span(a.basis() * solutions.basis().row_block(0, ka));
}

Subspace kernel(const RationalMatrix& m) {
  const std::size_t cols = m.cols();
  const RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<RationalVector> vectors;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(cols, vectors);
}

std::vector<std::size_t> quotient_chart(const Subspace& h) {
  std::vector<std::size_t> chart;
  std::size_t next = 0;
  for (std::size_t r = 0; r < h.ambient_dim(); ++r) {
    if (next < h.pivots().size() && h.pivots()[next] == r) {
      ++next;
      continue;
    }
    chart.push_back(r);
  }
  return chart;
}

Subspace quotient_image(const Subspace& k, const Subspace& h) {
  require_same_ambient(k, h, "quotient_image");
  const std::vector<std::size_t> chart = quotient_chart(h);
  RationalMatrix image(chart.size(), k.dim());
  for (std::size_t j = 0; j < k.dim(); ++j) {
    // v - sum_t v[p_t] h_t has zero pivot coordinates; keep the chart rows.
    for (std::size_t i = 0; i < chart.size(); ++i) {
      const std::size_t r = chart[i];
      Rational acc = k.basis()(r, j);
      for (std::size_t t = 0; t < h.dim(); ++t) {
        const Rational& coeff = k.basis()(h.pivots()[t], j);
        if (coeff != 0 && h.basis()(r, t) != 0) acc -= coeff * h.basis()(r, t);
      }
      image(i, j) = acc;
    }
  }
  return Subspace::span(image);
}

Subspace quotient_preimage(const Subspace& q, const Subspace& h) {
  const std::vector<std::size_t> chart = quotient_chart(h);
  if (q.ambient_dim() != chart.size()) {
    throw Error(ErrorCode::DimensionMismatch, "quotient_preimage: subspace is not in the quotient chart");
  }
  RationalMatrix lifted(h.ambient_dim(), q.dim());
  for (std::size_t j = 0; j < q.dim(); ++j)
    for (std::size_t i = 0; i < chart.size(); ++i) lifted(chart[i], j) = q.basis()(i, j);
  return Subspace::span(h.basis().hconcat(lifted));
}

Subspace restrict_to(const Subspace& s, const Subspace& frame) {
  require_same_ambient(s, frame, "restrict_to");
  RationalMatrix coords(frame.dim(), s.dim());
  for (std::size_t j = 0; j < s.dim(); ++j) {
    const RationalVector c = frame.coordinates(s.basis().column(j));
    for (std::size_t i = 0; i < c.size(); ++i) coords(i, j) = c[i];
  }
  return Subspace::span(coords);
}

Subspace embed_into(const Subspace& s, const Subspace& frame) {
  if (s.ambient_dim() != frame.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "embed_into: subspace ambient must equal frame dimension");
  }
  return Subspace::span(frame.basis() * s.basis());
}

Subspace tensor(const Subspace& a, const Subspace& b) {
  return Subspace::span(kronecker(a.basis(), b.basis()));
}

Subspace transform(const RationalMatrix& g, const Subspace& s) {
  if (g.rows() != g.cols() || g.cols() != s.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "transform: matrix does not act on the ambient space");
  }
  return Subspace::span(g * s.basis());
}

}  // namespace gitstab

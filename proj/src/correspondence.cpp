#include "gitstab/correspondence.hpp"

#include "gitstab/error.hpp"

#include <numeric>
#include <random>

namespace gitstab {

std::size_t PackedPoint::total() const {
  return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
}

RationalMatrix PackedPoint::block(std::size_t i) const {
  const std::size_t first = std::accumulate(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(i),
                                            std::size_t{0});
  return matrix.column_block(first, blocks[i]);
}

void validate(const PackedPoint& p) {
  if (p.total() != p.matrix.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "block widths do not add up to the column count");
  }
  if (p.matrix.rank() != p.matrix.rows()) {
    throw Error(ErrorCode::BlockDegenerate, "packed matrix does not have full row rank");
  }
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (p.blocks[i] == 0 || p.block(i).rank() != p.blocks[i]) {
      throw Error(ErrorCode::BlockDegenerate, "block " + std::to_string(i) + " is rank deficient");
    }
  }
}

PackedPoint gm_forward(const WeightedConfiguration& c) {
  if (c.d() != 1) throw Error(ErrorCode::InvalidArgument, "gm_forward needs d = 1");
  PackedPoint p;
  std::size_t total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].subspace.is_zero()) throw Error(ErrorCode::InvalidArgument, "item " + std::to_string(i) + " is zero");
    p.blocks.push_back(c[i].subspace.dim());
    total += c[i].subspace.dim();
  }
  if (c.n() >= total) {
    throw Error(ErrorCode::InvalidArgument, "correspondence needs n < sum of item dimensions");
  }
  p.matrix = RationalMatrix(c.n(), 0);
  for (const auto& item : c.items()) p.matrix = p.matrix.hconcat(item.subspace.basis());
  validate(p);
  return p;
}

WeightedConfiguration gm_backward(const PackedPoint& p, std::span<const Rational> weights) {
  validate(p);
  if (weights.size() != p.blocks.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one weight per block required");
  }
  std::vector<WeightedItem> items;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) items.push_back({Subspace::span(p.block(i)), weights[i]});
  return WeightedConfiguration(p.matrix.rows(), 1, std::move(items));
}

GaleResult gale_transform(const WeightedConfiguration& c) {
  const PackedPoint p = gm_forward(c);
  const Subspace null = kernel(p.matrix);
  GaleResult out;
  out.kernel_basis = null.basis();
  const std::size_t dual = null.dim();
  std::vector<WeightedItem> items;
  std::size_t row = 0;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const RationalMatrix rows = out.kernel_basis.row_block(row, p.blocks[i]);
    row += p.blocks[i];
    const Subspace span = Subspace::span(rows.transpose());
    if (span.dim() != p.blocks[i]) out.degenerate_blocks.push_back(i);
    if (!span.is_zero()) items.push_back({span, c[i].weight});
  }
  out.configuration = WeightedConfiguration(dual, 1, std::move(items));
  return out;
}

const char* to_string(OrbitAnswer a) noexcept {
  switch (a) {
    case OrbitAnswer::Yes: return "Yes";
    case OrbitAnswer::No: return "No";
    case OrbitAnswer::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

std::optional<std::string> invariant_mismatch(const WeightedConfiguration& a, const WeightedConfiguration& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].subspace.dim() != b[i].subspace.dim()) return "item " + std::to_string(i) + " dimensions differ";
    if (a[i].weight != b[i].weight) return "item " + std::to_string(i) + " weights differ";
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (meet(a[i].subspace, a[j].subspace).dim() != meet(b[i].subspace, b[j].subspace).dim()) {
        return "intersection dimension of items " + std::to_string(i) + ", " + std::to_string(j) + " differs";
      }
    }
  }
  return std::nullopt;
}

bool maps_onto(const RationalMatrix& g, const WeightedConfiguration& a, const WeightedConfiguration& b) {
  if (g.determinant() == 0) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (transform(kronecker(g, RationalMatrix::identity(a.d())), a[i].subspace) != b[i].subspace) return false;
  }
  return true;
}

}  // namespace

OrbitResult orbit_equivalent(const WeightedConfiguration& a, const WeightedConfiguration& b, std::size_t trials,
                             std::uint64_t seed) {
  if (a.n() != b.n() || a.d() != b.d() || a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "orbit_equivalent: shapes differ");
  }
  OrbitResult result;
  if (auto reason = invariant_mismatch(a, b)) {
    result.answer = OrbitAnswer::No;
    result.reason = *reason;
    return result;
  }
  const std::size_t n = a.n();
  const std::size_t d = a.d();
  const RationalMatrix id = RationalMatrix::identity(n);
  if (maps_onto(id, a, b)) {
    result.answer = OrbitAnswer::Yes;
    result.g = id;
    return result;
  }

  // Unknowns: g row-major, then each C_i row-major.
  std::vector<std::size_t> offset{n * n};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t k = a[i].subspace.dim();
    offset.push_back(offset.back() + k * k);
  }
  const std::size_t unknowns = offset.back();
  std::vector<RationalVector> equations;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const RationalMatrix& bi = a[i].subspace.basis();
    const RationalMatrix& bp = b[i].subspace.basis();
    const std::size_t k = bi.cols();
    for (std::size_t r = 0; r < n * d; ++r) {
      const std::size_t rv = r / d;
      const std::size_t rw = r % d;
      for (std::size_t col = 0; col < k; ++col) {
        RationalVector eq(unknowns);
        for (std::size_t x = 0; x < n; ++x) eq[rv * n + x] = bi(x * d + rw, col);
        for (std::size_t j = 0; j < k; ++j) eq[offset[i] + j * k + col] -= bp(r, j);
        equations.push_back(std::move(eq));
      }
    }
  }
  const Subspace solutions = equations.empty() ? Subspace::full(unknowns)
                                               : kernel(RationalMatrix::from_rows(unknowns, equations));
  // Keep only the g-part of the solution space.
  std::vector<RationalVector> g_basis;
  for (std::size_t s = 0; s < solutions.dim(); ++s) {
    RationalVector v(n * n);
    for (std::size_t u = 0; u < n * n; ++u) v[u] = solutions.basis()(u, s);
    g_basis.push_back(std::move(v));
  }
  const Subspace g_space = Subspace::span(n * n, g_basis);
  if (g_space.is_zero()) {
    result.answer = OrbitAnswer::No;
    result.reason = "only g = 0 solves the linear system";
    return result;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-97, 97);
  for (std::size_t t = 0; t < trials; ++t) {
    RationalMatrix g(n, n);
    for (std::size_t s = 0; s < g_space.dim(); ++s) {
      const Rational coefficient = dist(rng);
      for (std::size_t u = 0; u < n * n; ++u) g(u / n, u % n) += coefficient * g_space.basis()(u, s);
    }
    if (maps_onto(g, a, b)) {
      result.answer = OrbitAnswer::Yes;
      result.g = std::move(g);
      return result;
    }
  }
  result.answer = OrbitAnswer::Inconclusive;
  result.reason = "no invertible solution among " + std::to_string(trials) + " samples";
  return result;
}

}  // namespace gitstab

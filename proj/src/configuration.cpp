#include "gitstab/configuration.hpp"

#include "gitstab/error.hpp"

#include <algorithm>
#include <utility>

namespace gitstab {

WeightedConfiguration::WeightedConfiguration(std::size_t n, std::size_t d, std::vector<WeightedItem> items)
    : n_(n), d_(d), items_(std::move(items)) {
  if (n_ == 0 || d_ == 0) throw Error(ErrorCode::InvalidArgument, "configuration needs n >= 1 and d >= 1");
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].subspace.ambient_dim() != n_ * d_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "item " + std::to_string(i) + " does not live in V ⊗ W of dimension " +
                      std::to_string(n_ * d_));
    }
    if (items_[i].weight <= 0) {
      throw Error(ErrorCode::InvalidArgument, "item " + std::to_string(i) + " has nonpositive weight");
    }
  }
}

std::vector<Rational> WeightedConfiguration::weights() const {
  std::vector<Rational> w;
  w.reserve(items_.size());
  for (const auto& item : items_) w.push_back(item.weight);
  return w;
}

Rational WeightedConfiguration::weighted_dimension() const {
  Rational total = 0;
  for (const auto& item : items_) total += item.weight * static_cast<long>(item.subspace.dim());
  return total;
}

Subspace tensor_with_w(const Subspace& h, std::size_t d) {
  if (d == 1) return h;
  return tensor(h, Subspace::full(d));
}

Subspace v_support(const Subspace& k, std::size_t n, std::size_t d) {
  if (k.ambient_dim() != n * d) throw Error(ErrorCode::DimensionMismatch, "v_support: ambient is not n*d");
  if (d == 1) return k;
  // Each basis vector reshaped to an n × d matrix contributes its column span.
  std::vector<RationalVector> columns;
  for (std::size_t j = 0; j < k.dim(); ++j) {
    for (std::size_t l = 0; l < d; ++l) {
      RationalVector v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = k.basis()(a * d + l, j);
      columns.push_back(std::move(v));
    }
  }
  return Subspace::span(n, columns);
}

Rational slope_total(const WeightedConfiguration& c) {
  return c.weighted_dimension() / static_cast<long>(c.n());
}

Rational weighted_dimension_at(const WeightedConfiguration& c, const Subspace& h) {
  if (h.ambient_dim() != c.n()) throw Error(ErrorCode::DimensionMismatch, "h is not a subspace of V");
  const Subspace hw = tensor_with_w(h, c.d());
  Rational total = 0;
  for (const auto& item : c.items()) {
    total += item.weight * static_cast<long>(meet(item.subspace, hw).dim());
  }
  return total;
}

Rational slope_at(const WeightedConfiguration& c, const Subspace& h) {
  if (h.is_zero()) throw Error(ErrorCode::InvalidArgument, "slope_at: h must be nonzero");
  return weighted_dimension_at(c, h) / static_cast<long>(h.dim());
}

WeightedConfiguration induced_sub(const WeightedConfiguration& c, const Subspace& h) {
  if (h.ambient_dim() != c.n()) throw Error(ErrorCode::DimensionMismatch, "h is not a subspace of V");
  if (h.is_zero()) throw Error(ErrorCode::InvalidArgument, "induced_sub: h must be nonzero");
  const Subspace hw = tensor_with_w(h, c.d());
  std::vector<WeightedItem> items;
  items.reserve(c.size());
  for (const auto& item : c.items()) {
    items.push_back({restrict_to(meet(item.subspace, hw), hw), item.weight});
  }
  return WeightedConfiguration(h.dim(), c.d(), std::move(items));
}

WeightedConfiguration induced_quotient(const WeightedConfiguration& c, const Subspace& h) {
  if (h.ambient_dim() != c.n()) throw Error(ErrorCode::DimensionMismatch, "h is not a subspace of V");
  if (h.is_full()) throw Error(ErrorCode::InvalidArgument, "induced_quotient: h must be proper");
  if (h.is_zero()) return c;
  const Subspace hw = tensor_with_w(h, c.d());
  std::vector<WeightedItem> items;
  items.reserve(c.size());
  for (const auto& item : c.items()) {
    items.push_back({quotient_image(item.subspace, hw), item.weight});
  }
  return WeightedConfiguration(c.n() - h.dim(), c.d(), std::move(items));
}

WeightedConfiguration split(const WeightedConfiguration& c, std::size_t index, const Rational& s,
                            const Rational& t) {
  if (index >= c.size()) throw Error(ErrorCode::InvalidArgument, "split: index out of range");
  if (s <= 0 || t <= 0) throw Error(ErrorCode::InvalidArgument, "split: parts must be positive");
  if (s + t != c[index].weight) throw Error(ErrorCode::InvalidArgument, "split: parts must sum to the weight");
  std::vector<WeightedItem> items = c.items();
  items[index].weight = s;
  items.insert(items.begin() + static_cast<std::ptrdiff_t>(index) + 1, {c[index].subspace, t});
  return WeightedConfiguration(c.n(), c.d(), std::move(items));
}

WeightedConfiguration merge(const WeightedConfiguration& c, std::size_t i, std::size_t j) {
  if (i >= c.size() || j >= c.size() || i == j) throw Error(ErrorCode::InvalidArgument, "merge: bad positions");
  if (c[i].subspace != c[j].subspace) throw Error(ErrorCode::InvalidArgument, "merge: subspaces differ");
  const std::size_t keep = std::min(i, j);
  const std::size_t drop = std::max(i, j);
  std::vector<WeightedItem> items = c.items();
  items[keep].weight += items[drop].weight;
  items.erase(items.begin() + static_cast<std::ptrdiff_t>(drop));
  return WeightedConfiguration(c.n(), c.d(), std::move(items));
}

WeightedConfiguration merge_duplicates(const WeightedConfiguration& c) {
  std::vector<WeightedItem> items;
  for (const auto& item : c.items()) {
    auto it = std::find_if(items.begin(), items.end(),
                           [&](const WeightedItem& x) { return x.subspace == item.subspace; });
    if (it == items.end()) {
      items.push_back(item);
    } else {
      it->weight += item.weight;
    }
  }
  return WeightedConfiguration(c.n(), c.d(), std::move(items));
}

WeightedConfiguration transform(const RationalMatrix& g, const WeightedConfiguration& c) {
  if (g.rows() != c.n() || g.cols() != c.n()) throw Error(ErrorCode::DimensionMismatch, "g must be n × n");
  const RationalMatrix gw = c.d() == 1 ? g : kronecker(g, RationalMatrix::identity(c.d()));
  std::vector<WeightedItem> items;
  items.reserve(c.size());
  for (const auto& item : c.items()) items.push_back({transform(gw, item.subspace), item.weight});
  return WeightedConfiguration(c.n(), c.d(), std::move(items));
}

WeightedConfiguration permute(const WeightedConfiguration& c, std::span<const std::size_t> order) {
  if (order.size() != c.size()) throw Error(ErrorCode::InvalidArgument, "permute: order has wrong length");
  std::vector<WeightedItem> items;
  items.reserve(c.size());
  for (std::size_t i : order) items.push_back(c.items().at(i));
  return WeightedConfiguration(c.n(), c.d(), std::move(items));
}

WeightedConfiguration scale_weights(const WeightedConfiguration& c, const Rational& factor) {
  if (factor <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<WeightedItem> items = c.items();
  for (auto& item : items) item.weight *= factor;
  return WeightedConfiguration(c.n(), c.d(), std::move(items));
}

}  // namespace gitstab

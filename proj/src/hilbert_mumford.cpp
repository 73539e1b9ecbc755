#include "gitstab/hilbert_mumford.hpp"

#include "gitstab/balance.hpp"
#include "gitstab/digest.hpp"
#include "gitstab/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace gitstab {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Unstable: return "Unstable";
    case Status::StrictlySemistable: return "StrictlySemistable";
    case Status::Stable: return "Stable";
    case Status::Polystable: return "Polystable";
  }
  return "Unknown";
}

const char* to_string(Confidence c) noexcept {
  switch (c) {
    case Confidence::ExactComplete: return "ExactComplete";
    case Confidence::ExactWithinDepth: return "ExactWithinDepth";
    case Confidence::NumericallyCorroborated: return "NumericallyCorroborated";
  }
  return "Unknown";
}

OnePS::OnePS(RationalMatrix frame, std::vector<std::int64_t> q) : frame_(std::move(frame)), q_(std::move(q)) {
  if (frame_.rows() != q_.size() || frame_.cols() != q_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "frame must be n × n with n = len(q)");
  }
  if (!std::is_sorted(q_.begin(), q_.end(), std::greater<>())) {
    throw Error(ErrorCode::InvalidArgument, "q must be non-increasing");
  }
  if (std::accumulate(q_.begin(), q_.end(), std::int64_t{0}) != 0) {
    throw Error(ErrorCode::InvalidArgument, "q must sum to zero");
  }
  if (frame_.determinant() == 0) throw Error(ErrorCode::SingularFrame, "frame is singular");
}

Subspace OnePS::flag_step(std::size_t s) const {
  return Subspace::span(frame_.column_block(0, s));
}

Rational mu_lambda_s(const WeightedConfiguration& c, const Subspace& h) {
  if (h.ambient_dim() != c.n()) throw Error(ErrorCode::DimensionMismatch, "h is not a subspace of V");
  if (h.is_zero() || h.is_full()) throw Error(ErrorCode::InvalidArgument, "mu_lambda_s needs 0 < dim h < n");
  return static_cast<long>(c.n()) * weighted_dimension_at(c, h) -
         static_cast<long>(h.dim()) * c.weighted_dimension();
}

namespace {

// 1-based positions l at which dim(K ∩ E_l) jumps, E_l spanned by the first l
// coordinates. Echelon form in reversed coordinate order exposes them as the
// distinct "last nonzero" rows.
std::vector<std::size_t> jump_indices(const RationalMatrix& basis) {
  const std::size_t rows = basis.rows();
  RationalMatrix reversed(rows, basis.cols());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) reversed(rows - 1 - r, c) = basis(r, c);
  const Subspace s = Subspace::span(reversed);
  std::vector<std::size_t> jumps;
  for (std::size_t p : s.pivots()) jumps.push_back(rows - p);
  std::sort(jumps.begin(), jumps.end());
  return jumps;
}

}  // namespace

Rational mu_general(const WeightedConfiguration& c, const OnePS& lambda) {
  if (lambda.n() != c.n()) throw Error(ErrorCode::DimensionMismatch, "1-PS acts on a space of the wrong dimension");
  const std::size_t d = c.d();
  const RationalMatrix frame_inv = inverse(lambda.frame());
  const RationalMatrix to_frame = d == 1 ? frame_inv : kronecker(frame_inv, RationalMatrix::identity(d));
  Rational mu = 0;
  for (const auto& item : c.items()) {
    Rational sum = 0;
    for (std::size_t l : jump_indices(to_frame * item.subspace.basis())) {
      sum += lambda.q()[(l - 1) / d];
    }
    mu += item.weight * sum;
  }
  return mu;
}

std::vector<Rational> lambda_s_coefficients(std::span<const std::int64_t> q) {
  const auto n = static_cast<long>(q.size());
  std::vector<Rational> coeffs;
  for (std::size_t s = 0; s + 1 < q.size(); ++s) coeffs.emplace_back(Rational(q[s] - q[s + 1]) / n);
  return coeffs;
}

std::vector<std::int64_t> lambda_s_vector(std::size_t n, std::size_t s) {
  std::vector<std::int64_t> q(n);
  for (std::size_t a = 0; a < n; ++a) {
    q[a] = a < s ? static_cast<std::int64_t>(n - s) : -static_cast<std::int64_t>(s);
  }
  return q;
}

namespace {

constexpr std::size_t kLatticeCap = 4096;

bool proper(const Subspace& s) { return !s.is_zero() && !s.is_full(); }

// Largest h with h ⊗ W ⊆ k.
Subspace inner_support(const Subspace& k, std::size_t n, std::size_t d) {
  Subspace result = Subspace::full(n);
  for (std::size_t l = 0; l < d && !result.is_zero(); ++l) {
    // {v : v ⊗ w_l ∈ k} is the preimage of k under v ↦ v ⊗ w_l.
    RationalMatrix embed(n * d, n);
    for (std::size_t a = 0; a < n; ++a) embed(a * d + l, a) = 1;
    const Subspace image = meet(k, Subspace::span(embed));
    RationalMatrix back(n, image.dim());
    for (std::size_t j = 0; j < image.dim(); ++j)
      for (std::size_t a = 0; a < n; ++a) back(a, j) = image.basis()(a * d + l, j);
    result = meet(result, Subspace::span(back));
  }
  return result;
}

}  // namespace

std::vector<Subspace> candidate_subspaces(const WeightedConfiguration& c, std::size_t depth) {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  const std::size_t n = c.n();
  const std::size_t d = c.d();
  std::set<Subspace> found;
  std::vector<Subspace> frontier;
  auto add = [&](Subspace s) {
    if (!proper(s) || found.size() >= kLatticeCap) return;
    if (found.insert(s).second) frontier.push_back(std::move(s));
  };
  for (const auto& item : c.items()) {
    if (d == 1) {
      add(item.subspace);
    } else {
      add(v_support(item.subspace, n, d));
      add(inner_support(item.subspace, n, d));
    }
  }
  for (std::size_t round = 0; round < depth && !frontier.empty(); ++round) {
    const std::vector<Subspace> fresh = std::exchange(frontier, {});
    const std::vector<Subspace> all(found.begin(), found.end());
    for (const auto& a : fresh) {
      for (const auto& b : all) {
        if (a == b) continue;
        add(meet(a, b));
        add(join(a, b));
      }
      if (d > 1) {
        const Subspace aw = tensor_with_w(a, d);
        for (const auto& item : c.items()) add(v_support(meet(item.subspace, aw), n, d));
      }
    }
  }
  return {found.begin(), found.end()};
}

namespace {

RationalVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-97, 97);
  RationalVector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

// X + (random vectors) until the dimension reaches s.
Subspace random_extension(const Subspace& x, std::size_t s, std::mt19937_64& rng) {
  Subspace h = x;
  while (h.dim() < s) {
    const RationalVector v = random_vector(h.ambient_dim(), rng);
    h = join(h, Subspace::span(h.ambient_dim(), std::span<const RationalVector>(&v, 1)));
  }
  return h;
}

Subspace random_inside(const Subspace& x, std::size_t s, std::mt19937_64& rng) {
  Subspace inner = Subspace::zero(x.dim());
  while (inner.dim() < s) inner = random_extension(inner, s, rng);
  return embed_into(inner, x);
}

constexpr std::size_t kProbeBaseCap = 48;

std::vector<Subspace> generic_probes(std::size_t n, std::span<const Subspace> bases, std::uint64_t seed) {
  std::vector<Subspace> probes;
  if (n < 2) return probes;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 1; s < n; ++s) probes.push_back(random_extension(Subspace::zero(n), s, rng));
  if (n < 3) return probes;
  std::size_t used = 0;
  for (const auto& x : bases) {
    if (used++ >= kProbeBaseCap) break;
    for (std::size_t s = x.dim() + 1; s < n; ++s) probes.push_back(random_extension(x, s, rng));
    for (std::size_t s = 1; s < x.dim(); ++s) probes.push_back(random_inside(x, s, rng));
  }
  return probes;
}

std::string serialize(const Subspace& s) {
  std::string out = std::to_string(s.ambient_dim()) + ":";
  for (const auto& e : s.basis().entries()) {
    out += to_string(e);
    out += ',';
  }
  return out;
}

}  // namespace

SearchTable build_search_table(const WeightedConfiguration& c, const SearchOptions& options) {
  SearchTable table;
  table.n = c.n();
  table.d = c.d();
  std::set<Subspace> seen;
  auto add = [&](const Subspace& s) {
    if (s.ambient_dim() != c.n()) {
      throw Error(ErrorCode::DimensionMismatch, "extra subspace is not a subspace of V");
    }
    if (proper(s) && seen.insert(s).second) table.family.push_back(s);
  };
  for (const auto& s : options.extra) add(s);
  const std::vector<Subspace> lattice = candidate_subspaces(c, options.depth);
  for (const auto& s : lattice) add(s);
  if (options.generic_probes) {
    std::vector<Subspace> bases(table.family.begin(), table.family.end());
    const std::uint64_t seed = 0x9e3779b97f4a7c15ULL ^ (c.n() * 1315423911ULL + c.d());
    for (const auto& s : generic_probes(c.n(), bases, seed)) add(s);
  }

  // n = 1 has no proper subspaces; for d = 1, n = 2 every line outside the
  // family meets only the full items, which a generic probe also captures.
  const bool has_generic_line = options.generic_probes;
  table.complete = c.n() == 1 || (c.n() == 2 && c.d() == 1 && has_generic_line);

  table.item_dims.reserve(c.size());
  for (const auto& item : c.items()) table.item_dims.push_back(item.subspace.dim());
  Fnv1a digest;
  table.dims.reserve(table.family.size());
  for (const auto& h : table.family) {
    const Subspace hw = tensor_with_w(h, c.d());
    std::vector<std::size_t> row;
    row.reserve(c.size());
    for (const auto& item : c.items()) row.push_back(meet(item.subspace, hw).dim());
    table.dims.push_back(std::move(row));
    digest.update(serialize(h));
  }
  table.digest = digest.hex();
  return table;
}

Verdict evaluate(const SearchTable& table, std::span<const Rational> weights) {
  if (weights.size() != table.item_dims.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector length does not match the configuration");
  }
  Verdict v;
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * static_cast<long>(table.item_dims[i]);
  v.slope_total = total / static_cast<long>(table.n);
  v.candidates_tested = table.family.size();
  v.candidate_digest = table.digest;

  std::optional<std::size_t> worst;
  Rational worst_slope;
  std::optional<std::size_t> equality;
  for (std::size_t h = 0; h < table.family.size(); ++h) {
    Rational at = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (table.dims[h][i] != 0) at += weights[i] * static_cast<long>(table.dims[h][i]);
    }
    at /= static_cast<long>(table.family[h].dim());
    if (at > v.slope_total) {
      if (!worst || at > worst_slope) {
        worst = h;
        worst_slope = at;
      }
    } else if (at == v.slope_total && !equality) {
      equality = h;
    }
  }
  if (worst) {
    v.status = Status::Unstable;
    v.confidence = Confidence::ExactComplete;
    v.certificate = table.family[*worst];
    v.certificate_slope = worst_slope;
    return v;
  }
  v.confidence = table.complete ? Confidence::ExactComplete : Confidence::ExactWithinDepth;
  if (equality) {
    v.status = Status::StrictlySemistable;
    v.certificate = table.family[*equality];
    v.certificate_slope = v.slope_total;
  } else {
    v.status = Status::Stable;
  }
  return v;
}

namespace {

void corroborate(const WeightedConfiguration& c, const SearchTable& table, Verdict& v) {
  const BalanceResult r = balance_solve(c, BalanceOptions{});
  switch (r.status) {
    case BalanceStatus::Balanced:
      if (v.confidence == Confidence::ExactWithinDepth) v.confidence = Confidence::NumericallyCorroborated;
      v.note = "balance metric found; residual " + std::to_string(r.residual);
      break;
    case BalanceStatus::Diverged: {
      const std::vector<Subspace> hints = exact_destabilizers(c, r, table.family);
      if (!hints.empty()) {
        v.status = Status::Unstable;
        v.confidence = Confidence::ExactComplete;
        v.certificate = hints.front();
        v.certificate_slope = slope_at(c, hints.front());
        v.note = "destabilizer exposed by moment-map descent";
      } else {
        v.note = "descent diverged but no destabilizer could be exactified";
      }
      break;
    }
    case BalanceStatus::MaxIter:
      v.note = "descent reached the iteration cap without balancing";
      break;
  }
}

}  // namespace

Verdict decide(const WeightedConfiguration& c, const DecideOptions& options) {
  const SearchTable table = build_search_table(c, options);
  const std::vector<Rational> w = c.weights();
  Verdict v = evaluate(table, w);
  if (options.numeric && v.status != Status::Unstable) corroborate(c, table, v);
  return v;
}

bool verify_certificate(const WeightedConfiguration& c, const Verdict& v) {
  const Rational total = slope_total(c);
  if (total != v.slope_total) return false;
  switch (v.status) {
    case Status::Unstable:
      return v.certificate && slope_at(c, *v.certificate) > total && mu_lambda_s(c, *v.certificate) > 0;
    case Status::StrictlySemistable:
      return v.certificate && slope_at(c, *v.certificate) == total;
    case Status::Stable:
      return !v.certificate;
    case Status::Polystable: {
      std::size_t sum = 0;
      Subspace span = Subspace::zero(c.n());
      for (const auto& h : v.decomposition) {
        sum += h.dim();
        span = join(span, h);
        if (slope_at(c, h) != total) return false;
      }
      return sum == c.n() && span.is_full();
    }
  }
  return false;
}

DominantWeightReport dominant_weight_check(const WeightedConfiguration& c, std::size_t index,
                                           const SearchOptions& options) {
  if (c.size() < 2) throw Error(ErrorCode::InvalidArgument, "dominant_weight_check needs m >= 2");
  if (index >= c.size()) throw Error(ErrorCode::InvalidArgument, "item index out of range");
  const auto n = static_cast<long>(c.n());
  const auto d = static_cast<long>(c.d());
  // |R_h| ≤ max((n−1) Σ_{j≠i} ω_j k_j, n Σ_{j≠i} ω_j min(k_j, d(n−1))) / ω_i.
  Rational by_dimension = 0;
  Rational by_intersection = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == index) continue;
    const auto k = static_cast<long>(c[j].subspace.dim());
    by_dimension += c[j].weight * k;
    by_intersection += c[j].weight * std::min(k, d * (n - 1));
  }
  DominantWeightReport report;
  report.index = index;
  report.threshold = std::max(Rational(by_dimension * (n - 1)), Rational(by_intersection * n));
  report.dominant = c[index].weight > report.threshold;

  DecideOptions opts;
  static_cast<SearchOptions&>(opts) = options;
  report.configuration_status = decide(c, opts).status;
  const WeightedConfiguration single(c.n(), c.d(), {c[index]});
  report.item_status = decide(single, opts).status;
  report.semistable_implication =
      !is_semistable(report.configuration_status) || is_semistable(report.item_status);
  report.stable_implication =
      report.item_status != Status::Stable || report.configuration_status == Status::Stable;
  return report;
}

}  // namespace gitstab

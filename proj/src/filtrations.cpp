#include "gitstab/filtrations.hpp"

#include "gitstab/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>

namespace gitstab {

void validate(const Flag& flag) {
  if (flag.steps.size() < 2) throw Error(ErrorCode::InvalidArgument, "flag needs at least 0 and V");
  if (!flag.steps.front().is_zero()) throw Error(ErrorCode::InvalidArgument, "flag must start at 0");
  if (!flag.steps.back().is_full()) throw Error(ErrorCode::InvalidArgument, "flag must end at V");
  for (std::size_t l = 1; l < flag.steps.size(); ++l) {
    const Subspace& lower = flag.steps[l - 1];
    const Subspace& upper = flag.steps[l];
    if (lower.dim() >= upper.dim() || !upper.contains(lower)) {
      throw Error(ErrorCode::InvalidArgument, "flag steps must be strictly increasing");
    }
  }
}

namespace {

std::vector<Rational> slopes_over(const SearchTable& table, const WeightedConfiguration& c) {
  std::vector<Rational> slopes;
  slopes.reserve(table.family.size());
  for (std::size_t h = 0; h < table.family.size(); ++h) {
    Rational at = 0;
    for (std::size_t i = 0; i < c.size(); ++i) at += c[i].weight * static_cast<long>(table.dims[h][i]);
    slopes.push_back(at / static_cast<long>(table.family[h].dim()));
  }
  return slopes;
}

SearchOptions with_extra(const SearchOptions& base, std::vector<Subspace> extra) {
  SearchOptions opts = base;
  opts.extra = std::move(extra);
  return opts;
}

Status status_of(const WeightedConfiguration& c, const SearchOptions& options) {
  DecideOptions opts;
  static_cast<SearchOptions&>(opts) = options;
  return decide(c, opts).status;
}

void degrade(Confidence& overall, const SearchTable& table) {
  if (!table.complete) overall = Confidence::ExactWithinDepth;
}

}  // namespace

FiltrationReport hn_filtration(const WeightedConfiguration& c, const SearchOptions& options) {
  FiltrationReport report;
  report.confidence = Confidence::ExactComplete;
  Subspace prev = Subspace::zero(c.n());
  report.flag.steps.push_back(prev);
  for (;;) {
    const WeightedConfiguration q = prev.is_zero() ? c : induced_quotient(c, prev);
    std::vector<Subspace> extra;
    for (const auto& e : options.extra) {
      const Subspace image = prev.is_zero() ? e : quotient_image(e, prev);
      extra.push_back(image);
    }
    const SearchOptions opts = with_extra(options, std::move(extra));
    const SearchTable table = build_search_table(q, opts);
    degrade(report.confidence, table);
    const std::vector<Rational> slopes = slopes_over(table, q);
    const Rational total = slope_total(q);

    Rational best = total;
    for (const auto& s : slopes) best = std::max(best, s);
    if (best == total) {
      report.graded.push_back({q, total, status_of(q, SearchOptions{options.depth, {}, options.generic_probes})});
      report.flag.steps.push_back(Subspace::full(c.n()));
      break;
    }
    // Maximizers are closed under join; their join is the maximal destabilizer.
    Subspace top = Subspace::zero(q.n());
    for (std::size_t h = 0; h < slopes.size(); ++h) {
      if (slopes[h] == best) top = join(top, table.family[h]);
    }
    if (slope_at(q, top) != best) {
      throw Error(ErrorCode::Internal, "join of maximal-slope subspaces lost the maximal slope");
    }
    const WeightedConfiguration graded = induced_sub(q, top);
    report.graded.push_back({graded, best, status_of(graded, SearchOptions{options.depth, {}, options.generic_probes})});
    prev = quotient_preimage(top, prev);
    report.flag.steps.push_back(prev);
  }
  return report;
}

namespace {

struct JhParts {
  std::vector<Subspace> steps;  // proper steps in the local coordinates
  std::vector<GradedStep> graded;
};

std::vector<Subspace> restrict_extras(std::span<const Subspace> extra, const Subspace& h) {
  std::vector<Subspace> out;
  for (const auto& e : extra) {
    const Subspace inside = meet(e, h);
    if (!inside.is_zero()) out.push_back(restrict_to(inside, h));
  }
  return out;
}

JhParts jh_recursive(const WeightedConfiguration& c, const SearchOptions& options, Confidence& confidence) {
  const SearchTable table = build_search_table(c, options);
  degrade(confidence, table);
  const std::vector<Rational> slopes = slopes_over(table, c);
  const Rational total = slope_total(c);
  std::optional<std::size_t> pick;
  for (std::size_t h = 0; h < slopes.size(); ++h) {
    if (slopes[h] > total) throw Error(ErrorCode::InvalidArgument, "jh_filtration: configuration is unstable");
    if (slopes[h] == total && (!pick || table.family[h].dim() > table.family[*pick].dim())) pick = h;
  }
  const SearchOptions plain{options.depth, {}, options.generic_probes};
  if (!pick) return {{}, {{c, total, status_of(c, plain)}}};

  const Subspace& h = table.family[*pick];
  JhParts inner = jh_recursive(induced_sub(c, h), with_extra(options, restrict_extras(options.extra, h)), confidence);
  JhParts parts;
  for (const auto& s : inner.steps) parts.steps.push_back(embed_into(s, h));
  parts.steps.push_back(h);
  parts.graded = std::move(inner.graded);
  const WeightedConfiguration top = induced_quotient(c, h);
  parts.graded.push_back({top, slope_total(top), status_of(top, plain)});
  return parts;
}

}  // namespace

FiltrationReport jh_filtration(const WeightedConfiguration& c, const SearchOptions& options) {
  DecideOptions opts;
  static_cast<SearchOptions&>(opts) = options;
  if (decide(c, opts).status == Status::Unstable) {
    throw Error(ErrorCode::InvalidArgument, "jh_filtration: configuration is unstable");
  }
  FiltrationReport report;
  report.confidence = Confidence::ExactComplete;
  JhParts parts = jh_recursive(c, options, report.confidence);
  report.flag.steps.push_back(Subspace::zero(c.n()));
  for (auto& s : parts.steps) report.flag.steps.push_back(std::move(s));
  report.flag.steps.push_back(Subspace::full(c.n()));
  report.graded = std::move(parts.graded);
  return report;
}

namespace {

constexpr std::size_t kPairCap = 20000;

std::optional<std::vector<Subspace>> direct_sum_split(const WeightedConfiguration& c, const SearchOptions& options,
                                                      std::size_t& budget) {
  const SearchTable table = build_search_table(c, options);
  const std::vector<Rational> slopes = slopes_over(table, c);
  const Rational total = slope_total(c);
  std::vector<std::size_t> equal;
  for (std::size_t h = 0; h < slopes.size(); ++h) {
    if (slopes[h] > total) return std::nullopt;
    if (slopes[h] == total) equal.push_back(h);
  }
  if (equal.empty()) return std::vector<Subspace>{Subspace::full(c.n())};

  std::mt19937_64 rng(0x5eed + c.n());
  std::uniform_int_distribution<int> dist(-9, 9);
  for (std::size_t a : equal) {
    const Subspace& A = table.family[a];
    // Partners: equal-slope members plus a coordinate and a random complement.
    std::vector<Subspace> partners;
    for (std::size_t b : equal) {
      if (table.family[b].dim() + A.dim() == c.n()) partners.push_back(table.family[b]);
    }
    partners.push_back(Subspace::coordinate(c.n(), quotient_chart(A)));
    std::vector<RationalVector> random_columns;
    for (std::size_t j = A.dim(); j < c.n(); ++j) {
      RationalVector v(c.n());
      for (auto& x : v) x = dist(rng);
      random_columns.push_back(std::move(v));
    }
    partners.push_back(Subspace::span(c.n(), random_columns));
    for (const Subspace& B : partners) {
      if (budget == 0) return std::nullopt;
      --budget;
      if (A.dim() + B.dim() != c.n() || !meet(A, B).is_zero()) continue;
      if (slope_at(c, B) != total) continue;
      const Subspace bw = tensor_with_w(B, c.d());
      bool splits = true;
      for (std::size_t i = 0; i < c.size() && splits; ++i) {
        splits = table.dims[a][i] + meet(c[i].subspace, bw).dim() == table.item_dims[i];
      }
      if (!splits) continue;
      auto left = direct_sum_split(induced_sub(c, A), with_extra(options, restrict_extras(options.extra, A)), budget);
      if (!left) continue;
      auto right = direct_sum_split(induced_sub(c, B), with_extra(options, restrict_extras(options.extra, B)), budget);
      if (!right) continue;
      std::vector<Subspace> pieces;
      for (const auto& s : *left) pieces.push_back(embed_into(s, A));
      for (const auto& s : *right) pieces.push_back(embed_into(s, B));
      std::sort(pieces.begin(), pieces.end());
      return pieces;
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict polystable_split(const WeightedConfiguration& c, const SearchOptions& options) {
  DecideOptions opts;
  static_cast<SearchOptions&>(opts) = options;
  Verdict v = decide(c, opts);
  if (v.status == Status::Unstable) return v;
  std::size_t budget = kPairCap;
  if (auto pieces = direct_sum_split(c, options, budget)) {
    v.status = Status::Polystable;
    v.certificate.reset();
    v.certificate_slope.reset();
    v.decomposition = std::move(*pieces);
    return v;
  }
  v.note = "no direct-sum decomposition into equal-slope stable pieces among the searched subspaces";
  return v;
}

void validate(const MFiltration& f) {
  if (f.n == 0) throw Error(ErrorCode::InvalidArgument, "m-filtration needs n >= 1");
  for (std::size_t s = 0; s < f.filtrations.size(); ++s) {
    const Filtration& chain = f.filtrations[s];
    if (chain.steps.size() != chain.weights.size()) {
      throw Error(ErrorCode::InvalidArgument, "filtration " + std::to_string(s) + ": one weight per step required");
    }
    for (std::size_t p = 0; p < chain.steps.size(); ++p) {
      if (chain.steps[p].ambient_dim() != f.n) {
        throw Error(ErrorCode::DimensionMismatch, "filtration " + std::to_string(s) + ": step outside V");
      }
      if (chain.weights[p] <= 0) {
        throw Error(ErrorCode::InvalidArgument, "filtration " + std::to_string(s) + ": weights must be positive");
      }
      if (p > 0 && !chain.steps[p - 1].contains(chain.steps[p])) {
        throw Error(ErrorCode::InvalidArgument, "filtration " + std::to_string(s) + ": steps must be decreasing");
      }
    }
  }
}

WeightedConfiguration mfiltration_to_config(const MFiltration& f) {
  validate(f);
  std::vector<WeightedItem> items;
  for (const auto& chain : f.filtrations) {
    for (std::size_t p = 0; p < chain.steps.size(); ++p) {
      const Subspace& step = chain.steps[p];
      if (!step.is_zero() && !step.is_full()) items.push_back({step, chain.weights[p]});
    }
  }
  return WeightedConfiguration(f.n, 1, std::move(items));
}

MFiltration tensor_filtrations(const MFiltration& a, const MFiltration& b) {
  validate(a);
  validate(b);
  if (a.m() != b.m()) throw Error(ErrorCode::DimensionMismatch, "tensor_filtrations: m differs");
  MFiltration out;
  out.n = a.n * b.n;
  for (std::size_t s = 0; s < a.m(); ++s) {
    // Level of step p: cumulative weight of steps 1..p; level 0 is V itself.
    auto levels = [](const Filtration& chain, std::size_t n) {
      std::vector<std::pair<Rational, Subspace>> out{{Rational(0), Subspace::full(n)}};
      Rational level = 0;
      for (std::size_t p = 0; p < chain.steps.size(); ++p) {
        level += chain.weights[p];
        out.emplace_back(level, chain.steps[p]);
      }
      return out;
    };
    const auto la = levels(a.filtrations[s], a.n);
    const auto lb = levels(b.filtrations[s], b.n);
    std::set<Rational> breakpoints;
    for (const auto& [x, _] : la)
      for (const auto& [y, __] : lb)
        if (x + y > 0) breakpoints.insert(x + y);

    Filtration chain;
    Rational previous = 0;
    for (const Rational& t : breakpoints) {
      Subspace step = Subspace::zero(out.n);
      for (const auto& [x, va] : la)
        for (const auto& [y, wb] : lb)
          if (x + y >= t) step = join(step, tensor(va, wb));
      const Rational weight = t - previous;
      previous = t;
      if (!chain.steps.empty() && chain.steps.back() == step) {
        chain.weights.back() += weight;
      } else {
        chain.steps.push_back(std::move(step));
        chain.weights.push_back(weight);
      }
    }
    out.filtrations.push_back(std::move(chain));
  }
  return out;
}

}  // namespace gitstab

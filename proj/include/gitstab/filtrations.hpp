#pragma once

#include "gitstab/hilbert_mumford.hpp"

#include <vector>

namespace gitstab {

/// 0 = V^0 ⊂ V^1 ⊂ ... ⊂ V^h = V, strictly increasing.
struct Flag {
  std::vector<Subspace> steps;

  std::size_t length() const noexcept { return steps.empty() ? 0 : steps.size() - 1; }
  bool is_trivial() const noexcept { return steps.size() == 2; }
};

/// Throws Error(InvalidArgument) unless the steps form a strict flag from 0 to V.
void validate(const Flag& flag);

struct GradedStep {
  /// Induced configuration on V^l / V^{l−1}.
  WeightedConfiguration graded;
  Rational slope;
  Status status = Status::Stable;
};

struct FiltrationReport {
  Flag flag;
  std::vector<GradedStep> graded;
  Confidence confidence = Confidence::ExactWithinDepth;
};

/// Harder–Narasimhan filtration: the join of the maximal-slope subspaces
/// found, then recursion on the induced quotient.
FiltrationReport hn_filtration(const WeightedConfiguration& c, const SearchOptions& options = {});

/// One Jordan–Hölder filtration (maximal-dimension equality subspace first,
/// ties broken by the candidate ordering). Throws Error(InvalidArgument) for
/// unstable input.
FiltrationReport jh_filtration(const WeightedConfiguration& c, const SearchOptions& options = {});

/// Polystable with a direct-sum decomposition when one is found among the
/// searched subspaces; otherwise the decide verdict (StrictlySemistable or
/// Unstable). Stable input yields Polystable with the single summand V.
Verdict polystable_split(const WeightedConfiguration& c, const SearchOptions& options = {});

/// One weakly decreasing chain V^1 ⊇ V^2 ⊇ ... (V^0 = V is implicit, the
/// chain is closed by 0), with a positive weight per listed step.
struct Filtration {
  std::vector<Subspace> steps;
  std::vector<Rational> weights;
};

struct MFiltration {
  std::size_t n = 0;
  std::vector<Filtration> filtrations;

  std::size_t m() const noexcept { return filtrations.size(); }
};

void validate(const MFiltration& f);

/// Every nonzero proper step as a weighted item (d = 1).
WeightedConfiguration mfiltration_to_config(const MFiltration& f);

/// (V⊗W)^l(s) = Σ_{p+q=l} V^p(s) ⊗ W^q(s), with weights carried as levels:
/// a step's level is the cumulative weight down to it, and tensor steps are
/// taken at every sum of levels. Unit weights reproduce the integer indexing.
MFiltration tensor_filtrations(const MFiltration& a, const MFiltration& b);

}  // namespace gitstab

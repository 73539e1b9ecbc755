#pragma once

#include "gitstab/filtrations.hpp"

#include <string>
#include <vector>

namespace gitstab {

/// A small configuration with hand-derived answers.
struct CorpusCase {
  std::string name;
  WeightedConfiguration config;
  Status status = Status::Stable;
  /// Expected polystable_split status.
  Status split_status = Status::Stable;
  std::vector<Rational> hn_slopes;
  /// Graded slopes of the Jordan–Hölder filtration; empty for unstable cases.
  std::vector<Rational> jh_slopes;
};

std::vector<CorpusCase> corpus_cases();

struct CorpusOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

CorpusOutcome run_case(const CorpusCase& c);

/// Builds a d = 1 (or general d) configuration from integer spanning vectors.
WeightedConfiguration make_config(std::size_t n, std::size_t d,
                                  const std::vector<std::pair<std::vector<std::vector<long>>, Rational>>& items);

}  // namespace gitstab

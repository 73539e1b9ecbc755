#pragma once

#include "gitstab/configuration.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gitstab {

enum class Status { Unstable, StrictlySemistable, Stable, Polystable };

/// How much of a verdict is proven.
///  - ExactComplete: the search provably covers every subspace (or the
///    verdict is Unstable, where the certificate is the proof).
///  - ExactWithinDepth: no violation among the searched subspaces.
///  - NumericallyCorroborated: additionally a balance metric was found.
enum class Confidence { ExactComplete, ExactWithinDepth, NumericallyCorroborated };

const char* to_string(Status s) noexcept;
const char* to_string(Confidence c) noexcept;

inline bool is_semistable(Status s) noexcept { return s != Status::Unstable; }

/// λ(t) = frame · diag(t^{q_1}, ..., t^{q_n}) · frame^{-1}, q non-increasing
/// with zero sum.
class OnePS {
 public:
  /// Throws Error(InvalidArgument) for unsorted or non-zero-sum q and
  /// Error(SingularFrame) for a singular frame.
  OnePS(RationalMatrix frame, std::vector<std::int64_t> q);

  const RationalMatrix& frame() const noexcept { return frame_; }
  const std::vector<std::int64_t>& q() const noexcept { return q_; }
  std::size_t n() const noexcept { return q_.size(); }

  /// span of the first s frame columns.
  Subspace flag_step(std::size_t s) const;

 private:
  RationalMatrix frame_;
  std::vector<std::int64_t> q_;
};

/// n Σ ω_i dim(K_i ∩ (h⊗W)) − dim h Σ ω_i dim K_i; positive iff h destabilizes.
Rational mu_lambda_s(const WeightedConfiguration& c, const Subspace& h);

/// Hilbert–Mumford weight Σ_i ω_i Σ_j q'_{l_j(i)} over the jump indices of
/// each K_i against the flag of λ's frame (each q_a repeated d times).
Rational mu_general(const WeightedConfiguration& c, const OnePS& lambda);

/// Coefficients (q_s − q_{s+1})/n, s = 1..n−1, of q in the basis q_s.
std::vector<Rational> lambda_s_coefficients(std::span<const std::int64_t> q);

/// q_s = (n−s, ..., n−s, −s, ..., −s) with s leading entries.
std::vector<std::int64_t> lambda_s_vector(std::size_t n, std::size_t s);

inline constexpr std::size_t kDefaultDepth = 3;

/// Meet/join lattice closure of the items (d = 1) or of their V-supports
/// (d > 1), truncated after `depth` rounds; excludes 0 and V, sorted.
std::vector<Subspace> candidate_subspaces(const WeightedConfiguration& c, std::size_t depth);

struct SearchOptions {
  std::size_t depth = kDefaultDepth;
  /// Subspaces of V tested first and preferred as certificates.
  std::vector<Subspace> extra;
  /// Adds seeded random subspaces in general position (globally, through and
  /// inside each lattice element). They only ever add proofs.
  bool generic_probes = true;
};

/// The subspaces a verdict is decided over, plus their intersection data.
/// Built once per configuration; independent of the weights.
struct SearchTable {
  std::size_t n = 0;
  std::size_t d = 1;
  std::vector<Subspace> family;
  /// dims[h][i] = dim(K_i ∩ (family[h] ⊗ W)).
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::size_t> item_dims;
  /// True when family covers every slope value any subspace can take.
  bool complete = false;
  std::string digest;
};

SearchTable build_search_table(const WeightedConfiguration& c, const SearchOptions& options = {});

struct Verdict {
  Status status = Status::Stable;
  Confidence confidence = Confidence::ExactWithinDepth;
  Rational slope_total;
  /// Unstable: the most destabilizing h found. StrictlySemistable: an h with
  /// slope_at(h) = slope_total.
  std::optional<Subspace> certificate;
  std::optional<Rational> certificate_slope;
  /// Polystable: V as a direct sum of these subspaces.
  std::vector<Subspace> decomposition;
  std::size_t candidates_tested = 0;
  std::string candidate_digest;
  std::string note;
};

/// Verdict for the configuration's weights (or `weights` when given) over a
/// prebuilt table. Exact; no numerics.
Verdict evaluate(const SearchTable& table, std::span<const Rational> weights);

struct DecideOptions : SearchOptions {
  /// Corroborate with the balance solver. May upgrade to Unstable when the
  /// descent exposes a destabilizer outside the search family.
  bool numeric = false;
};

Verdict decide(const WeightedConfiguration& c, const DecideOptions& options = {});

/// Checks that every certificate in v re-verifies exactly.
bool verify_certificate(const WeightedConfiguration& c, const Verdict& v);

struct DominantWeightReport {
  std::size_t index = 0;
  /// ω_index > threshold forces |R| < 1 for every proper h.
  Rational threshold;
  bool dominant = false;
  Status configuration_status = Status::Stable;
  Status item_status = Status::Stable;
  /// c semistable ⇒ {K_i} semistable.
  bool semistable_implication = true;
  /// {K_i} stable ⇒ c stable.
  bool stable_implication = true;
};

DominantWeightReport dominant_weight_check(const WeightedConfiguration& c, std::size_t index,
                                           const SearchOptions& options = {});

}  // namespace gitstab

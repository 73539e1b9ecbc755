#pragma once

#include "gitstab/configuration.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gitstab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Floating-point image of a configuration: item bases as complex columns in
/// Q^{n d} ⊂ C^{n d} and real positive weights.
struct NumericConfiguration {
  std::size_t n = 0;
  std::size_t d = 1;
  std::vector<ComplexMatrix> bases;
  std::vector<double> weights;

  double slope_total() const;
};

NumericConfiguration to_numeric(const WeightedConfiguration& c);

/// (g ⊗ I) applied to every item basis.
NumericConfiguration transform(const ComplexMatrix& g, const NumericConfiguration& c);

/// Positive definite Hermitian H with det H = 1.
class HermitianMetric {
 public:
  static HermitianMetric identity(std::size_t n);
  /// Validates Hermitian symmetry and positivity, then rescales to det 1.
  static HermitianMetric normalized(const ComplexMatrix& h);

  const ComplexMatrix& matrix() const noexcept { return h_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(h_.rows()); }
  double condition_number() const;

 private:
  explicit HermitianMetric(ComplexMatrix h) : h_(std::move(h)) {}
  ComplexMatrix h_;
};

/// Hermitian, trace-zero n × n matrix.
struct MomentValue {
  ComplexMatrix phi;

  double norm() const { return phi.norm(); }
};

/// Σ ω_i Tr_W P_i − ℘ I, where P_i is the orthogonal projection onto
/// (H^{1/2} ⊗ I) K_i. For d = 1 this is Σ ω_i A_i A_i^* − ℘ I with A_i an
/// H-orthonormal frame of K_i.
MomentValue moment_map(const NumericConfiguration& c, const HermitianMetric& metric);
MomentValue moment_map(const WeightedConfiguration& c, const HermitianMetric& metric);

/// Σ ω_i log det(B_i^* (H ⊗ I) B_i) − ℘ log det H for the fixed item bases
/// B_i; its derivative at H in direction a is ⟨Φ, H^{-1/2} a H^{-1/2}⟩.
double kempf_ness_value(const NumericConfiguration& c, const HermitianMetric& metric);
double kempf_ness_value(const WeightedConfiguration& c, const HermitianMetric& metric);

/// Re tr(a b) for Hermitian a, b.
double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

enum class BalanceStatus { Balanced, Diverged, MaxIter };
const char* to_string(BalanceStatus s) noexcept;

struct BalanceOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 0;
  /// Start from a seeded random metric instead of the identity.
  bool random_start = false;
  double divergence_condition = 1e12;
  /// Relative eigenvalue gap for destabilizer extraction.
  double gap_tol = 1e-4;
};

struct BalanceResult {
  BalanceStatus status = BalanceStatus::MaxIter;
  HermitianMetric metric = HermitianMetric::identity(0);
  /// g with metric ∝ g^* g; the balanced configuration is g · c.
  ComplexMatrix transform;
  double residual = 0.0;
  std::size_t iterations = 0;
  /// Orthonormal bases (in the coordinates of V) of candidate destabilizing
  /// subspaces, largest moment-map eigenvalues first. Empty unless Diverged.
  std::vector<ComplexMatrix> destabilizer_hint;
  /// Kempf–Ness value after each accepted step, starting value first.
  std::vector<double> kempf_ness_trace;
};

BalanceResult balance_solve(const NumericConfiguration& c, const BalanceOptions& options = {});
BalanceResult balance_solve(const WeightedConfiguration& c, const BalanceOptions& options = {});

/// Descending partial sums of the eigenspaces of phi, split where consecutive
/// eigenvalues differ by more than gap_tol. Throws Error(NoGap) when no split
/// exists.
std::vector<ComplexMatrix> extract_destabilizer(const MomentValue& phi, double gap_tol);

/// Exact subspace near the span of `basis`: the closest candidate within
/// snap_tol principal-angle distance, else a continued-fraction rounding of
/// the numeric echelon form that reproduces the span.
std::optional<Subspace> rationalize(const ComplexMatrix& basis, std::span<const Subspace> candidates,
                                    double snap_tol = 1e-6);

/// Sine of the largest principal angle between two column spans.
double subspace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rationalized hints of a Diverged result with mu_lambda_s > 0, most
/// destabilizing first.
std::vector<Subspace> exact_destabilizers(const WeightedConfiguration& c, const BalanceResult& result,
                                          std::span<const Subspace> candidates);

/// Weighted samples of m maps X → Gr(r_i, C^N).
struct SampledBundleConfig {
  std::size_t N = 0;
  std::vector<double> volumes;
  std::vector<double> weights;
  std::vector<std::size_t> ranks;
  /// frames[t][i]: N × r_i orthonormal frame of item i at sample t.
  std::vector<std::vector<ComplexMatrix>> frames;

  double volume() const;
  /// Σ ω_i r_i / N.
  double slope() const;
};

/// Throws Error(InvalidArgument) when shapes, positivity or frame
/// orthonormality (1e−10) fail.
void validate(const SampledBundleConfig& b);

MomentValue bundle_moment_map(const SampledBundleConfig& b);

/// Items (i, t) with weight ω_i v_t and basis frames[t][i].
NumericConfiguration to_numeric(const SampledBundleConfig& b);

struct BundleBalanceResult {
  BalanceResult result;
  /// Set when Balanced: whether a second random start reproduced the metric.
  std::optional<bool> unique;
  double uniqueness_gap = 0.0;
};

BundleBalanceResult bundle_balance_solve(const SampledBundleConfig& b, const BalanceOptions& options = {});

}  // namespace gitstab

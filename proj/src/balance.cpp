#include "gitstab/balance.hpp"

#include "gitstab/error.hpp"
#include "gitstab/hilbert_mumford.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace gitstab {

double NumericConfiguration::slope_total() const {
  double total = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) total += weights[i] * static_cast<double>(bases[i].cols());
  return total / static_cast<double>(n);
}

NumericConfiguration to_numeric(const WeightedConfiguration& c) {
  NumericConfiguration nc;
  nc.n = c.n();
  nc.d = c.d();
  for (const auto& item : c.items()) {
    const RationalMatrix& b = item.subspace.basis();
    ComplexMatrix m(static_cast<Eigen::Index>(b.rows()), static_cast<Eigen::Index>(b.cols()));
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t col = 0; col < b.cols(); ++col) m(r, col) = to_double(b(r, col));
    nc.bases.push_back(std::move(m));
    nc.weights.push_back(to_double(item.weight));
  }
  return nc;
}

namespace {

ComplexMatrix lift(const ComplexMatrix& g, std::size_t d) {
  if (d == 1) return g;
  ComplexMatrix big = ComplexMatrix::Zero(g.rows() * static_cast<Eigen::Index>(d),
                                          g.cols() * static_cast<Eigen::Index>(d));
  const auto dd = static_cast<Eigen::Index>(d);
  for (Eigen::Index a = 0; a < g.rows(); ++a)
    for (Eigen::Index b = 0; b < g.cols(); ++b)
      for (Eigen::Index l = 0; l < dd; ++l) big(a * dd + l, b * dd + l) = g(a, b);
  return big;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) / 2.0;
}

// Orthonormal frame of the column span; already-orthonormal input is kept
// verbatim so sampled frames flow through unchanged.
ComplexMatrix orthonormal(const ComplexMatrix& b) {
  if (b.cols() == 0) return b;
  const ComplexMatrix gram = b.adjoint() * b;
  if ((gram - ComplexMatrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff() <= 1e-13) return b;
  Eigen::HouseholderQR<ComplexMatrix> qr(b);
  return qr.householderQ() * ComplexMatrix::Identity(b.rows(), b.cols());
}

// Φ = Σ ω_i Tr_W(A_i A_i^*) − ℘ I for orthonormal frames A_i.
ComplexMatrix moment_of_frames(std::size_t n, std::size_t d, std::span<const ComplexMatrix> frames,
                               std::span<const double> weights, double slope) {
  const auto nn = static_cast<Eigen::Index>(n);
  const auto dd = static_cast<Eigen::Index>(d);
  ComplexMatrix phi = ComplexMatrix::Zero(nn, nn);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].cols() == 0) continue;
    const ComplexMatrix p = frames[i] * frames[i].adjoint();
    if (d == 1) {
      phi += weights[i] * p;
    } else {
      ComplexMatrix traced = ComplexMatrix::Zero(nn, nn);
      for (Eigen::Index a = 0; a < nn; ++a)
        for (Eigen::Index b = 0; b < nn; ++b)
          for (Eigen::Index l = 0; l < dd; ++l) traced(a, b) += p(a * dd + l, b * dd + l);
      phi += weights[i] * traced;
    }
  }
  phi -= slope * ComplexMatrix::Identity(nn, nn);
  return phi;
}

ComplexMatrix hermitian_function(const ComplexMatrix& h, double (*f)(double)) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  Eigen::VectorXd values = es.eigenvalues();
  for (Eigen::Index k = 0; k < values.size(); ++k) values(k) = f(values(k));
  return es.eigenvectors() * values.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix hermitian_exp(const ComplexMatrix& x) {
  return hermitian_function(x, [](double v) { return std::exp(v); });
}

double log_det_pd(const ComplexMatrix& m) {
  Eigen::LLT<ComplexMatrix> llt(hermitian_part(m));
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::Degenerate, "Gram matrix is not positive definite");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const double diag = llt.matrixL()(k, k).real();
    if (!(diag > 0.0)) throw Error(ErrorCode::Degenerate, "Gram matrix is numerically singular");
    acc += 2.0 * std::log(diag);
  }
  return acc;
}

double condition(const ComplexMatrix& g) {
  Eigen::JacobiSVD<ComplexMatrix> svd(g);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

}  // namespace

NumericConfiguration transform(const ComplexMatrix& g, const NumericConfiguration& c) {
  if (static_cast<std::size_t>(g.rows()) != c.n || g.rows() != g.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "transform must be n × n");
  }
  NumericConfiguration out = c;
  const ComplexMatrix big = lift(g, c.d);
  for (auto& b : out.bases) b = big * b;
  return out;
}

HermitianMetric HermitianMetric::identity(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  return HermitianMetric(ComplexMatrix::Identity(nn, nn));
}

HermitianMetric HermitianMetric::normalized(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "metric must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, "metric is not Hermitian");
  }
  const ComplexMatrix sym = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.eigenvalues().minCoeff() <= 0.0) throw Error(ErrorCode::InvalidArgument, "metric is not positive definite");
  const double log_det = es.eigenvalues().array().log().sum();
  return HermitianMetric(sym * std::exp(-log_det / static_cast<double>(h.rows())));
}

double HermitianMetric::condition_number() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_);
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

MomentValue moment_map(const NumericConfiguration& c, const HermitianMetric& metric) {
  if (metric.n() != c.n) throw Error(ErrorCode::DimensionMismatch, "metric dimension mismatch");
  std::vector<ComplexMatrix> frames;
  frames.reserve(c.bases.size());
  const bool standard = metric.matrix().isIdentity(0.0);
  const ComplexMatrix root =
      standard ? ComplexMatrix() : lift(hermitian_function(metric.matrix(), [](double v) { return std::sqrt(v); }), c.d);
  for (const auto& b : c.bases) frames.push_back(orthonormal(standard ? b : ComplexMatrix(root * b)));
  return {moment_of_frames(c.n, c.d, frames, c.weights, c.slope_total())};
}

MomentValue moment_map(const WeightedConfiguration& c, const HermitianMetric& metric) {
  return moment_map(to_numeric(c), metric);
}

double kempf_ness_value(const NumericConfiguration& c, const HermitianMetric& metric) {
  if (metric.n() != c.n) throw Error(ErrorCode::DimensionMismatch, "metric dimension mismatch");
  const ComplexMatrix big = lift(metric.matrix(), c.d);
  double value = 0.0;
  for (std::size_t i = 0; i < c.bases.size(); ++i) {
    if (c.bases[i].cols() == 0) continue;
    value += c.weights[i] * log_det_pd(c.bases[i].adjoint() * big * c.bases[i]);
  }
  return value - c.slope_total() * log_det_pd(metric.matrix());
}

double kempf_ness_value(const WeightedConfiguration& c, const HermitianMetric& metric) {
  return kempf_ness_value(to_numeric(c), metric);
}

double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b).trace().real();
}

const char* to_string(BalanceStatus s) noexcept {
  switch (s) {
    case BalanceStatus::Balanced: return "Balanced";
    case BalanceStatus::Diverged: return "Diverged";
    case BalanceStatus::MaxIter: return "MaxIter";
  }
  return "Unknown";
}

namespace {

ComplexMatrix random_start(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 0.3);
  const auto nn = static_cast<Eigen::Index>(n);
  ComplexMatrix x(nn, nn);
  for (Eigen::Index a = 0; a < nn; ++a)
    for (Eigen::Index b = 0; b < nn; ++b) x(a, b) = Complex(dist(rng), dist(rng));
  x = hermitian_part(x);
  x -= (x.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(nn, nn);
  return hermitian_exp(x);
}

}  // namespace

BalanceResult balance_solve(const NumericConfiguration& c, const BalanceOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const auto nn = static_cast<Eigen::Index>(c.n);
  const double slope = c.slope_total();
  ComplexMatrix g = options.random_start ? random_start(c.n, options.seed) : ComplexMatrix::Identity(nn, nn);

  // Frames of g · K_i are updated in place so that conditioning of g never
  // touches the moment map.
  std::vector<ComplexMatrix> frames;
  const ComplexMatrix g_big = lift(g, c.d);
  for (const auto& b : c.bases) frames.push_back(orthonormal(g_big * b));

  BalanceResult result;
  double value = kempf_ness_value(c, HermitianMetric::normalized(g.adjoint() * g));
  result.kempf_ness_trace.push_back(value);

  double total_weight = 0.0;
  for (double w : c.weights) total_weight += w;
  double eta = 1.0 / std::max(1.0, total_weight);
  const double divergence = std::sqrt(options.divergence_condition);

  ComplexMatrix phi = moment_of_frames(c.n, c.d, frames, c.weights, slope);
  std::size_t iter = 0;
  for (;; ++iter) {
    result.residual = phi.norm();
    if (result.residual < options.tol) {
      result.status = BalanceStatus::Balanced;
      break;
    }
    if (condition(g) > divergence) {
      result.status = BalanceStatus::Diverged;
      break;
    }
    if (iter >= options.max_iter) {
      result.status = BalanceStatus::MaxIter;
      break;
    }
    const double grad_sq = result.residual * result.residual;
    bool accepted = false;
    for (int attempt = 0; attempt < 80 && !accepted; ++attempt, eta *= 0.5) {
      const ComplexMatrix step = hermitian_exp(-eta * phi);
      const ComplexMatrix step_big = lift(step, c.d);
      double delta = -2.0 * slope * (-eta * phi.trace().real());
      std::vector<ComplexMatrix> moved;
      moved.reserve(frames.size());
      for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].cols() == 0) {
          moved.push_back(frames[i]);
          continue;
        }
        const ComplexMatrix m = step_big * frames[i];
        delta += c.weights[i] * log_det_pd(m.adjoint() * m);
        moved.push_back(orthonormal(m));
      }
      const double expected = 2.0 * eta * grad_sq;
      bool ok = delta <= -1e-4 * expected;
      ComplexMatrix next_phi;
      if (!ok && expected < 1e-12 * (1.0 + std::abs(value))) {
        // Below round-off of the functional: accept on residual decrease.
        next_phi = moment_of_frames(c.n, c.d, moved, c.weights, slope);
        ok = next_phi.norm() < result.residual;
        delta = std::min(delta, 0.0);
      }
      if (!ok) continue;
      accepted = true;
      g = step * g;
      frames = std::move(moved);
      value += delta;
      result.kempf_ness_trace.push_back(value);
      phi = next_phi.size() ? next_phi : moment_of_frames(c.n, c.d, frames, c.weights, slope);
      eta = std::min(eta * 4.0, 1e6);  // undo this round's halving, then grow
    }
    if (!accepted) {
      result.status = BalanceStatus::MaxIter;
      break;
    }
  }
  result.iterations = iter;
  result.transform = g;
  result.metric = HermitianMetric::normalized(hermitian_part(g.adjoint() * g));

  if (result.status == BalanceStatus::Diverged) {
    const MomentValue normalized{phi / phi.norm()};
    try {
      const Eigen::PartialPivLU<ComplexMatrix> lu(g);
      for (const auto& e : extract_destabilizer(normalized, options.gap_tol)) {
        result.destabilizer_hint.push_back(orthonormal(lu.solve(e)));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoGap) throw;
    }
  }
  return result;
}

BalanceResult balance_solve(const WeightedConfiguration& c, const BalanceOptions& options) {
  return balance_solve(to_numeric(c), options);
}

std::vector<ComplexMatrix> extract_destabilizer(const MomentValue& phi, double gap_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(phi.phi));
  const Eigen::VectorXd& values = es.eigenvalues();  // ascending
  const Eigen::Index n = values.size();
  std::vector<ComplexMatrix> flags;
  for (Eigen::Index k = 1; k < n; ++k) {
    // Split between the k largest eigenvalues and the rest.
    if (values(n - k) - values(n - k - 1) > gap_tol) {
      flags.push_back(es.eigenvectors().rightCols(k));
    }
  }
  if (flags.empty()) throw Error(ErrorCode::NoGap, "no eigenvalue gap exceeds the tolerance");
  return flags;
}

double subspace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix qa = orthonormal(a);
  const ComplexMatrix qb = orthonormal(b);
  if (qa.cols() != qb.cols()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  const ComplexMatrix residual = qa - qb * (qb.adjoint() * qa);
  Eigen::JacobiSVD<ComplexMatrix> svd(residual);
  return svd.singularValues()(0);
}

namespace {

ComplexMatrix to_complex(const RationalMatrix& m) {
  ComplexMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
  return out;
}

Rational continued_fraction(double x, long max_den) {
  const bool negative = x < 0;
  double rest = std::abs(x);
  // Convergents h/k.
  Integer h_prev = 1, h = static_cast<long>(std::floor(rest));
  Integer k_prev = 0, k = 1;
  double frac = rest - std::floor(rest);
  while (frac > 1e-12) {
    const double inv = 1.0 / frac;
    const auto a = static_cast<long>(std::floor(inv));
    const Integer h_next = a * h + h_prev;
    const Integer k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - static_cast<double>(a);
    if (std::abs(rest - Rational(h, k).convert_to<double>()) < 1e-12) break;
  }
  Rational r(h, k);
  return negative ? Rational(-r) : r;
}

}  // namespace

std::optional<Subspace> rationalize(const ComplexMatrix& basis, std::span<const Subspace> candidates,
                                    double snap_tol) {
  const auto dim = static_cast<std::size_t>(basis.cols());
  const auto n = static_cast<std::size_t>(basis.rows());
  std::optional<Subspace> best;
  double best_distance = snap_tol;
  for (const auto& s : candidates) {
    if (s.dim() != dim || s.ambient_dim() != n) continue;
    const double dist = subspace_distance(basis, to_complex(s.basis()));
    if (dist < best_distance) {
      best_distance = dist;
      best = s;
    }
  }
  if (best) return best;

  // Numeric reduced echelon form of the rows basis^T, then rational rounding.
  ComplexMatrix m = basis.transpose();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < dim; ++col) {
    Eigen::Index pivot = -1;
    double magnitude = 1e-8;
    for (std::size_t r = lead; r < dim; ++r) {
      if (std::abs(m(r, col)) > magnitude) {
        magnitude = std::abs(m(r, col));
        pivot = static_cast<Eigen::Index>(r);
      }
    }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(lead));
    m.row(lead) /= m(lead, col);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r != lead) m.row(r) -= m(r, col) * m.row(lead);
    }
    ++lead;
  }
  if (lead < dim) return std::nullopt;
  std::vector<RationalVector> rows;
  for (std::size_t r = 0; r < dim; ++r) {
    RationalVector v(n);
    for (std::size_t col = 0; col < n; ++col) {
      if (std::abs(m(r, col).imag()) > 1e-7) return std::nullopt;
      v[col] = continued_fraction(m(r, col).real(), 1000000);
    }
    rows.push_back(std::move(v));
  }
  const Subspace exact = Subspace::span(n, rows);
  if (exact.dim() != dim) return std::nullopt;
  if (subspace_distance(basis, to_complex(exact.basis())) > snap_tol) return std::nullopt;
  return exact;
}

std::vector<Subspace> exact_destabilizers(const WeightedConfiguration& c, const BalanceResult& result,
                                          std::span<const Subspace> candidates) {
  std::set<Subspace> seen;
  std::vector<std::pair<Rational, Subspace>> found;
  for (const auto& hint : result.destabilizer_hint) {
    const std::optional<Subspace> h = rationalize(hint, candidates);
    if (!h || h->is_zero() || h->is_full() || !seen.insert(*h).second) continue;
    if (mu_lambda_s(c, *h) > 0) found.emplace_back(slope_at(c, *h), *h);
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Subspace> out;
  for (auto& [slope, h] : found) out.push_back(std::move(h));
  return out;
}

double SampledBundleConfig::volume() const {
  double v = 0.0;
  for (double x : volumes) v += x;
  return v;
}

double SampledBundleConfig::slope() const {
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * static_cast<double>(ranks[i]);
  return total / static_cast<double>(N);
}

void validate(const SampledBundleConfig& b) {
  if (b.N == 0) throw Error(ErrorCode::InvalidArgument, "bundle: N must be positive");
  if (b.weights.size() != b.ranks.size()) throw Error(ErrorCode::InvalidArgument, "bundle: weights/ranks length mismatch");
  if (b.volumes.size() != b.frames.size() || b.volumes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "bundle: need one frame list per sample point");
  }
  for (double w : b.weights)
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidArgument, "bundle: weights must be positive");
  for (std::size_t t = 0; t < b.volumes.size(); ++t) {
    if (!(b.volumes[t] > 0.0)) throw Error(ErrorCode::InvalidArgument, "bundle: volumes must be positive");
    if (b.frames[t].size() != b.weights.size()) {
      throw Error(ErrorCode::InvalidArgument, "bundle: point " + std::to_string(t) + " has the wrong item count");
    }
    for (std::size_t i = 0; i < b.weights.size(); ++i) {
      const ComplexMatrix& a = b.frames[t][i];
      if (static_cast<std::size_t>(a.rows()) != b.N || static_cast<std::size_t>(a.cols()) != b.ranks[i]) {
        throw Error(ErrorCode::InvalidArgument, "bundle: frame shape does not match N × rank");
      }
      const ComplexMatrix gram = a.adjoint() * a;
      if (a.cols() > 0 && (gram - ComplexMatrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff() > 1e-10) {
        throw Error(ErrorCode::InvalidArgument,
                    "bundle: frame of item " + std::to_string(i) + " at point " + std::to_string(t) +
                        " is not orthonormal");
      }
    }
  }
}

MomentValue bundle_moment_map(const SampledBundleConfig& b) {
  validate(b);
  const auto nn = static_cast<Eigen::Index>(b.N);
  ComplexMatrix phi = ComplexMatrix::Zero(nn, nn);
  for (std::size_t i = 0; i < b.weights.size(); ++i) {
    ComplexMatrix integral = ComplexMatrix::Zero(nn, nn);
    for (std::size_t t = 0; t < b.volumes.size(); ++t) {
      const ComplexMatrix& a = b.frames[t][i];
      if (a.cols() == 0) continue;
      integral += b.volumes[t] * (a * a.adjoint());
    }
    phi += b.weights[i] * integral;
  }
  phi -= (b.slope() * b.volume()) * ComplexMatrix::Identity(nn, nn);
  return {phi};
}

NumericConfiguration to_numeric(const SampledBundleConfig& b) {
  validate(b);
  NumericConfiguration nc;
  nc.n = b.N;
  nc.d = 1;
  for (std::size_t i = 0; i < b.weights.size(); ++i) {
    for (std::size_t t = 0; t < b.volumes.size(); ++t) {
      nc.bases.push_back(b.frames[t][i]);
      nc.weights.push_back(b.weights[i] * b.volumes[t]);
    }
  }
  return nc;
}

BundleBalanceResult bundle_balance_solve(const SampledBundleConfig& b, const BalanceOptions& options) {
  const NumericConfiguration nc = to_numeric(b);
  BundleBalanceResult out;
  out.result = balance_solve(nc, options);
  if (out.result.status == BalanceStatus::Balanced) {
    BalanceOptions second = options;
    second.random_start = true;
    second.seed = options.seed + 0x2545F4914F6CDD1DULL;
    const BalanceResult other = balance_solve(nc, second);
    if (other.status == BalanceStatus::Balanced) {
      const ComplexMatrix& h1 = out.result.metric.matrix();
      out.uniqueness_gap = (h1 - other.metric.matrix()).norm() / h1.norm();
      out.unique = out.uniqueness_gap < 1e-6;
    } else {
      out.unique = false;
      out.uniqueness_gap = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

}  // namespace gitstab

#include "ssvar/roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/tools/minima.hpp>

#include "ssvar/ssv.hpp"

namespace ssvar {

namespace {

constexpr double kSkipPair = 1e-12;   // l_k + l_l at or below this is off the support
constexpr double kDropMember = 1e-12;

// Eigenvalues of a valid state can dip to -1e-10; treat those as zero.
double clamp_eigenvalue(double x) { return std::max(0.0, x); }

struct Support {
  CMatrix weighted_vectors;  // d x r, columns sqrt(l_k) phi_k
};

Support support_of(const DensityMatrix& rho) {
  const Spectrum s = spectrum(rho);
  Eigen::Index rank = 0;
  while (rank < s.values.size() && s.values(rank) > tolerance::kRank) ++rank;
  Support out;
  out.weighted_vectors.resize(s.vectors.rows(), rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    out.weighted_vectors.col(k) = std::sqrt(s.values(k)) * s.vectors.col(k);
  }
  return out;
}

// State of one restart: the isometry U and the member vectors
// Psi = Phi U^T (columns are the unnormalized members).
class EnsembleSearch {
 public:
  EnsembleSearch(const CMatrix& phi, CMatrix mixing, const MemberObjective& objective, double sign)
      : mixing_(std::move(mixing)), members_(phi * mixing_.transpose()), objective_(objective), sign_(sign),
        scratch_a_(members_.rows()), scratch_b_(members_.rows()) {
    contributions_.resize(members_.cols());
    for (Eigen::Index j = 0; j < members_.cols(); ++j) contributions_(j) = objective_.weighted(members_.col(j));
  }

  // Signed total: the search always minimizes sign * sum.
  double signed_total() const { return sign_ * contributions_.sum(); }

  const CMatrix& mixing() const { return mixing_; }

  // One pass over all pairs of members. Returns the signed decrease.
  double sweep() {
    const double before = signed_total();
    const Eigen::Index n = members_.cols();
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      for (Eigen::Index k = j + 1; k < n; ++k) optimize_pair(j, k);
    }
    // Refresh to keep the running sums free of drift.
    for (Eigen::Index j = 0; j < n; ++j) contributions_(j) = objective_.weighted(members_.col(j));
    return before - signed_total();
  }

 private:
  // Signed objective of the pair after the rotation
  //   a' =  cos t a + sin t e^{i phase} b
  //   b' = -sin t a + cos t e^{i phase} b.
  double pair_value(Eigen::Index j, Eigen::Index k, double t, double phase) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const Complex w(std::cos(phase), std::sin(phase));
    scratch_a_ = c * members_.col(j) + (s * w) * members_.col(k);
    scratch_b_ = -s * members_.col(j) + (c * w) * members_.col(k);
    return sign_ * (objective_.weighted(scratch_a_) + objective_.weighted(scratch_b_));
  }

  // Periodic 1-D search: coarse scan over one period, then Brent on the
  // bracket around the best sample.
  template <typename F>
  std::pair<double, double> line_search(F&& f, double start, double period, double current) {
    constexpr int kSamples = 8;
    const double step = period / kSamples;
    double best_x = start;
    double best_f = current;
    int best_m = 0;
    for (int m = 1; m < kSamples; ++m) {
      const double x = start + m * step;
      const double fx = f(x);
      if (fx < best_f) {
        best_f = fx;
        best_x = x;
        best_m = m;
      }
    }
    const double lo = start + (best_m - 1) * step;
    const double hi = start + (best_m + 1) * step;
    boost::uintmax_t iters = 60;
    const auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, 26, iters);
    if (fx < best_f) return {x, fx};
    return {best_x, best_f};
  }

  void optimize_pair(Eigen::Index j, Eigen::Index k) {
    const double base = sign_ * (contributions_(j) + contributions_(k));
    double t = 0.0;
    double phase = 0.0;
    double value = base;

    // Angle search along the real and imaginary rotation directions, then
    // phase at the best angle, then the angle once more.
    for (const double trial_phase : {0.0, 0.5 * std::numbers::pi}) {
      auto along_t = [&](double x) { return pair_value(j, k, x, trial_phase); };
      const auto [x, fx] = line_search(along_t, 0.0, std::numbers::pi, base);
      if (fx < value) {
        value = fx;
        t = x;
        phase = trial_phase;
      }
    }
    if (value < base) {
      auto along_phase = [&](double x) { return pair_value(j, k, t, x); };
      const auto [p, fp] = line_search(along_phase, phase, 2.0 * std::numbers::pi, value);
      if (fp < value) {
        value = fp;
        phase = p;
      }
      auto along_t = [&](double x) { return pair_value(j, k, x, phase); };
      const auto [x, fx] = line_search(along_t, t, std::numbers::pi, value);
      if (fx < value) {
        value = fx;
        t = x;
      }
    }
    if (!(value < base)) return;

    const double c = std::cos(t);
    const double s = std::sin(t);
    const Complex w(std::cos(phase), std::sin(phase));
    scratch_a_ = c * members_.col(j) + (s * w) * members_.col(k);
    scratch_b_ = -s * members_.col(j) + (c * w) * members_.col(k);
    members_.col(j) = scratch_a_;
    members_.col(k) = scratch_b_;
    const CVector row_j = mixing_.row(j).transpose();
    const CVector row_k = mixing_.row(k).transpose();
    mixing_.row(j) = (c * row_j + (s * w) * row_k).transpose();
    mixing_.row(k) = (-s * row_j + (c * w) * row_k).transpose();
    contributions_(j) = objective_.weighted(members_.col(j));
    contributions_(k) = objective_.weighted(members_.col(k));
  }

  CMatrix mixing_;
  CMatrix members_;
  const MemberObjective& objective_;
  double sign_;
  RVector contributions_;
  CVector scratch_a_;
  CVector scratch_b_;
};

void check_config(const RoofConfig& cfg, std::size_t rank) {
  if (cfg.restarts < 1) fail(ErrorCode::BadConfig, "restarts must be >= 1");
  if (cfg.max_iters < 1) fail(ErrorCode::BadConfig, "max_iters must be >= 1");
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) fail(ErrorCode::BadConfig, "tol must be positive");
  if (cfg.members != 0 && cfg.members < rank) {
    fail(ErrorCode::BadConfig, "members = " + std::to_string(cfg.members) + " below rank " + std::to_string(rank));
  }
}

}  // namespace

double qfi(const DensityMatrix& rho, const DiagonalObservable& observable) {
  if (rho.dim() != observable.dim()) fail(ErrorCode::DimensionMismatch, "state and observable dimensions differ");
  const Spectrum s = spectrum(rho);
  const CMatrix a_eig = s.vectors.adjoint() * observable.diagonal().cast<Complex>().asDiagonal() * s.vectors;
  double f = 0.0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    for (Eigen::Index l = 0; l < s.values.size(); ++l) {
      const double lk = clamp_eigenvalue(s.values(k));
      const double ll = clamp_eigenvalue(s.values(l));
      if (lk + ll <= kSkipPair) continue;
      f += 2.0 * (lk - ll) * (lk - ll) / (lk + ll) * std::norm(a_eig(k, l));
    }
  }
  return f;
}

double vc_lower_bound(const DensityMatrix& rho) {
  const Spectrum s = spectrum(rho);
  const RMatrix weights = s.vectors.cwiseAbs2();  // |phi^k_i|^2, column k
  const RMatrix overlaps = weights.transpose() * weights;
  double bound = 0.0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    for (Eigen::Index l = 0; l < s.values.size(); ++l) {
      const double lk = clamp_eigenvalue(s.values(k));
      const double ll = clamp_eigenvalue(s.values(l));
      if (lk + ll <= kSkipPair) continue;
      bound += (lk - ll) * (lk - ll) / (lk + ll) * overlaps(k, l);
    }
  }
  return 0.5 * bound;
}

// ------------------------------------------------------------ MixingMatrix

MixingMatrix MixingMatrix::from_matrix(CMatrix matrix) {
  if (matrix.cols() < 1 || matrix.rows() < matrix.cols()) {
    fail(ErrorCode::NotIsometry, "mixing matrix must be n x r with n >= r >= 1");
  }
  const CMatrix gram = matrix.adjoint() * matrix;
  const double err = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) {
    std::ostringstream msg;
    msg << "max |U^dagger U - I| = " << err;
    fail(ErrorCode::NotIsometry, msg.str());
  }
  return MixingMatrix(std::move(matrix));
}

MixingMatrix MixingMatrix::identity(std::size_t rank) {
  const auto r = static_cast<Eigen::Index>(rank);
  return from_matrix(CMatrix::Identity(r, r));
}

MixingMatrix MixingMatrix::random(std::size_t members, std::size_t rank, std::uint64_t seed) {
  if (rank < 1 || members < rank) fail(ErrorCode::BadConfig, "random isometry needs members >= rank >= 1");
  const CMatrix g = complex_gaussian(members, rank, seed);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), g.cols());
  return from_matrix(std::move(q));
}

Decomposition decomposition_from_mixing(const DensityMatrix& rho, const MixingMatrix& mixing) {
  const Support support = support_of(rho);
  const auto rank = static_cast<std::size_t>(support.weighted_vectors.cols());
  if (mixing.rank() != rank) {
    fail(ErrorCode::RankMismatch,
         "mixing matrix has " + std::to_string(mixing.rank()) + " columns, rank(rho) = " + std::to_string(rank));
  }
  const CMatrix members = support.weighted_vectors * mixing.matrix().transpose();
  std::vector<Member> kept;
  double total = 0.0;
  for (Eigen::Index j = 0; j < members.cols(); ++j) {
    const double p = members.col(j).squaredNorm();
    if (p < kDropMember) continue;
    kept.push_back({p, PureState::normalized(members.col(j))});
    total += p;
  }
  for (auto& m : kept) m.weight /= total;
  return Decomposition::from_members(rho, std::move(kept));
}

// --------------------------------------------------------------- objectives

double SsvObjective::weighted(const Eigen::Ref<const CVector>& v) const {
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) return 0.0;
  return n2 - v.cwiseAbs2().squaredNorm() / n2;
}

double VarianceObjective::weighted(const Eigen::Ref<const CVector>& v) const {
  if (static_cast<std::size_t>(v.size()) != observable_.dim()) {
    fail(ErrorCode::DimensionMismatch, "member and observable dimensions differ");
  }
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) return 0.0;
  const RVector r = v.cwiseAbs2();
  const RVector& a = observable_.diagonal();
  const double first = r.dot(a);
  return r.dot(a.cwiseAbs2()) - first * first / n2;
}

double average_objective(const Decomposition& decomposition, const MemberObjective& objective) {
  double total = 0.0;
  for (const auto& m : decomposition.members()) total += m.weight * objective(m.state);
  return total;
}

double average_ssv(const Decomposition& decomposition) {
  double total = 0.0;
  for (const auto& m : decomposition.members()) total += m.weight * ssv_pure(m.state);
  return total;
}

// ---------------------------------------------------------------- optimizer

RoofResult optimize_decomposition(const DensityMatrix& rho, Direction direction, const MemberObjective& objective,
                                  const RoofConfig& cfg) {
  const Support support = support_of(rho);
  const auto rank = static_cast<std::size_t>(support.weighted_vectors.cols());
  check_config(cfg, rank);
  if (rank == 0) fail(ErrorCode::NumericalFailure, "state has no eigenvalue above the rank threshold");
  const std::size_t members = cfg.members == 0 ? rank * rank : cfg.members;
  const double sign = direction == Direction::Minimize ? 1.0 : -1.0;

  double best_signed = std::numeric_limits<double>::infinity();
  CMatrix best_mixing;
  bool best_converged = false;
  std::size_t best_sweeps = 0;

  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    const MixingMatrix start = MixingMatrix::random(members, rank, cfg.seed + restart);
    EnsembleSearch search(support.weighted_vectors, start.matrix(), objective, sign);
    bool converged = members < 2;
    std::size_t sweeps = 0;
    while (!converged && sweeps < cfg.max_iters) {
      const double gain = search.sweep();
      ++sweeps;
      if (gain < cfg.tol) converged = true;
    }
    const double value = search.signed_total();
    if (value < best_signed) {
      best_signed = value;
      best_mixing = search.mixing();
      best_converged = converged;
      best_sweeps = sweeps;
    }
  }

  // Re-orthonormalize to wash out the rounding accumulated by the rotations.
  Eigen::HouseholderQR<CMatrix> qr(best_mixing);
  CMatrix q = qr.householderQ() * CMatrix::Identity(best_mixing.rows(), best_mixing.cols());
  const CMatrix r = qr.matrixQR().topRows(best_mixing.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < r.cols(); ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  MixingMatrix mixing = MixingMatrix::from_matrix(std::move(q));
  Decomposition decomposition = decomposition_from_mixing(rho, mixing);
  const double value = average_objective(decomposition, objective);
  return RoofResult{value,
                    std::move(decomposition),
                    std::move(mixing),
                    cfg.restarts,
                    best_converged,
                    std::numeric_limits<double>::quiet_NaN(),
                    best_sweeps};
}

RoofResult optimize_roof(const DensityMatrix& rho, Direction direction, const RoofConfig& cfg) {
  RoofResult result = optimize_decomposition(rho, direction, SsvObjective{}, cfg);
  result.value = average_ssv(result.decomposition);
  result.certificate_gap =
      direction == Direction::Minimize ? result.value - vc_lower_bound(rho) : ssv_mixed(rho) - result.value;
  return result;
}

}  // namespace ssvar

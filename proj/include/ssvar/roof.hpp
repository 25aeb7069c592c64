#pragma once

// Fisher information, the spectral lower bound on the convex roof, and the
// decomposition search behind the convex-roof (min) and concave-bottom (max)
// extensions of the standard symmetrized variance.
//
// Every pure-state decomposition of rho with n members arises from an n x r
// isometry U (r = rank rho) through
//
//   |psi~_j> = sum_k U_jk sqrt(lambda_k) |phi_k>,   p_j = <psi~_j|psi~_j>.
//
// The search keeps U an exact isometry by only ever applying 2x2 unitary
// rotations to pairs of its rows.

#include <cstddef>
#include <cstdint>
#include <memory>

#include "ssvar/states.hpp"

namespace ssvar {

enum class Direction { Minimize, Maximize };

/// Fisher information F(rho, A) = sum_kl 2 (l_k - l_l)^2 / (l_k + l_l) |A_kl|^2
/// in the eigenbasis of rho. Pairs with l_k + l_l <= 1e-12 are skipped.
double qfi(const DensityMatrix& rho, const DiagonalObservable& observable);

/// (1/2) sum_kl (l_k - l_l)^2 / (l_k + l_l) sum_i |phi^k_i|^2 |phi^l_i|^2,
/// a lower bound on the convex roof.
double vc_lower_bound(const DensityMatrix& rho);

/// n x r matrix with orthonormal columns.
class MixingMatrix {
 public:
  /// Validates U^dagger U = I within 1e-10 (NotIsometry).
  static MixingMatrix from_matrix(CMatrix matrix);
  static MixingMatrix identity(std::size_t rank);
  /// Orthonormalized complex Gaussian.
  static MixingMatrix random(std::size_t members, std::size_t rank, std::uint64_t seed);

  std::size_t members() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  explicit MixingMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {}
  CMatrix matrix_;
};

/// Decomposition generated by U. Members with p_j < 1e-12 are dropped and
/// the remaining weights renormalized. Throws RankMismatch when U's column
/// count differs from numerical_rank(rho).
Decomposition decomposition_from_mixing(const DensityMatrix& rho, const MixingMatrix& mixing);

/// Per-member objective f for the ensemble average sum_k p_k f(psi_k).
class MemberObjective {
 public:
  virtual ~MemberObjective() = default;
  /// ||v||^2 f(v / ||v||) for an unnormalized member vector v (0 for v = 0).
  virtual double weighted(const Eigen::Ref<const CVector>& v) const = 0;
  /// f on a normalized state.
  double operator()(const PureState& state) const { return weighted(state.amplitudes()); }
};

/// f = standard symmetrized variance, 1 - sum_i |psi_i|^4.
class SsvObjective final : public MemberObjective {
 public:
  double weighted(const Eigen::Ref<const CVector>& v) const override;
};

/// f = Var(psi, A).
class VarianceObjective final : public MemberObjective {
 public:
  explicit VarianceObjective(DiagonalObservable observable) : observable_(std::move(observable)) {}
  double weighted(const Eigen::Ref<const CVector>& v) const override;

 private:
  DiagonalObservable observable_;
};

/// sum_k p_k f(psi_k).
double average_objective(const Decomposition& decomposition, const MemberObjective& objective);

/// sum_k p_k (1 - sum_i |psi_k,i|^4).
double average_ssv(const Decomposition& decomposition);

struct RoofConfig {
  std::size_t members = 0;  // 0 selects rank^2
  std::size_t restarts = 16;
  std::size_t max_iters = 400;  // sweeps over all row pairs, per restart
  double tol = 1e-8;            // stop once a sweep gains less than this
  std::uint64_t seed = 1;
};

struct RoofResult {
  double value;
  Decomposition decomposition;
  MixingMatrix mixing;
  std::size_t restarts_used;
  bool converged;         // the winning restart stopped on tol, not max_iters
  double certificate_gap; // distance to the best known bound; NaN if none
  std::size_t sweeps;     // sweeps spent by the winning restart
};

/// Multi-restart search over decompositions of rho for the extremum of
/// sum_k p_k f(psi_k). Restart i starts from MixingMatrix::random with seed
/// cfg.seed + i; the best value wins with ties going to the lowest restart
/// index, so the result only depends on (rho, cfg). certificate_gap is NaN.
RoofResult optimize_decomposition(const DensityMatrix& rho, Direction direction,
                                  const MemberObjective& objective, const RoofConfig& cfg = {});

/// optimize_decomposition with the standard symmetrized variance. Minimize
/// estimates the convex roof V_c and reports value - vc_lower_bound as the
/// certificate gap; Maximize estimates the concave bottom V_a and reports
/// ssv_mixed - value.
RoofResult optimize_roof(const DensityMatrix& rho, Direction direction, const RoofConfig& cfg = {});

}  // namespace ssvar

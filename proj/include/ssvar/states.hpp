#pragma once

// Core state types. All values are immutable after construction and every
// factory validates the type invariants, so a PureState or DensityMatrix in
// hand is always a valid one.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ssvar/error.hpp"

namespace ssvar {

class Permutation;

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

namespace tolerance {
inline constexpr double kValidation = 1e-12;      // normalization, hermiticity, trace
inline constexpr double kPositivity = 1e-10;      // smallest admissible eigenvalue is -kPositivity
inline constexpr double kReconstruction = 1e-10;  // eigendecomposition, probability sums
inline constexpr double kMembership = 1e-8;       // decomposition reconstructs its parent
inline constexpr double kRank = 1e-10;            // eigenvalues above this count toward the rank
}  // namespace tolerance

/// Unit vector in the computational basis.
class PureState {
 public:
  /// Validates dim >= 2 and unit norm; throws Error otherwise.
  static PureState from_amplitudes(CVector amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const CVector& vector);
  static PureState basis(std::size_t dim, std::size_t index);
  /// Equal-magnitude superposition (the maximally coherent state).
  static PureState uniform(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  /// r_i = |psi_i|^2.
  RVector coherence_vector() const;
  CMatrix projector() const;

 private:
  explicit PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {}
  CVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const CMatrix& matrix);
  static DensityMatrix from_pure(const PureState& state);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// diag(p); p must be a probability vector.
  static DensityMatrix diagonal(const RVector& probabilities);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Diagonal entries rho_ii (real parts).
  RVector populations() const;
  /// Tr rho^2.
  double purity() const;

 private:
  // Similarity transforms of a valid state skip re-validation.
  friend DensityMatrix apply_permutation(const Permutation& pi, const DensityMatrix& rho);

  explicit DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {}
  CMatrix matrix_;
};

/// Real diagonal observable A = diag(a_0, ..., a_{d-1}).
class DiagonalObservable {
 public:
  static DiagonalObservable from_diagonal(RVector diagonal);
  static DiagonalObservable pauli_z();
  /// diag(0, 1, ..., d-1); non-degenerate for every d.
  static DiagonalObservable default_for(std::size_t dim);
  /// Projector |i><i| in dimension dim.
  static DiagonalObservable projector(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(diag_.size()); }
  const RVector& diagonal() const noexcept { return diag_; }
  double operator[](std::size_t i) const { return diag_(static_cast<Eigen::Index>(i)); }
  double trace() const { return diag_.sum(); }
  double trace_of_square() const { return diag_.squaredNorm(); }
  CMatrix matrix() const;

 private:
  explicit DiagonalObservable(RVector diagonal) : diag_(std::move(diagonal)) {}
  RVector diag_;
};

struct EigenPair {
  double value;
  PureState vector;
};

/// Eigenpairs sorted by descending eigenvalue. Degenerate eigenspaces get an
/// arbitrary orthonormal basis.
std::vector<EigenPair> eigendecompose(const DensityMatrix& rho);

/// Matrix form of eigendecompose: values descending, eigenvectors as columns.
struct Spectrum {
  RVector values;
  CMatrix vectors;
};
Spectrum spectrum(const DensityMatrix& rho);

/// Number of eigenvalues above tolerance::kRank.
std::size_t numerical_rank(const DensityMatrix& rho);

enum class StateKind { Pure, Density };

/// Generic entry point: a column (or row) vector for Pure, a square matrix
/// for Density.
std::variant<PureState, DensityMatrix> validate(const CMatrix& candidate, StateKind kind);

/// Pi(rho): keeps the diagonal in the reference basis.
DensityMatrix dephase(const DensityMatrix& rho);

/// S_L(rho) = 1 - Tr rho^2.
double linear_entropy(const DensityMatrix& rho);

struct Block {
  double weight;
  DensityMatrix state;
};

/// p_1 rho_1 (+) ... (+) p_n rho_n, block diagonal.
DensityMatrix direct_sum(const std::vector<Block>& blocks);

/// Convex combination t*a + (1-t)*b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double t);

struct Member {
  double weight;
  PureState state;
};

/// Pure-state ensemble {p_k, psi_k} reconstructing its parent.
class Decomposition {
 public:
  /// Validates p_k > 0, sum p_k = 1 (1e-10) and reconstruction (1e-8).
  static Decomposition from_members(DensityMatrix parent, std::vector<Member> members);

  const DensityMatrix& parent() const noexcept { return parent_; }
  const std::vector<Member>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  CMatrix reconstruct() const;
  /// Max-abs entry of reconstruct() - parent.
  double reconstruction_error() const;

 private:
  Decomposition(DensityMatrix parent, std::vector<Member> members)
      : parent_(std::move(parent)), members_(std::move(members)) {}
  DensityMatrix parent_;
  std::vector<Member> members_;
};

// Random generation. Seeds are explicit; no shared generator state.

/// Per-object seed derived from one root seed and a counter (splitmix64).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter);

/// Unitarily invariant random pure state (normalized complex Gaussian).
PureState haar_random_pure(std::size_t dim, std::uint64_t seed);

/// Trace-normalized G G^dagger with G a dim x rank complex Gaussian matrix.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

/// Standard-normal diagonal entries.
DiagonalObservable random_observable(std::size_t dim, std::uint64_t seed);

/// dim x cols complex matrix with i.i.d. standard complex normal entries.
CMatrix complex_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace ssvar

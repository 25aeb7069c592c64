#include "ssvar/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace ssvar {

namespace {

std::string describe(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

// ---------------------------------------------------------------- PureState

PureState PureState::from_amplitudes(CVector amplitudes) {
  if (amplitudes.size() < 2) {
    fail(ErrorCode::BadDimension,
         "pure state needs dim >= 2, got " + std::to_string(amplitudes.size()));
  }
  if (!amplitudes.allFinite()) fail(ErrorCode::BadShape, "amplitudes contain non-finite entries");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tolerance::kValidation) {
    fail(ErrorCode::NotNormalized, "norm^2 = " + describe(norm2));
  }
  return PureState(std::move(amplitudes));
}

PureState PureState::normalized(const CVector& vector) {
  const double norm = vector.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    fail(ErrorCode::NotNormalized, "cannot normalize a vector of norm " + describe(norm));
  }
  return from_amplitudes(vector / norm);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) fail(ErrorCode::BadShape, "basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return from_amplitudes(std::move(v));
}

PureState PureState::uniform(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return from_amplitudes(CVector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

RVector PureState::coherence_vector() const { return amplitudes_.cwiseAbs2(); }

CMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

// ------------------------------------------------------------ DensityMatrix

DensityMatrix DensityMatrix::from_matrix(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    fail(ErrorCode::BadShape, "density matrix must be square and non-empty, got " +
                                  std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()));
  }
  if (!matrix.allFinite()) fail(ErrorCode::BadShape, "matrix contains non-finite entries");
  const double asym = max_abs(matrix - matrix.adjoint());
  if (asym > tolerance::kValidation) {
    fail(ErrorCode::NotHermitian, "max |rho - rho^dagger| = " + describe(asym));
  }
  const double trace = matrix.trace().real();
  if (std::abs(trace - 1.0) > tolerance::kValidation) {
    fail(ErrorCode::NotNormalized, "trace = " + describe(trace));
  }
  CMatrix hermitian = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "eigensolver did not converge");
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -tolerance::kPositivity) {
    fail(ErrorCode::NotPositive, "smallest eigenvalue = " + describe(smallest));
  }
  return DensityMatrix(std::move(hermitian));
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  return DensityMatrix(state.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (n < 1) fail(ErrorCode::BadDimension, "dimension must be positive");
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const RVector& probabilities) {
  CMatrix m = CMatrix::Zero(probabilities.size(), probabilities.size());
  m.diagonal() = probabilities.cast<Complex>();
  return from_matrix(m);
}

RVector DensityMatrix::populations() const { return matrix_.diagonal().real(); }

double DensityMatrix::purity() const { return matrix_.squaredNorm(); }

// ------------------------------------------------------- DiagonalObservable

DiagonalObservable DiagonalObservable::from_diagonal(RVector diagonal) {
  if (diagonal.size() < 1) fail(ErrorCode::BadDimension, "observable needs at least one entry");
  if (!diagonal.allFinite()) fail(ErrorCode::BadShape, "observable has non-finite entries");
  return DiagonalObservable(std::move(diagonal));
}

DiagonalObservable DiagonalObservable::pauli_z() {
  RVector d(2);
  d << 1.0, -1.0;
  return DiagonalObservable(std::move(d));
}

DiagonalObservable DiagonalObservable::default_for(std::size_t dim) {
  RVector d(static_cast<Eigen::Index>(dim));
  std::iota(d.begin(), d.end(), 0.0);
  return from_diagonal(std::move(d));
}

DiagonalObservable DiagonalObservable::projector(std::size_t dim, std::size_t index) {
  if (index >= dim) fail(ErrorCode::BadShape, "projector index out of range");
  RVector d = RVector::Zero(static_cast<Eigen::Index>(dim));
  d(static_cast<Eigen::Index>(index)) = 1.0;
  return from_diagonal(std::move(d));
}

CMatrix DiagonalObservable::matrix() const { return diag_.cast<Complex>().asDiagonal(); }

// ---------------------------------------------------------------- spectrum

Spectrum spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "eigensolver did not converge");
  // Eigen sorts ascending.
  Spectrum s;
  s.values = solver.eigenvalues().reverse();
  s.vectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

std::vector<EigenPair> eigendecompose(const DensityMatrix& rho) {
  const Spectrum s = spectrum(rho);
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(s.values.size()));
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    pairs.push_back({s.values(k), PureState::normalized(s.vectors.col(k))});
  }
  return pairs;
}

std::size_t numerical_rank(const DensityMatrix& rho) {
  const Spectrum s = spectrum(rho);
  return static_cast<std::size_t>((s.values.array() > tolerance::kRank).count());
}

std::variant<PureState, DensityMatrix> validate(const CMatrix& candidate, StateKind kind) {
  if (kind == StateKind::Pure) {
    if (candidate.cols() == 1) return PureState::from_amplitudes(candidate.col(0));
    if (candidate.rows() == 1) return PureState::from_amplitudes(candidate.row(0).transpose());
    fail(ErrorCode::BadShape, "pure state must be a vector, got " + std::to_string(candidate.rows()) + "x" +
                                  std::to_string(candidate.cols()));
  }
  return DensityMatrix::from_matrix(candidate);
}

// --------------------------------------------------------- channel helpers

DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix m = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  m.diagonal() = rho.matrix().diagonal().real().cast<Complex>();
  return DensityMatrix::from_matrix(m);
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - rho.purity(); }

DensityMatrix direct_sum(const std::vector<Block>& blocks) {
  if (blocks.empty()) fail(ErrorCode::BadProbabilities, "direct sum of zero blocks");
  double total = 0.0;
  Eigen::Index dim = 0;
  for (const auto& b : blocks) {
    if (!(b.weight > 0.0)) fail(ErrorCode::BadProbabilities, "block weight " + describe(b.weight) + " <= 0");
    total += b.weight;
    dim += static_cast<Eigen::Index>(b.state.dim());
  }
  if (std::abs(total - 1.0) > tolerance::kReconstruction) {
    fail(ErrorCode::BadProbabilities, "block weights sum to " + describe(total));
  }
  CMatrix m = CMatrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    const auto n = static_cast<Eigen::Index>(b.state.dim());
    m.block(offset, offset, n, n) = b.weight * b.state.matrix();
    offset += n;
  }
  // Renormalize away the rounding in sum p_i.
  m /= m.trace().real();
  return DensityMatrix::from_matrix(m);
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double t) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "mixing states of different dimension");
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::BadProbabilities, "mixing weight outside [0, 1]");
  CMatrix m = t * a.matrix() + (1.0 - t) * b.matrix();
  m /= m.trace().real();
  return DensityMatrix::from_matrix(m);
}

// ------------------------------------------------------------ Decomposition

Decomposition Decomposition::from_members(DensityMatrix parent, std::vector<Member> members) {
  if (members.empty()) fail(ErrorCode::BadProbabilities, "decomposition has no members");
  double total = 0.0;
  for (const auto& m : members) {
    if (!(m.weight > 0.0)) fail(ErrorCode::BadProbabilities, "member weight " + describe(m.weight) + " <= 0");
    if (m.state.dim() != parent.dim()) fail(ErrorCode::DimensionMismatch, "member dimension differs from parent");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > tolerance::kReconstruction) {
    fail(ErrorCode::BadProbabilities, "member weights sum to " + describe(total));
  }
  Decomposition d(std::move(parent), std::move(members));
  const double err = d.reconstruction_error();
  if (err > tolerance::kMembership) {
    fail(ErrorCode::BadDecomposition, "decomposition misses its parent by " + describe(err));
  }
  return d;
}

CMatrix Decomposition::reconstruct() const {
  CMatrix m = CMatrix::Zero(parent_.matrix().rows(), parent_.matrix().cols());
  for (const auto& member : members_) m += member.weight * member.state.projector();
  return m;
}

double Decomposition::reconstruction_error() const { return max_abs(reconstruct() - parent_.matrix()); }

// ------------------------------------------------------------------ random

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CMatrix complex_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

PureState haar_random_pure(std::size_t dim, std::uint64_t seed) {
  if (dim < 2) fail(ErrorCode::BadDimension, "haar_random_pure needs dim >= 2");
  return PureState::normalized(complex_gaussian(dim, 1, seed).col(0));
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  if (dim < 1) fail(ErrorCode::BadDimension, "random_density needs dim >= 1");
  if (rank < 1 || rank > dim) {
    fail(ErrorCode::BadRank, "rank " + std::to_string(rank) + " outside [1, " + std::to_string(dim) + "]");
  }
  const CMatrix g = complex_gaussian(dim, rank, seed);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(rho);
}

DiagonalObservable random_observable(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector d(static_cast<Eigen::Index>(dim));
  for (auto& x : d) x = normal(engine);
  return DiagonalObservable::from_diagonal(std::move(d));
}

}  // namespace ssvar

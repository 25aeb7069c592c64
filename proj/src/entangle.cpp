#include "ssvar/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssvar {

BipartitePureState BipartitePureState::from_amplitudes(CMatrix amplitudes) {
  if (amplitudes.rows() < 1 || amplitudes.cols() < 1) fail(ErrorCode::BadShape, "empty amplitude matrix");
  if (!amplitudes.allFinite()) fail(ErrorCode::BadShape, "amplitudes contain non-finite entries");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tolerance::kValidation) {
    std::ostringstream msg;
    msg << "Frobenius norm^2 = " << norm2;
    fail(ErrorCode::NotNormalized, msg.str());
  }
  return BipartitePureState(std::move(amplitudes));
}

BipartitePureState BipartitePureState::from_vector(const CVector& vector, std::size_t dim_a, std::size_t dim_b) {
  if (static_cast<std::size_t>(vector.size()) != dim_a * dim_b) {
    fail(ErrorCode::DimensionMismatch, "vector length differs from dim_a * dim_b");
  }
  CMatrix m(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b));
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_b; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vector(static_cast<Eigen::Index>(i * dim_b + j));
    }
  }
  return from_amplitudes(std::move(m));
}

BipartitePureState BipartitePureState::product(const PureState& a, const PureState& b) {
  return from_amplitudes(a.amplitudes() * b.amplitudes().transpose());
}

BipartitePureState BipartitePureState::maximally_entangled(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return from_amplitudes(CMatrix::Identity(n, n) / std::sqrt(static_cast<double>(dim)));
}

CVector BipartitePureState::vector() const {
  CVector v(amplitudes_.size());
  for (Eigen::Index i = 0; i < amplitudes_.rows(); ++i) {
    for (Eigen::Index j = 0; j < amplitudes_.cols(); ++j) v(i * amplitudes_.cols() + j) = amplitudes_(i, j);
  }
  return v;
}

CMatrix BipartitePureState::reduced_a() const { return amplitudes_ * amplitudes_.adjoint(); }

BipartitePureState random_bipartite_pure(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  const CMatrix g = complex_gaussian(dim_a, dim_b, seed);
  return BipartitePureState::from_amplitudes(g / g.norm());
}

CMatrix SchmidtForm::reconstruct() const {
  return basis_a * coefficients.cast<Complex>().asDiagonal() * basis_b.transpose();
}

SchmidtForm schmidt(const BipartitePureState& state) {
  Eigen::JacobiSVD<CMatrix> svd(state.amplitudes(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "SVD did not converge");
  SchmidtForm form;
  form.coefficients = svd.singularValues();
  form.basis_a = svd.matrixU();
  // M = U S V^dagger = sum_i s_i u_i conj(v_i)^T, so |b_i> = conj(v_i).
  form.basis_b = svd.matrixV().conjugate();
  return form;
}

double ssv_bipartite(const BipartitePureState& state) {
  const RVector squares = schmidt(state).coefficients.cwiseAbs2();
  return 1.0 - squares.squaredNorm();
}

double concurrence_pure(const BipartitePureState& state) {
  const double purity = state.reduced_a().squaredNorm();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

std::vector<double> schmidt_expectations(const BipartitePureState& state, bool already_schmidt) {
  std::vector<double> e;
  if (already_schmidt) {
    const CMatrix& m = state.amplitudes();
    const Eigen::Index d = std::min(m.rows(), m.cols());
    CMatrix off = m;
    off.diagonal().head(d).setZero();
    const double leak = off.cwiseAbs().maxCoeff();
    if (leak > tolerance::kReconstruction) {
      std::ostringstream msg;
      msg << "amplitude matrix is not diagonal (max off-diagonal " << leak << ")";
      fail(ErrorCode::BadShape, msg.str());
    }
    for (Eigen::Index i = 0; i < d; ++i) e.push_back(std::norm(m(i, i)));
  } else {
    const SchmidtForm form = schmidt(state);
    for (Eigen::Index i = 0; i < form.coefficients.size(); ++i) e.push_back(form.coefficients(i) * form.coefficients(i));
  }
  return e;
}

double entanglement_from_expectations(const BipartitePureState& state, bool already_schmidt) {
  double total = 0.0;
  for (double e : schmidt_expectations(state, already_schmidt)) total += e - e * e;
  return total;
}

double BipartiteSsvObjective::weighted(const Eigen::Ref<const CVector>& v) const {
  if (static_cast<std::size_t>(v.size()) != dim_a_ * dim_b_) {
    fail(ErrorCode::DimensionMismatch, "member length differs from dim_a * dim_b");
  }
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) return 0.0;
  // Column-major view of v as dim_b x dim_a is M^T; its Gram matrix has the
  // same Frobenius norm as rho_A = M M^dagger.
  const Eigen::Map<const CMatrix> mt(v.data(), static_cast<Eigen::Index>(dim_b_), static_cast<Eigen::Index>(dim_a_));
  const double purity = (mt.adjoint() * mt).squaredNorm();
  return n2 - purity / n2;
}

RoofResult entanglement_vc(const DensityMatrix& rho_ab, std::size_t dim_a, std::size_t dim_b, const RoofConfig& cfg) {
  if (dim_a < 1 || dim_b < 1 || rho_ab.dim() != dim_a * dim_b) {
    fail(ErrorCode::BadDimension, "state dimension " + std::to_string(rho_ab.dim()) + " does not factor as " +
                                      std::to_string(dim_a) + " x " + std::to_string(dim_b));
  }
  RoofResult result = optimize_decomposition(rho_ab, Direction::Minimize, BipartiteSsvObjective(dim_a, dim_b), cfg);
  result.certificate_gap = result.value;
  return result;
}

}  // namespace ssvar

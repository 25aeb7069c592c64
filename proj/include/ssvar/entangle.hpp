#pragma once

// The standard symmetrized variance of bipartite pure states as an
// entanglement measure, and its convex roof for mixed states.
//
// Amplitude convention: |psi> = sum_ij M_ij |i>|j>, vectorized with index
// i * dim_b + j. Schmidt coefficients are the singular values of M, so
// sum_i lambda_i^2 = 1.

#include <cstddef>
#include <vector>

#include "ssvar/roof.hpp"
#include "ssvar/states.hpp"

namespace ssvar {

class BipartitePureState {
 public:
  /// Validates unit Frobenius norm (1e-12) and dims >= 1.
  static BipartitePureState from_amplitudes(CMatrix amplitudes);
  /// Reshapes a vector of length dim_a * dim_b.
  static BipartitePureState from_vector(const CVector& vector, std::size_t dim_a, std::size_t dim_b);
  static BipartitePureState product(const PureState& a, const PureState& b);
  /// sum_i |ii> / sqrt(d).
  static BipartitePureState maximally_entangled(std::size_t dim);

  std::size_t dim_a() const noexcept { return static_cast<std::size_t>(amplitudes_.rows()); }
  std::size_t dim_b() const noexcept { return static_cast<std::size_t>(amplitudes_.cols()); }
  const CMatrix& amplitudes() const noexcept { return amplitudes_; }
  CVector vector() const;
  /// rho_A = Tr_B |psi><psi| = M M^dagger.
  CMatrix reduced_a() const;

 private:
  explicit BipartitePureState(CMatrix amplitudes) : amplitudes_(std::move(amplitudes)) {}
  CMatrix amplitudes_;
};

/// Haar-random state on C^dim_a (x) C^dim_b.
BipartitePureState random_bipartite_pure(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed);

struct SchmidtForm {
  RVector coefficients;  // nonincreasing, length min(dim_a, dim_b)
  CMatrix basis_a;       // dim_a x min, orthonormal columns
  CMatrix basis_b;       // dim_b x min, orthonormal columns

  /// sum_i lambda_i |a_i>|b_i> as an amplitude matrix.
  CMatrix reconstruct() const;
};

SchmidtForm schmidt(const BipartitePureState& state);

/// 1 - sum_i lambda_i^4.
double ssv_bipartite(const BipartitePureState& state);

/// sqrt(2 (1 - Tr rho_A^2)).
double concurrence_pure(const BipartitePureState& state);

/// e_i = <psi|Pi_i (x) Pi_i|psi> in the Schmidt basis. With already_schmidt
/// the amplitude matrix must be diagonal (BadShape otherwise) and is read
/// directly; otherwise schmidt() is applied first.
std::vector<double> schmidt_expectations(const BipartitePureState& state, bool already_schmidt);

/// sum_i (e_i - e_i^2), equal to ssv_bipartite.
double entanglement_from_expectations(const BipartitePureState& state, bool already_schmidt);

/// f = ssv_bipartite of the member reshaped to dim_a x dim_b.
class BipartiteSsvObjective final : public MemberObjective {
 public:
  BipartiteSsvObjective(std::size_t dim_a, std::size_t dim_b) : dim_a_(dim_a), dim_b_(dim_b) {}
  double weighted(const Eigen::Ref<const CVector>& v) const override;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
};

/// Convex roof of ssv_bipartite over decompositions of rho_AB. The
/// certificate gap is value - 0.
RoofResult entanglement_vc(const DensityMatrix& rho_ab, std::size_t dim_a, std::size_t dim_b,
                           const RoofConfig& cfg = {});

}  // namespace ssvar

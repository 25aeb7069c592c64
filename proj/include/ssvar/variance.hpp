#pragma once

#include <cstddef>

#include "ssvar/permutation.hpp"
#include "ssvar/states.hpp"

namespace ssvar {

/// Var(rho, A) = Tr(A^2 rho) - Tr(A rho)^2, clamped at 0.
double variance(const DensityMatrix& rho, const DiagonalObservable& observable);
double variance(const PureState& state, const DiagonalObservable& observable);

/// kappa(A) = (d Tr A^2 - (Tr A)^2) / (d (d - 1)). Requires d >= 2.
double kappa(const DiagonalObservable& observable);

/// Average of Var(P_pi psi, A) over all of S_d. Both forms (permuted state,
/// conjugated observable) are summed and must agree to 1e-12 relative to
/// the scale of A; a disagreement throws NumericalFailure. d <= 8.
double symmetrized_variance_bruteforce(const PureState& state, const DiagonalObservable& observable);

/// kappa(A) * (1 - sum_i |psi_i|^4).
double symmetrized_variance_analytic(const PureState& state, const DiagonalObservable& observable);

/// The two S_d moments of the entries of A.
struct MomentPair {
  double same_index;   // (1/d!) sum_pi a_{pi(i)}^2
  double cross_index;  // (1/d!) sum_pi a_{pi(i)} a_{pi(j)}, i != j
};

/// Closed forms Tr A^2 / d and ((Tr A)^2 - Tr A^2) / (d (d - 1)).
MomentPair permutation_moments_closed_form(const DiagonalObservable& observable);

/// Enumerates S_d for the given indices and cross-checks against the closed
/// forms (1e-12 relative to max a_i^2); throws NumericalFailure on mismatch.
MomentPair permutation_moments(const DiagonalObservable& observable, std::size_t i, std::size_t j);

}  // namespace ssvar

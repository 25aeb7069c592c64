#pragma once

#include <vector>

#include "ssvar/states.hpp"

namespace ssvar {

/// 1 - sum_i |psi_i|^4. Observable-free; in [0, 1 - 1/d].
double ssv_pure(const PureState& state);

/// S_L(Pi(rho)) = 1 - sum_i rho_ii^2.
double ssv_mixed(const DensityMatrix& rho);

/// (1/kappa(A)) (1/d!) sum_pi Var(P_pi rho P_pi^dagger, A), by enumeration.
/// Throws DegenerateObservable when kappa(A) < 1e-12; d <= 8.
double ssv_mixed_bruteforce(const DensityMatrix& rho, const DiagonalObservable& observable);

/// total = classical + quantum, with classical the mixedness S_L(rho) and
/// quantum the genuine coherence S_L(Pi(rho)) - S_L(rho). Not clamped.
struct UncertaintySplit {
  double total;
  double classical;
  double quantum;
};
UncertaintySplit uncertainty_split(const DensityMatrix& rho);

/// |Var(rho, A) + Var(rho, s1 A s1) - (2 Tr A^2 - (Tr A)^2) ssv_mixed(rho)|
/// for a qubit; s1 is the bit flip. Should vanish to rounding.
double qubit_equality_relation_check(const DensityMatrix& rho, const DiagonalObservable& observable);

/// |V(+) p_i rho_i) - (sum_i p_i^2 V(rho_i) + sum_{i != j} p_i p_j)|.
double direct_sum_law_check(const std::vector<Block>& blocks);

}  // namespace ssvar

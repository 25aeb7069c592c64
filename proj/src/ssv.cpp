#include "ssvar/ssv.hpp"

#include <cmath>
#include <sstream>

#include "ssvar/permutation.hpp"
#include "ssvar/variance.hpp"

namespace ssvar {

double ssv_pure(const PureState& state) { return 1.0 - state.coherence_vector().squaredNorm(); }

double ssv_mixed(const DensityMatrix& rho) { return 1.0 - rho.populations().squaredNorm(); }

double ssv_mixed_bruteforce(const DensityMatrix& rho, const DiagonalObservable& observable) {
  if (rho.dim() != observable.dim()) fail(ErrorCode::DimensionMismatch, "state and observable dimensions differ");
  if (rho.dim() > kMaxEnumerationDim) fail(ErrorCode::DimensionTooLarge, "brute force capped at d = 8");
  const double k = kappa(observable);
  if (k < 1e-12) {
    std::ostringstream msg;
    msg << "kappa(A) = " << k << " (constant observable)";
    fail(ErrorCode::DegenerateObservable, msg.str());
  }
  double total = 0.0;
  std::size_t count = 0;
  for_each_permutation(rho.dim(), [&](const Permutation& pi) {
    total += variance(apply_permutation(pi, rho), observable);
    ++count;
  });
  return total / static_cast<double>(count) / k;
}

UncertaintySplit uncertainty_split(const DensityMatrix& rho) {
  const double total = ssv_mixed(rho);
  const double classical = linear_entropy(rho);
  return {total, classical, total - classical};
}

double qubit_equality_relation_check(const DensityMatrix& rho, const DiagonalObservable& observable) {
  if (rho.dim() != 2 || observable.dim() != 2) fail(ErrorCode::BadDimension, "qubit relation needs d = 2");
  const auto flipped = apply_permutation(Permutation::transposition(2, 0, 1), observable);
  const double tr = observable.trace();
  const double lhs = variance(rho, observable) + variance(rho, flipped);
  const double rhs = (2.0 * observable.trace_of_square() - tr * tr) * ssv_mixed(rho);
  return std::abs(lhs - rhs);
}

double direct_sum_law_check(const std::vector<Block>& blocks) {
  const DensityMatrix sum = direct_sum(blocks);
  double predicted = 0.0;
  double weight_sq = 0.0;
  double weight = 0.0;
  for (const auto& b : blocks) {
    predicted += b.weight * b.weight * ssv_mixed(b.state);
    weight_sq += b.weight * b.weight;
    weight += b.weight;
  }
  // sum_{i != j} p_i p_j = (sum p_i)^2 - sum p_i^2
  predicted += weight * weight - weight_sq;
  return std::abs(ssv_mixed(sum) - predicted);
}

}  // namespace ssvar

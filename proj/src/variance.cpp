#include "ssvar/variance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>


namespace ssvar {

namespace {

// Neumaier compensated sum, so the enumeration result does not depend on
// the magnitude ordering of the terms beyond ~1e-16 relative.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double clamp_variance(double raw) {
  if (raw < 0.0) {
    if (raw < -1e-9) {
      std::ostringstream msg;
      msg << "negative variance " << raw << " clamped to 0";
      warn(msg.str());
    }
    return 0.0;
  }
  return raw;
}

// Variance from populations alone; A is diagonal so only rho_ii matter.
double population_variance(const RVector& populations, const RVector& a) {
  const double second = populations.dot(a.cwiseAbs2());
  const double first = populations.dot(a);
  return second - first * first;
}

void check_dims(std::size_t state_dim, const DiagonalObservable& observable) {
  if (state_dim != observable.dim()) {
    fail(ErrorCode::DimensionMismatch, "state dimension " + std::to_string(state_dim) +
                                           " vs observable dimension " + std::to_string(observable.dim()));
  }
}

double observable_scale(const DiagonalObservable& observable) {
  return std::max(1.0, observable.diagonal().cwiseAbs2().maxCoeff());
}

}  // namespace

double variance(const DensityMatrix& rho, const DiagonalObservable& observable) {
  check_dims(rho.dim(), observable);
  return clamp_variance(population_variance(rho.populations(), observable.diagonal()));
}

double variance(const PureState& state, const DiagonalObservable& observable) {
  check_dims(state.dim(), observable);
  return clamp_variance(population_variance(state.coherence_vector(), observable.diagonal()));
}

double kappa(const DiagonalObservable& observable) {
  const auto d = static_cast<double>(observable.dim());
  if (observable.dim() < 2) fail(ErrorCode::BadDimension, "kappa needs d >= 2");
  const double tr = observable.trace();
  const double tr2 = observable.trace_of_square();
  // Cauchy-Schwarz guarantees d Tr A^2 >= (Tr A)^2; only rounding can flip it.
  return std::max(0.0, (d * tr2 - tr * tr) / (d * (d - 1.0)));
}

double symmetrized_variance_bruteforce(const PureState& state, const DiagonalObservable& observable) {
  check_dims(state.dim(), observable);
  CompensatedSum permuted_state;
  CompensatedSum conjugated_observable;
  std::size_t count = 0;
  for_each_permutation(state.dim(), [&](const Permutation& pi) {
    permuted_state.add(variance(apply_permutation(pi, state), observable));
    conjugated_observable.add(variance(state, apply_permutation(pi, observable)));
    ++count;
  });
  const double a = permuted_state.value() / static_cast<double>(count);
  const double b = conjugated_observable.value() / static_cast<double>(count);
  if (std::abs(a - b) > 1e-12 * observable_scale(observable)) {
    std::ostringstream msg;
    msg << "permuted-state and conjugated-observable averages differ by " << std::abs(a - b);
    fail(ErrorCode::NumericalFailure, msg.str());
  }
  return a;
}

double symmetrized_variance_analytic(const PureState& state, const DiagonalObservable& observable) {
  check_dims(state.dim(), observable);
  const RVector r = state.coherence_vector();
  return kappa(observable) * (1.0 - r.squaredNorm());
}

MomentPair permutation_moments_closed_form(const DiagonalObservable& observable) {
  const auto d = static_cast<double>(observable.dim());
  if (observable.dim() < 2) fail(ErrorCode::BadDimension, "moments need d >= 2");
  const double tr = observable.trace();
  const double tr2 = observable.trace_of_square();
  return {tr2 / d, (tr * tr - tr2) / (d * (d - 1.0))};
}

MomentPair permutation_moments(const DiagonalObservable& observable, std::size_t i, std::size_t j) {
  const std::size_t d = observable.dim();
  if (d > kMaxEnumerationDim) {
    fail(ErrorCode::DimensionTooLarge, "permutation moments enumerate S_d only up to d = 8");
  }
  if (i >= d || j >= d) fail(ErrorCode::BadShape, "moment index out of range");
  if (i == j) fail(ErrorCode::SameIndex, "cross moment needs i != j, got i = j = " + std::to_string(i));
  CompensatedSum same;
  CompensatedSum cross;
  std::size_t count = 0;
  for_each_permutation(d, [&](const Permutation& pi) {
    same.add(observable[pi(i)] * observable[pi(i)]);
    cross.add(observable[pi(i)] * observable[pi(j)]);
    ++count;
  });
  const MomentPair enumerated{same.value() / static_cast<double>(count),
                              cross.value() / static_cast<double>(count)};
  const MomentPair closed = permutation_moments_closed_form(observable);
  const double tol = 1e-12 * observable_scale(observable);
  if (std::abs(enumerated.same_index - closed.same_index) > tol ||
      std::abs(enumerated.cross_index - closed.cross_index) > tol) {
    fail(ErrorCode::NumericalFailure, "enumerated permutation moments disagree with the closed forms");
  }
  return enumerated;
}

}  // namespace ssvar

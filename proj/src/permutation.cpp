#include "ssvar/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ssvar {

namespace {

void check_dim(const Permutation& pi, std::size_t dim) {
  if (pi.dim() != dim) {
    fail(ErrorCode::DimensionMismatch,
         "permutation on " + std::to_string(pi.dim()) + " points applied to dimension " + std::to_string(dim));
  }
}

}  // namespace

Permutation Permutation::from_map(std::vector<std::size_t> map) {
  std::vector<std::size_t> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) fail(ErrorCode::BadShape, "map is not a bijection on {0..d-1}");
  }
  return Permutation(std::move(map));
}

Permutation Permutation::identity(std::size_t dim) {
  std::vector<std::size_t> map(dim);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return Permutation(std::move(map));
}

Permutation Permutation::transposition(std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= dim || j >= dim) fail(ErrorCode::BadShape, "transposition index out of range");
  auto p = identity(dim);
  std::swap(p.map_[i], p.map_[j]);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

RMatrix Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(map_.size());
  RMatrix p = RMatrix::Zero(n, n);
  for (std::size_t j = 0; j < map_.size(); ++j) p(static_cast<Eigen::Index>(map_[j]), static_cast<Eigen::Index>(j)) = 1.0;
  return p;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  check_dim(outer, inner.dim());
  std::vector<std::size_t> map(inner.dim());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = outer(inner(i));
  return Permutation::from_map(std::move(map));
}

void for_each_permutation(std::size_t dim, const std::function<void(const Permutation&)>& visit) {
  if (dim > kMaxEnumerationDim) {
    fail(ErrorCode::DimensionTooLarge,
         "exhaustive S_d enumeration capped at d = " + std::to_string(kMaxEnumerationDim) + ", got " +
             std::to_string(dim));
  }
  // Iterative Heap's algorithm.
  std::vector<std::size_t> map(dim);
  std::iota(map.begin(), map.end(), std::size_t{0});
  std::vector<std::size_t> counters(dim, 0);
  visit(Permutation::from_map(map));
  std::size_t k = 1;
  while (k < dim) {
    if (counters[k] < k) {
      if (k % 2 == 0) {
        std::swap(map[0], map[k]);
      } else {
        std::swap(map[counters[k]], map[k]);
      }
      visit(Permutation::from_map(map));
      ++counters[k];
      k = 1;
    } else {
      counters[k] = 0;
      ++k;
    }
  }
}

std::vector<Permutation> all_permutations(std::size_t dim) {
  std::vector<Permutation> out;
  for_each_permutation(dim, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

PureState apply_permutation(const Permutation& pi, const PureState& state) {
  check_dim(pi, state.dim());
  CVector out(state.amplitudes().size());
  for (std::size_t j = 0; j < pi.dim(); ++j) out(static_cast<Eigen::Index>(pi(j))) = state[j];
  return PureState::from_amplitudes(std::move(out));
}

DensityMatrix apply_permutation(const Permutation& pi, const DensityMatrix& rho) {
  check_dim(pi, rho.dim());
  const auto n = static_cast<Eigen::Index>(rho.dim());
  CMatrix out(n, n);
  for (std::size_t i = 0; i < pi.dim(); ++i) {
    for (std::size_t j = 0; j < pi.dim(); ++j) {
      out(static_cast<Eigen::Index>(pi(i)), static_cast<Eigen::Index>(pi(j))) = rho(i, j);
    }
  }
  return DensityMatrix(std::move(out));
}

DiagonalObservable apply_permutation(const Permutation& pi, const DiagonalObservable& observable) {
  check_dim(pi, observable.dim());
  RVector out(observable.diagonal().size());
  for (std::size_t j = 0; j < pi.dim(); ++j) out(static_cast<Eigen::Index>(j)) = observable[pi(j)];
  return DiagonalObservable::from_diagonal(std::move(out));
}

}  // namespace ssvar

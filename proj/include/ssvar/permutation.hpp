#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ssvar/states.hpp"

namespace ssvar {

/// Largest dimension for which S_d is enumerated exhaustively (8! = 40320).
inline constexpr std::size_t kMaxEnumerationDim = 8;

/// Bijection pi on {0, ..., d-1}. Its matrix P_pi sends |j> to |pi(j)>.
class Permutation {
 public:
  static Permutation from_map(std::vector<std::size_t> map);
  static Permutation identity(std::size_t dim);
  static Permutation transposition(std::size_t dim, std::size_t i, std::size_t j);

  std::size_t dim() const noexcept { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

  Permutation inverse() const;
  RMatrix matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {}
  std::vector<std::size_t> map_;
};

/// (outer o inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Visits every element of S_d once, in Heap's-algorithm order starting at
/// the identity. Throws DimensionTooLarge above kMaxEnumerationDim.
void for_each_permutation(std::size_t dim, const std::function<void(const Permutation&)>& visit);

std::vector<Permutation> all_permutations(std::size_t dim);

/// P_pi |psi>: output[pi(j)] = input[j].
PureState apply_permutation(const Permutation& pi, const PureState& state);
/// P_pi rho P_pi^dagger.
DensityMatrix apply_permutation(const Permutation& pi, const DensityMatrix& rho);
/// P_pi^dagger A P_pi: output[j] = a[pi(j)]. Note this action is a right
/// action: conjugating by (pi o sigma) equals conjugating by pi, then sigma.
DiagonalObservable apply_permutation(const Permutation& pi, const DiagonalObservable& observable);

}  // namespace ssvar

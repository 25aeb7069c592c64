#include <numbers>

#include "helpers.hpp"
#include "ssvar/permutation.hpp"
#include "ssvar/qubit.hpp"

using namespace ssvar;
using testing::seed;

TEST_CASE("validate accepts basis and maximally mixed inputs") {
  CMatrix v(2, 1);
  v << 1.0, 0.0;
  const auto pure = validate(v, StateKind::Pure);
  REQUIRE(std::holds_alternative<PureState>(pure));
  CHECK(std::get<PureState>(pure)[0] == Complex(1.0, 0.0));

  CMatrix half = CMatrix::Identity(2, 2) * 0.5;
  const auto mixed = validate(half, StateKind::Density);
  REQUIRE(std::holds_alternative<DensityMatrix>(mixed));
  CHECK(testing::max_abs(std::get<DensityMatrix>(mixed).matrix() - half) == 0.0);
}

TEST_CASE("validate rejects malformed inputs") {
  CMatrix v(2, 1);
  v << 0.6, 0.6;
  CHECK_THROWS_CODE(validate(v, StateKind::Pure), ErrorCode::NotNormalized);

  CMatrix h(2, 2);
  h << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_CODE(DensityMatrix::from_matrix(h), ErrorCode::NotHermitian);

  CMatrix neg(2, 2);
  neg << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_CODE(DensityMatrix::from_matrix(neg), ErrorCode::NotPositive);

  CMatrix tr = CMatrix::Identity(2, 2);
  CHECK_THROWS_CODE(DensityMatrix::from_matrix(tr), ErrorCode::NotNormalized);

  CHECK_THROWS_CODE(DensityMatrix::from_matrix(CMatrix::Zero(2, 3)), ErrorCode::BadShape);
  CHECK_THROWS_CODE(PureState::from_amplitudes(CVector::Ones(1)), ErrorCode::BadDimension);
}

TEST_CASE("haar_random_pure is seeded and normalized") {
  const PureState a = haar_random_pure(2, 42);
  const PureState b = haar_random_pure(2, 42);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(haar_random_pure(2, 43).amplitudes() != a.amplitudes());
  CHECK_NEAR(haar_random_pure(4, 7).amplitudes().squaredNorm(), 1.0, 1e-12);

  // r_0 is uniform on [0, 1] for Haar qubits.
  double mean = 0.0;
  constexpr int kSamples = 10000;
  for (int k = 0; k < kSamples; ++k) mean += haar_random_pure(2, seed(1, k)).coherence_vector()(0);
  CHECK_NEAR(mean / kSamples, 0.5, 0.02);
}

TEST_CASE("random_density respects rank") {
  const DensityMatrix r1 = random_density(2, 1, 5);
  CHECK_NEAR(r1.purity(), 1.0, 1e-12);
  CHECK(numerical_rank(r1) == 1);

  const DensityMatrix full = random_density(3, 3, 5);
  CHECK_NEAR(full.matrix().trace().real(), 1.0, 1e-12);
  CHECK(spectrum(full).values.minCoeff() >= 0.0);

  const DensityMatrix r2 = random_density(4, 2, 9);
  CHECK(spectrum(r2).values(2) < 1e-10);
  CHECK(numerical_rank(r2) == 2);

  CHECK_THROWS_CODE(random_density(3, 4, 1), ErrorCode::BadRank);
  CHECK_THROWS_CODE(random_density(3, 0, 1), ErrorCode::BadRank);
}

TEST_CASE("eigendecompose") {
  const auto half = eigendecompose(DensityMatrix::maximally_mixed(2));
  CHECK_NEAR(half[0].value, 0.5, 1e-15);
  CHECK_NEAR(half[1].value, 0.5, 1e-15);
  CHECK_NEAR(std::abs(half[0].vector.amplitudes().dot(half[1].vector.amplitudes())), 0.0, 1e-15);

  const PureState plus = PureState::uniform(2);
  const auto pure = eigendecompose(DensityMatrix::from_pure(plus));
  CHECK_NEAR(pure[0].value, 1.0, 1e-15);
  CHECK_NEAR(pure[1].value, 0.0, 1e-15);
  CHECK_NEAR(std::abs(pure[0].vector.amplitudes().dot(plus.amplitudes())), 1.0, 1e-12);

  const auto bloch = eigendecompose(to_density({0.8, 1.1, 0.4}));
  CHECK_NEAR(bloch[0].value, 0.9, 1e-12);
  CHECK_NEAR(bloch[1].value, 0.1, 1e-12);

  for (std::size_t d = 2; d <= 8; ++d) {
    const DensityMatrix rho = random_density(d, 1 + d / 2, seed(2, d));
    CMatrix back = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& [value, vec] : eigendecompose(rho)) back += value * vec.projector();
    CHECK(testing::max_abs(back - rho.matrix()) <= 1e-10);
  }
}

TEST_CASE("degenerate eigenbasis choice does not move basis-covariant quantities") {
  // Perturbation argument: splitting a degeneracy slightly changes the value
  // by a comparable amount only.
  const DensityMatrix rho = DensityMatrix::diagonal(RVector::Constant(3, 1.0 / 3.0));
  const double base = linear_entropy(rho);
  RVector p(3);
  p << 1.0 / 3.0 + 1e-9, 1.0 / 3.0 - 1e-9, 1.0 / 3.0;
  CHECK_NEAR(linear_entropy(DensityMatrix::diagonal(p)), base, 1e-8);
}

TEST_CASE("apply_permutation") {
  const Permutation swap = Permutation::transposition(2, 0, 1);
  CHECK(apply_permutation(swap, PureState::basis(2, 0)).amplitudes() == PureState::basis(2, 1).amplitudes());

  const DensityMatrix rho = random_density(3, 3, 11);
  CHECK(apply_permutation(Permutation::identity(3), rho).matrix() == rho.matrix());

  const DiagonalObservable flipped = apply_permutation(swap, DiagonalObservable::pauli_z());
  CHECK(flipped[0] == -1.0);
  CHECK(flipped[1] == 1.0);

  CHECK_THROWS_CODE(apply_permutation(swap, PureState::basis(3, 0)), ErrorCode::DimensionMismatch);
}

TEST_CASE("dephase") {
  const DensityMatrix plus = DensityMatrix::from_pure(PureState::uniform(2));
  CHECK(testing::max_abs(dephase(plus).matrix() - DensityMatrix::maximally_mixed(2).matrix()) <= 1e-15);

  RVector p(3);
  p << 0.2, 0.3, 0.5;
  const DensityMatrix diag = DensityMatrix::diagonal(p);
  CHECK(dephase(diag).matrix() == diag.matrix());

  const BlochState b{0.7, 0.9, 2.0};
  const RVector pops = dephase(to_density(b)).populations();
  CHECK_NEAR(pops(0), 0.5 * (1 + b.r * std::cos(b.theta)), 1e-15);
  CHECK_NEAR(pops(1), 0.5 * (1 - b.r * std::cos(b.theta)), 1e-15);
}

TEST_CASE("linear_entropy") {
  CHECK_NEAR(linear_entropy(DensityMatrix::from_pure(haar_random_pure(3, 1))), 0.0, 1e-15);
  CHECK_NEAR(linear_entropy(DensityMatrix::maximally_mixed(2)), 0.5, 1e-15);
  for (double r : {0.0, 0.3, 0.8, 1.0}) {
    CHECK_NEAR(linear_entropy(to_density({r, 0.4, 1.0})), 0.5 * (1 - r * r), 1e-15);
  }
}

TEST_CASE("direct_sum") {
  const DensityMatrix one = DensityMatrix::maximally_mixed(1);
  CHECK(testing::max_abs(direct_sum({{0.5, one}, {0.5, one}}).matrix() -
                         DensityMatrix::maximally_mixed(2).matrix()) == 0.0);

  const DensityMatrix rho = random_density(3, 2, 4);
  CHECK(testing::max_abs(direct_sum({{1.0, rho}}).matrix() - rho.matrix()) <= 1e-15);

  const DensityMatrix ds = direct_sum(
      {{1.0 / 3.0, DensityMatrix::maximally_mixed(2)}, {2.0 / 3.0, DensityMatrix::from_pure(PureState::basis(2, 0))}});
  RVector expect(4);
  expect << 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 0.0;
  CHECK(testing::max_abs(ds.matrix() - DensityMatrix::diagonal(expect).matrix()) <= 1e-15);

  CHECK_THROWS_CODE(direct_sum({{0.5, one}, {0.2, one}}), ErrorCode::BadProbabilities);
  CHECK_THROWS_CODE(direct_sum({{1.5, one}, {-0.5, one}}), ErrorCode::BadProbabilities);
}

TEST_CASE("Decomposition validates reconstruction") {
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  const auto d = Decomposition::from_members(half, {{0.5, PureState::basis(2, 0)}, {0.5, PureState::basis(2, 1)}});
  CHECK(d.reconstruction_error() == 0.0);
  CHECK_THROWS_CODE(Decomposition::from_members(half, {{1.0, PureState::basis(2, 0)}}), ErrorCode::BadDecomposition);
  CHECK_THROWS_CODE(Decomposition::from_members(half, {{0.7, PureState::basis(2, 0)}, {0.7, PureState::basis(2, 1)}}),
                    ErrorCode::BadProbabilities);
}

TEST_CASE("permutation composition, idempotent dephasing, entropy invariance") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto perms = all_permutations(d);
    const PureState psi = haar_random_pure(d, seed(3, d));
    const DensityMatrix rho = random_density(d, d, seed(4, d));
    const DiagonalObservable a = random_observable(d, seed(5, d));
    for (std::size_t i = 0; i < perms.size(); i += 1 + perms.size() / 12) {
      for (std::size_t j = 0; j < perms.size(); j += 1 + perms.size() / 12) {
        const Permutation& pi = perms[i];
        const Permutation& sigma = perms[j];
        const Permutation both = compose(pi, sigma);
        CHECK(apply_permutation(both, psi).amplitudes() ==
              apply_permutation(pi, apply_permutation(sigma, psi)).amplitudes());
        CHECK(testing::max_abs(apply_permutation(both, rho).matrix() -
                               apply_permutation(pi, apply_permutation(sigma, rho)).matrix()) <= 1e-15);
        // Conjugation of observables composes in the opposite order.
        CHECK(apply_permutation(both, a).diagonal() ==
              apply_permutation(sigma, apply_permutation(pi, a)).diagonal());
      }
      CHECK_NEAR(linear_entropy(apply_permutation(perms[i], rho)), linear_entropy(rho), 1e-12);
    }
    const DensityMatrix once = dephase(rho);
    CHECK(dephase(once).matrix() == once.matrix());
  }
}

TEST_CASE("linear entropy vanishes exactly on rank-one states") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const DensityMatrix pure = random_density(d, 1, seed(6, d));
    CHECK(spectrum(pure).values(0) > 1 - 1e-8);
    CHECK_NEAR(linear_entropy(pure), 0.0, 1e-12);
    const DensityMatrix mixed = random_density(d, 2, seed(7, d));
    CHECK(spectrum(mixed).values(0) <= 1 - 1e-8);
    CHECK(linear_entropy(mixed) > 1e-8);
  }
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
}

#include <numbers>
#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ssvar/permutation.hpp"
#include "ssvar/qubit.hpp"
#include "ssvar/variance.hpp"

using namespace ssvar;
using testing::seed;

namespace {

std::vector<double> as_std(const DiagonalObservable& a) {
  return {a.diagonal().data(), a.diagonal().data() + a.dim()};
}

DiagonalObservable diag(std::initializer_list<double> v) {
  RVector x(static_cast<Eigen::Index>(v.size()));
  std::size_t i = 0;
  for (double e : v) x(static_cast<Eigen::Index>(i++)) = e;
  return DiagonalObservable::from_diagonal(x);
}

}  // namespace

TEST_CASE("Heap enumeration visits S_d once each") {
  for (std::size_t d = 1; d <= 6; ++d) {
    std::set<std::vector<std::size_t>> seen;
    bool first = true;
    for_each_permutation(d, [&](const Permutation& p) {
      if (first) CHECK(p == Permutation::identity(d));
      first = false;
      seen.insert(p.map());
    });
    std::set<std::vector<std::size_t>> expect;
    oracle::each_permutation(static_cast<int>(d), [&](const std::vector<int>& pi) {
      expect.insert(std::vector<std::size_t>(pi.begin(), pi.end()));
    });
    CHECK(seen == expect);
  }
  CHECK_THROWS_CODE(for_each_permutation(9, [](const Permutation&) {}), ErrorCode::DimensionTooLarge);
}

TEST_CASE("Permutation basics") {
  CHECK_THROWS_CODE(Permutation::from_map({0, 0, 1}), ErrorCode::BadShape);
  CHECK_THROWS_CODE(Permutation::from_map({0, 3, 1}), ErrorCode::BadShape);
  const Permutation p = Permutation::from_map({2, 0, 3, 1});
  CHECK(compose(p, p.inverse()) == Permutation::identity(4));
  CHECK(compose(p.inverse(), p) == Permutation::identity(4));
  const RMatrix m = p.matrix();
  const oracle::Mat ref = oracle::perm_matrix({2, 0, 3, 1});
  CHECK((m.cast<Complex>() - ref).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("variance") {
  const DiagonalObservable z = DiagonalObservable::pauli_z();
  CHECK_NEAR(variance(PureState::uniform(2), z), 1.0, 1e-15);
  CHECK_NEAR(variance(PureState::basis(2, 0), z), 0.0, 1e-15);
  for (double r : {0.2, 0.9}) {
    for (double t : {0.3, 1.4, 2.8}) {
      const double c = r * std::cos(t);
      CHECK_NEAR(variance(to_density({r, t, 0.7}), z), 1.0 - c * c, 1e-14);
    }
  }
  const DensityMatrix rho = random_density(4, 4, 3);
  CHECK_NEAR(variance(rho, diag({2.5, 2.5, 2.5, 2.5})), 0.0, 1e-15);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix r = random_density(3, 1 + k % 3, seed(10, k));
    const DiagonalObservable a = random_observable(3, seed(11, k));
    CHECK(variance(r, a) >= 0.0);
    CHECK_NEAR(variance(r, a), oracle::variance(r.matrix(), a.matrix()), 1e-12);
  }
}

TEST_CASE("kappa") {
  CHECK_NEAR(kappa(DiagonalObservable::pauli_z()), 2.0, 1e-15);
  CHECK_NEAR(kappa(DiagonalObservable::projector(2, 0)), 0.5, 1e-15);
  CHECK_NEAR(kappa(diag({3.0, 3.0, 3.0})), 0.0, 1e-15);
  CHECK_NEAR(kappa(diag({1.0, 2.0, 3.0})), 1.0, 1e-15);
  CHECK_THROWS_CODE(kappa(diag({1.0})), ErrorCode::BadDimension);
}

TEST_CASE("symmetrized variance examples") {
  const DiagonalObservable z = DiagonalObservable::pauli_z();
  CHECK_NEAR(symmetrized_variance_bruteforce(PureState::uniform(2), z), 1.0, 1e-15);
  CHECK_NEAR(symmetrized_variance_analytic(PureState::uniform(2), z), 1.0, 1e-15);
  const DiagonalObservable a = random_observable(4, 8);
  CHECK_NEAR(symmetrized_variance_bruteforce(PureState::basis(4, 2), a), 0.0, 1e-14);
  CHECK_NEAR(symmetrized_variance_analytic(PureState::basis(4, 2), a), 0.0, 1e-15);
  CHECK_NEAR(symmetrized_variance_bruteforce(PureState::uniform(3), diag({1, 2, 3})), 2.0 / 3.0, 1e-14);

  const PureState psi = haar_random_pure(5, 77);
  const DiagonalObservable b = random_observable(5, 78);
  CHECK_NEAR(symmetrized_variance_bruteforce(psi, b), symmetrized_variance_analytic(psi, b), 1e-12);
}

TEST_CASE("symmetrized variance against dense-matrix enumeration") {
  for (std::size_t d = 2; d <= 6; ++d) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PureState psi = haar_random_pure(d, seed(20 + d, k));
      const DiagonalObservable a = random_observable(d, seed(30 + d, k));
      const double analytic = symmetrized_variance_analytic(psi, a);
      worst = std::max(worst, std::abs(symmetrized_variance_bruteforce(psi, a) - analytic));
      if (k < 10) {
        const double dense = oracle::symmetrized_variance(DensityMatrix::from_pure(psi).matrix(), as_std(a));
        CHECK_NEAR(dense, analytic, 1e-10);
        CHECK_NEAR(kappa(a), oracle::kappa(as_std(a)), 1e-12);
      }
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("symmetrized variance: permutation symmetry, observable conjugation, concavity") {
  std::mt19937_64 gen(testing::kRoot);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto perms = all_permutations(d);
    for (int k = 0; k < 10; ++k) {
      const PureState psi = haar_random_pure(d, seed(40, d * 100 + k));
      const PureState phi = haar_random_pure(d, seed(41, d * 100 + k));
      const DiagonalObservable a = random_observable(d, seed(42, d * 100 + k));
      const Permutation& pi = perms[(static_cast<std::size_t>(k) * 7) % perms.size()];
      CHECK_NEAR(symmetrized_variance_analytic(apply_permutation(pi, psi), a), symmetrized_variance_analytic(psi, a),
                 1e-12);
      CHECK_NEAR(symmetrized_variance_bruteforce(psi, apply_permutation(pi, a)),
                 symmetrized_variance_bruteforce(psi, a), 1e-12);

      const double t = unit(gen);
      auto f = [&](const RVector& r) { return kappa(a) * (1.0 - r.squaredNorm()); };
      const RVector rp = psi.coherence_vector();
      const RVector rq = phi.coherence_vector();
      CHECK(f(t * rp + (1 - t) * rq) >= t * f(rp) + (1 - t) * f(rq) - 1e-12);
    }
  }
}

TEST_CASE("permutation moments") {
  const MomentPair z = permutation_moments(DiagonalObservable::pauli_z(), 0, 1);
  CHECK_NEAR(z.same_index, 1.0, 1e-15);
  CHECK_NEAR(z.cross_index, -1.0, 1e-15);

  const MomentPair ones = permutation_moments(diag({1, 1, 1}), 1, 2);
  CHECK_NEAR(ones.same_index, 1.0, 1e-15);
  CHECK_NEAR(ones.cross_index, 1.0, 1e-15);

  const MomentPair m = permutation_moments(diag({1, 2, 3}), 0, 2);
  CHECK_NEAR(m.same_index, 14.0 / 3.0, 1e-14);
  CHECK_NEAR(m.cross_index, 11.0 / 3.0, 1e-14);

  CHECK_THROWS_CODE(permutation_moments(diag({1, 2, 3}), 1, 1), ErrorCode::SameIndex);
  CHECK_THROWS_CODE(permutation_moments(diag({1, 2, 3}), 0, 3), ErrorCode::BadShape);
  CHECK_THROWS_CODE(permutation_moments(random_observable(9, 1), 0, 1), ErrorCode::DimensionTooLarge);

  // Enumeration by next_permutation for every index pair.
  for (std::size_t d = 2; d <= 6; ++d) {
    const DiagonalObservable a = random_observable(d, seed(50, d));
    const std::vector<double> v = as_std(a);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        double same = 0.0;
        double cross = 0.0;
        oracle::each_permutation(static_cast<int>(d), [&](const std::vector<int>& pi) {
          same += v[pi[i]] * v[pi[i]];
          cross += v[pi[i]] * v[pi[j]];
        });
        const double n = oracle::factorial(static_cast<int>(d));
        const MomentPair got = permutation_moments(a, i, j);
        CHECK_NEAR(got.same_index, same / n, 1e-12);
        CHECK_NEAR(got.cross_index, cross / n, 1e-12);
      }
    }
  }
}

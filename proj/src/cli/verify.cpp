#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "ssvar/cli/commands.hpp"
#include "ssvar/entangle.hpp"
#include "ssvar/permutation.hpp"
#include "ssvar/qubit.hpp"
#include "ssvar/ssv.hpp"
#include "ssvar/variance.hpp"

namespace ssvar::cli {

namespace {

using nlohmann::json;

// Residual bookkeeping for one named check.
class Check {
 public:
  Check(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

  void record(double residual) {
    ++trials_;
    if (std::isnan(residual)) {
      nan_seen_ = true;
      return;
    }
    max_residual_ = std::max(max_residual_, residual);
  }
  void require(bool condition) {
    if (!condition) condition_failed_ = true;
  }
  void note(const std::string& key, json value) { extra_[key] = std::move(value); }

  bool passed() const { return !nan_seen_ && !condition_failed_ && max_residual_ <= tolerance_; }

  json to_json() const {
    json out = {{"name", name_},      {"passed", passed()}, {"max_residual", max_residual_},
                {"tolerance", tolerance_}, {"trials", trials_}};
    if (!extra_.empty()) out["extra"] = extra_;
    return out;
  }

 private:
  std::string name_;
  double tolerance_;
  double max_residual_ = 0.0;
  std::size_t trials_ = 0;
  bool nan_seen_ = false;
  bool condition_failed_ = false;
  json extra_ = json::object();
};

using Checks = std::vector<Check>;

// Independent stream per (suite, dimension, trial, role).
struct Seeder {
  std::uint64_t root;
  std::uint64_t suite;
  std::uint64_t operator()(std::size_t dim, std::size_t trial, std::size_t role = 0) const {
    return derive_seed(derive_seed(derive_seed(derive_seed(root, suite), dim), trial), role);
  }
};

RVector random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  RVector w(static_cast<Eigen::Index>(n));
  for (auto& x : w) x = u(gen);
  return w / w.sum();
}

// Rank-1 on even trials, full rank on odd.
DensityMatrix random_mixed_or_pure(std::size_t dim, std::size_t trial, std::uint64_t seed) {
  return trial % 2 == 0 ? DensityMatrix::from_pure(haar_random_pure(dim, seed)) : random_density(dim, dim, seed);
}

std::vector<std::size_t> dims_or(const std::vector<std::size_t>& given, std::vector<std::size_t> fallback) {
  return given.empty() ? fallback : given;
}

void require_enumerable(const std::vector<std::size_t>& dims, const std::string& suite) {
  for (std::size_t d : dims) {
    if (d < 2 || d > kMaxEnumerationDim) {
      throw InputError("suite '" + suite + "' enumerates S_d and needs dims in 2..8, got " + std::to_string(d));
    }
  }
}

void require_at_least_two(const std::vector<std::size_t>& dims, const std::string& suite) {
  for (std::size_t d : dims) {
    if (d < 2) throw InputError("suite '" + suite + "' needs dims >= 2, got " + std::to_string(d));
  }
}

void suite_theorem1(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  const auto dims = dims_or(o.dims, {2, 3, 4, 5});
  require_enumerable(dims, "theorem1");
  Check factor("symmetrized variance = kappa(A) (1 - sum |psi_i|^4)", 1e-10);
  for (std::size_t d : dims) {
    for (std::size_t t = 0; t < o.trials; ++t) {
      const PureState psi = haar_random_pure(d, seed(d, t, 0));
      const DiagonalObservable a = random_observable(d, seed(d, t, 1));
      factor.record(std::abs(symmetrized_variance_bruteforce(psi, a) - symmetrized_variance_analytic(psi, a)));
    }
  }
  out.push_back(std::move(factor));
}

void suite_theorem2(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  const auto dims = dims_or(o.dims, {2, 3, 4, 5});
  require_enumerable(dims, "theorem2");
  Check value("permutation-averaged variance / kappa = 1 - sum rho_ii^2", 1e-10);
  Check independence("observable independence across 3 observables", 1e-10);
  for (std::size_t d : dims) {
    for (std::size_t t = 0; t < o.trials; ++t) {
      const DensityMatrix rho = random_mixed_or_pure(d, t + 1, seed(d, t, 0));
      const double closed = ssv_mixed(rho);
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t k = 0; k < 3; ++k) {
        const DiagonalObservable a = random_observable(d, seed(d, t, 1 + k));
        const double brute = ssv_mixed_bruteforce(rho, a);
        value.record(std::abs(brute - closed));
        lo = std::min(lo, brute);
        hi = std::max(hi, brute);
      }
      independence.record(hi - lo);
    }
  }
  out.push_back(std::move(value));
  out.push_back(std::move(independence));
}

void suite_theorem3(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  const auto dims = dims_or(o.dims, {2, 3, 4});
  require_at_least_two(dims, "theorem3");
  Check bound("spectral lower bound <= optimized V_c", 1e-7);
  Check qubit_equality("spectral lower bound = V_c on qubits", 1e-6);
  Check chain("V_c <= V_a <= V", 1e-7);
  Check saturation("V_a = V for d <= 3", 1e-6);
  Check fisher("4 min average variance = Fisher information", 1e-5);
  Check fisher_bound("Fisher information <= 4 variance", 1e-9);
  for (std::size_t d : dims) {
    for (std::size_t t = 0; t < o.trials; ++t) {
      const DensityMatrix rho = random_mixed_or_pure(d, t, seed(d, t, 0));
      const RoofResult vc = optimize_roof(rho, Direction::Minimize, o.roof);
      const RoofResult va = optimize_roof(rho, Direction::Maximize, o.roof);
      const double lower = vc_lower_bound(rho);
      const double vhat = ssv_mixed(rho);
      bound.record(std::max(0.0, lower - vc.value));
      if (d == 2) qubit_equality.record(std::abs(lower - vc.value));
      chain.record(std::max({0.0, vc.value - va.value, va.value - vhat}));
      if (d <= 3) saturation.record(std::abs(va.value - vhat));
      {
        const DiagonalObservable a = DiagonalObservable::default_for(d);
        fisher_bound.record(std::max(0.0, qfi(rho, a) - 4.0 * variance(rho, a)));
      }
      if (d <= 3) {
        const DiagonalObservable a = DiagonalObservable::default_for(d);
        const RoofResult var = optimize_decomposition(rho, Direction::Minimize, VarianceObjective(a), o.roof);
        fisher.record(std::abs(4.0 * var.value - qfi(rho, a)));
      }
    }
  }
  out.push_back(std::move(bound));
  if (std::find(dims.begin(), dims.end(), 2) != dims.end()) out.push_back(std::move(qubit_equality));
  out.push_back(std::move(chain));
  out.push_back(std::move(fisher_bound));
  if (std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d <= 3; })) {
    out.push_back(std::move(saturation));
    out.push_back(std::move(fisher));
  }
}

void suite_theorem4(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  Check roof("optimized V_c = qubit closed form", 1e-6);
  for (std::size_t t = 0; t < o.trials; ++t) {
    const DensityMatrix rho = random_mixed_or_pure(2, t, seed(2, t, 0));
    roof.record(std::abs(optimize_roof(rho, Direction::Minimize, o.roof).value - vc_qubit(rho)));
  }
  out.push_back(std::move(roof));

  constexpr std::size_t kGrid = 20;
  Check vc_form("V_c = r^2 sin^2(theta) / 2 on the Bloch grid", 1e-12);
  Check v_form("V = (1 - r^2 cos^2(theta)) / 2 on the Bloch grid", 1e-12);
  Check reconstruct("optimal decompositions reconstruct rho", 1e-8);
  Check targets("optimal decompositions reach V_c and V", 1e-8);
  for (std::size_t i = 0; i < kGrid; ++i) {
    for (std::size_t j = 0; j < kGrid; ++j) {
      const BlochState b{static_cast<double>(i) / (kGrid - 1), std::numbers::pi * static_cast<double>(j) / (kGrid - 1),
                         0.3};
      const DensityMatrix rho = to_density(b);
      const double s = std::sin(b.theta);
      const double c = std::cos(b.theta);
      vc_form.record(std::abs(vc_qubit(rho) - 0.5 * b.r * b.r * s * s));
      v_form.record(std::abs(ssv_mixed(rho) - 0.5 * (1.0 - b.r * b.r * c * c)));
      const Decomposition lo = qubit_optimal_decomposition(b, Direction::Minimize);
      const Decomposition hi = qubit_optimal_decomposition(b, Direction::Maximize);
      reconstruct.record(std::max(lo.reconstruction_error(), hi.reconstruction_error()));
      targets.record(std::max(std::abs(average_ssv(lo) - vc_qubit(rho)), std::abs(average_ssv(hi) - ssv_mixed(rho))));
    }
  }
  out.push_back(std::move(vc_form));
  out.push_back(std::move(v_form));
  out.push_back(std::move(reconstruct));
  out.push_back(std::move(targets));
}

void suite_qubit_gap(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  Check consistent("gap adjudication is definitive and consistent", 0.0);
  std::map<std::string, std::size_t> tally{{"claimed", 0}, {"mixedness", 0}, {"neither", 0}};
  double worst_mixedness = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const DensityMatrix rho = random_density(2, 2, seed(2, t, 0));
    const GapReport g = adjudicate_assistance_gap(rho, o.roof);
    ++tally[to_string(g.matches)];
    worst_mixedness = std::max(worst_mixedness, std::abs(g.numeric_gap - g.mixedness_rhs));
    consistent.record(0.0);
  }
  const std::size_t distinct = static_cast<std::size_t>(
      std::count_if(tally.begin(), tally.end(), [](const auto& kv) { return kv.second > 0; }));
  consistent.require(tally["neither"] == 0 && distinct <= 1);
  consistent.note("tally", tally);
  consistent.note("max_abs_gap_minus_mixedness", worst_mixedness);
  out.push_back(std::move(consistent));

  Check half("gap at I/2 equals 1/2", 1e-6);
  const GapReport g = adjudicate_assistance_gap(DensityMatrix::maximally_mixed(2), o.roof);
  half.record(std::abs(g.numeric_gap - 0.5));
  half.note("claimed_rhs", g.claimed_rhs);
  half.note("matches", to_string(g.matches));
  out.push_back(std::move(half));
}

void suite_entanglement(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  Check concurrence("V = E^2 / 2 on bipartite pure states", 1e-10);
  Check expectations("measured sum (e_i - e_i^2) = V", 1e-10);
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{2, 2}, {2, 3}, {3, 3}};
  for (const auto& [da, db] : shapes) {
    for (std::size_t t = 0; t < o.trials; ++t) {
      const BipartitePureState psi = random_bipartite_pure(da, db, seed(da * 10 + db, t, 0));
      const double e = concurrence_pure(psi);
      const double v = ssv_bipartite(psi);
      concurrence.record(std::abs(v - 0.5 * e * e));
      expectations.record(std::abs(entanglement_from_expectations(psi, false) - v));
    }
  }
  out.push_back(std::move(concurrence));
  out.push_back(std::move(expectations));

  Check separable("entanglement roof vanishes on separable mixtures", 1e-6);
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t terms = 2 + t % 3;
    const RVector w = random_weights(terms, seed(4, t, 0));
    CMatrix sum = CMatrix::Zero(4, 4);
    for (std::size_t k = 0; k < terms; ++k) {
      const CVector v = BipartitePureState::product(haar_random_pure(2, seed(4, t, 1 + 2 * k)),
                                                    haar_random_pure(2, seed(4, t, 2 + 2 * k)))
                            .vector();
      sum += w(static_cast<Eigen::Index>(k)) * v * v.adjoint();
    }
    const DensityMatrix rho = DensityMatrix::from_matrix(sum / sum.trace().real());
    separable.record(entanglement_vc(rho, 2, 2, o.roof).value);
  }
  out.push_back(std::move(separable));
}

void suite_identities(const VerifyOptions& o, const Seeder& seed, Checks& out) {
  const auto dims = dims_or(o.dims, {2, 3, 4, 5, 6});
  require_enumerable(dims, "identities");
  Check moments("permutation moments match closed forms", 1e-12);
  Check bounds("0 <= V <= 1 - 1/d", 1e-12);
  Check extremes("V = 1 - 1/d at uniform amplitudes, 0 at basis states", 1e-12);
  Check composition("P_(pi o sigma) = P_pi P_sigma on states", 1e-12);
  Check invariance("V is invariant under basis permutations", 1e-12);
  for (std::size_t d : dims) {
    for (std::size_t t = 0; t < o.trials; ++t) {
      const DiagonalObservable a = random_observable(d, seed(d, t, 0));
      const MomentPair closed = permutation_moments_closed_form(a);
      const double scale = std::max(1.0, a.diagonal().cwiseAbs2().maxCoeff());
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (i == j) continue;
          const MomentPair m = permutation_moments(a, i, j);
          moments.record(std::max(std::abs(m.same_index - closed.same_index),
                                  std::abs(m.cross_index - closed.cross_index)) /
                         scale);
        }
      }
      const PureState psi = haar_random_pure(d, seed(d, t, 1));
      const double v = ssv_pure(psi);
      const double top = 1.0 - 1.0 / static_cast<double>(d);
      bounds.record(std::max({0.0, -v, v - top}));

      std::vector<std::size_t> map(d);
      std::vector<std::size_t> other(d);
      for (std::size_t k = 0; k < d; ++k) {
        map[k] = k;
        other[k] = k;
      }
      std::mt19937_64 gen(seed(d, t, 2));
      std::shuffle(map.begin(), map.end(), gen);
      std::shuffle(other.begin(), other.end(), gen);
      const Permutation pi = Permutation::from_map(map);
      const Permutation sigma = Permutation::from_map(other);
      const CVector lhs = apply_permutation(compose(pi, sigma), psi).amplitudes();
      const CVector rhs = apply_permutation(pi, apply_permutation(sigma, psi)).amplitudes();
      composition.record((lhs - rhs).cwiseAbs().maxCoeff());
      const DensityMatrix rho = random_density(d, d, seed(d, t, 3));
      invariance.record(std::abs(ssv_mixed(apply_permutation(pi, rho)) - ssv_mixed(rho)));
    }
    extremes.record(std::abs(ssv_pure(PureState::uniform(d)) - (1.0 - 1.0 / static_cast<double>(d))));
    for (std::size_t i = 0; i < d; ++i) extremes.record(std::abs(ssv_pure(PureState::basis(d, i))));
  }
  out.push_back(std::move(moments));
  out.push_back(std::move(bounds));
  out.push_back(std::move(extremes));
  out.push_back(std::move(composition));
  out.push_back(std::move(invariance));

  Check direct_sum_law("direct-sum law", 1e-10);
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t count = 2 + t % 2;
    const RVector w = random_weights(count, seed(0, t, 10));
    std::vector<Block> blocks;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t bd = 1 + (t + k) % 3;
      blocks.push_back({w(static_cast<Eigen::Index>(k)), random_density(bd, bd, seed(0, t, 11 + k))});
    }
    direct_sum_law.record(direct_sum_law_check(blocks));
  }
  out.push_back(std::move(direct_sum_law));

  Check qubit_relation("qubit equality relation Var(A) + Var(s1 A s1) = (2 Tr A^2 - (Tr A)^2) V", 1e-12);
  for (std::size_t t = 0; t < o.trials; ++t) {
    qubit_relation.record(
        qubit_equality_relation_check(random_density(2, 2, seed(2, t, 20)), random_observable(2, seed(2, t, 21))));
  }
  out.push_back(std::move(qubit_relation));
}

using SuiteFn = void (*)(const VerifyOptions&, const Seeder&, Checks&);

struct SuiteEntry {
  const char* name;
  SuiteFn run;
};

constexpr SuiteEntry kSuites[] = {
    {"theorem1", suite_theorem1},   {"theorem2", suite_theorem2},         {"theorem3", suite_theorem3},
    {"theorem4", suite_theorem4},   {"qubit-gap", suite_qubit_gap},       {"entanglement", suite_entanglement},
    {"identities", suite_identities},
};

}  // namespace

Report cmd_verify(const VerifyOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (options.trials == 0) throw InputError("--trials must be positive");

  Report report;
  report.command = "verify";
  report.quantity = options.suite;
  report.seed = options.seed;
  report.config = {{"suite", options.suite},
                   {"dims", options.dims},
                   {"trials", options.trials},
                   {"roof",
                    {{"members", options.roof.members},
                     {"restarts", options.roof.restarts},
                     {"max_iters", options.roof.max_iters},
                     {"tol", options.roof.tol},
                     {"seed", options.roof.seed}}}};

  bool known = false;
  json suites = json::object();
  std::size_t passed = 0;
  std::size_t failed = 0;
  for (std::uint64_t index = 0; const auto& entry : kSuites) {
    ++index;
    if (options.suite != "all" && options.suite != entry.name) continue;
    known = true;
    Checks checks;
    try {
      entry.run(options, Seeder{options.seed, index}, checks);
    } catch (const Error& e) {
      throw InputError(std::string(entry.name) + ": " + e.what());
    }
    json list = json::array();
    for (const Check& c : checks) {
      (c.passed() ? passed : failed) += 1;
      list.push_back(c.to_json());
    }
    suites[entry.name] = std::move(list);
  }
  if (!known) {
    throw InputError("unknown suite '" + options.suite +
                     "' (expected all, theorem1, theorem2, theorem3, theorem4, qubit-gap, entanglement or identities)");
  }
  const auto runs = [&](const char* name) { return options.suite == "all" || options.suite == name; };
  if (runs("qubit-gap")) report.warnings.push_back(kGapFormWarning);
  if (runs("theorem4")) report.warnings.push_back(kBlochSignWarning);
  if (runs("entanglement")) {
    report.warnings.push_back(kSchmidtNormWarning);
    report.warnings.push_back(kPrefactorWarning);
  }

  report.value = {{"checks_passed", passed}, {"checks_failed", failed}};
  report.details["suites"] = std::move(suites);
  report.passed = failed == 0;
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace ssvar::cli

#include <chrono>
#include <cmath>
#include <numbers>

#include "ssvar/cli/commands.hpp"
#include "ssvar/entangle.hpp"
#include "ssvar/qubit.hpp"
#include "ssvar/ssv.hpp"
#include "ssvar/variance.hpp"

namespace ssvar::cli {

namespace {

using nlohmann::json;

json roof_config_json(const RoofConfig& cfg) {
  return {{"members", cfg.members}, {"restarts", cfg.restarts}, {"max_iters", cfg.max_iters},
          {"tol", cfg.tol},         {"seed", cfg.seed}};
}

json roof_result_json(const RoofResult& r) {
  json out = {{"decomposition", decomposition_to_json(r.decomposition)},
              {"restarts_used", r.restarts_used},
              {"converged", r.converged},
              {"sweeps", r.sweeps}};
  out["certificate_gap"] = std::isnan(r.certificate_gap) ? json(nullptr) : json(r.certificate_gap);
  return out;
}

[[noreturn]] void incompatible(const std::string& quantity, StateFileKind kind) {
  throw InputError("quantity '" + quantity + "' is not defined for a " + to_string(kind) + " state");
}

bool is_single_system(StateFileKind kind) { return kind != StateFileKind::BipartitePure; }

void bloch_notice(const StateFile& state, Report& report) {
  if (state.kind != StateFileKind::Bloch) return;
  const auto& b = std::get<BlochState>(state.payload);
  const double c2 = std::cos(b.theta) * std::cos(b.theta);
  report.details["closed_form_value"] = 0.5 * (1.0 - b.r * b.r * c2);
  report.details["sign_flipped_form_value"] = 0.5 + 0.5 * b.r * b.r * c2;
  report.warnings.push_back(kBlochSignWarning);
}

}  // namespace

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  auto to_size = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw InputError("--dims: cannot parse '" + s + "'");
    }
    if (pos != s.size() || v == 0) throw InputError("--dims: cannot parse '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (const auto range = text.find(".."); range != std::string::npos) {
    const std::size_t lo = to_size(text.substr(0, range));
    const std::size_t hi = to_size(text.substr(range + 2));
    if (hi < lo) throw InputError("--dims: empty range '" + text + "'");
    for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    dims.push_back(to_size(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

Report compute_quantity(const StateFile& state, const ComputeOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const std::string& q = options.quantity;
  Report report;
  report.command = "compute";
  report.quantity = q;
  report.seed = options.roof.seed;
  report.config = {{"state_kind", to_string(state.kind)}, {"observable", options.observable}};

  try {
    if (q == "vhat") {
      if (!is_single_system(state.kind)) incompatible(q, state.kind);
      const DensityMatrix rho = state.density();
      report.value = ssv_mixed(rho);
      report.details["dim"] = rho.dim();
      bloch_notice(state, report);
    } else if (q == "vhat-pure") {
      if (state.kind != StateFileKind::Pure) incompatible(q, state.kind);
      const auto& psi = std::get<PureState>(state.payload);
      const DiagonalObservable a = load_observable(options.observable, psi.dim());
      report.value = ssv_pure(psi);
      report.details["kappa"] = kappa(a);
      report.details["symmetrized_variance"] = symmetrized_variance_analytic(psi, a);
      if (psi.dim() <= kMaxEnumerationDim) {
        report.details["symmetrized_variance_enumerated"] = symmetrized_variance_bruteforce(psi, a);
      }
    } else if (q == "vc" || q == "va") {
      if (!is_single_system(state.kind)) incompatible(q, state.kind);
      const DensityMatrix rho = state.density();
      const Direction dir = q == "vc" ? Direction::Minimize : Direction::Maximize;
      const RoofResult r = optimize_roof(rho, dir, options.roof);
      report.value = r.value;
      report.details = roof_result_json(r);
      report.config["roof"] = roof_config_json(options.roof);
      if (q == "vc") {
        report.details["lower_bound"] = vc_lower_bound(rho);
        if (rho.dim() == 2) report.details["qubit_closed_form"] = vc_qubit(rho);
      } else {
        report.details["upper_bound"] = ssv_mixed(rho);
        if (state.kind == StateFileKind::Bloch) bloch_notice(state, report);
      }
    } else if (q == "vc-bound") {
      if (!is_single_system(state.kind)) incompatible(q, state.kind);
      report.value = vc_lower_bound(state.density());
    } else if (q == "qfi") {
      if (!is_single_system(state.kind)) incompatible(q, state.kind);
      const DensityMatrix rho = state.density();
      const DiagonalObservable a = load_observable(options.observable, rho.dim());
      report.value = qfi(rho, a);
      report.details["four_times_variance"] = 4.0 * variance(rho, a);
    } else if (q == "split") {
      if (!is_single_system(state.kind)) incompatible(q, state.kind);
      const UncertaintySplit s = uncertainty_split(state.density());
      report.value = {{"total", s.total}, {"classical", s.classical}, {"quantum", s.quantum}};
      report.details["quantum_clamped"] = std::max(0.0, s.quantum);
      bloch_notice(state, report);
    } else if (q == "gap") {
      if (!is_single_system(state.kind)) incompatible(q, state.kind);
      const DensityMatrix rho = state.density();
      if (rho.dim() != 2) throw InputError("quantity 'gap' needs a qubit state, got d = " + std::to_string(rho.dim()));
      const GapReport g = adjudicate_assistance_gap(rho, options.roof);
      report.value = g.numeric_gap;
      report.details = {{"va", g.va},
                        {"vc", g.vc},
                        {"claimed_rhs", g.claimed_rhs},
                        {"mixedness_rhs", g.mixedness_rhs},
                        {"matches", to_string(g.matches)}};
      report.config["roof"] = roof_config_json(options.roof);
      report.warnings.push_back(kGapFormWarning);
    } else if (q == "concurrence") {
      if (state.kind != StateFileKind::BipartitePure) incompatible(q, state.kind);
      const auto& psi = std::get<BipartitePureState>(state.payload);
      const SchmidtForm form = schmidt(psi);
      const double measured = entanglement_from_expectations(psi, false);
      const auto d = static_cast<double>(std::min(psi.dim_a(), psi.dim_b()));
      report.value = concurrence_pure(psi);
      report.details = {{"vhat", ssv_bipartite(psi)},
                        {"schmidt_coefficients", std::vector<double>(form.coefficients.begin(), form.coefficients.end())},
                        {"measured_estimate", measured},
                        {"measured_estimate_with_inverse_d_prefactor", measured / d}};
      report.warnings.push_back(kPrefactorWarning);
      report.warnings.push_back(kSchmidtNormWarning);
    } else if (q == "ent-vc") {
      std::size_t da = 0;
      std::size_t db = 0;
      DensityMatrix rho = state.density();
      if (state.kind == StateFileKind::BipartitePure) {
        const auto& psi = std::get<BipartitePureState>(state.payload);
        da = psi.dim_a();
        db = psi.dim_b();
      } else if (state.kind == StateFileKind::Density) {
        if (options.dims.size() != 2) throw InputError("quantity 'ent-vc' on a density file needs --dims dA,dB");
        da = options.dims[0];
        db = options.dims[1];
        if (da * db != rho.dim()) {
          throw InputError("--dims " + std::to_string(da) + "," + std::to_string(db) + " does not factor d = " +
                           std::to_string(rho.dim()));
        }
      } else {
        incompatible(q, state.kind);
      }
      const RoofResult r = entanglement_vc(rho, da, db, options.roof);
      report.value = r.value;
      report.details = roof_result_json(r);
      report.details["dims"] = {da, db};
      report.config["roof"] = roof_config_json(options.roof);
    } else {
      throw InputError("unknown quantity '" + q +
                       "' (expected vhat, vhat-pure, vc, va, vc-bound, qfi, concurrence, ent-vc, split or gap)");
    }
  } catch (const Error& e) {
    // Library precondition failures on user input (dimension mismatch,
    // degenerate observable, bad configuration) are input errors here.
    throw InputError(e.what());
  }

  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

Report cmd_compute(const ComputeOptions& options) {
  if (options.state_path.empty()) throw InputError("--state is required");
  if (options.quantity.empty()) throw InputError("--quantity is required");
  const StateFile state = load_state(options.state_path);
  Report report = compute_quantity(state, options);
  report.config["state"] = options.state_path;
  return report;
}

Report cmd_random(const RandomOptions& options) {
  if (options.out.empty()) throw InputError("--out is required");
  if (options.dims.empty()) throw InputError("--dims is required");
  const std::size_t d = options.dims[0];
  StateFile state{StateFileKind::Density, DensityMatrix::maximally_mixed(1)};
  try {
    if (options.kind == "pure") {
      state = {StateFileKind::Pure, haar_random_pure(d, options.seed)};
    } else if (options.kind == "density") {
      state = {StateFileKind::Density, random_density(d, options.rank == 0 ? d : options.rank, options.seed)};
    } else if (options.kind == "bloch") {
      state = {StateFileKind::Bloch, to_bloch(random_density(2, options.rank == 0 ? 2 : options.rank, options.seed))};
    } else if (options.kind == "bipartite_pure") {
      if (options.dims.size() != 2) throw InputError("bipartite_pure needs --dims dA,dB");
      state = {StateFileKind::BipartitePure, random_bipartite_pure(options.dims[0], options.dims[1], options.seed)};
    } else {
      throw InputError("unknown kind '" + options.kind + "'");
    }
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  save_state(state, options.out);
  Report report;
  report.command = "random";
  report.value = to_json(state);
  report.seed = options.seed;
  report.config = {{"kind", options.kind}, {"dims", options.dims}, {"rank", options.rank}, {"out", options.out.string()}};
  return report;
}

}  // namespace ssvar::cli

// ssvar: compute, verify, sweep and random subcommands. Reports go to
// stdout as JSON; diagnostics go to stderr.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssvar/cli/commands.hpp"

namespace {

using namespace ssvar::cli;

void add_roof_flags(CLI::App* cmd, ssvar::RoofConfig& roof) {
  cmd->add_option("--restarts", roof.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--members", roof.members, "Decomposition size (0: rank^2)");
  cmd->add_option("--tol", roof.tol, "Per-sweep improvement threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", roof.max_iters, "Sweeps per restart")->check(CLI::PositiveNumber);
}

int emit(const Report& report) {
  std::cout << report.to_json().dump(2) << '\n';
  return report.passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Standard symmetrized variance toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string dims_text;

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "Evaluate one quantity on a state file");
  c->add_option("--state", compute.state_path, "State file (JSON)")->required();
  c->add_option("--quantity", compute.quantity,
                "vhat|vhat-pure|vc|va|vc-bound|qfi|concurrence|ent-vc|split|gap")
      ->required();
  c->add_option("--observable", compute.observable, "Observable file or \"default\"");
  c->add_option("--seed", seed, "Optimizer seed");
  c->add_option("--dims", dims_text, "Bipartite split dA,dB for ent-vc on a density file");
  add_roof_flags(c, compute.roof);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run property suites");
  v->add_option("--suite", verify.suite,
                "all|theorem1|theorem2|theorem3|theorem4|qubit-gap|entanglement|identities");
  v->add_option("--dims", dims_text, "Dimensions, \"2..5\" or \"2,3,4\"");
  v->add_option("--trials", verify.trials, "Random trials per dimension")->check(CLI::PositiveNumber);
  v->add_option("--seed", seed, "Root seed");
  add_roof_flags(v, verify.roof);

  SweepOptions sweep;
  std::string sweep_out;
  auto* s = app.add_subcommand("sweep", "Write the Bloch-ball grid as CSV");
  s->add_option("--grid", sweep.grid, "Grid points per axis (>= 2)");
  s->add_option("--out", sweep_out, "CSV path")->required();
  s->add_option("--seed", seed, "Optimizer seed for spot checks");
  add_roof_flags(s, sweep.roof);

  RandomOptions random;
  std::string random_out;
  auto* r = app.add_subcommand("random", "Write a random state file");
  r->add_option("--kind", random.kind, "pure|density|bloch|bipartite_pure");
  r->add_option("--dims", dims_text, "Dimension, or dA,dB for bipartite_pure");
  r->add_option("--rank", random.rank, "Density rank (0: full)");
  r->add_option("--seed", seed, "Seed");
  r->add_option("--out", random_out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*c) {
      compute.roof.seed = seed;
      if (!dims_text.empty()) compute.dims = parse_dims(dims_text);
      return emit(cmd_compute(compute));
    }
    if (*v) {
      verify.seed = seed;
      verify.roof.seed = seed;
      if (!dims_text.empty()) verify.dims = parse_dims(dims_text);
      return emit(cmd_verify(verify));
    }
    if (*s) {
      sweep.roof.seed = seed;
      sweep.out = sweep_out;
      return emit(cmd_sweep(sweep));
    }
    random.seed = seed;
    random.out = random_out;
    if (!dims_text.empty()) random.dims = parse_dims(dims_text);
    return emit(cmd_random(random));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ssvar::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
}

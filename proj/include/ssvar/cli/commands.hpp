#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssvar/cli/report.hpp"
#include "ssvar/cli/state_file.hpp"
#include "ssvar/roof.hpp"

namespace ssvar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadInput = 2;

/// "2..5" or "2,3,4".
std::vector<std::size_t> parse_dims(const std::string& text);

struct ComputeOptions {
  std::string state_path;
  std::string quantity;  // vhat|vhat-pure|vc|va|vc-bound|qfi|concurrence|ent-vc|split|gap
  std::string observable = "default";
  RoofConfig roof;
  std::vector<std::size_t> dims;  // bipartite split for ent-vc on a density file
};

/// Throws InputError on parse or compatibility problems.
Report cmd_compute(const ComputeOptions& options);
/// Same, on an already-loaded state.
Report compute_quantity(const StateFile& state, const ComputeOptions& options);

struct VerifyOptions {
  std::string suite = "all";  // all|theorem1|theorem2|theorem3|theorem4|qubit-gap|entanglement|identities
  std::vector<std::size_t> dims;  // empty: per-suite defaults
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  RoofConfig roof;
};

/// report.passed is false when any check fails.
Report cmd_verify(const VerifyOptions& options);

struct SweepOptions {
  std::size_t grid = 20;
  std::filesystem::path out;
  std::size_t spot_checks = 5;  // optimizer cross-checks of va along the grid diagonal
  RoofConfig roof;
};

/// Writes r,theta,vhat,vc,va,theta_m,theta_M over an N x N grid of
/// (r, theta) in [0,1] x [0,pi/2] at phi = 0.
Report cmd_sweep(const SweepOptions& options);

struct RandomOptions {
  std::string kind = "density";  // pure|density|bloch|bipartite_pure
  std::vector<std::size_t> dims{2};
  std::size_t rank = 0;  // 0: full rank
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

/// Generates a random state file; the report echoes the state.
Report cmd_random(const RandomOptions& options);

}  // namespace ssvar::cli

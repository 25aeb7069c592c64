#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssvar/states.hpp"

namespace ssvar::cli {

/// Machine-readable command result. Keys are sorted on output, so the same
/// contents always serialize to the same bytes; wall_time_s is the only
/// field that varies between identical runs.
struct Report {
  std::string command;
  std::string quantity;
  nlohmann::json value;    // scalar or object
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  std::vector<std::string> warnings;
  bool passed = true;      // verify only

  nlohmann::json to_json(bool include_timing = true) const;
};

nlohmann::json decomposition_to_json(const Decomposition& d);

// Warnings attached wherever a computation touches a known disagreement
// between closed forms in circulation and the values computed here.
inline constexpr const char* kGapFormWarning =
    "assistance-gap closed form: (3/8) S_L(Pi(rho)) + (1/4) S_L(rho) is not reproduced by optimized "
    "V_a - V_c (e.g. 1/2 vs 5/16 at I/2); the numerics match S_L(rho)";
inline constexpr const char* kBlochSignWarning =
    "Bloch-ball closed form: V(rho) = 1/2 + 1/2 r^2 cos^2(theta) has the wrong sign (gives 1 instead of 0 "
    "at the pure incoherent state); value computed as (1 - r^2 cos^2(theta))/2 = 1 - sum rho_ii^2";
inline constexpr const char* kPrefactorWarning =
    "measurement estimator: a (1/d) prefactor on sum_i (e_i - e_i^2) would give 1/4 instead of 1/2 for a Bell "
    "state; the prefactor is dropped, both values are reported";
inline constexpr const char* kSchmidtNormWarning =
    "Schmidt convention: coefficients satisfy sum_i lambda_i^2 = 1 (not sum_i lambda_i = 1), the only "
    "convention under which V = 1 - sum lambda^4 equals E^2 / 2";

}  // namespace ssvar::cli

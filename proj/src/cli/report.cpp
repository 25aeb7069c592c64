#include "ssvar/cli/report.hpp"

#include "ssvar/cli/state_file.hpp"

namespace ssvar::cli {

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json doc;
  doc["command"] = command;
  if (!quantity.empty()) doc["quantity"] = quantity;
  doc["value"] = value;
  doc["details"] = details;
  doc["config"] = config;
  doc["seed"] = seed;
  doc["warnings"] = warnings;
  doc["passed"] = passed;
  if (include_timing) doc["wall_time_s"] = wall_time_s;
  return doc;
}

nlohmann::json decomposition_to_json(const Decomposition& d) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : d.members()) {
    members.push_back({{"weight", m.weight}, {"amplitudes", vector_to_json(m.state.amplitudes())}});
  }
  return {{"members", members}, {"reconstruction_error", d.reconstruction_error()}};
}

}  // namespace ssvar::cli

#pragma once

// JSON state files (UTF-8):
//   {"kind":"pure","amplitudes":[[re,im],...]}
//   {"kind":"density","matrix":[[[re,im],...],...]}
//   {"kind":"bloch","r":x,"theta":x,"phi":x}
//   {"kind":"bipartite_pure","dims":[dA,dB],"amplitudes":[[[re,im],...],...]}
// Observable files hold {"diagonal":[a_0,...]} or a bare array.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "ssvar/entangle.hpp"
#include "ssvar/qubit.hpp"
#include "ssvar/states.hpp"

namespace ssvar::cli {

/// Malformed or incompatible user input; the CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StateFileKind { Pure, Density, Bloch, BipartitePure };

const char* to_string(StateFileKind kind);

struct StateFile {
  StateFileKind kind;
  std::variant<PureState, DensityMatrix, BlochState, BipartitePureState> payload;

  /// Density matrix view of pure, density and bloch payloads; for
  /// bipartite_pure, the projector on the joint space.
  DensityMatrix density() const;
};

/// Parses an already-decoded document. Errors name the offending field.
StateFile parse_state(const nlohmann::json& doc);
/// Reads and parses a file; JSON syntax errors carry line and column.
StateFile load_state(const std::filesystem::path& path);

nlohmann::json to_json(const StateFile& state);
void save_state(const StateFile& state, const std::filesystem::path& path);

/// "default" selects diag(0, 1, ..., d-1).
DiagonalObservable load_observable(const std::string& source, std::size_t dim);

nlohmann::json complex_to_json(Complex z);
nlohmann::json vector_to_json(const CVector& v);
nlohmann::json matrix_to_json(const CMatrix& m);

}  // namespace ssvar::cli

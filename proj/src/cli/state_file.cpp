#include "ssvar/cli/state_file.hpp"

#include <fstream>
#include <sstream>

namespace ssvar::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) bad_field(key, "missing");
  return doc.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

Complex complex_entry(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) bad_field(field, "expected a [re, im] pair");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

CVector complex_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad_field(field, "expected a non-empty array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_entry(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

CMatrix complex_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad_field(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  CMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    const CVector row = complex_vector(j[i], row_field);
    if (i == 0) {
      cols = static_cast<std::size_t>(row.size());
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (static_cast<std::size_t>(row.size()) != cols) {
      bad_field(row_field, "row length " + std::to_string(row.size()) + " differs from " + std::to_string(cols));
    }
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

template <typename F>
auto validated(const std::string& field, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
}

}  // namespace

const char* to_string(StateFileKind kind) {
  switch (kind) {
    case StateFileKind::Pure: return "pure";
    case StateFileKind::Density: return "density";
    case StateFileKind::Bloch: return "bloch";
    case StateFileKind::BipartitePure: return "bipartite_pure";
  }
  return "unknown";
}

DensityMatrix StateFile::density() const {
  return std::visit(
      [](const auto& s) -> DensityMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PureState>) {
          return DensityMatrix::from_pure(s);
        } else if constexpr (std::is_same_v<T, DensityMatrix>) {
          return s;
        } else if constexpr (std::is_same_v<T, BlochState>) {
          return to_density(s);
        } else {
          return DensityMatrix::from_pure(PureState::normalized(s.vector()));
        }
      },
      payload);
}

StateFile parse_state(const json& doc) {
  if (!doc.is_object()) throw InputError("state file must hold a JSON object");
  const json& kind = require(doc, "kind");
  if (!kind.is_string()) bad_field("kind", "expected a string");
  const std::string k = kind.get<std::string>();

  if (k == "pure") {
    const CVector v = complex_vector(require(doc, "amplitudes"), "amplitudes");
    return {StateFileKind::Pure, validated("amplitudes", [&] { return PureState::from_amplitudes(v); })};
  }
  if (k == "density") {
    const CMatrix m = complex_matrix(require(doc, "matrix"), "matrix");
    return {StateFileKind::Density, validated("matrix", [&] { return DensityMatrix::from_matrix(m); })};
  }
  if (k == "bloch") {
    BlochState b;
    b.r = number(require(doc, "r"), "r");
    b.theta = number(require(doc, "theta"), "theta");
    b.phi = number(require(doc, "phi"), "phi");
    validated("r/theta/phi", [&] {
      validate_bloch(b);
      return 0;
    });
    return {StateFileKind::Bloch, b};
  }
  if (k == "bipartite_pure") {
    const json& dims = require(doc, "dims");
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer()) {
      bad_field("dims", "expected [dA, dB] with positive integers");
    }
    const auto da = dims[0].get<long long>();
    const auto db = dims[1].get<long long>();
    if (da < 1 || db < 1) bad_field("dims", "dimensions must be positive");
    const CMatrix m = complex_matrix(require(doc, "amplitudes"), "amplitudes");
    if (m.rows() != da || m.cols() != db) {
      bad_field("amplitudes", "shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                  " does not match dims " + std::to_string(da) + "x" + std::to_string(db));
    }
    return {StateFileKind::BipartitePure,
            validated("amplitudes", [&] { return BipartitePureState::from_amplitudes(m); })};
  }
  bad_field("kind", "unknown kind '" + k + "' (expected pure, density, bloch or bipartite_pure)");
}

StateFile load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    return parse_state(doc);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

json to_json(const StateFile& state) {
  json doc;
  doc["kind"] = to_string(state.kind);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PureState>) {
          doc["amplitudes"] = vector_to_json(s.amplitudes());
        } else if constexpr (std::is_same_v<T, DensityMatrix>) {
          doc["matrix"] = matrix_to_json(s.matrix());
        } else if constexpr (std::is_same_v<T, BlochState>) {
          doc["r"] = s.r;
          doc["theta"] = s.theta;
          doc["phi"] = s.phi;
        } else {
          doc["dims"] = json::array({s.dim_a(), s.dim_b()});
          doc["amplitudes"] = matrix_to_json(s.amplitudes());
        }
      },
      state.payload);
  return doc;
}

void save_state(const StateFile& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << to_json(state).dump(2) << '\n';
}

DiagonalObservable load_observable(const std::string& source, std::size_t dim) {
  if (source.empty() || source == "default") return DiagonalObservable::default_for(dim);
  std::ifstream in(source);
  if (!in) throw InputError("cannot open observable file '" + source + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
  const json& diag = doc.is_object() ? require(doc, "diagonal") : doc;
  if (!diag.is_array()) bad_field("diagonal", "expected an array of reals");
  RVector a(static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    a(static_cast<Eigen::Index>(i)) = number(diag[i], "diagonal[" + std::to_string(i) + "]");
  }
  if (static_cast<std::size_t>(a.size()) != dim) {
    throw InputError("observable has " + std::to_string(a.size()) + " entries, state dimension is " +
                     std::to_string(dim));
  }
  return validated("diagonal", [&] { return DiagonalObservable::from_diagonal(a); });
}

}  // namespace ssvar::cli

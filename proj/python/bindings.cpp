#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ssvar/entangle.hpp"
#include "ssvar/qubit.hpp"
#include "ssvar/roof.hpp"
#include "ssvar/ssv.hpp"
#include "ssvar/variance.hpp"

namespace py = pybind11;
using namespace ssvar;

namespace {

// Python callers pass plain arrays; every entry point validates on the way in.
PureState pure(const CVector& v) { return PureState::from_amplitudes(v); }
DensityMatrix density(const CMatrix& m) { return DensityMatrix::from_matrix(m); }
DiagonalObservable observable(const RVector& a) { return DiagonalObservable::from_diagonal(a); }
BipartitePureState bipartite(const CMatrix& m) { return BipartitePureState::from_amplitudes(m); }

Direction direction(const std::string& name) {
  if (name == "min") return Direction::Minimize;
  if (name == "max") return Direction::Maximize;
  throw py::value_error("direction must be 'min' or 'max'");
}

RoofConfig config(std::size_t restarts, std::size_t members, std::size_t max_iters, double tol, std::uint64_t seed) {
  RoofConfig cfg;
  cfg.restarts = restarts;
  cfg.members = members;
  cfg.max_iters = max_iters;
  cfg.tol = tol;
  cfg.seed = seed;
  return cfg;
}

py::dict decomposition_dict(const Decomposition& d) {
  std::vector<double> weights;
  CMatrix states(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.parent().dim()));
  for (std::size_t k = 0; k < d.size(); ++k) {
    weights.push_back(d.members()[k].weight);
    states.row(static_cast<Eigen::Index>(k)) = d.members()[k].state.amplitudes().transpose();
  }
  py::dict out;
  out["weights"] = weights;
  out["states"] = states;
  out["reconstruction_error"] = d.reconstruction_error();
  return out;
}

py::dict roof_dict(const RoofResult& r) {
  py::dict out = decomposition_dict(r.decomposition);
  out["value"] = r.value;
  out["converged"] = r.converged;
  out["certificate_gap"] = r.certificate_gap;
  out["restarts_used"] = r.restarts_used;
  out["sweeps"] = r.sweeps;
  return out;
}

#define ROOF_ARGS                                                                                         \
  py::arg("restarts") = 16, py::arg("members") = 0, py::arg("max_iters") = 400, py::arg("tol") = 1e-8, \
      py::arg("seed") = 1

}  // namespace

PYBIND11_MODULE(_ssvar, m) {
  m.doc() = "Standard symmetrized variance: coherence, its convex roof and concave bottom, entanglement.";

  static py::exception<Error> error(m, "SsvarError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  // states
  m.def("haar_random_pure", [](std::size_t d, std::uint64_t seed) { return haar_random_pure(d, seed).amplitudes(); },
        py::arg("dim"), py::arg("seed"));
  m.def("random_density", [](std::size_t d, std::size_t rank, std::uint64_t seed) {
    return random_density(d, rank, seed).matrix();
  }, py::arg("dim"), py::arg("rank"), py::arg("seed"));
  m.def("dephase", [](const CMatrix& rho) { return dephase(density(rho)).matrix(); }, py::arg("rho"));
  m.def("linear_entropy", [](const CMatrix& rho) { return linear_entropy(density(rho)); }, py::arg("rho"));

  // variance
  m.def("variance", [](const CMatrix& rho, const RVector& a) { return variance(density(rho), observable(a)); },
        py::arg("rho"), py::arg("diagonal"));
  m.def("kappa", [](const RVector& a) { return kappa(observable(a)); }, py::arg("diagonal"));
  m.def("symmetrized_variance", [](const CVector& psi, const RVector& a, bool enumerate) {
    return enumerate ? symmetrized_variance_bruteforce(pure(psi), observable(a))
                     : symmetrized_variance_analytic(pure(psi), observable(a));
  }, py::arg("psi"), py::arg("diagonal"), py::arg("enumerate") = false);

  // ssv
  m.def("ssv_pure", [](const CVector& psi) { return ssv_pure(pure(psi)); }, py::arg("psi"));
  m.def("ssv_mixed", [](const CMatrix& rho) { return ssv_mixed(density(rho)); }, py::arg("rho"));
  m.def("ssv_mixed_bruteforce", [](const CMatrix& rho, const RVector& a) {
    return ssv_mixed_bruteforce(density(rho), observable(a));
  }, py::arg("rho"), py::arg("diagonal"));
  m.def("uncertainty_split", [](const CMatrix& rho) {
    const UncertaintySplit s = uncertainty_split(density(rho));
    return py::dict(py::arg("total") = s.total, py::arg("classical") = s.classical, py::arg("quantum") = s.quantum);
  }, py::arg("rho"));

  // roof
  m.def("qfi", [](const CMatrix& rho, const RVector& a) { return qfi(density(rho), observable(a)); }, py::arg("rho"),
        py::arg("diagonal"));
  m.def("vc_lower_bound", [](const CMatrix& rho) { return vc_lower_bound(density(rho)); }, py::arg("rho"));
  m.def("optimize_roof", [](const CMatrix& rho, const std::string& dir, std::size_t restarts, std::size_t members,
                            std::size_t max_iters, double tol, std::uint64_t seed) {
    RoofResult r = [&] {
      py::gil_scoped_release release;
      return optimize_roof(density(rho), direction(dir), config(restarts, members, max_iters, tol, seed));
    }();
    return roof_dict(r);
  }, py::arg("rho"), py::arg("direction") = "min", ROOF_ARGS);
  m.def("min_average_variance", [](const CMatrix& rho, const RVector& a, std::size_t restarts, std::size_t members,
                                   std::size_t max_iters, double tol, std::uint64_t seed) {
    RoofResult r = [&] {
      py::gil_scoped_release release;
      return optimize_decomposition(density(rho), Direction::Minimize, VarianceObjective(observable(a)),
                                    config(restarts, members, max_iters, tol, seed));
    }();
    return roof_dict(r);
  }, py::arg("rho"), py::arg("diagonal"), ROOF_ARGS);

  // qubit
  m.def("bloch_to_density", [](double r, double theta, double phi) { return to_density({r, theta, phi}).matrix(); },
        py::arg("r"), py::arg("theta"), py::arg("phi") = 0.0);
  m.def("vc_qubit", [](const CMatrix& rho) { return vc_qubit(density(rho)); }, py::arg("rho"));
  m.def("qubit_optimal_decomposition", [](double r, double theta, double phi, const std::string& dir) {
    return decomposition_dict(qubit_optimal_decomposition({r, theta, phi}, direction(dir)));
  }, py::arg("r"), py::arg("theta"), py::arg("phi") = 0.0, py::arg("direction") = "min");
  m.def("adjudicate_assistance_gap", [](const CMatrix& rho, std::size_t restarts, std::size_t members,
                                        std::size_t max_iters, double tol, std::uint64_t seed) {
    const GapReport g = adjudicate_assistance_gap(density(rho), config(restarts, members, max_iters, tol, seed));
    return py::dict(py::arg("numeric_gap") = g.numeric_gap, py::arg("claimed_rhs") = g.claimed_rhs,
                    py::arg("mixedness_rhs") = g.mixedness_rhs, py::arg("matches") = std::string(to_string(g.matches)),
                    py::arg("va") = g.va, py::arg("vc") = g.vc);
  }, py::arg("rho"), ROOF_ARGS);

  // entangle
  m.def("schmidt_coefficients", [](const CMatrix& amps) { return schmidt(bipartite(amps)).coefficients; },
        py::arg("amplitudes"));
  m.def("ssv_bipartite", [](const CMatrix& amps) { return ssv_bipartite(bipartite(amps)); }, py::arg("amplitudes"));
  m.def("concurrence_pure", [](const CMatrix& amps) { return concurrence_pure(bipartite(amps)); },
        py::arg("amplitudes"));
  m.def("entanglement_from_expectations", [](const CMatrix& amps) {
    return entanglement_from_expectations(bipartite(amps), false);
  }, py::arg("amplitudes"));
  m.def("entanglement_vc", [](const CMatrix& rho, std::size_t da, std::size_t db, std::size_t restarts,
                              std::size_t members, std::size_t max_iters, double tol, std::uint64_t seed) {
    RoofResult r = [&] {
      py::gil_scoped_release release;
      return entanglement_vc(density(rho), da, db, config(restarts, members, max_iters, tol, seed));
    }();
    return roof_dict(r);
  }, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), ROOF_ARGS);
}

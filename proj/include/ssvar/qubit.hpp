#pragma once

// Qubit closed forms: Bloch coordinates, the convex roof via the Fisher
// information of sigma_3, the explicit optimal decompositions on the Bloch
// ball, and the check of the claimed closed form for V_a - V_c.

#include "ssvar/roof.hpp"
#include "ssvar/states.hpp"

namespace ssvar {

/// rho = (I + r (sin t cos p, sin t sin p, cos t) . sigma) / 2 with the
/// usual Pauli matrices.
struct BlochState {
  double r = 0.0;      // [0, 1]
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// Throws BadBloch when a coordinate is outside its range.
void validate_bloch(const BlochState& b);

DensityMatrix to_density(const BlochState& b);
/// theta = 0 and phi = 0 where they are undefined (r = 0, or on the z axis).
BlochState to_bloch(const DensityMatrix& rho);

/// V_c for a qubit: (1/2)(l_1 - l_2)^2 |<phi_1|sigma_3|phi_2>|^2.
double vc_qubit(const DensityMatrix& rho);

/// Optimal two-member ensembles on the Bloch ball. Minimize: members at polar
/// angles theta_m and pi - theta_m with cos theta_m = sqrt(1 - r^2 sin^2 theta),
/// average = vc_qubit. Maximize: members at theta_M = arccos(r cos theta) and
/// azimuths phi, phi + pi, average = ssv_mixed. Zero-weight members are
/// dropped, so pure inputs give a single member.
Decomposition qubit_optimal_decomposition(const BlochState& b, Direction mode);

/// Polar angles of the optimal members.
double qubit_min_angle(const BlochState& b);
double qubit_max_angle(const BlochState& b);

enum class GapMatch { Claimed, Mixedness, Neither };
const char* to_string(GapMatch m);

/// Numerical V_a - V_c for a qubit against two closed forms: the claimed
/// (3/8) S_L(Pi(rho)) + (1/4) S_L(rho), and the mixedness S_L(rho).
struct GapReport {
  double numeric_gap;
  double claimed_rhs;
  double mixedness_rhs;
  GapMatch matches;  // Claimed wins ties; within 1e-6
  double va;
  double vc;
};

GapReport adjudicate_assistance_gap(const DensityMatrix& rho, const RoofConfig& cfg = {});

/// Applies the matching rule to precomputed quantities.
GapMatch classify_gap(double numeric_gap, double claimed_rhs, double mixedness_rhs);

}  // namespace ssvar

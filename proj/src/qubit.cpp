#include "ssvar/qubit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ssvar/ssv.hpp"

namespace ssvar {

namespace {

constexpr double kGapTolerance = 1e-6;
constexpr double kAngleSlack = 1e-12;

void check_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) fail(ErrorCode::BadDimension, "expected a qubit, got d = " + std::to_string(rho.dim()));
}

PureState bloch_pure(double theta, double phi) {
  CVector v(2);
  v << std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0);
  return PureState::normalized(v);
}

}  // namespace

void validate_bloch(const BlochState& b) {
  std::ostringstream msg;
  if (!(b.r >= 0.0 && b.r <= 1.0 + kAngleSlack)) {
    msg << "r = " << b.r << " outside [0, 1]";
  } else if (!(b.theta >= -kAngleSlack && b.theta <= std::numbers::pi + kAngleSlack)) {
    msg << "theta = " << b.theta << " outside [0, pi]";
  } else if (!(b.phi >= -kAngleSlack && b.phi < 2.0 * std::numbers::pi + kAngleSlack)) {
    msg << "phi = " << b.phi << " outside [0, 2 pi)";
  } else {
    return;
  }
  fail(ErrorCode::BadBloch, msg.str());
}

DensityMatrix to_density(const BlochState& b) {
  validate_bloch(b);
  const double r = std::min(b.r, 1.0);
  const double x = r * std::sin(b.theta) * std::cos(b.phi);
  const double y = r * std::sin(b.theta) * std::sin(b.phi);
  const double z = r * std::cos(b.theta);
  CMatrix m(2, 2);
  m << 0.5 * (1.0 + z), 0.5 * Complex(x, -y),
       0.5 * Complex(x, y), 0.5 * (1.0 - z);
  return DensityMatrix::from_matrix(m);
}

BlochState to_bloch(const DensityMatrix& rho) {
  check_qubit(rho);
  const double x = 2.0 * rho(1, 0).real();
  const double y = 2.0 * rho(1, 0).imag();
  const double z = (rho(0, 0) - rho(1, 1)).real();
  BlochState b;
  b.r = std::min(1.0, std::sqrt(x * x + y * y + z * z));
  if (b.r == 0.0) return b;
  b.theta = std::acos(std::clamp(z / b.r, -1.0, 1.0));
  if (x != 0.0 || y != 0.0) {
    b.phi = std::atan2(y, x);
    if (b.phi < 0.0) b.phi += 2.0 * std::numbers::pi;
    if (b.phi >= 2.0 * std::numbers::pi) b.phi = 0.0;
  }
  return b;
}

double vc_qubit(const DensityMatrix& rho) {
  check_qubit(rho);
  const Spectrum s = spectrum(rho);
  const Complex element = std::conj(s.vectors(0, 0)) * s.vectors(0, 1) - std::conj(s.vectors(1, 0)) * s.vectors(1, 1);
  const double gap = s.values(0) - s.values(1);
  return 0.5 * gap * gap * std::norm(element);
}

double qubit_min_angle(const BlochState& b) {
  const double s = b.r * std::sin(b.theta);
  return std::acos(std::sqrt(std::max(0.0, 1.0 - s * s)));
}

double qubit_max_angle(const BlochState& b) { return std::acos(std::clamp(b.r * std::cos(b.theta), -1.0, 1.0)); }

Decomposition qubit_optimal_decomposition(const BlochState& b, Direction mode) {
  validate_bloch(b);
  const DensityMatrix rho = to_density(b);
  std::vector<Member> members;
  auto add = [&](double p, PureState state) {
    if (p > 1e-14) members.push_back({p, std::move(state)});
  };

  if (mode == Direction::Minimize) {
    const double theta_m = qubit_min_angle(b);
    const double s = b.r * std::sin(b.theta);
    const double root = std::sqrt(std::max(0.0, 1.0 - s * s));
    if (root < 1e-12) {
      // r sin(theta) = 1: pure and maximally coherent; the weights are 0/0.
      members.push_back({1.0, bloch_pure(b.theta, b.phi)});
    } else {
      const double denom = -2.0 + 2.0 * s * s;
      const double rc = b.r * std::cos(b.theta);
      const double p1 = (-1.0 + s * s - rc * root) / denom;
      const double p2 = (-1.0 + s * s + rc * root) / denom;
      // |chi_2> = sin(t/2)|0> + e^{i phi} cos(t/2)|1> sits at polar angle pi - t.
      add(p1, bloch_pure(theta_m, b.phi));
      add(p2, bloch_pure(std::numbers::pi - theta_m, b.phi));
    }
  } else {
    const double theta_m = qubit_max_angle(b);
    const double sin_m = std::sin(theta_m);
    if (sin_m < 1e-12) {
      // On the z axis with r = 1: an incoherent pure state.
      members.push_back({1.0, bloch_pure(theta_m, 0.0)});
    } else {
      const double ratio = b.r * std::sin(b.theta) / sin_m;
      add(0.5 * (1.0 + ratio), bloch_pure(theta_m, b.phi));
      add(0.5 * (1.0 - ratio), bloch_pure(theta_m, b.phi + std::numbers::pi));
    }
  }
  double total = 0.0;
  for (const auto& m : members) total += m.weight;
  for (auto& m : members) m.weight /= total;
  return Decomposition::from_members(rho, std::move(members));
}

const char* to_string(GapMatch m) {
  switch (m) {
    case GapMatch::Claimed: return "claimed";
    case GapMatch::Mixedness: return "mixedness";
    case GapMatch::Neither: return "neither";
  }
  return "neither";
}

GapMatch classify_gap(double numeric_gap, double claimed_rhs, double mixedness_rhs) {
  if (std::abs(numeric_gap - claimed_rhs) <= kGapTolerance) return GapMatch::Claimed;
  if (std::abs(numeric_gap - mixedness_rhs) <= kGapTolerance) return GapMatch::Mixedness;
  return GapMatch::Neither;
}

GapReport adjudicate_assistance_gap(const DensityMatrix& rho, const RoofConfig& cfg) {
  check_qubit(rho);
  const double va = optimize_roof(rho, Direction::Maximize, cfg).value;
  const double vc = optimize_roof(rho, Direction::Minimize, cfg).value;
  GapReport report;
  report.va = va;
  report.vc = vc;
  report.numeric_gap = va - vc;
  report.claimed_rhs = 0.375 * ssv_mixed(rho) + 0.25 * linear_entropy(rho);
  report.mixedness_rhs = linear_entropy(rho);
  report.matches = classify_gap(report.numeric_gap, report.claimed_rhs, report.mixedness_rhs);
  return report;
}

}  // namespace ssvar

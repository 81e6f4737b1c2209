#include "kcbs/pentagram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kcbs/error.hpp"

namespace kcbs {

const PentagramAngles& angles() {
  static const PentagramAngles a = [] {
    const double s5 = std::sqrt(5.0);
    return PentagramAngles{std::acos(2.0 - s5), std::acos(1.0 - 2.0 / s5),
                           std::acos((1.0 - s5) / 2.0)};
  }();
  return a;
}

double max_adjacent_overlap(const Quintuplet& q) {
  double worst = 0.0;
  for (int i = 1; i <= 5; ++i) worst = std::max(worst, std::abs(inner(q.l(i), q.l(i + 1))));
  return worst;
}

double closure_defect(const Quintuplet& q) { return std::abs(1.0 - std::abs(inner(q.l(6), q.l(1)))); }

Quintuplet pulse_quintuplet(double gamma, RotationConvention conv) {
  const Operator ra = rot_a(-gamma, conv);
  const Operator step = ra * rot_b(-gamma, conv);
  Quintuplet q{{}, QuintupletSource::Pulse};
  q.states[0] = StateVector::basis(Level::Plus);
  q.states[1] = StateVector::basis(Level::Minus);
  q.states[2] = apply(ra, q.states[0]);
  for (std::size_t k = 3; k < 6; ++k) q.states[k] = apply(step, q.states[k - 2]);
  return q;
}

Quintuplet build_pulse_quintuplet() { return build_pulse_quintuplet(angles().gamma); }

Quintuplet build_pulse_quintuplet(double gamma, RotationConvention conv) {
  Quintuplet q = pulse_quintuplet(gamma, conv);
  const double defect = closure_defect(q);
  if (defect > kGeometryTol) {
    std::ostringstream os;
    os << "l6 differs from l1: |1 - |<l6|l1>|| = " << defect << " at gamma = " << gamma;
    throw Error(ErrorKind::ClosureFailure, os.str());
  }
  return q;
}

CartesianPentagram build_cartesian_quintuplet() {
  const double cos_a = std::pow(5.0, -0.25);
  const double sin_a = std::sqrt(1.0 - cos_a * cos_a);
  CartesianPentagram out{
      {Direction::normalized(0, 0, 1), Direction::normalized(0, 0, 1),
       Direction::normalized(0, 0, 1), Direction::normalized(0, 0, 1),
       Direction::normalized(0, 0, 1)},
      {{}, QuintupletSource::Cartesian}};
  for (int j = 1; j <= 5; ++j) {
    const double az = 4.0 * std::numbers::pi * j / 5.0;
    const auto idx = static_cast<std::size_t>(j - 1);
    out.directions[idx] = Direction::normalized(sin_a * std::cos(az), sin_a * std::sin(az), cos_a);
    out.quintuplet.states[idx] = cartesian_embed(out.directions[idx]);
  }
  out.quintuplet.states[5] = out.quintuplet.states[0];
  return out;
}

StateVector psi0_from_coefficients() {
  const double edge = std::pow(5.0, -0.25);
  return make_state(edge, std::sqrt(1.0 - 2.0 / std::sqrt(5.0)), edge);
}

PulseSequence psi0_preparation_pulses() {
  const auto& a = angles();
  return {{Axis::A, -std::numbers::pi}, {Axis::B, -a.theta}, {Axis::A, a.phi}};
}

StateVector psi0_from_pulses(RotationConvention conv) {
  const PulseSequence prep = psi0_preparation_pulses();
  return apply(compose(prep, conv), StateVector::basis(Level::Plus));
}

StateVector build_psi0(RotationConvention conv) {
  const StateVector coeff = psi0_from_coefficients();
  const StateVector pulsed = psi0_from_pulses(conv);
  const double overlap = std::abs(inner(coeff, pulsed));
  if (std::abs(1.0 - overlap) > kGeometryTol) {
    std::ostringstream os;
    os << "pulse-built psi0 disagrees with coefficient form, |<a|b>| = " << overlap;
    throw Error(ErrorKind::ConventionMismatch, os.str());
  }
  return coeff;
}

std::vector<std::vector<double>> gram(std::span<const StateVector> states) {
  std::vector<std::vector<double>> g(states.size(), std::vector<double>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j) g[i][j] = std::abs(inner(states[i], states[j]));
  return g;
}

double max_abs_difference(const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return INFINITY;
    for (std::size_t j = 0; j < a[i].size(); ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  }
  return worst;
}

}  // namespace kcbs

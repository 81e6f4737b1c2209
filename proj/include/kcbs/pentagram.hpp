#pragma once

// The five KCBS measurement states and the symmetric state |psi0>, built two
// independent ways: from the RF pulse recipe and from the Cartesian pentagram.

#include <array>
#include <span>
#include <vector>

#include "kcbs/qutrit.hpp"

namespace kcbs {

struct PentagramAngles {
  double gamma;  // arccos(2 - sqrt5)
  double theta;  // arccos(1 - 2/sqrt5)
  double phi;    // arccos((1 - sqrt5)/2)
};

const PentagramAngles& angles();

enum class QuintupletSource { Pulse, Cartesian };

// l1..l6 with l6 expected to coincide with l1. index 0 holds l1.
struct Quintuplet {
  std::array<StateVector, 6> states;
  QuintupletSource source;

  const StateVector& l(int i) const { return states.at(static_cast<std::size_t>(i - 1)); }
};

struct CartesianPentagram {
  std::array<Direction, 5> directions;
  Quintuplet quintuplet;
};

// Max over i = 1..5 of |<l_i|l_{i+1}>|.
double max_adjacent_overlap(const Quintuplet& q);
// | 1 - |<l6|l1>| |
double closure_defect(const Quintuplet& q);

// Pulse recipe without the closure check; used for sensitivity studies.
Quintuplet pulse_quintuplet(double gamma, RotationConvention conv = kFrozenConvention);

// l1 = |+1>, l2 = |-1>, l3 = Ra(-g) l1, l_{k+2} = Ra(-g) Rb(-g) l_k.
// Throws ClosureFailure when |<l6|l1>| deviates from 1 beyond kGeometryTol.
Quintuplet build_pulse_quintuplet();
Quintuplet build_pulse_quintuplet(double gamma, RotationConvention conv = kFrozenConvention);

// l_j = (sin a cos(4 pi j/5), sin a sin(4 pi j/5), cos a), cos^2 a = 1/sqrt5,
// embedded as m = 0 states; l6 := l1.
CartesianPentagram build_cartesian_quintuplet();

StateVector psi0_from_coefficients();
// Ra(phi) Rb(-theta) Ra(-pi) |+1>
StateVector psi0_from_pulses(RotationConvention conv = kFrozenConvention);
// Pulse list for the preparation above, first pulse acting first.
PulseSequence psi0_preparation_pulses();

// Coefficient form, after checking it against the pulse-built state.
// Throws ConventionMismatch.
StateVector build_psi0(RotationConvention conv = kFrozenConvention);

// Entry (i, j) = |<s_i|s_j>|.
std::vector<std::vector<double>> gram(std::span<const StateVector> states);
double max_abs_difference(const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b);

}  // namespace kcbs

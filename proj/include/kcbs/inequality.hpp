#pragma once

// Exact evaluation of the five-cycle noncontextuality inequality, the
// measurement bookkeeping that maps each observable pair onto the |+1> readout,
// and brute-force certification of the noncontextual bound.

#include <array>
#include <string>
#include <vector>

#include "kcbs/pentagram.hpp"
#include "kcbs/qutrit.hpp"

namespace kcbs {

inline constexpr std::size_t kNumTerms = 12;

// <L1>..<L5>, <L1L2>..<L5L6>, then the remeasured <L1> and <L'1 L1>.
struct TermSet {
  std::array<double, 5> singles{};
  std::array<double, 5> pairs{};
  double correction_single = 0.0;
  double correction_pair = 0.0;

  // Flat order: L1..L5, L1L2..L5L6, L1c, L1pL1.
  std::array<double, kNumTerms> flat() const;
  static TermSet from_flat(const std::array<double, kNumTerms>& v);
};

// Term labels in TermSet::flat() order.
const std::array<std::string, kNumTerms>& term_names();
// Signs of each term in the modified inequality.
const std::array<double, kNumTerms>& modified_coefficients();

enum class PairOrder { Forward, Reverse };

struct MeasurementPlan {
  int index;                // 1..5
  PulseSequence pulses;     // U_i, first pulse acting first
  Operator unitary;
  int first_target;         // l read by the |+1> readout: 2 floor(i/2) + 1
  int second_target;        // l read after U_swap: 2 floor((i+1)/2)
};

// Pulses realizing U_i. U_1 is empty; U_2..U_5 alternate a, b starting with a.
PulseSequence plan_pulses(int index, double gamma);
// Rb(pi) Ra(pi) Rb(pi); exchanges the |+1> and |-1> populations.
PulseSequence swap_pulses();

// Checks U_i^dag|+1> = l_first and U_i^dag|-1> = l_second against the pulse
// quintuplet. Throws PlanMismatch.
std::vector<MeasurementPlan> measurement_plans();
std::vector<MeasurementPlan> measurement_plans(double gamma);

// Singles |<l_i|psi>|^2; pairs are sequential (Lueders) probabilities of
// reading 1 twice, l_i first for Forward. l6 plays L'1 in the corrections.
TermSet exact_terms(const StateVector& psi, const Quintuplet& q,
                    PairOrder order = PairOrder::Forward);

double kcbs_value(const TermSet& t);
double modified_kcbs_value(const TermSet& t);

using Assignment = std::array<int, 5>;

struct NchvBound {
  int max_value;
  std::vector<Assignment> maximizers;
};

// Value of a deterministic 0/1 assignment, v6 := v1.
int nchv_value(const Assignment& v);
// With v6 := v'1 in the last pair and the correction terms -v1 + v'1 v1.
int nchv_value_modified(const Assignment& v, int v1_prime);

NchvBound nchv_bound();
int nchv_bound_modified();

}  // namespace kcbs

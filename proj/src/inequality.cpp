#include "kcbs/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kcbs/error.hpp"

namespace kcbs {

std::array<double, kNumTerms> TermSet::flat() const {
  std::array<double, kNumTerms> v{};
  std::copy(singles.begin(), singles.end(), v.begin());
  std::copy(pairs.begin(), pairs.end(), v.begin() + 5);
  v[10] = correction_single;
  v[11] = correction_pair;
  return v;
}

TermSet TermSet::from_flat(const std::array<double, kNumTerms>& v) {
  TermSet t;
  std::copy(v.begin(), v.begin() + 5, t.singles.begin());
  std::copy(v.begin() + 5, v.begin() + 10, t.pairs.begin());
  t.correction_single = v[10];
  t.correction_pair = v[11];
  return t;
}

const std::array<std::string, kNumTerms>& term_names() {
  static const std::array<std::string, kNumTerms> names{
      "L1", "L2", "L3", "L4", "L5", "L1L2", "L2L3", "L3L4", "L4L5", "L5L6", "L1c", "L1pL1"};
  return names;
}

const std::array<double, kNumTerms>& modified_coefficients() {
  static const std::array<double, kNumTerms> c{1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1, 1};
  return c;
}

PulseSequence plan_pulses(int index, double gamma) {
  if (index < 1 || index > 5) throw std::out_of_range("plan_pulses: index must be 1..5");
  PulseSequence p;
  for (int k = 0; k < index - 1; ++k) p.push_back({k % 2 == 0 ? Axis::A : Axis::B, gamma});
  return p;
}

PulseSequence swap_pulses() {
  constexpr double pi = std::numbers::pi;
  return {{Axis::B, pi}, {Axis::A, pi}, {Axis::B, pi}};
}

std::vector<MeasurementPlan> measurement_plans() { return measurement_plans(angles().gamma); }

std::vector<MeasurementPlan> measurement_plans(double gamma) {
  const Quintuplet q = pulse_quintuplet(gamma);
  const StateVector plus = StateVector::basis(Level::Plus);
  const StateVector minus = StateVector::basis(Level::Minus);
  std::vector<MeasurementPlan> plans;
  for (int i = 1; i <= 5; ++i) {
    MeasurementPlan plan{i, plan_pulses(i, gamma), {}, 2 * (i / 2) + 1, 2 * ((i + 1) / 2)};
    plan.unitary = compose(plan.pulses);
    const Operator dag = plan.unitary.adjoint();
    const bool first_ok = equal_up_to_phase(apply(dag, plus), q.l(plan.first_target));
    const bool second_ok = equal_up_to_phase(apply(dag, minus), q.l(plan.second_target));
    if (!first_ok || !second_ok) {
      std::ostringstream os;
      os << "U_" << i << " does not map the readout basis onto l" << plan.first_target << ", l"
         << plan.second_target;
      throw Error(ErrorKind::PlanMismatch, os.str());
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

namespace {

double overlap2(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

// P(first reads 1, then second reads 1) under projective update.
double sequential(const StateVector& psi, const StateVector& first, const StateVector& second) {
  return overlap2(first, psi) * overlap2(second, first);
}

}  // namespace

TermSet exact_terms(const StateVector& psi, const Quintuplet& q, PairOrder order) {
  TermSet t;
  for (int i = 1; i <= 5; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    t.singles[k] = overlap2(q.l(i), psi);
    t.pairs[k] = order == PairOrder::Forward ? sequential(psi, q.l(i), q.l(i + 1))
                                             : sequential(psi, q.l(i + 1), q.l(i));
  }
  t.correction_single = t.singles[0];
  t.correction_pair = order == PairOrder::Forward ? sequential(psi, q.l(1), q.l(6))
                                                  : sequential(psi, q.l(6), q.l(1));
  return t;
}

double kcbs_value(const TermSet& t) {
  double v = 0.0;
  for (std::size_t i = 0; i < 5; ++i) v += t.singles[i] - t.pairs[i];
  return v;
}

double modified_kcbs_value(const TermSet& t) {
  return kcbs_value(t) - t.correction_single + t.correction_pair;
}

int nchv_value(const Assignment& v) {
  int s = 0;
  for (std::size_t i = 0; i < 5; ++i) s += v[i] - v[i] * v[(i + 1) % 5];
  return s;
}

int nchv_value_modified(const Assignment& v, int v1_prime) {
  int s = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const int next = i == 4 ? v1_prime : v[i + 1];
    s += v[i] - v[i] * next;
  }
  return s - v[0] + v1_prime * v[0];
}

NchvBound nchv_bound() {
  NchvBound out{std::numeric_limits<int>::min(), {}};
  for (int bits = 0; bits < 32; ++bits) {
    Assignment v{};
    for (std::size_t i = 0; i < 5; ++i) v[i] = (bits >> i) & 1;
    const int val = nchv_value(v);
    if (val > out.max_value) {
      out.max_value = val;
      out.maximizers.clear();
    }
    if (val == out.max_value) out.maximizers.push_back(v);
  }
  return out;
}

int nchv_bound_modified() {
  int best = std::numeric_limits<int>::min();
  for (int bits = 0; bits < 64; ++bits) {
    Assignment v{};
    for (std::size_t i = 0; i < 5; ++i) v[i] = (bits >> i) & 1;
    best = std::max(best, nchv_value_modified(v, (bits >> 5) & 1));
  }
  return best;
}

}  // namespace kcbs

#include "kcbs/validation.hpp"

#include <algorithm>
#include <cmath>

#include "kcbs/error.hpp"
#include "kcbs/inequality.hpp"
#include "kcbs/pentagram.hpp"

namespace kcbs {

namespace {

Check make_check(std::string name, double deviation, double tol, std::string detail = {}) {
  return {std::move(name), deviation <= tol, deviation, tol, std::move(detail)};
}

}  // namespace

std::vector<Check> validate_construction(std::optional<double> gamma_override) {
  const double gamma = gamma_override.value_or(angles().gamma);
  const Quintuplet pulse = pulse_quintuplet(gamma);
  const CartesianPentagram cart = build_cartesian_quintuplet();
  std::vector<Check> checks;

  checks.push_back(make_check("adjacent_orthogonality", max_adjacent_overlap(pulse), kGeometryTol));
  checks.push_back(make_check("closure", closure_defect(pulse), kGeometryTol,
                              "ClosureFailure if l6 != l1 up to phase"));

  double cart_dot = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    cart_dot = std::max(cart_dot, std::abs(dot(cart.directions[i], cart.directions[(i + 1) % 5])));
  checks.push_back(make_check("cartesian_orthogonality", cart_dot, kIdentityTol));

  const auto first_five = [](const Quintuplet& q) {
    return std::vector<StateVector>(q.states.begin(), q.states.begin() + 5);
  };
  const double gram_dev = max_abs_difference(gram(first_five(pulse)), gram(first_five(cart.quintuplet)));
  checks.push_back(make_check("gram_equivalence", gram_dev, kGeometryTol));

  const StateVector coeff = psi0_from_coefficients();
  const StateVector pulsed = psi0_from_pulses();
  checks.push_back(make_check("psi0_agreement", std::abs(1.0 - std::abs(inner(coeff, pulsed))), kGeometryTol,
                              "ConventionMismatch if pulse and coefficient forms differ"));

  const TermSet t = exact_terms(coeff, pulse);
  double single_dev = 0.0;
  double pair_dev = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    single_dev = std::max(single_dev, std::abs(t.singles[i] - 1.0 / std::sqrt(5.0)));
    pair_dev = std::max(pair_dev, std::abs(t.pairs[i]));
  }
  checks.push_back(make_check("psi0_singles", single_dev, kGeometryTol));
  checks.push_back(make_check("psi0_pairs", pair_dev, kGeometryTol));

  try {
    measurement_plans(gamma);
    checks.push_back(make_check("measurement_plans", 0.0, kGeometryTol));
  } catch (const Error& e) {
    checks.push_back({"measurement_plans", false, 1.0, kGeometryTol, e.what()});
  }
  return checks;
}

const Check* first_failure(const std::vector<Check>& checks) {
  const auto it = std::find_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
  return it == checks.end() ? nullptr : &*it;
}

}  // namespace kcbs

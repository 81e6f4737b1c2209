#include "kcbs/qutrit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kcbs/error.hpp"

namespace kcbs {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_finite_angle(double theta, const char* who) {
  if (!std::isfinite(theta)) {
    throw Error(ErrorKind::NonFinite, std::string(who) + ": angle is not finite");
  }
}

// Givens block on levels (i, i+1).
Operator two_level_rotation(double theta, std::size_t i, RotationConvention conv) {
  const double c = std::cos(theta / 2.0);
  const double s = conv == RotationConvention::MinusSine ? std::sin(theta / 2.0)
                                                         : -std::sin(theta / 2.0);
  Operator r = Operator::identity();
  r(i, i) = c;
  r(i + 1, i + 1) = c;
  r(i, i + 1) = s;
  r(i + 1, i) = -s;
  return r;
}

}  // namespace

StateVector StateVector::basis(Level level) {
  Amplitudes a{};
  a[static_cast<std::size_t>(level)] = 1.0;
  return StateVector{a};
}

double StateVector::norm() const noexcept {
  return std::sqrt(std::norm(amps_[0]) + std::norm(amps_[1]) + std::norm(amps_[2]));
}

StateVector make_state(Complex c_plus, Complex c_zero, Complex c_minus) {
  if (!finite(c_plus) || !finite(c_zero) || !finite(c_minus)) {
    throw Error(ErrorKind::NonFinite, "make_state: non-finite amplitude");
  }
  const double n2 = std::norm(c_plus) + std::norm(c_zero) + std::norm(c_minus);
  if (!(n2 > 1e-300)) {
    throw Error(ErrorKind::ZeroVector, "make_state: all amplitudes are zero");
  }
  const double inv = 1.0 / std::sqrt(n2);
  return StateVector{Amplitudes{c_plus * inv, c_zero * inv, c_minus * inv}};
}

Operator Operator::identity() {
  Operator id;
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1.0;
  return id;
}

Operator Operator::outer(const StateVector& a, const StateVector& b) {
  Operator o;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) o(r, c) = a[r] * std::conj(b[c]);
  return o;
}

Operator Operator::adjoint() const {
  Operator o;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) o(r, c) = std::conj(m_[c][r]);
  return o;
}

Operator Operator::operator*(const Operator& rhs) const {
  Operator o;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      Complex acc{};
      for (std::size_t k = 0; k < 3; ++k) acc += m_[r][k] * rhs.m_[k][c];
      o(r, c) = acc;
    }
  return o;
}

Operator Operator::operator+(const Operator& rhs) const {
  Operator o;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) o(r, c) = m_[r][c] + rhs.m_[r][c];
  return o;
}

Operator Operator::operator-(const Operator& rhs) const {
  Operator o;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) o(r, c) = m_[r][c] - rhs.m_[r][c];
  return o;
}

Operator Operator::operator*(Complex s) const {
  Operator o;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) o(r, c) = m_[r][c] * s;
  return o;
}

Amplitudes Operator::act(const StateVector& psi) const noexcept {
  Amplitudes out{};
  for (std::size_t r = 0; r < 3; ++r)
    out[r] = m_[r][0] * psi[std::size_t{0}] + m_[r][1] * psi[std::size_t{1}] +
             m_[r][2] * psi[std::size_t{2}];
  return out;
}

double Operator::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& row : m_)
    for (const auto& e : row) m = std::max(m, std::abs(e));
  return m;
}

bool Operator::is_unitary(double tol) const {
  return ((adjoint() * *this) - identity()).max_abs() < tol;
}

bool Operator::is_hermitian(double tol) const { return (*this - adjoint()).max_abs() < tol; }

bool Operator::is_projector(double tol) const {
  return is_hermitian(tol) && ((*this * *this) - *this).max_abs() < tol;
}

Direction Direction::from_components(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(ErrorKind::NonFinite, "Direction: non-finite component");
  }
  const double n = std::sqrt(x * x + y * y + z * z);
  if (std::abs(n - 1.0) > kIdentityTol) {
    throw Error(ErrorKind::NotUnit, "Direction: norm " + std::to_string(n) + " is not 1");
  }
  return Direction{{x, y, z}};
}

Direction Direction::normalized(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(ErrorKind::NonFinite, "Direction: non-finite component");
  }
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 1e-300)) throw Error(ErrorKind::ZeroVector, "Direction: zero vector");
  return Direction{{x / n, y / n, z / n}};
}

double dot(const Direction& a, const Direction& b) noexcept {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

Operator rot_a(double theta, RotationConvention conv) {
  require_finite_angle(theta, "rot_a");
  return two_level_rotation(theta, 0, conv);
}

Operator rot_b(double theta, RotationConvention conv) {
  require_finite_angle(theta, "rot_b");
  return two_level_rotation(theta, 1, conv);
}

Operator rotation(const Pulse& p, RotationConvention conv) {
  return p.axis == Axis::A ? rot_a(p.angle, conv) : rot_b(p.angle, conv);
}

StateVector apply(const Operator& u, const StateVector& psi, bool check_unitary) {
  if (check_unitary && !u.is_unitary()) {
    throw Error(ErrorKind::NotUnitary, "apply: operator is not unitary");
  }
  return u.act_unitary(psi);
}

Operator compose(std::span<const Operator> ops) {
  if (ops.empty()) throw Error(ErrorKind::EmptySequence, "compose: empty operator list");
  Operator acc = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) acc = ops[i] * acc;
  return acc;
}

Operator compose(std::span<const Pulse> pulses, RotationConvention conv) {
  Operator acc = Operator::identity();
  for (const Pulse& p : pulses) acc = rotation(p, conv) * acc;
  return acc;
}

PulseSequence inverse(std::span<const Pulse> pulses) {
  PulseSequence out;
  out.reserve(pulses.size());
  for (auto it = pulses.rbegin(); it != pulses.rend(); ++it) out.push_back({it->axis, -it->angle});
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) noexcept {
  Complex acc{};
  for (std::size_t i = 0; i < 3; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  return std::abs(1.0 - std::abs(inner(a, b))) <= tol;
}

StateVector canonical_phase(const StateVector& psi) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(psi[i]) > std::abs(psi[big]) + 1e-15) big = i;
  const Complex phase = std::conj(psi[big]) / std::abs(psi[big]);
  Complex c0 = psi[std::size_t{0}] * phase;
  Complex c1 = psi[std::size_t{1}] * phase;
  Complex c2 = psi[std::size_t{2}] * phase;
  // Pin the reference amplitude to exactly real.
  std::array<Complex*, 3> slots{&c0, &c1, &c2};
  *slots[big] = Complex{std::abs(*slots[big]), 0.0};
  return make_state(c0, c1, c2);
}

double born(const StateVector& psi, const Operator& p) {
  if (!p.is_projector()) throw Error(ErrorKind::NotProjector, "born: operator is not a projector");
  const Amplitudes pp = p.act(psi);
  double v = 0.0;
  for (std::size_t i = 0; i < 3; ++i) v += (std::conj(psi[i]) * pp[i]).real();
  if (v < 0.0 && v > -kIdentityTol) v = 0.0;
  if (v > 1.0 && v < 1.0 + kIdentityTol) v = 1.0;
  return v;
}

const SpinOperators& spin_operators() {
  static const SpinOperators ops = [] {
    const double r = 1.0 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    SpinOperators s;
    s.x = Operator{Operator::Entries{{{0, r, 0}, {r, 0, r}, {0, r, 0}}}};
    s.y = Operator{Operator::Entries{{{0, -i * r, 0}, {i * r, 0, -i * r}, {0, i * r, 0}}}};
    s.z = Operator{Operator::Entries{{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}}};
    return s;
  }();
  return ops;
}

Operator spin_along(const Direction& n) {
  const auto& s = spin_operators();
  return s.x * n.x() + s.y * n.y() + s.z * n.z();
}

Operator neutral_projector(const Direction& n) {
  const Operator sn = spin_along(n);
  return Operator::identity() - sn * sn;
}

StateVector cartesian_embed(const Direction& n) {
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  // n_x|x> + n_y|y> + n_z|z>
  const Complex c_plus = -r * n.x() + i * r * n.y();
  const Complex c_zero = n.z();
  const Complex c_minus = r * n.x() + i * r * n.y();
  return canonical_phase(make_state(c_plus, c_zero, c_minus));
}

}  // namespace kcbs

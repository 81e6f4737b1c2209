#pragma once

// Dense linear algebra for a single spin-1 system.
//
// Basis ordering is (|+1>, |0>, |-1>) throughout. Operators are 3x3 complex
// matrices stored row-major; states are normalized amplitude triples.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kcbs {

using Complex = std::complex<double>;
using Amplitudes = std::array<Complex, 3>;

// Algebraic identities (unitarity, projector, normalization).
inline constexpr double kIdentityTol = 1e-12;
// Constructed geometry (orthogonality, closure, Gram agreement).
inline constexpr double kGeometryTol = 1e-10;

enum class Level : std::size_t { Plus = 0, Zero = 1, Minus = 2 };

class StateVector {
 public:
  StateVector() : amps_{Complex{1.0}, Complex{}, Complex{}} {}

  static StateVector basis(Level level);

  const Amplitudes& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const noexcept { return amps_[i]; }
  Complex operator[](Level l) const noexcept { return amps_[static_cast<std::size_t>(l)]; }
  double norm() const noexcept;

 private:
  explicit StateVector(const Amplitudes& a) : amps_(a) {}

  friend StateVector make_state(Complex, Complex, Complex);
  friend class Operator;

  Amplitudes amps_;
};

class Operator {
 public:
  using Entries = std::array<std::array<Complex, 3>, 3>;

  Operator() = default;
  explicit Operator(const Entries& e) : m_(e) {}

  static Operator identity();
  static Operator zero() { return Operator{}; }
  // |a><b|
  static Operator outer(const StateVector& a, const StateVector& b);
  static Operator projector(const StateVector& psi) { return outer(psi, psi); }

  Complex operator()(std::size_t r, std::size_t c) const noexcept { return m_[r][c]; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return m_[r][c]; }
  const Entries& entries() const noexcept { return m_; }

  Operator adjoint() const;
  Operator operator*(const Operator& rhs) const;
  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(Complex s) const;
  friend Operator operator*(Complex s, const Operator& op) { return op * s; }

  // Unchecked action on a state. The result is only a StateVector when the
  // operator is unitary; apply() enforces that.
  Amplitudes act(const StateVector& psi) const noexcept;

  // Largest entrywise magnitude.
  double max_abs() const noexcept;
  bool is_unitary(double tol = kIdentityTol) const;
  bool is_hermitian(double tol = kIdentityTol) const;
  bool is_projector(double tol = kIdentityTol) const;

 private:
  // Trusted path for unitary action; the caller has already checked.
  StateVector act_unitary(const StateVector& psi) const noexcept {
    return StateVector{act(psi)};
  }
  friend StateVector apply(const Operator&, const StateVector&, bool);

  Entries m_{};
};

// Real unit 3-vector.
class Direction {
 public:
  // Throws NotUnit unless the norm is 1 within kIdentityTol.
  static Direction from_components(double x, double y, double z);
  // Rescales to unit norm; throws ZeroVector on a (numerically) zero input.
  static Direction normalized(double x, double y, double z);

  const std::array<double, 3>& components() const noexcept { return c_; }
  double x() const noexcept { return c_[0]; }
  double y() const noexcept { return c_[1]; }
  double z() const noexcept { return c_[2]; }

 private:
  explicit Direction(const std::array<double, 3>& c) : c_(c) {}
  std::array<double, 3> c_;
};

double dot(const Direction& a, const Direction& b) noexcept;

// Sign of the sine term in the two-level rotations. MinusSine is the frozen
// convention: it is the one under which both the pulse-built quintuplet closes
// and the pulse-built |psi0> matches its coefficient form. PlusSine is kept so
// tests can demonstrate the mismatch.
enum class RotationConvention { MinusSine, PlusSine };
inline constexpr RotationConvention kFrozenConvention = RotationConvention::MinusSine;

enum class Axis { A, B };

// One RF pulse: rotation on the a = {|+1>,|0>} or b = {|0>,|-1>} transition.
struct Pulse {
  Axis axis;
  double angle;
};

using PulseSequence = std::vector<Pulse>;

StateVector make_state(Complex c_plus, Complex c_zero, Complex c_minus);

// Half-angle Givens rotation on span{|+1>,|0>}, identity on |-1>. Under the
// frozen convention |+1> -> cos(t/2)|+1> - sin(t/2)|0>.
Operator rot_a(double theta, RotationConvention conv = kFrozenConvention);
// Same on span{|0>,|-1>}: |0> -> cos(t/2)|0> - sin(t/2)|-1>.
Operator rot_b(double theta, RotationConvention conv = kFrozenConvention);
Operator rotation(const Pulse& p, RotationConvention conv = kFrozenConvention);

// U psi. With check_unitary, throws NotUnitary when U fails the tolerance.
StateVector apply(const Operator& u, const StateVector& psi, bool check_unitary = true);

// Product in application order: ops[0] acts first, so the result is
// ops[n-1] * ... * ops[0]. Throws EmptySequence.
Operator compose(std::span<const Operator> ops);
// Ideal unitary of a pulse list, first pulse acting first. Empty -> identity.
Operator compose(std::span<const Pulse> pulses, RotationConvention conv = kFrozenConvention);

// Pulse list undoing `pulses`: reversed order, negated angles.
PulseSequence inverse(std::span<const Pulse> pulses);

// <a|b>
Complex inner(const StateVector& a, const StateVector& b) noexcept;
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kGeometryTol);
// Rotates the global phase so the largest-magnitude amplitude is real positive.
StateVector canonical_phase(const StateVector& psi);

// <psi|P|psi>. Throws NotProjector.
double born(const StateVector& psi, const Operator& p);

struct SpinOperators {
  Operator x, y, z;
};

// Standard spin-1 matrices with hbar = 1.
const SpinOperators& spin_operators();
// n . S
Operator spin_along(const Direction& n);
// I - (n . S)^2, the projector onto the m = 0 state along n.
Operator neutral_projector(const Direction& n);

// m = 0 eigenstate of n . S via |x> = (|-1> - |+1>)/sqrt2,
// |y> = i(|-1> + |+1>)/sqrt2, |z> = |0>; canonical phase.
StateVector cartesian_embed(const Direction& n);

}  // namespace kcbs

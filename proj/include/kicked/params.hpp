#ifndef KICKED_PARAMS_HPP
#define KICKED_PARAMS_HPP

// Parameter blocks. Frequencies are in units of the static coupling Omega1,
// times in units of 1/Omega1.

#include <cmath>

namespace kicked {

struct TwoLevelParams {
  double delta1 = 0.0;
  double omega1 = 1.0;
  double theta1 = 0.0;

  double energy() const { return std::sqrt(omega1 * omega1 + delta1 * delta1 / 4.0); }
};

// Time-integrated kick generator: delta |2><2| + omega e^{i theta} |1><2| + h.c.
struct Impulse2 {
  double delta = 0.0;
  double omega = 0.0;
  double theta = 0.0;

  double energy() const { return std::sqrt(omega * omega + delta * delta / 4.0); }
};

struct KickParams2 {
  double period = 0.0;
  Impulse2 impulse;
};

// Ladder |1> - |2> - |3> with detunings on |2> and |3>.
struct ThreeLevelParams {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double omega1 = 1.0;
  double omega2 = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

struct Impulse3 {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

struct KickParams3 {
  double period = 0.0;
  Impulse3 impulse;
};

// Ladder with delta2 = 2 delta1, omega2 = omega1, theta2 = theta1.
struct ThreeLevelSpecialParams {
  double delta1 = 0.0;
  double omega1 = 1.0;
  double theta1 = 0.0;

  double energy() const { return std::sqrt(delta1 * delta1 + 2.0 * omega1 * omega1); }
  ThreeLevelParams general() const { return {delta1, 2.0 * delta1, omega1, omega1, theta1, theta1}; }
  static ThreeLevelSpecialParams from_general(const ThreeLevelParams& p);
};

struct SpecialImpulse {
  double delta = 0.0;
  double omega = 0.0;
  double theta = 0.0;

  double energy() const { return std::sqrt(delta * delta + 2.0 * omega * omega); }
  Impulse3 general() const { return {delta, 2.0 * delta, omega, omega, theta, theta}; }
  static SpecialImpulse from_general(const Impulse3& p);
};

enum class KickStyle { frequency, amplitude, phase };

// Impulse of the given style: the free parameter is `value`, the others equal
// the static system's.
inline Impulse2 make_impulse(KickStyle style, const TwoLevelParams& sys, double value) {
  switch (style) {
    case KickStyle::frequency: return {value, sys.omega1, sys.theta1};
    case KickStyle::amplitude: return {sys.delta1, value, sys.theta1};
    case KickStyle::phase: return {sys.delta1, sys.omega1, value};
  }
  return {};
}

void validate(const TwoLevelParams& sys);
void validate(const Impulse2& impulse);
void validate(const KickParams2& kick);
void validate(const ThreeLevelParams& sys);
void validate(const Impulse3& impulse);
void validate(const KickParams3& kick);

}  // namespace kicked

#endif  // KICKED_PARAMS_HPP

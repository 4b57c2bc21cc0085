#ifndef KICKED_TWO_LEVEL_HPP
#define KICKED_TWO_LEVEL_HPP

// Two-level system under periodic delta kicks: one-period propagator in the
// f-function parametrization, effective Hamiltonian, resonance conditions.

#include <Eigen/Dense>

#include <vector>

#include "kicked/params.hpp"

namespace kicked {

// One-period propagator up to a global phase:
//   [[f1 + i f2, f4 - i f3], [-f4 - i f3, f1 - i f2]].
struct FFunctions {
  double f1 = 1.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;

  double norm_squared() const { return f1 * f1 + f2 * f2 + f3 * f3 + f4 * f4; }
  Eigen::Matrix2cd matrix() const;
};

struct EffectiveHamiltonian2 {
  double delta_eff = 0.0;
  double omega_eff = 0.0;
  double theta_eff = 0.0;

  Eigen::Matrix2cd matrix() const;
};

FFunctions f_functions(const TwoLevelParams& sys, const KickParams2& kick);

// exp(-i M) exp(-i H1 T) with all phases kept.
Eigen::Matrix2cd one_period_propagator(const TwoLevelParams& sys, const KickParams2& kick);

// f-layout of an arbitrary 2x2 unitary after removing its determinant phase.
// The sign is fixed so that f1 >= 0.
FFunctions su2_parameters(const Eigen::Matrix2cd& u);

// Inversion of U(T) = exp(-i H_eff T) in the f-parametrization. Returns zeros
// when U(T) is proportional to the identity.
EffectiveHamiltonian2 effective_from_su2(const FFunctions& f, double period);
EffectiveHamiltonian2 effective_hamiltonian(const TwoLevelParams& sys, const KickParams2& kick);

// Offset phase of the f2 = 0 condition; lies in (-pi/2, pi/2].
double resonance_offset(const TwoLevelParams& sys, const Impulse2& impulse);

// Periods T = (n pi - offset)/E1, n = 0..n_max, restricted to T > 0.
std::vector<double> resonance_periods(const TwoLevelParams& sys, const Impulse2& impulse, int n_max);

struct ResonantCoupling {
  double period = 0.0;
  EffectiveHamiltonian2 eff;
};

// Smallest positive resonance period and the effective Hamiltonian there,
// which maximizes the effective coupling.
ResonantCoupling first_resonance(const TwoLevelParams& sys, const Impulse2& impulse);

// Kick phases in (-pi, pi] that make f2 vanish at fixed T, delta', omega'.
std::vector<double> resonance_phase(const TwoLevelParams& sys, double period, double delta1p,
                                    double omega1p);

struct SearchRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Roots of f2 in the kick detuning (resp. kick coupling) over a range.
std::vector<double> resonance_detuning(const TwoLevelParams& sys, double period, double omega1p,
                                       double theta1p, SearchRange range);
std::vector<double> resonance_amplitude(const TwoLevelParams& sys, double period, double delta1p,
                                        double theta1p, SearchRange range);

// Kick detunings with E1' = m pi for a given kick coupling, m = 1..m_max.
std::vector<double> cdc_points(double omega1p, int m_max);

// Limit of the effective coupling as E1' approaches m pi from below.
double omega_eff_limit(const TwoLevelParams& sys, const Impulse2& impulse);

// Large-detuning estimate of the phase-kick limit.
double phase_kick_limit_estimate(const TwoLevelParams& sys, double theta1p);

}  // namespace kicked

#endif  // KICKED_TWO_LEVEL_HPP

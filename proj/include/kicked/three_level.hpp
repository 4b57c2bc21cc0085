#ifndef KICKED_THREE_LEVEL_HPP
#define KICKED_THREE_LEVEL_HPP

// Three-level ladder under periodic kicks: closed-form effective coupling for
// the special ladder and the period sweep for the general one.

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "kicked/params.hpp"

namespace kicked {

// One-period propagator of the special ladder with the phase
// e^{-i delta1'} e^{-i delta1 T} / (E1^2 E1'^2) removed:
//   [[g1 + i g2,  g8 + i g9, g5 - i g6],
//    [g3 + i g4,  g7,       -g3 + i g4],
//    [g5 + i g6, -g8 + i g9, g1 - i g2]]
// with g_k(T) = a[k][0] cos(E1 T) + a[k][1] sin(E1 T) + a[k][2].
struct GCoefficients {
  std::array<std::array<double, 3>, 9> a{};
  double energy = 0.0;  // E1 of the static ladder
  double scale = 1.0;   // E1^2 E1'^2 (E1' counted as 1 for a vanishing impulse)

  // g_k in the printed scale, k = 1..9.
  double g(int k, double period) const;
  // g_k divided by the scale, so the layout matrix is unitary.
  double normalized(int k, double period) const;
  Eigen::Matrix3cd layout(double period) const;
};

GCoefficients g_coefficients(const ThreeLevelSpecialParams& sys, const SpecialImpulse& impulse);

// e^{-i M} e^{-i H1 T} with all phases kept.
Eigen::Matrix3cd one_period_propagator(const ThreeLevelParams& sys, const KickParams3& kick);

struct ConsistencyReport {
  bool pass = false;
  // g3 + g8, g4 - g9, 2 g3 g4 g5 + g6 (g4^2 - g3^2), g1 + |g5 + i g6| - 1,
  // 2 g1 - g7 - 1, all on the normalized layout.
  std::array<double, 5> residuals{};
};

ConsistencyReport consistency_check(const GCoefficients& g, double period, double tol = 1e-8);

// Periods where the kicked special ladder has a pure-coupling effective
// Hamiltonian, sorted ascending.
std::vector<double> special_resonance_periods(const ThreeLevelSpecialParams& sys,
                                              const SpecialImpulse& impulse, int n_max);

struct EffectiveHamiltonian3 {
  double omega_eff = 0.0;
  double theta_eff = 0.0;

  // omega_eff e^{i theta_eff} (|1><2| + |2><3|) + h.c.
  Eigen::Matrix3cd matrix() const;
};

EffectiveHamiltonian3 effective_hamiltonian_special(const ThreeLevelSpecialParams& sys,
                                                    const SpecialImpulse& impulse, double period);

enum class Regime { frozen, one_photon, two_photon, full_resonance, mixed };

const char* regime_name(Regime regime);
Regime classify(double p1_min, double p2_max, double p3_max);

struct SweepPoint {
  double period = 0.0;
  double p1_min = 1.0;
  double p2_max = 0.0;
  double p3_max = 0.0;
  Regime regime = Regime::frozen;
};

struct PeriodGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

struct SweepOptions {
  int horizon_periods = 0;  // 0 selects default_sweep_horizon
  int samples_per_period = 20;
  int threads = 1;
};

// max(200, ceil(1.5 pi / (Omega_guess T))) periods with the two-photon scale
// Omega_guess = omega1 omega2 / |delta1|.
int default_sweep_horizon(const ThreeLevelParams& sys, double period);

SweepPoint sweep_point(const ThreeLevelParams& sys, const Impulse3& impulse, double period,
                       int horizon_periods, int samples_per_period);

std::vector<SweepPoint> sweep_period(const ThreeLevelParams& sys, const Impulse3& impulse,
                                     const PeriodGrid& grid, const SweepOptions& options = {});

}  // namespace kicked

#endif  // KICKED_THREE_LEVEL_HPP

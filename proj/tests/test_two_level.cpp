#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/propagators.hpp"
#include "kicked/two_level.hpp"

using namespace kicked;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

double f2_at(const TwoLevelParams& sys, double period, const Impulse2& impulse) {
  return f_functions(sys, {period, impulse}).f2;
}

// P2 after n cycles of U(T) and under H_eff, both from |1>.
double max_stroboscopic_gap(const TwoLevelParams& sys, const KickParams2& kick, int cycles) {
  const Eigen::Matrix2cd u = one_period_propagator(sys, kick);
  const Eigen::Matrix2cd ue = expm_hermitian(effective_hamiltonian(sys, kick).matrix(), kick.period);
  Eigen::Vector2cd a(1, 0), b(1, 0);
  double worst = 0.0;
  for (int n = 0; n < cycles; ++n) {
    a = u * a;
    b = ue * b;
    worst = std::max(worst, std::abs(std::norm(a(1)) - std::norm(b(1))));
  }
  return worst;
}

}  // namespace

TEST(TwoLevel, NoKickReducesToFreeRotation) {
  const TwoLevelParams sys{7.0, 1.3, 0.4};
  const double t = 0.37;
  const FFunctions f = f_functions(sys, {t, {}});
  const double e = sys.energy();
  EXPECT_NEAR(f.f1, std::cos(e * t), 1e-14);
  EXPECT_NEAR(f.f2, sys.delta1 / (2 * e) * std::sin(e * t), 1e-14);
  EXPECT_NEAR(f.f3, sys.omega1 * std::cos(sys.theta1) / e * std::sin(e * t), 1e-14);
  EXPECT_NEAR(f.f4, sys.omega1 * std::sin(sys.theta1) / e * std::sin(e * t), 1e-14);
}

TEST(TwoLevel, FFunctionsMatchMatrixProduct) {
  const TwoLevelParams sys{40, 1, 0};
  const KickParams2 kick{0.08, {40, 6, 0}};
  const FFunctions f = f_functions(sys, kick);
  EXPECT_NEAR(f.norm_squared(), 1.0, 1e-10);
  EXPECT_LT(distance_mod_phase(f.matrix(), one_period_propagator(sys, kick)), 1e-12);
}

TEST(TwoLevel, SuTwoParametersRoundTrip) {
  const TwoLevelParams sys{3, 1, 0.2};
  const KickParams2 kick{0.3, {2, 0.5, 1.0}};
  const FFunctions a = f_functions(sys, kick);
  const FFunctions b = su2_parameters(one_period_propagator(sys, kick));
  const double sign = a.f1 >= 0 ? 1.0 : -1.0;
  EXPECT_NEAR(b.f1, sign * a.f1, 1e-12);
  EXPECT_NEAR(b.f2, sign * a.f2, 1e-12);
  EXPECT_NEAR(b.f3, sign * a.f3, 1e-12);
  EXPECT_NEAR(b.f4, sign * a.f4, 1e-12);
}

TEST(TwoLevel, IdentityPropagatorAtDestructionPoint) {
  // E1' = 3 pi with matching phases and E1 T = pi.
  const double omega_p = 1.0;
  const double delta_p = 2 * std::sqrt(9 * kPi * kPi - omega_p * omega_p);
  const TwoLevelParams sys{10, 1, 0};
  const FFunctions f = f_functions(sys, {kPi / sys.energy(), {delta_p, omega_p, 0}});
  EXPECT_NEAR(std::abs(f.f1), 1.0, 1e-12);
  EXPECT_NEAR(f.f2, 0.0, 1e-12);
  EXPECT_NEAR(f.f3, 0.0, 1e-12);
  EXPECT_NEAR(f.f4, 0.0, 1e-12);
}

TEST(TwoLevel, ZeroImpulseSelfReports) {
  const TwoLevelParams sys{5, 1.5, -0.7};
  const double t = 0.5 * (kPi / 2) / sys.energy();
  const EffectiveHamiltonian2 eff = effective_hamiltonian(sys, {t, {}});
  EXPECT_NEAR(eff.delta_eff, sys.delta1, 1e-10);
  EXPECT_NEAR(eff.omega_eff, sys.omega1, 1e-10);
  EXPECT_NEAR(eff.theta_eff, sys.theta1, 1e-10);
}

TEST(TwoLevel, DestructionOfCouplingRow) {
  const TwoLevelParams sys{100, 1, 0};
  const EffectiveHamiltonian2 eff = effective_hamiltonian(sys, {0.0628, {56.5133, 1, 0}});
  EXPECT_LT(eff.omega_eff, 1e-3);
}

TEST(TwoLevel, ScalarPropagatorIsDegenerate) {
  FFunctions f;
  const EffectiveHamiltonian2 eff = effective_from_su2(f, 1.0);
  EXPECT_EQ(eff.delta_eff, 0.0);
  EXPECT_EQ(eff.omega_eff, 0.0);
  EXPECT_EQ(eff.theta_eff, 0.0);
}

TEST(TwoLevel, StroboscopicPopulationsRandomDraws) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> det(-200, 200), amp(0, 10), ph(-kPi, kPi), per(0.001, 0.5);
  for (int k = 0; k < 40; ++k) {
    const TwoLevelParams sys{det(rng), 1.0, ph(rng)};
    const KickParams2 kick{per(rng), {det(rng), amp(rng), ph(rng)}};
    EXPECT_LT(max_stroboscopic_gap(sys, kick, 1000), 1e-9) << "draw " << k;
  }
}

TEST(TwoLevel, GeneratorMatchesWhenFirstFunctionPositive) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> det(-50, 50), amp(0, 5), ph(-kPi, kPi), per(0.001, 0.2);
  int checked = 0;
  for (int k = 0; k < 200 && checked < 30; ++k) {
    const TwoLevelParams sys{det(rng), 1.0, ph(rng)};
    const KickParams2 kick{per(rng), {det(rng), amp(rng), ph(rng)}};
    const FFunctions f = f_functions(sys, kick);
    if (f.f1 <= 0 || f.f1 > 1 - 1e-9) continue;
    ++checked;
    const Eigen::Matrix2cd ue = expm_hermitian(effective_hamiltonian(sys, kick).matrix(), kick.period);
    EXPECT_LT(distance_mod_phase(ue, one_period_propagator(sys, kick)), 1e-9);
  }
  EXPECT_GE(checked, 10);
}

TEST(TwoLevel, PhaseAgreesWithMatrixLogarithm) {
  const TwoLevelParams sys{4, 1, 0.3};
  const KickParams2 kick{0.2, {3, 2, 1.1}};
  const FFunctions f = f_functions(sys, kick);
  ASSERT_LT(std::abs(f.f1), 1 - 1e-6);
  const Eigen::Matrix2cd h = unitary_log_traceless(one_period_propagator(sys, kick), kick.period);
  const double sign = f.f1 >= 0 ? 1.0 : -1.0;
  EXPECT_NEAR(detail::wrap_phase(std::arg(sign * h(0, 1)) - effective_hamiltonian(sys, kick).theta_eff), 0.0,
              1e-9);
}

TEST(TwoLevel, ResonancePeriodsAtExactDestructionPoint) {
  const TwoLevelParams sys{40, 1, 0};
  const double delta_p = 2 * std::sqrt(4 * kPi * kPi - 1);
  EXPECT_NEAR(resonance_offset(sys, {delta_p, 1, 0}), 0.0, 1e-12);
  const std::vector<double> ts = resonance_periods(sys, {delta_p, 1, 0}, 3);
  ASSERT_EQ(ts.size(), 3u);
  for (int n = 1; n <= 3; ++n) EXPECT_NEAR(ts[n - 1], n * kPi / sys.energy(), 1e-12);
}

TEST(TwoLevel, ResonancePeriodsCloseTheLoop) {
  const TwoLevelParams sys{40, 1, 0};
  const Impulse2 impulse{40, 1, 0};
  const std::vector<double> ts = resonance_periods(sys, impulse, 5);
  ASSERT_FALSE(ts.empty());
  for (double t : ts) {
    EXPECT_LT(std::abs(f2_at(sys, t, impulse)), 1e-10);
    EXPECT_LT(std::abs(effective_hamiltonian(sys, {t, impulse}).delta_eff), 1e-8);
  }
}

TEST(TwoLevel, DestructionRowPeriod) {
  const std::vector<double> ts = resonance_periods({100, 1, 0}, {56.5133, 1, 0}, 3);
  ASSERT_FALSE(ts.empty());
  EXPECT_NEAR(ts.front(), 0.0628, 5e-5);
}

TEST(TwoLevel, ResonancePeriodsRejectsBadCount) {
  EXPECT_THROW(resonance_periods({1, 1, 0}, {1, 1, 0}, 0), Error);
}

TEST(TwoLevel, ResonancePhaseEmptyInLargeDetuning) {
  const TwoLevelParams sys{40, 1, 0};
  EXPECT_TRUE(resonance_phase(sys, 0.0731, 40, 1).empty());
}

TEST(TwoLevel, ResonancePhaseRoots) {
  // Small detunings allow a solution; each returned phase must zero f2.
  const TwoLevelParams sys{0.5, 1, 0};
  int found = 0;
  for (double t : {0.3, 0.7, 1.1, 1.9}) {
    for (double th : resonance_phase(sys, t, 0.4, 2.0)) {
      ++found;
      const Impulse2 impulse{0.4, 2.0, th};
      EXPECT_LT(std::abs(f2_at(sys, t, impulse)), 1e-10);
      EXPECT_LT(std::abs(effective_hamiltonian(sys, {t, impulse}).delta_eff), 1e-8);
      EXPECT_GT(th, -kPi);
      EXPECT_LE(th, kPi);
    }
  }
  EXPECT_GT(found, 0);
}

TEST(TwoLevel, ResonancePhaseZeroRatioGivesStaticPhase) {
  // Zero detunings make f2 vanish identically in the kick phase only through
  // the coupling term, so theta1' = theta1 must be among the roots.
  const TwoLevelParams sys{0.0, 1, 0.4};
  const std::vector<double> th = resonance_phase(sys, 0.5, 0.0, 1.0);
  bool has_static = false;
  for (double x : th) has_static |= std::abs(detail::wrap_phase(x - sys.theta1)) < 1e-9;
  EXPECT_TRUE(has_static);
}

TEST(TwoLevel, ResonanceDetuningIntersectionExists) {
  const TwoLevelParams sys{40, 1, 0};
  const double t = 0.05;
  const std::vector<double> roots = resonance_detuning(sys, t, 3, kPi / 3, {0, 60});
  ASSERT_FALSE(roots.empty());
  for (double d : roots) EXPECT_LT(std::abs(f2_at(sys, t, {d, 3, kPi / 3})), 1e-10);
}

TEST(TwoLevel, ResonanceDetuningFindsDestructionPoints) {
  const TwoLevelParams sys{40, 1, 0};
  const double t = kPi / sys.energy();
  const std::vector<double> roots = resonance_detuning(sys, t, 1, 0, {0, 60});
  for (double d : cdc_points(1, 9)) {
    bool hit = false;
    for (double r : roots) hit |= std::abs(r - d) < 1e-6;
    EXPECT_TRUE(hit) << d;
  }
}

TEST(TwoLevel, ResonanceAmplitudeRoots) {
  const TwoLevelParams sys{40, 1, 0};
  const std::vector<double> roots = resonance_amplitude(sys, 0.05, 40, 0, {0, 30});
  ASSERT_FALSE(roots.empty());
  for (double o : roots) EXPECT_LT(std::abs(f2_at(sys, 0.05, {40, o, 0})), 1e-10);
}

TEST(TwoLevel, CdcPoints) {
  const std::vector<double> pts = cdc_points(1.0, 9);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_NEAR(pts.back(), 56.5133, 1e-4);
  const std::vector<double> edge = cdc_points(kPi, 2);
  ASSERT_EQ(edge.size(), 2u);
  EXPECT_EQ(edge.front(), 0.0);
}

TEST(TwoLevel, CdcPointsFreezeAtResonance) {
  const TwoLevelParams sys{100, 1, 0};
  for (double d : cdc_points(1.0, 12)) {
    const std::vector<double> ts = resonance_periods(sys, {d, 1, 0}, 2);
    ASSERT_FALSE(ts.empty());
    const KickParams2 kick{ts.back(), {d, 1, 0}};
    EXPECT_LT(effective_hamiltonian(sys, kick).omega_eff, 1e-8);
    const Eigen::Matrix2cd u = one_period_propagator(sys, kick);
    EXPECT_LT(distance_mod_phase(u, Eigen::Matrix2cd::Identity()), 1e-8);
  }
}

TEST(TwoLevel, LimitSpecializations) {
  const TwoLevelParams sys{100, 1, 0};
  EXPECT_NEAR(omega_eff_limit(sys, {100, 1, 0}), 0.0, 1e-12);
  EXPECT_NEAR(omega_eff_limit(sys, {100, 1, 0}), 0.0, 1e-12);
  EXPECT_NEAR(omega_eff_limit(sys, {40, 1, 0}), std::abs(1 - 100.0 / 40), 1e-12);
  EXPECT_NEAR(omega_eff_limit(sys, {100, 3.5, 0}), 2.5, 1e-12);
  try {
    omega_eff_limit(sys, {0, 1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionDegenerate);
  }
}

TEST(TwoLevel, FrequencyKickLimitNumerically) {
  const TwoLevelParams sys{100, 1, 0};
  for (int m = 5; m <= 12; ++m) {
    const double e = m * kPi - 1e-4;
    const double d = 2 * std::sqrt(e * e - 1);
    const double expected = std::abs(1 - sys.delta1 / d);
    const double got = first_resonance(sys, {d, 1, 0}).eff.omega_eff;
    EXPECT_NEAR(got / expected, 1.0, 0.01) << m;
  }
}

TEST(TwoLevel, AmplitudeKickLimitNumerically) {
  const TwoLevelParams sys{100, 1, 0};
  for (int m = 16; m <= 23; ++m) {
    const double e = m * kPi - 1e-4;
    const double o = std::sqrt(e * e - 2500);
    const double got = first_resonance(sys, {100, o, 0}).eff.omega_eff;
    EXPECT_NEAR(got / std::abs(1 - o), 1.0, 0.01) << m;
  }
}

TEST(TwoLevel, PhaseKickLimitNumerically) {
  for (double th : {0.5, 1.5, 2.5, kPi}) {
    // Phase kick at E1' near 16 pi from below (Delta1' = Delta1, Omega1' = Omega1).
    const double e = 16 * kPi - 1e-4;
    const double d = 2 * std::sqrt(e * e - 1);
    const TwoLevelParams s{d, 1, 0};
    const double got = first_resonance(s, {d, 1, th}).eff.omega_eff;
    const double approx = std::abs(1.0 - std::exp(cd(0, -th)));
    EXPECT_NEAR(got / approx, 1.0, 0.01) << th;
    EXPECT_NEAR(got / omega_eff_limit(s, {d, 1, th}), 1.0, 1e-3) << th;
    EXPECT_NEAR(phase_kick_limit_estimate(s, th), approx, 1e-12);
  }
}

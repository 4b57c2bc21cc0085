#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/propagators.hpp"
#include "kicked/squarewave.hpp"

using namespace kicked;
constexpr double kPi = std::numbers::pi;

namespace {

Eigen::MatrixXcd traceless(const Eigen::MatrixXcd& m) {
  return m - (m.trace() / static_cast<double>(m.rows())) * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
}

}  // namespace

TEST(SquareWave, ZeroBranchIsUnitDuration) {
  const std::vector<SquareSegment> segs = square_duration({12.3, 1, 0}, 0, 0);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].duration, 1.0);
}

TEST(SquareWave, ZeroDurationBranchExcluded) {
  // E1' = 2 pi.
  const Impulse2 impulse{2 * std::sqrt(4 * kPi * kPi - 1), 1, 0};
  ASSERT_NEAR(impulse.energy(), 2 * kPi, 1e-12);
  for (const SquareSegment& s : square_duration(impulse, -3, 3)) EXPECT_NE(s.k, 1);
}

TEST(SquareWave, EveryBranchReproducesTheKick) {
  for (const Impulse2 impulse : {Impulse2{12.3, 1, 0}, Impulse2{56.5, 3, 0.7}, Impulse2{-4, 2, -1.2}}) {
    const Eigen::Matrix2cd target = expm_hermitian(impulse_matrix(impulse), 1.0);
    const std::vector<SquareSegment> segs = square_duration(impulse, -5, 20);
    ASSERT_FALSE(segs.empty());
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const Eigen::Matrix2cd u = expm_hermitian(impulse_matrix(segs[i].hamiltonian), segs[i].duration);
      EXPECT_LT(distance_mod_phase(u, target), 1e-10);
      EXPECT_GT(segs[i].duration, 0.0);
      if (i) {
        EXPECT_LE(segs[i - 1].duration, segs[i].duration);
      }
    }
  }
}

TEST(SquareWave, DegenerateImpulse) {
  try {
    square_duration({}, 0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateImpulse);
  }
}

TEST(SquareWave, GeneralDurationsIdentitySubstitution) {
  const Eigen::Matrix2cd m = impulse_matrix(Impulse2{12.3, 1, 0.4});
  const GeneralDuration g = general_durations(m, {0, 0}, 1.0);
  EXPECT_LT(max_abs(g.hamiltonian - Eigen::MatrixXcd(m)), 1e-12);
}

TEST(SquareWave, GeneralDurationsShiftLeavesPropagator) {
  const Eigen::Matrix3cd m = impulse_matrix(Impulse3{18, 36, 1, 1, 0.2, 0.2});
  const GeneralDuration a = general_durations(m, {0, 0, 0}, 0.7);
  const GeneralDuration b = general_durations(m, {0, 1, 0}, 0.7);
  EXPECT_NEAR(a.scaled_energies(1) - b.scaled_energies(1), 2 * kPi / 0.7, 1e-12);
  const Eigen::MatrixXcd target = expm_hermitian(Eigen::MatrixXcd(m), 1.0);
  EXPECT_LT(distance_mod_phase(expm_hermitian(a.hamiltonian, 0.7), target), 1e-10);
  EXPECT_LT(distance_mod_phase(expm_hermitian(b.hamiltonian, 0.7), target), 1e-10);
}

TEST(SquareWave, GeneralDurationsReproduceTwoLevelSet) {
  // Shifts k_- = -k, k_+ = k reproduce the scalar branch family up to a phase.
  const Impulse2 impulse{12.3, 1, 0};
  const Eigen::Matrix2cd m = impulse_matrix(impulse);
  const Eigen::MatrixXcd target = expm_hermitian(Eigen::MatrixXcd(m), 1.0);
  for (const SquareSegment& s : square_duration(impulse, 0, 6)) {
    const GeneralDuration g = general_durations(m, {-s.k, s.k}, s.duration);
    EXPECT_LT(max_abs(traceless(g.hamiltonian) - traceless(impulse_matrix(s.hamiltonian))), 1e-9)
        << s.k;
    EXPECT_LT(distance_mod_phase(expm_hermitian(g.hamiltonian, s.duration), target), 1e-10);
  }
}

TEST(SquareWave, GeneralDurationsValidation) {
  const Eigen::Matrix2cd m = impulse_matrix(Impulse2{1, 1, 0});
  try {
    general_durations(m, {0, 0}, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDuration);
  }
  EXPECT_THROW(general_durations(m, {0}, 1.0), Error);
}

TEST(SquareWave, EffectiveCouplingScaling) {
  EXPECT_NEAR(square_effective_coupling(1.0, 1e-12, 3.0), 3.0, 1e-10);
  EXPECT_LT(square_effective_coupling(1.0, 0.5, 3.0), 3.0);
  EXPECT_THROW(square_effective_coupling(1.0, 0.0, 3.0), Error);
}

TEST(SquareWave, DesignedCouplingAtLargeDetuning) {
  const TwoLevelParams sys{1000, 1, 0};
  const SquareWaveDesign d = design_square_wave(sys, {12.3, 1, 0});
  EXPECT_EQ(d.spec.branch_k, 1);
  EXPECT_NEAR(d.spec.T, 1.03473e-4, 1e-8);
  EXPECT_NEAR(d.spec.Tprime, 0.0084123, 1e-7);
  EXPECT_EQ(d.spec.Ts, d.spec.T + d.spec.Tprime);
  EXPECT_NEAR(d.omega_eff_square / 0.9753, 1.0, 1e-3);
  EXPECT_NEAR(square_effective(sys, d.spec).omega_eff, d.omega_eff_square, 1e-9);
}

TEST(SquareWave, BranchChoicePrefersShortSegmentWithinPeriod) {
  const std::vector<SquareSegment> c = {{3, 0.2, {}}, {1, 0.4, {}}, {2, 0.9, {}}};
  EXPECT_EQ(choose_branch(0.5, c).branch_k, 1);
  EXPECT_EQ(choose_branch(0.1, c).branch_k, 3);
  EXPECT_THROW(choose_branch(0.1, {}), Error);
}

TEST(SquareWave, CouplingStaysBelowStaticGrid) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double delta = 100 + 900.0 * i / 9;
      const double delta_p = 1 + 39.0 * j / 9;
      const SquareWaveDesign d = design_square_wave({delta, 1, 0}, {delta_p, 1, 0});
      EXPECT_LT(d.omega_eff_square, d.omega_eff);
      worst = std::max(worst, d.omega_eff_square);
    }
  }
  EXPECT_LT(worst, 1.0);
}

TEST(SquareWave, StroboscopicAgreement) {
  const TwoLevelParams sys{1000, 1, 0};
  const SquareWaveDesign d = design_square_wave(sys, {12.3, 1, 0});
  const Trajectory tr = evolve_square_wave(sys, d.spec, 50 * d.spec.Ts, 4);
  const Eigen::Matrix2cd u = square_period_propagator(sys, d.spec);
  Eigen::VectorXcd psi = basis_state(2, 0);
  for (int n = 1; n <= 50; ++n) {
    psi = u * psi;
    EXPECT_LT((tr.states[static_cast<std::size_t>(8 * n)] - psi).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SquareWave, MatchesResonancePulse) {
  const TwoLevelParams sys{1000, 1, 0};
  const SquareWaveDesign d = design_square_wave(sys, {12.3, 1, 0});
  EXPECT_LT(compare_to_resonance_pulse(sys, d.spec, kPi / 2), 0.05);
}

TEST(SquareWave, IdealPulseHasNoDeviation) {
  const TwoLevelParams sys{0, 1, 0};
  const SquareWaveSpec spec{0.1, 0.0, 0.1, 0, {}};
  EXPECT_LT(compare_to_resonance_pulse(sys, spec, kPi), 1e-10);
}

TEST(SquareWave, DeviationShrinksWithDetuning) {
  double prev = 1.0;
  for (double delta : {100.0, 400.0, 700.0, 1000.0}) {
    const TwoLevelParams sys{delta, 1, 0};
    const SquareWaveDesign d = design_square_wave(sys, {12.3, 1, 0});
    const double dev = compare_to_resonance_pulse(sys, d.spec, kPi / 2);
    EXPECT_LT(dev, prev) << delta;
    prev = dev;
  }
}

TEST(SquareWave, PulseScheduleRoundTrip) {
  const TwoLevelParams sys{1000, 1, 0};
  const SquareWaveDesign d = design_square_wave(sys, {12.3, 1, 0});
  const std::vector<PulseLine> lines = pulse_schedule(sys, d.spec, 5);
  ASSERT_EQ(lines.size(), 10u);
  std::stringstream ss;
  write_pulse_schedule(ss, lines);
  const std::vector<PulseLine> back = read_pulse_schedule(ss);
  ASSERT_EQ(back.size(), lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    EXPECT_EQ(back[i].mode, lines[i].mode);
    EXPECT_EQ(back[i].duration, lines[i].duration);
    EXPECT_EQ(back[i].theta, lines[i].theta);
  }
  const Trajectory a = run_pulse_schedule(back);
  const Trajectory b = evolve_square_wave(sys, d.spec, 5 * d.spec.Ts, 1);
  EXPECT_LT((a.states.back() - b.states.back()).cwiseAbs().maxCoeff(), 1e-12);
}

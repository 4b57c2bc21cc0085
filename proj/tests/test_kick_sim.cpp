#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kicked/csv.hpp"
#include "kicked/error.hpp"
#include "kicked/kick_sim.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/propagators.hpp"
#include "kicked/three_level.hpp"
#include "kicked/two_level.hpp"

using namespace kicked;
constexpr double kPi = std::numbers::pi;

namespace {

double max_p2(const Trajectory& tr) {
  double m = 0.0;
  for (const auto& p : tr.populations) m = std::max(m, p(1));
  return m;
}

// Mean validity deviation over n evenly spaced kick detunings in (lo, lo + width).
double window_mean(const TwoLevelParams& sys, double period, double lo, double width, int n) {
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const KickParams2 kick{period, {lo + width * (j + 0.5) / n, 1, 0}};
    sum += validity_deviation(sys, kick, validity_horizon(sys, kick), period / 20);
  }
  return sum / n;
}

}  // namespace

TEST(KickSim, FreeEvolutionStaysFrozenInLargeDetuning) {
  const TwoLevelParams sys{40, 1, 0};
  const KickSchedule schedule{0.05, {Segment::free_for(50.0)}};
  const Trajectory tr = evolve(sys, Impulse2{}, schedule, 20);
  const double bound = std::pow(sys.omega1 / sys.energy(), 2);
  EXPECT_LE(max_p2(tr), bound + 1e-12);
}

TEST(KickSim, TimesIncreaseAndNormIsKept) {
  const TwoLevelParams sys{35, 1, 0};
  const KickSchedule schedule{0.0506, {Segment::free_for(0.3), Segment::kicked_for(7, 0.0506), Segment::free_for(0.11)}};
  const Trajectory tr = evolve(sys, Impulse2{35, 4, 0}, schedule, 20);
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
  for (const auto& p : tr.populations) EXPECT_NEAR(p.sum(), 1.0, 1e-9);
  EXPECT_NEAR(tr.times.back(), schedule.total_time(), 1e-12);
  EXPECT_EQ(schedule.total_kicks(), 7);
}

TEST(KickSim, StroboscopicSamplesMatchMatrixPower) {
  const TwoLevelParams sys{20, 1, 0.3};
  const KickParams2 kick{0.1359, {20, 5, 0.1}};
  const int n = 30;
  const Trajectory tr = evolve(sys, kick.impulse, {kick.period, {Segment::kicked_for(n, kick.period)}}, 7);
  const Eigen::Matrix2cd u = one_period_propagator(sys, kick);
  Eigen::VectorXcd psi = basis_state(2, 0);
  for (int k = 1; k <= n; ++k) {
    psi = u * psi;
    EXPECT_LT((tr.states[static_cast<std::size_t>(7 * k)] - psi).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(KickSim, SplittingKickedSegmentIsAssociative) {
  const ThreeLevelParams sys{60, 40, 1, 2, 0, 0};
  const Impulse3 impulse{60, 40, 1.5, 2, 0, 0};
  const double t = 0.0424;
  const Trajectory whole = evolve(sys, impulse, {t, {Segment::kicked_for(40, t)}}, 5);
  const Trajectory split = evolve(sys, impulse, {t, {Segment::kicked_for(20, t), Segment::kicked_for(20, t)}}, 5);
  EXPECT_LT((whole.states.back() - split.states.back()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KickSim, FreeSegmentChangeIsBounded) {
  const TwoLevelParams sys{25, 1, 0};
  const KickParams2 kick{0.05, {25, 4, 0}};
  const Trajectory tr = evolve(sys, kick.impulse,
                               {kick.period, {Segment::kicked_for(10, kick.period), Segment::free_for(20.0)}}, 20);
  const double bound = 4 * std::pow(sys.omega1 / sys.energy(), 2);
  const double start = tr.populations[200](1);
  for (std::size_t i = 200; i < tr.size(); ++i) EXPECT_LE(std::abs(tr.populations[i](1) - start), bound);
}

TEST(KickSim, ScheduleValidation) {
  const TwoLevelParams sys{1, 1, 0};
  EXPECT_THROW(evolve(sys, Impulse2{}, {0.1, {Segment{SegmentMode::kicked, 0.25}}}, 10), Error);
  EXPECT_THROW(evolve(sys, Impulse2{}, {0.1, {Segment::free_for(-1.0)}}, 10), Error);
  EXPECT_THROW(evolve(sys, Impulse2{}, {0.1, {Segment::free_for(1.0)}}, 0), Error);
}

TEST(KickSim, EvolveConstantMatchesExponential) {
  const Eigen::Matrix2cd h = two_level_hamiltonian(0, 1, 0);
  const Trajectory tr = evolve_constant(h, kPi / 2, kPi / 200, basis_state(2, 0));
  EXPECT_NEAR(tr.populations.back()(1), 1.0, 1e-12);
}

TEST(KickSim, StroboscopicDeviationVanishes) {
  const TwoLevelParams sys{40, 1, 0};
  for (double d : {5.0, 20.0, 40.0}) {
    const KickParams2 kick{0.05, {d, 1, 0}};
    EXPECT_LT(validity_deviation(sys, kick, validity_horizon(sys, kick), kick.period), 1e-8);
  }
}

TEST(KickSim, DeviationRequiresDividingStep) {
  EXPECT_THROW(validity_deviation({40, 1, 0}, {0.05, {1, 1, 0}}, 1.0, 0.03), Error);
}

TEST(KickSim, DeviationWindowsDecreaseWithKickDetuning) {
  const TwoLevelParams sys{40, 1, 0};
  std::vector<double> means;
  for (int w = 0; w < 5; ++w) means.push_back(window_mean(sys, 0.05, 8.0 * w, 8.0, 8));
  for (int w = 1; w < 5; ++w) EXPECT_LT(means[w], means[w - 1]) << w;
  EXPECT_NEAR(means[0], 0.29792, 1e-4);
  EXPECT_NEAR(means[4], 0.0025425, 1e-6);
}

TEST(KickSim, HighDeviationGoldenPoint) {
  std::ifstream in(std::string(KICKED_GOLDEN_DIR) + "/validity_high_point.csv");
  ASSERT_TRUE(in);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  std::vector<double> v;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) v.push_back(parse_double(cell));
  ASSERT_EQ(v.size(), 10u);
  const TwoLevelParams sys{v[0], v[1], v[2]};
  const KickParams2 kick{v[3], {v[4], v[5], v[6]}};
  EXPECT_GE(kick.impulse.omega, kick.impulse.delta);
  const double p2d = validity_deviation(sys, kick, v[8], v[7]);
  EXPECT_GT(p2d, 0.1);
  EXPECT_NEAR(p2d, v[9], 1e-9);
}

TEST(KickSim, EffectivePulseNumber) {
  EXPECT_NEAR(n_eff(kPi / (2 * 0.3), 0.3), 1.0, 1e-15);
  EXPECT_NEAR(n_eff(2.0, 0.2), 2 * n_eff(2.0, 0.4), 1e-12);
  try {
    n_eff(0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FrozenDynamics);
  }
}

TEST(KickSim, InversionTwelveKicks) {
  const InversionResult r = population_inversion({35, 1, 0}, {0.0506, {35, 4, 0}}, 2.0, 4.0, 20);
  EXPECT_NEAR(r.n_eff, 12.0, 0.5);
  EXPECT_NEAR(r.n_eff, 11.995, 1e-3);
  EXPECT_EQ(r.kicks, 12);
  EXPECT_GT(r.final_p2, 0.95);
  EXPECT_LT(r.residual_oscillation, 0.05);
}

TEST(KickSim, InversionFourKicksLeavesVisibleOscillation) {
  const InversionResult r = population_inversion({20, 1, 0}, {0.1359, {20, 5, 0}}, 2.0, 4.0, 20);
  EXPECT_EQ(r.kicks, 4);
  EXPECT_GT(r.final_p2, 0.9);
  const InversionResult b = population_inversion({35, 1, 0}, {0.0506, {35, 4, 0}}, 2.0, 4.0, 20);
  EXPECT_GT(r.residual_oscillation, 2 * b.residual_oscillation);
}

TEST(KickSim, SelectiveTransitionToIntermediateState) {
  const ThreeLevelParams sys{60, 40, 1, 2, 0, 0};
  const Impulse3 kick{60, 40, 1.5, 2, 0, 0};
  const SelectiveTransition r = selective_transition(sys, kick, 0.0424, 0.104, TargetState::state2, 0.9);
  double p2 = 0.0, p3 = 0.0;
  for (const auto& p : r.trajectory.populations) {
    p2 = std::max(p2, p(1));
    p3 = std::max(p3, p(2));
  }
  EXPECT_GT(p2, 0.9);
  EXPECT_LT(p3, 0.1);
  EXPECT_GT(r.kicks, 0);
}

TEST(KickSim, SelectiveTransitionToUpperState) {
  const ThreeLevelParams sys{60, 40, 1, 2, 0, 0};
  const Impulse3 kick{60, 40, 1.5, 2, 0, 0};
  const SelectiveTransition r = selective_transition(sys, kick, 0.0424, 0.104, TargetState::state3, 0.9);
  double p2 = 0.0, p3 = 0.0;
  for (const auto& p : r.trajectory.populations) {
    p2 = std::max(p2, p(1));
    p3 = std::max(p3, p(2));
  }
  EXPECT_GT(p3, 0.9);
  EXPECT_LT(p2, 0.1);
}

TEST(KickSim, SelectiveTransitionZeroGoalIsFrozen) {
  const ThreeLevelParams sys{60, 40, 1, 2, 0, 0};
  const SelectiveTransition r =
      selective_transition(sys, {60, 40, 1.5, 2, 0, 0}, 0.0424, 0.104, TargetState::state2, 0.0);
  EXPECT_EQ(r.kicks, 0);
  EXPECT_EQ(r.schedule.total_kicks(), 0);
  for (const auto& p : r.trajectory.populations) EXPECT_GT(p(0), 0.99);
}

TEST(KickSim, SelectiveTransitionBudget) {
  const ThreeLevelParams sys{60, 40, 1, 2, 0, 0};
  TransitionOptions opts;
  opts.max_kicks = 10;
  try {
    selective_transition(sys, {60, 40, 1.5, 2, 0, 0}, 0.0424, 0.104, TargetState::state3, 0.9, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
}

TEST(KickSim, TrajectoryCsvRoundTrip) {
  const Trajectory tr = evolve(TwoLevelParams{3, 1, 0.2}, Impulse2{1, 2, 0.5},
                               {0.1, {Segment::kicked_for(5, 0.1)}}, 3);
  std::stringstream ss;
  write_trajectory_csv(ss, tr);
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  EXPECT_EQ(header, "t,P1,P2,re_a1,im_a1,re_a2,im_a2");
  const Trajectory back = read_trajectory_csv(ss);
  ASSERT_EQ(back.size(), tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_EQ(back.times[i], tr.times[i]);
    EXPECT_EQ(back.states[i], tr.states[i]);
    EXPECT_EQ(back.populations[i], tr.populations[i]);
  }
}

TEST(KickSim, NumberFormattingRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) EXPECT_EQ(parse_double(format_double(x)), x);
  EXPECT_THROW(parse_double("1.0x"), Error);
}

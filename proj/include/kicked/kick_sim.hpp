#ifndef KICKED_KICK_SIM_HPP
#define KICKED_KICK_SIM_HPP

// Time-resolved kicked evolution, the population-deviation validity metric and
// the add/remove-kicks protocols built on it.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "kicked/params.hpp"

namespace kicked {

enum class SegmentMode { free, kicked };

struct Segment {
  SegmentMode mode = SegmentMode::free;
  double duration = 0.0;  // absolute time; kicked segments span whole periods

  static Segment free_for(double time) { return {SegmentMode::free, time}; }
  static Segment kicked_for(int periods, double period) {
    return {SegmentMode::kicked, periods * period};
  }
};

struct KickSchedule {
  double period = 0.0;
  std::vector<Segment> segments;

  double total_time() const;
  int total_kicks() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  std::vector<Eigen::VectorXd> populations;

  std::size_t size() const { return times.size(); }
  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
  void push(double t, const Eigen::VectorXcd& psi);
};

Eigen::VectorXcd basis_state(int dim, int level);

// Free evolution under h; at the end of every period inside a kicked segment
// the impulse map exp(-i m) acts, and the sample at that instant holds the
// post-kick state. Samples are taken every period / samples_per_period.
Trajectory evolve(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& m, const KickSchedule& schedule,
                  int samples_per_period, const Eigen::VectorXcd& psi0);

Trajectory evolve(const TwoLevelParams& sys, const Impulse2& impulse, const KickSchedule& schedule,
                  int samples_per_period);
Trajectory evolve(const ThreeLevelParams& sys, const Impulse3& impulse, const KickSchedule& schedule,
                  int samples_per_period);

// Time evolution under a constant Hamiltonian sampled every dt up to horizon.
Trajectory evolve_constant(const Eigen::MatrixXcd& h, double horizon, double dt,
                           const Eigen::VectorXcd& psi0);

// Horizon for the validity metric: ten effective Rabi periods, at least 1000
// and at most 20000 kick periods.
double validity_horizon(const TwoLevelParams& sys, const KickParams2& kick);

// max_t |P2 kicked - P2 effective| from |1>, sampled every dt on whole periods.
// dt must divide the period.
double validity_deviation(const TwoLevelParams& sys, const KickParams2& kick, double horizon, double dt);

double n_eff(double omega_eff, double period);

struct InversionResult {
  KickSchedule schedule;
  Trajectory trajectory;
  double n_eff = 0.0;
  int kicks = 0;
  double final_p2 = 0.0;
  // Peak-to-peak P2 over the free segment after the kicks are removed.
  double residual_oscillation = 0.0;
};

// free -> kicked(N) -> free starting from |1>; N = round(N_eff) unless given.
InversionResult population_inversion(const TwoLevelParams& sys, const KickParams2& kick,
                                     double free_before, double free_after, int samples_per_period,
                                     int kicks = -1);

enum class TargetState { state2, state3 };

struct TransitionOptions {
  double free_before = 1.0;
  double free_after = 1.0;
  int samples_per_period = 20;
  int max_kicks = 20000;
};

struct SelectiveTransition {
  KickSchedule schedule;
  Trajectory trajectory;
  double period = 0.0;
  int kicks = 0;
};

// Kicks at the one-photon (state2) or two-photon (state3) period until the
// target population first reaches amplitude_goal, then removes them.
SelectiveTransition selective_transition(const ThreeLevelParams& sys, const Impulse3& impulse,
                                         double period_one_photon, double period_two_photon,
                                         TargetState target, double amplitude_goal,
                                         const TransitionOptions& options = {});

}  // namespace kicked

#endif  // KICKED_KICK_SIM_HPP

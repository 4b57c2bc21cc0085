#ifndef KICKED_SQUAREWAVE_HPP
#define KICKED_SQUAREWAVE_HPP

// Replacement of each delta kick by a finite square segment with the same
// propagator up to a global phase.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

#include "kicked/kick_sim.hpp"
#include "kicked/params.hpp"
#include "kicked/two_level.hpp"

namespace kicked {

// A replacement segment: exp(-i H_seg duration) equals exp(-i M) up to phase.
// On the branch 1 - 2 k pi / E1' < 0 the segment Hamiltonian is the
// sign-reversed traceless part of M (delta -> -delta, theta -> theta + pi).
struct SquareSegment {
  int k = 0;
  double duration = 0.0;
  Impulse2 hamiltonian;
};

struct SquareWaveSpec {
  double T = 0.0;
  double Tprime = 0.0;
  double Ts = 0.0;
  int branch_k = 0;
  Impulse2 segment;
};

// Segment durations |1 - 2 k pi / E1'| for k in [k_min, k_max], verified
// against exp(-i M) and sorted ascending.
std::vector<SquareSegment> square_duration(const Impulse2& impulse, int k_min, int k_max);

struct GeneralDuration {
  Eigen::MatrixXcd hamiltonian;
  Eigen::VectorXd energies;         // eigenvalues of M, ascending
  Eigen::VectorXd scaled_energies;  // (E_n - 2 k_n pi) / T'
};

// Replacement Hamiltonian sum_n scaled_n |E_n><E_n| with one integer k_n per
// eigenvalue of M (ascending order).
GeneralDuration general_durations(const Eigen::MatrixXcd& m, const std::vector<int>& k, double tprime);

double square_effective_coupling(double T, double Tprime, double omega_eff);

// Smallest k with T' <= T if any, else the shortest segment.
SquareWaveSpec choose_branch(double T, const std::vector<SquareSegment>& candidates);

struct SquareWaveDesign {
  TwoLevelParams sys;
  Impulse2 impulse;
  SquareWaveSpec spec;
  double omega_eff = 0.0;         // under delta kicks at the first resonance period
  double omega_eff_square = 0.0;  // (T / Ts) omega_eff
};

SquareWaveDesign design_square_wave(const TwoLevelParams& sys, const Impulse2& impulse, int k_max = 64);

// exp(-i H_seg T') exp(-i H1 T).
Eigen::Matrix2cd square_period_propagator(const TwoLevelParams& sys, const SquareWaveSpec& spec);

// Effective Hamiltonian of one square-wave period Ts.
EffectiveHamiltonian2 square_effective(const TwoLevelParams& sys, const SquareWaveSpec& spec);

// Square-wave populations from |1> sampled per segment.
Trajectory evolve_square_wave(const TwoLevelParams& sys, const SquareWaveSpec& spec, double horizon,
                              int samples_per_segment);

struct PulseComparison {
  double deviation = 0.0;
  double omega_eff_square = 0.0;
  Trajectory square;
  std::vector<double> reference_times;  // resonance-pulse time of each square sample
  std::vector<double> reference_p2;
};

// Square wave against the resonance pulse omega1 (|1><2| + h.c.); horizon is
// in resonance-pulse time and square-wave time is rescaled by Omega'_eff/omega1.
PulseComparison compare_square_wave(const TwoLevelParams& sys, const SquareWaveSpec& spec, double horizon,
                                    int samples_per_segment);
double compare_to_resonance_pulse(const TwoLevelParams& sys, const SquareWaveSpec& spec, double horizon,
                                  int samples_per_segment = 20);

struct PulseLine {
  std::string mode;  // "static" or "segment"
  double duration = 0.0;
  double delta = 0.0;
  double omega = 0.0;
  double theta = 0.0;
};

std::vector<PulseLine> pulse_schedule(const TwoLevelParams& sys, const SquareWaveSpec& spec, int periods);
void write_pulse_schedule(std::ostream& os, const std::vector<PulseLine>& lines);
std::vector<PulseLine> read_pulse_schedule(std::istream& is);

// Piecewise-constant evolution from |1> with one sample at each line end.
Trajectory run_pulse_schedule(const std::vector<PulseLine>& lines);

}  // namespace kicked

#endif  // KICKED_SQUAREWAVE_HPP

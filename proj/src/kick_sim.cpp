#include "kicked/kick_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/propagators.hpp"
#include "kicked/three_level.hpp"
#include "kicked/two_level.hpp"

namespace kicked {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

long whole_periods(const Segment& seg, double period) {
  const double n = seg.duration / period;
  const double rounded = std::round(n);
  if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
    throw Error(Errc::InvalidParameter, "kicked segment must span a positive whole number of periods");
  }
  return static_cast<long>(rounded);
}

void check_schedule(const KickSchedule& schedule, int samples_per_period) {
  if (!(schedule.period > 0.0) || !std::isfinite(schedule.period)) {
    throw Error(Errc::InvalidParameter, "schedule period must be positive");
  }
  if (samples_per_period < 1) throw Error(Errc::InvalidParameter, "samples_per_period must be at least 1");
  for (const Segment& seg : schedule.segments) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw Error(Errc::InvalidParameter, "segment durations must be positive");
    }
    if (seg.mode == SegmentMode::kicked) whole_periods(seg, schedule.period);
  }
}

template <int Dim>
Trajectory evolve_fixed(const Eigen::MatrixXcd& h_in, const Eigen::MatrixXcd& m_in,
                        const KickSchedule& schedule, int samples_per_period,
                        const Eigen::VectorXcd& psi0) {
  using Mat = Eigen::Matrix<cd, Dim, Dim>;
  using Vec = Eigen::Matrix<cd, Dim, 1>;
  const Mat h = h_in;
  const double period = schedule.period;
  const double dt = period / samples_per_period;
  const Mat step = expm_hermitian(h, dt);
  const Mat kick = expm_hermitian(Mat(m_in), 1.0);

  Trajectory tr;
  Vec psi = psi0;
  double start = 0.0;
  tr.push(start, psi);
  for (const Segment& seg : schedule.segments) {
    if (seg.mode == SegmentMode::kicked) {
      const long n = whole_periods(seg, period);
      for (long p = 0; p < n; ++p) {
        for (int s = 1; s <= samples_per_period; ++s) {
          psi = step * psi;
          if (s == samples_per_period) psi = kick * psi;
          tr.push(start + (static_cast<double>(p) + static_cast<double>(s) / samples_per_period) * period, psi);
        }
      }
      start += static_cast<double>(n) * period;
    } else {
      const long full = static_cast<long>(std::floor(seg.duration / dt * (1.0 + 1e-12)));
      for (long s = 1; s <= full; ++s) {
        psi = step * psi;
        tr.push(start + static_cast<double>(s) * dt, psi);
      }
      const double rest = seg.duration - static_cast<double>(full) * dt;
      if (rest > 1e-12 * seg.duration) {
        psi = expm_hermitian(h, rest) * psi;
        tr.push(start + seg.duration, psi);
      }
      start += seg.duration;
    }
  }
  return tr;
}

}  // namespace

double KickSchedule::total_time() const {
  double t = 0.0;
  for (const Segment& seg : segments) t += seg.duration;
  return t;
}

int KickSchedule::total_kicks() const {
  long n = 0;
  for (const Segment& seg : segments) {
    if (seg.mode == SegmentMode::kicked) n += whole_periods(seg, period);
  }
  return static_cast<int>(n);
}

void Trajectory::push(double t, const Eigen::VectorXcd& psi) {
  times.push_back(t);
  states.push_back(psi);
  populations.push_back(psi.cwiseAbs2());
}

Eigen::VectorXcd basis_state(int dim, int level) {
  if (level < 0 || level >= dim) throw Error(Errc::InvalidParameter, "basis_state: level out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(level) = 1.0;
  return v;
}

Trajectory evolve(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& m, const KickSchedule& schedule,
                  int samples_per_period, const Eigen::VectorXcd& psi0) {
  check_schedule(schedule, samples_per_period);
  const auto dim = h.rows();
  if (h.cols() != dim || m.rows() != dim || m.cols() != dim || psi0.size() != dim) {
    throw Error(Errc::InvalidMatrix, "evolve: dimension mismatch");
  }
  if (dim == 2) return evolve_fixed<2>(h, m, schedule, samples_per_period, psi0);
  if (dim == 3) return evolve_fixed<3>(h, m, schedule, samples_per_period, psi0);
  throw Error(Errc::InvalidMatrix, "evolve: dimension must be 2 or 3");
}

Trajectory evolve(const TwoLevelParams& sys, const Impulse2& impulse, const KickSchedule& schedule,
                  int samples_per_period) {
  validate(sys);
  validate(impulse);
  return evolve(hamiltonian(sys), impulse_matrix(impulse), schedule, samples_per_period, basis_state(2, 0));
}

Trajectory evolve(const ThreeLevelParams& sys, const Impulse3& impulse, const KickSchedule& schedule,
                  int samples_per_period) {
  validate(sys);
  validate(impulse);
  return evolve(hamiltonian(sys), impulse_matrix(impulse), schedule, samples_per_period, basis_state(3, 0));
}

Trajectory evolve_constant(const Eigen::MatrixXcd& h, double horizon, double dt, const Eigen::VectorXcd& psi0) {
  if (!(dt > 0.0) || !(horizon >= 0.0)) throw Error(Errc::InvalidParameter, "evolve_constant: bad time grid");
  const Eigen::MatrixXcd step = expm_hermitian(h, dt);
  const long n = static_cast<long>(std::ceil(horizon / dt - 1e-9));
  Trajectory tr;
  Eigen::VectorXcd psi = psi0;
  tr.push(0.0, psi);
  for (long k = 1; k <= n; ++k) {
    psi = step * psi;
    tr.push(static_cast<double>(k) * dt, psi);
  }
  return tr;
}

double validity_horizon(const TwoLevelParams& sys, const KickParams2& kick) {
  const EffectiveHamiltonian2 eff = effective_hamiltonian(sys, kick);
  const double energy = std::sqrt(eff.omega_eff * eff.omega_eff + eff.delta_eff * eff.delta_eff / 4.0);
  double horizon = 1000.0 * kick.period;
  if (eff.omega_eff > 0.0) horizon = std::max(horizon, 10.0 * kPi / energy);
  return std::min(horizon, 20000.0 * kick.period);
}

double validity_deviation(const TwoLevelParams& sys, const KickParams2& kick, double horizon, double dt) {
  validate(sys);
  validate(kick);
  const double period = kick.period;
  const long samples = std::lround(period / dt);
  if (!(dt > 0.0) || samples < 1 || std::abs(samples * dt - period) > 1e-9 * period) {
    throw Error(Errc::InvalidParameter, "validity_deviation: dt must divide the period");
  }
  const EffectiveHamiltonian2 eff = effective_hamiltonian(sys, kick);
  const Eigen::Matrix2cd step = expm_hermitian(hamiltonian(sys), dt);
  const Eigen::Matrix2cd kick_map = expm_hermitian(impulse_matrix(kick.impulse), 1.0);
  const Eigen::Matrix2cd step_eff = expm_hermitian(eff.matrix(), dt);
  const long periods = static_cast<long>(std::ceil(horizon / period - 1e-9));

  Eigen::Vector2cd psi(1.0, 0.0);
  Eigen::Vector2cd psi_eff(1.0, 0.0);
  double worst = 0.0;
  for (long n = 0; n < periods; ++n) {
    for (long s = 1; s <= samples; ++s) {
      psi = step * psi;
      if (s == samples) psi = kick_map * psi;
      psi_eff = step_eff * psi_eff;
      worst = std::max(worst, std::abs(std::norm(psi(1)) - std::norm(psi_eff(1))));
    }
  }
  return worst;
}

double n_eff(double omega_eff, double period) {
  if (!(period > 0.0)) throw Error(Errc::InvalidParameter, "n_eff: period must be positive");
  if (!(omega_eff > 0.0)) throw Error(Errc::FrozenDynamics, "n_eff: effective coupling vanishes");
  return kPi / (2.0 * omega_eff * period);
}

InversionResult population_inversion(const TwoLevelParams& sys, const KickParams2& kick,
                                     double free_before, double free_after, int samples_per_period,
                                     int kicks) {
  validate(sys);
  validate(kick);
  InversionResult out;
  const EffectiveHamiltonian2 eff = effective_hamiltonian(sys, kick);
  out.n_eff = n_eff(eff.omega_eff, kick.period);
  out.kicks = kicks >= 0 ? kicks : static_cast<int>(std::lround(out.n_eff));
  out.schedule.period = kick.period;
  if (free_before > 0.0) out.schedule.segments.push_back(Segment::free_for(free_before));
  if (out.kicks > 0) out.schedule.segments.push_back(Segment::kicked_for(out.kicks, kick.period));
  if (free_after > 0.0) out.schedule.segments.push_back(Segment::free_for(free_after));
  out.trajectory = evolve(sys, kick.impulse, out.schedule, samples_per_period);

  const auto& tr = out.trajectory;
  out.final_p2 = tr.populations.back()(1);
  const double removal = out.schedule.total_time() - std::max(free_after, 0.0);
  double lo = 1.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.times[i] < removal - 1e-12) continue;
    lo = std::min(lo, tr.populations[i](1));
    hi = std::max(hi, tr.populations[i](1));
  }
  out.residual_oscillation = hi >= lo ? hi - lo : 0.0;
  return out;
}

SelectiveTransition selective_transition(const ThreeLevelParams& sys, const Impulse3& impulse,
                                         double period_one_photon, double period_two_photon,
                                         TargetState target, double amplitude_goal,
                                         const TransitionOptions& options) {
  validate(sys);
  validate(impulse);
  if (!(amplitude_goal >= 0.0 && amplitude_goal <= 1.0)) {
    throw Error(Errc::InvalidParameter, "selective_transition: amplitude goal must lie in [0, 1]");
  }
  SelectiveTransition out;
  out.period = target == TargetState::state2 ? period_one_photon : period_two_photon;
  if (!(out.period > 0.0)) throw Error(Errc::InvalidParameter, "selective_transition: period must be positive");
  const int level = target == TargetState::state2 ? 1 : 2;

  const Eigen::Matrix3cd h = hamiltonian(sys);
  Eigen::Vector3cd psi(1.0, 0.0, 0.0);
  if (options.free_before > 0.0) psi = expm_hermitian(h, options.free_before) * psi;
  const Eigen::Matrix3cd cycle = one_period_propagator(sys, KickParams3{out.period, impulse});
  int kicks = 0;
  while (std::norm(psi(level)) < amplitude_goal) {
    if (kicks >= options.max_kicks) {
      throw Error(Errc::BudgetExceeded, "selective_transition: amplitude goal not reached within the kick budget");
    }
    psi = cycle * psi;
    ++kicks;
  }
  out.kicks = kicks;
  out.schedule.period = out.period;
  if (options.free_before > 0.0) out.schedule.segments.push_back(Segment::free_for(options.free_before));
  if (kicks > 0) out.schedule.segments.push_back(Segment::kicked_for(kicks, out.period));
  if (options.free_after > 0.0) out.schedule.segments.push_back(Segment::free_for(options.free_after));
  out.trajectory = evolve(sys, impulse, out.schedule, options.samples_per_period);
  return out;
}

}  // namespace kicked

#include "kicked/squarewave.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "kicked/csv.hpp"
#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/propagators.hpp"

namespace kicked {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<SquareSegment> square_duration(const Impulse2& impulse, int k_min, int k_max) {
  validate(impulse);
  const double energy = impulse.energy();
  if (energy == 0.0) throw Error(Errc::DegenerateImpulse, "square_duration: impulse energy is zero");
  if (k_min > k_max) throw Error(Errc::InvalidParameter, "square_duration: empty k range");
  const Eigen::Matrix2cd target = expm_hermitian(impulse_matrix(impulse), 1.0);
  const Impulse2 reversed{-impulse.delta, impulse.omega, detail::wrap_phase(impulse.theta + kPi)};

  std::vector<SquareSegment> out;
  for (int k = k_min; k <= k_max; ++k) {
    const double v = 1.0 - 2.0 * k * kPi / energy;
    if (std::abs(v) < 1e-12) continue;
    SquareSegment seg{k, std::abs(v), v > 0.0 ? impulse : reversed};
    const Eigen::Matrix2cd u = expm_hermitian(impulse_matrix(seg.hamiltonian), seg.duration);
    if (distance_mod_phase(u, target) < 1e-10) out.push_back(seg);
  }
  std::sort(out.begin(), out.end(), [](const SquareSegment& a, const SquareSegment& b) {
    return a.duration != b.duration ? a.duration < b.duration : a.k < b.k;
  });
  return out;
}

GeneralDuration general_durations(const Eigen::MatrixXcd& m, const std::vector<int>& k, double tprime) {
  if (!(tprime > 0.0) || !std::isfinite(tprime)) {
    throw Error(Errc::InvalidDuration, "general_durations: duration must be positive");
  }
  if (!is_hermitian(m)) throw Error(Errc::InvalidMatrix, "general_durations: matrix is not hermitian");
  if (static_cast<Eigen::Index>(k.size()) != m.rows()) {
    throw Error(Errc::InvalidParameter, "general_durations: need one integer per eigenvalue");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  GeneralDuration out;
  out.energies = es.eigenvalues();
  out.scaled_energies.resize(m.rows());
  for (Eigen::Index n = 0; n < m.rows(); ++n) {
    out.scaled_energies(n) = (out.energies(n) - 2.0 * kPi * k[n]) / tprime;
  }
  out.hamiltonian = es.eigenvectors() * out.scaled_energies.cast<std::complex<double>>().asDiagonal() *
                    es.eigenvectors().adjoint();
  return out;
}

double square_effective_coupling(double T, double Tprime, double omega_eff) {
  if (!(T > 0.0) || !(Tprime > 0.0)) {
    throw Error(Errc::InvalidParameter, "square_effective_coupling: durations must be positive");
  }
  return T / (T + Tprime) * omega_eff;
}

SquareWaveSpec choose_branch(double T, const std::vector<SquareSegment>& candidates) {
  if (candidates.empty()) throw Error(Errc::NoSolution, "choose_branch: no replacement segment");
  const SquareSegment* best = nullptr;
  for (const SquareSegment& c : candidates) {
    if (c.duration <= T && (!best || std::abs(c.k) < std::abs(best->k))) best = &c;
  }
  if (!best) best = &candidates.front();
  return {T, best->duration, T + best->duration, best->k, best->hamiltonian};
}

SquareWaveDesign design_square_wave(const TwoLevelParams& sys, const Impulse2& impulse, int k_max) {
  SquareWaveDesign d;
  d.sys = sys;
  d.impulse = impulse;
  const ResonantCoupling rc = first_resonance(sys, impulse);
  d.spec = choose_branch(rc.period, square_duration(impulse, 0, k_max));
  d.omega_eff = rc.eff.omega_eff;
  d.omega_eff_square = square_effective_coupling(d.spec.T, d.spec.Tprime, d.omega_eff);
  return d;
}

Eigen::Matrix2cd square_period_propagator(const TwoLevelParams& sys, const SquareWaveSpec& spec) {
  return expm_hermitian(impulse_matrix(spec.segment), spec.Tprime) * expm_hermitian(hamiltonian(sys), spec.T);
}

EffectiveHamiltonian2 square_effective(const TwoLevelParams& sys, const SquareWaveSpec& spec) {
  return effective_from_su2(su2_parameters(square_period_propagator(sys, spec)), spec.Ts);
}

Trajectory evolve_square_wave(const TwoLevelParams& sys, const SquareWaveSpec& spec, double horizon,
                              int samples_per_segment) {
  if (samples_per_segment < 1) throw Error(Errc::InvalidParameter, "samples_per_segment must be at least 1");
  if (!(spec.T > 0.0) || !(spec.Tprime >= 0.0)) throw Error(Errc::InvalidParameter, "square wave durations invalid");
  const double ts = spec.T + spec.Tprime;
  const Eigen::Matrix2cd step_static = expm_hermitian(hamiltonian(sys), spec.T / samples_per_segment);
  const Eigen::Matrix2cd step_segment =
      expm_hermitian(impulse_matrix(spec.segment), spec.Tprime / samples_per_segment);
  const long periods = static_cast<long>(std::ceil(horizon / ts - 1e-9));
  Trajectory tr;
  Eigen::VectorXcd psi = basis_state(2, 0);
  tr.push(0.0, psi);
  for (long n = 0; n < periods; ++n) {
    const double base = static_cast<double>(n) * ts;
    for (int s = 1; s <= samples_per_segment; ++s) {
      psi = step_static * psi;
      tr.push(base + spec.T * s / samples_per_segment, psi);
    }
    if (spec.Tprime == 0.0) continue;
    for (int s = 1; s <= samples_per_segment; ++s) {
      psi = step_segment * psi;
      tr.push(base + spec.T + spec.Tprime * s / samples_per_segment, psi);
    }
  }
  return tr;
}

PulseComparison compare_square_wave(const TwoLevelParams& sys, const SquareWaveSpec& spec, double horizon,
                                    int samples_per_segment) {
  validate(sys);
  PulseComparison out;
  out.omega_eff_square = square_effective(sys, spec).omega_eff;
  if (!(out.omega_eff_square > 0.0)) {
    throw Error(Errc::FrozenDynamics, "compare_square_wave: square wave has no effective coupling");
  }
  const double scale = out.omega_eff_square / sys.omega1;
  out.square = evolve_square_wave(sys, spec, horizon / scale, samples_per_segment);
  for (std::size_t i = 0; i < out.square.size(); ++i) {
    const double t_ref = out.square.times[i] * scale;
    const double s = std::sin(sys.omega1 * t_ref);
    const double p2 = s * s;
    out.reference_times.push_back(t_ref);
    out.reference_p2.push_back(p2);
    const auto& pop = out.square.populations[i];
    out.deviation = std::max({out.deviation, std::abs(pop(0) - (1.0 - p2)), std::abs(pop(1) - p2)});
  }
  return out;
}

double compare_to_resonance_pulse(const TwoLevelParams& sys, const SquareWaveSpec& spec, double horizon,
                                  int samples_per_segment) {
  return compare_square_wave(sys, spec, horizon, samples_per_segment).deviation;
}

std::vector<PulseLine> pulse_schedule(const TwoLevelParams& sys, const SquareWaveSpec& spec, int periods) {
  std::vector<PulseLine> out;
  for (int n = 0; n < periods; ++n) {
    out.push_back({"static", spec.T, sys.delta1, sys.omega1, sys.theta1});
    if (spec.Tprime > 0.0) {
      out.push_back({"segment", spec.Tprime, spec.segment.delta, spec.segment.omega, spec.segment.theta});
    }
  }
  return out;
}

void write_pulse_schedule(std::ostream& os, const std::vector<PulseLine>& lines) {
  os << "# mode, duration, delta, omega, theta\n";
  for (const PulseLine& l : lines) {
    os << l.mode << ", " << format_double(l.duration) << ", " << format_double(l.delta) << ", "
       << format_double(l.omega) << ", " << format_double(l.theta) << '\n';
  }
}

std::vector<PulseLine> read_pulse_schedule(std::istream& is) {
  std::vector<PulseLine> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.emplace_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 5) throw Error(Errc::InvalidParameter, "pulse schedule: expected 5 fields per line");
    std::string mode = fields[0];
    mode.erase(0, mode.find_first_not_of(' '));
    mode.erase(mode.find_last_not_of(" \r") + 1);
    out.push_back({mode, parse_double(fields[1]), parse_double(fields[2]), parse_double(fields[3]),
                   parse_double(fields[4])});
  }
  return out;
}

Trajectory run_pulse_schedule(const std::vector<PulseLine>& lines) {
  Trajectory tr;
  Eigen::VectorXcd psi = basis_state(2, 0);
  double t = 0.0;
  tr.push(t, psi);
  for (const PulseLine& l : lines) {
    if (!(l.duration > 0.0)) throw Error(Errc::InvalidDuration, "pulse schedule: durations must be positive");
    const Eigen::Matrix2cd u = expm_hermitian(two_level_hamiltonian(l.delta, l.omega, l.theta), l.duration);
    psi = u * psi;
    t += l.duration;
    tr.push(t, psi);
  }
  return tr;
}

}  // namespace kicked

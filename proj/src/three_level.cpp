#include "kicked/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/parallel.hpp"
#include "kicked/propagators.hpp"

namespace kicked {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cd kI(0.0, 1.0);

// Read g1..g9 (index 0..8) off a layout matrix.
std::array<double, 9> read_layout(const Eigen::Matrix3cd& m) {
  return {m(0, 0).real(), m(0, 0).imag(), m(1, 0).real(), m(1, 0).imag(), m(0, 2).real(),
          -m(0, 2).imag(), m(1, 1).real(), m(0, 1).real(), m(0, 1).imag()};
}

Eigen::Matrix3cd normalized_propagator(const ThreeLevelSpecialParams& sys, const SpecialImpulse& impulse,
                                       double period) {
  const ThreeLevelSpecialParams kick{impulse.delta, impulse.omega, impulse.theta};
  const Eigen::Matrix3cd u = propagator_three_level_special(kick, 1.0) *
                             propagator_three_level_special(sys, period);
  return std::exp(kI * (impulse.delta + sys.delta1 * period)) * u;
}

}  // namespace

double GCoefficients::g(int k, double period) const {
  if (k < 1 || k > 9) throw Error(Errc::InvalidParameter, "g index must be in 1..9");
  const auto& row = a[k - 1];
  const double x = energy * period;
  return row[0] * std::cos(x) + row[1] * std::sin(x) + row[2];
}

double GCoefficients::normalized(int k, double period) const { return g(k, period) / scale; }

Eigen::Matrix3cd GCoefficients::layout(double period) const {
  std::array<double, 9> v;
  for (int k = 1; k <= 9; ++k) v[k - 1] = normalized(k, period);
  Eigen::Matrix3cd m;
  m << cd(v[0], v[1]), cd(v[7], v[8]), cd(v[4], -v[5]),
       cd(v[2], v[3]), cd(v[6], 0.0), cd(-v[2], v[3]),
       cd(v[4], v[5]), cd(-v[7], v[8]), cd(v[0], -v[1]);
  return m;
}

GCoefficients g_coefficients(const ThreeLevelSpecialParams& sys, const SpecialImpulse& impulse) {
  validate(sys.general());
  validate(impulse.general());
  GCoefficients out;
  out.energy = sys.energy();
  const double ek = impulse.energy();
  out.scale = out.energy * out.energy * (ek > 0.0 ? ek * ek : 1.0);

  // Probe angles E1 T_i; a fresh offset is tried if the system is singular.
  for (int attempt = 0; attempt <= 5; ++attempt) {
    if (attempt == 5) throw Error(Errc::ProbeDegeneracy, "g_coefficients: probe periods collide");
    const double shift = 0.37 * attempt;
    const std::array<double, 3> angles = {0.3 + shift, 2.3 + shift, 4.4 + shift};
    Eigen::Matrix3d basis;
    for (int i = 0; i < 3; ++i) basis.row(i) << std::cos(angles[i]), std::sin(angles[i]), 1.0;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(basis);
    if (std::abs(lu.determinant()) < 1e-6) continue;

    Eigen::Matrix<double, 3, 9> samples;
    for (int i = 0; i < 3; ++i) {
      const auto g = read_layout(normalized_propagator(sys, impulse, angles[i] / out.energy));
      for (int k = 0; k < 9; ++k) samples(i, k) = g[k] * out.scale;
    }
    const Eigen::Matrix<double, 3, 9> coeffs = lu.solve(samples);
    for (int k = 0; k < 9; ++k) out.a[k] = {coeffs(0, k), coeffs(1, k), coeffs(2, k)};
    break;
  }

  // Reconstruction must reproduce the propagator away from the probes.
  for (double angle : {1.1, 3.3, 5.9}) {
    const double period = angle / out.energy;
    const double err = max_abs(out.layout(period) - normalized_propagator(sys, impulse, period));
    if (err > 1e-9) throw Error(Errc::ConsistencyViolation, "g_coefficients: reconstruction residual too large");
  }
  return out;
}

Eigen::Matrix3cd one_period_propagator(const ThreeLevelParams& sys, const KickParams3& kick) {
  return expm_hermitian(impulse_matrix(kick.impulse), 1.0) * expm_hermitian(hamiltonian(sys), kick.period);
}

ConsistencyReport consistency_check(const GCoefficients& g, double period, double tol) {
  std::array<double, 10> v{};
  for (int k = 1; k <= 9; ++k) v[k] = g.normalized(k, period);
  ConsistencyReport r;
  r.residuals = {
      v[3] + v[8],
      v[4] - v[9],
      2.0 * v[3] * v[4] * v[5] + v[6] * (v[4] * v[4] - v[3] * v[3]),
      v[1] + std::hypot(v[5], v[6]) - 1.0,
      2.0 * v[1] - v[7] - 1.0,
  };
  r.pass = std::all_of(r.residuals.begin(), r.residuals.end(),
                       [&](double x) { return std::abs(x) < tol; });
  return r;
}

std::vector<double> special_resonance_periods(const ThreeLevelSpecialParams& sys,
                                              const SpecialImpulse& impulse, int n_max) {
  if (n_max < 0) throw Error(Errc::InvalidParameter, "special_resonance_periods: n_max must be non-negative");
  std::vector<double> out;
  if (impulse.energy() == 0.0) return out;
  const GCoefficients g = g_coefficients(sys, impulse);
  // g2 = a21 cos x + a22 sin x + a23 = R cos(x - beta) + a23.
  const auto& row = g.a[1];
  const double radius = std::hypot(row[0], row[1]);
  if (radius == 0.0 || std::abs(row[2]) > radius * (1.0 + 1e-12)) return out;
  const double beta = std::atan2(row[1], row[0]);
  const double alpha = std::acos(std::clamp(-row[2] / radius, -1.0, 1.0));
  for (int n = 0; n <= n_max; ++n) {
    for (double x : {beta + alpha + 2.0 * kPi * n, beta - alpha + 2.0 * kPi * n}) {
      const double t = x / g.energy;
      if (t <= 0.0) continue;
      if (!consistency_check(g, t).pass) continue;
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }),
            out.end());
  return out;
}

Eigen::Matrix3cd EffectiveHamiltonian3::matrix() const {
  return ladder_hamiltonian(0.0, 0.0, omega_eff, omega_eff, theta_eff, theta_eff);
}

EffectiveHamiltonian3 effective_hamiltonian_special(const ThreeLevelSpecialParams& sys,
                                                    const SpecialImpulse& impulse, double period) {
  if (!(period > 0.0)) throw Error(Errc::InvalidParameter, "effective_hamiltonian_special: period must be positive");
  const GCoefficients g = g_coefficients(sys, impulse);
  const double g1 = g.normalized(1, period);
  if (g1 < -1e-10) throw Error(Errc::ConsistencyViolation, "effective_hamiltonian_special: g1 is negative");
  const double root = std::sqrt(std::max(g1, 0.0));
  if (root > 1.0 + 1e-10) throw Error(Errc::ConsistencyViolation, "effective_hamiltonian_special: sqrt(g1) exceeds one");
  EffectiveHamiltonian3 eff;
  eff.omega_eff = std::sqrt(2.0) / period * std::acos(std::min(root, 1.0));
  const double g3 = g.normalized(3, period);
  const double g4 = g.normalized(4, period);
  eff.theta_eff = (g3 == 0.0 && g4 == 0.0) ? 0.0 : detail::wrap_phase(std::atan2(-g3, -g4));
  return eff;
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::frozen: return "frozen";
    case Regime::one_photon: return "one_photon";
    case Regime::two_photon: return "two_photon";
    case Regime::full_resonance: return "full_resonance";
    case Regime::mixed: return "mixed";
  }
  return "mixed";
}

Regime classify(double p1_min, double p2_max, double p3_max) {
  if (p2_max > 0.9 && p3_max < 0.1) return Regime::one_photon;
  if (p3_max > 0.9 && p2_max < 0.1) return Regime::two_photon;
  if (p1_min < 0.05 && p2_max > 0.4 && p3_max > 0.4) return Regime::full_resonance;
  if (p1_min > 0.95) return Regime::frozen;
  return Regime::mixed;
}

std::vector<double> PeriodGrid::values() const {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw Error(Errc::InvalidParameter, "period grid needs a positive step and finite bounds");
  }
  std::vector<double> out;
  const double slack = 1e-9 * step;
  for (long i = 0;; ++i) {
    const double t = start + step * static_cast<double>(i);
    if (t > stop + slack) break;
    out.push_back(t);
  }
  return out;
}

int default_sweep_horizon(const ThreeLevelParams& sys, double period) {
  if (sys.delta1 == 0.0) return 200;
  const double guess = sys.omega1 * sys.omega2 / std::abs(sys.delta1);
  const double periods = std::ceil(1.5 * kPi / (guess * period));
  return static_cast<int>(std::clamp(periods, 200.0, 1e7));
}

SweepPoint sweep_point(const ThreeLevelParams& sys, const Impulse3& impulse, double period,
                       int horizon_periods, int samples_per_period) {
  if (!(period > 0.0)) throw Error(Errc::InvalidParameter, "sweep_point: period must be positive");
  if (samples_per_period < 1) throw Error(Errc::InvalidParameter, "sweep_point: samples_per_period must be at least 1");
  const Eigen::Matrix3cd step = expm_hermitian(hamiltonian(sys), period / samples_per_period);
  const Eigen::Matrix3cd kick = expm_hermitian(impulse_matrix(impulse), 1.0);
  if (horizon_periods <= 0) horizon_periods = default_sweep_horizon(sys, period);
  Eigen::Vector3cd psi(1.0, 0.0, 0.0);
  SweepPoint p;
  p.period = period;
  auto record = [&] {
    p.p1_min = std::min(p.p1_min, std::norm(psi(0)));
    p.p2_max = std::max(p.p2_max, std::norm(psi(1)));
    p.p3_max = std::max(p.p3_max, std::norm(psi(2)));
  };
  record();
  for (int n = 0; n < horizon_periods; ++n) {
    for (int s = 0; s < samples_per_period; ++s) {
      psi = step * psi;
      record();
    }
    psi = kick * psi;
    record();
  }
  p.p1_min = std::clamp(p.p1_min, 0.0, 1.0);
  p.p2_max = std::clamp(p.p2_max, 0.0, 1.0);
  p.p3_max = std::clamp(p.p3_max, 0.0, 1.0);
  p.regime = classify(p.p1_min, p.p2_max, p.p3_max);
  return p;
}

std::vector<SweepPoint> sweep_period(const ThreeLevelParams& sys, const Impulse3& impulse,
                                     const PeriodGrid& grid, const SweepOptions& options) {
  validate(sys);
  validate(impulse);
  const std::vector<double> periods = grid.values();
  for (double t : periods) {
    if (!(t > 0.0)) throw Error(Errc::InvalidParameter, "sweep_period: grid periods must be positive");
  }
  std::vector<SweepPoint> out(periods.size());
  parallel_for(periods.size(), options.threads, [&](std::size_t i) {
    const int horizon = options.horizon_periods > 0 ? options.horizon_periods
                                                    : default_sweep_horizon(sys, periods[i]);
    out[i] = sweep_point(sys, impulse, periods[i], horizon, options.samples_per_period);
  });
  return out;
}

}  // namespace kicked

#include "kicked/two_level.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/propagators.hpp"

namespace kicked {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Bracket sign changes of f on a uniform grid and bisect each bracket.
std::vector<double> grid_roots(const std::function<double(double)>& f, double lo, double hi,
                               long points) {
  std::vector<double> roots;
  if (!(hi > lo)) return roots;
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) roots.push_back(lo);
  for (long i = 1; i <= points; ++i) {
    const double x = (i == points) ? hi : lo + (hi - lo) * static_cast<double>(i) / points;
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (f_prev < 0.0) != (fx < 0.0)) {
      double a = x_prev;
      double b = x;
      double fa = f_prev;
      for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      if (std::abs(f(root)) < 1e-10) roots.push_back(root);
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

long grid_points(double energy_span) {
  const double per_pi = 1000.0 * energy_span / kPi;
  return static_cast<long>(std::clamp(std::ceil(per_pi), 1000.0, 1e7));
}

double kick_energy(double delta, double omega) { return std::sqrt(omega * omega + delta * delta / 4.0); }

// Range of E1' swept when one impulse parameter runs over [lo, hi].
double energy_span(double lo, double hi, double fixed, bool sweep_is_delta) {
  auto energy = [&](double x) { return sweep_is_delta ? kick_energy(x, fixed) : kick_energy(fixed, x); };
  double span = std::abs(energy(hi) - energy(lo));
  if (lo < 0.0 && hi > 0.0) span = energy(lo) + energy(hi) - 2.0 * energy(0.0);
  return span;
}

}  // namespace

Eigen::Matrix2cd FFunctions::matrix() const {
  Eigen::Matrix2cd u;
  u << cd(f1, f2), cd(f4, -f3), cd(-f4, -f3), cd(f1, -f2);
  return u;
}

Eigen::Matrix2cd EffectiveHamiltonian2::matrix() const {
  return two_level_hamiltonian(delta_eff, omega_eff, theta_eff);
}

FFunctions f_functions(const TwoLevelParams& sys, const KickParams2& kick) {
  const Impulse2& k = kick.impulse;
  const double e1 = sys.energy();
  const double ek = k.energy();
  const double ct = std::cos(e1 * kick.period);
  const double st = std::sin(e1 * kick.period);
  const double ck = std::cos(ek);
  // sin(E1')/E1', regular at a vanishing impulse.
  const double sk = detail::sinc(ek);
  const double dtheta = sys.theta1 - k.theta;
  const double w = sys.omega1;

  FFunctions f;
  f.f1 = ck * ct - (sys.delta1 * k.delta + 4.0 * w * k.omega * std::cos(dtheta)) / (4.0 * e1) * sk * st;
  f.f2 = sys.delta1 / (2.0 * e1) * ck * st + k.delta / 2.0 * sk * ct +
         w * k.omega * std::sin(dtheta) / e1 * sk * st;
  f.f3 = w * std::cos(sys.theta1) / e1 * ck * st + k.omega * std::cos(k.theta) * sk * ct +
         (sys.delta1 * k.omega * std::sin(k.theta) - k.delta * w * std::sin(sys.theta1)) / (2.0 * e1) * sk * st;
  f.f4 = w * std::sin(sys.theta1) / e1 * ck * st + k.omega * std::sin(k.theta) * sk * ct +
         (k.delta * w * std::cos(sys.theta1) - sys.delta1 * k.omega * std::cos(k.theta)) / (2.0 * e1) * sk * st;
  return f;
}

Eigen::Matrix2cd one_period_propagator(const TwoLevelParams& sys, const KickParams2& kick) {
  return expm_hermitian(impulse_matrix(kick.impulse), 1.0) * expm_hermitian(hamiltonian(sys), kick.period);
}

FFunctions su2_parameters(const Eigen::Matrix2cd& u) {
  const cd root = std::sqrt(u.determinant());
  Eigen::Matrix2cd v = u / root;
  if (v(0, 0).real() < 0.0) v = -v;
  return {v(0, 0).real(), v(0, 0).imag(), -v(0, 1).imag(), v(0, 1).real()};
}

EffectiveHamiltonian2 effective_from_su2(const FFunctions& f, double period) {
  const double a = std::abs(f.f1);
  // arccos|f1| / sqrt(1 - f1^2) written as phi / sin(phi), accurate near |f1| = 1,
  // so only an exactly scalar propagator is treated as degenerate.
  const double s = std::sqrt(f.f2 * f.f2 + f.f3 * f.f3 + f.f4 * f.f4);
  if (s == 0.0) return {};
  const double phi = std::atan2(s, a);
  const double ratio = phi / (period * s);
  EffectiveHamiltonian2 eff;
  eff.delta_eff = 2.0 * f.f2 * ratio;
  eff.omega_eff = std::hypot(f.f3, f.f4) * ratio;
  eff.theta_eff = (f.f3 == 0.0 && f.f4 == 0.0) ? 0.0 : detail::wrap_phase(std::atan2(f.f4, f.f3));
  return eff;
}

EffectiveHamiltonian2 effective_hamiltonian(const TwoLevelParams& sys, const KickParams2& kick) {
  return effective_from_su2(f_functions(sys, kick), kick.period);
}

double resonance_offset(const TwoLevelParams& sys, const Impulse2& impulse) {
  const double e1 = sys.energy();
  const double ek = impulse.energy();
  const double sk = detail::sinc(ek);
  // Numerator and denominator both divided by E1'.
  const double num = impulse.delta * e1 * sk;
  const double den = sys.delta1 * std::cos(ek) +
                     2.0 * sys.omega1 * impulse.omega * std::sin(sys.theta1 - impulse.theta) * sk;
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    return num > 0.0 ? kPi / 2.0 : -kPi / 2.0;
  }
  return std::atan(num / den);
}

std::vector<double> resonance_periods(const TwoLevelParams& sys, const Impulse2& impulse, int n_max) {
  validate(sys);
  validate(impulse);
  if (n_max < 1) throw Error(Errc::InvalidParameter, "resonance_periods: n_max must be at least 1");
  const double e1 = sys.energy();
  const double offset = resonance_offset(sys, impulse);
  std::vector<double> out;
  // An offset within rounding of zero would give a spurious near-zero period.
  const double floor = 1e-12 * kPi / e1;
  for (int n = 0; n <= n_max; ++n) {
    const double t = (n * kPi - offset) / e1;
    if (t > floor) out.push_back(t);
  }
  return out;
}

ResonantCoupling first_resonance(const TwoLevelParams& sys, const Impulse2& impulse) {
  const double t = resonance_periods(sys, impulse, 1).front();
  return {t, effective_hamiltonian(sys, {t, impulse})};
}

std::vector<double> resonance_phase(const TwoLevelParams& sys, double period, double delta1p,
                                    double omega1p) {
  validate(sys);
  if (!(period > 0.0)) throw Error(Errc::InvalidParameter, "resonance_phase: period must be positive");
  const double e1 = sys.energy();
  const double ek = kick_energy(delta1p, omega1p);
  const double ct = std::cos(e1 * period);
  const double st = std::sin(e1 * period);
  const double sk = detail::sinc(ek);
  // f2 = rest + coef * sin(theta1 - theta1').
  const double rest = sys.delta1 / (2.0 * e1) * std::cos(ek) * st + delta1p / 2.0 * sk * ct;
  const double coef = sys.omega1 * omega1p / e1 * sk * st;
  auto f2_at = [&](double theta1p) {
    return f_functions(sys, {period, {delta1p, omega1p, theta1p}}).f2;
  };
  std::vector<double> out;
  if (coef == 0.0) {
    if (std::abs(rest) < 1e-10) out.push_back(detail::wrap_phase(sys.theta1));
    else throw Error(Errc::NoSolution, "resonance_phase: phase does not enter f2 at these parameters");
    return out;
  }
  const double r = rest / coef;
  if (std::abs(r) > 1.0 + 1e-12) return out;
  const double shift = std::asin(std::clamp(r, -1.0, 1.0));
  for (double cand : {sys.theta1 + shift, sys.theta1 + kPi - shift}) {
    const double theta = detail::wrap_phase(cand);
    if (std::abs(f2_at(theta)) >= 1e-10) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](double x) {
      return std::abs(detail::wrap_phase(x - theta)) < 1e-12;
    });
    if (!dup) out.push_back(theta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> resonance_detuning(const TwoLevelParams& sys, double period, double omega1p,
                                       double theta1p, SearchRange range) {
  validate(sys);
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw Error(Errc::InvalidParameter, "resonance_detuning: search range must be finite");
  }
  auto f2_at = [&](double delta1p) {
    return f_functions(sys, {period, {delta1p, omega1p, theta1p}}).f2;
  };
  return grid_roots(f2_at, range.lo, range.hi, grid_points(energy_span(range.lo, range.hi, omega1p, true)));
}

std::vector<double> resonance_amplitude(const TwoLevelParams& sys, double period, double delta1p,
                                        double theta1p, SearchRange range) {
  validate(sys);
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw Error(Errc::InvalidParameter, "resonance_amplitude: search range must be finite");
  }
  auto f2_at = [&](double omega1p) {
    return f_functions(sys, {period, {delta1p, omega1p, theta1p}}).f2;
  };
  return grid_roots(f2_at, range.lo, range.hi, grid_points(energy_span(range.lo, range.hi, delta1p, false)));
}

std::vector<double> cdc_points(double omega1p, int m_max) {
  if (m_max < 1) throw Error(Errc::InvalidParameter, "cdc_points: m_max must be at least 1");
  std::vector<double> out;
  for (int m = 1; m <= m_max; ++m) {
    const double radicand = (m * kPi) * (m * kPi) - omega1p * omega1p;
    if (radicand >= 0.0) out.push_back(2.0 * std::sqrt(radicand));
  }
  return out;
}

double omega_eff_limit(const TwoLevelParams& sys, const Impulse2& impulse) {
  if (impulse.delta == 0.0) throw Error(Errc::DivisionDegenerate, "omega_eff_limit: kick detuning is zero");
  const double w = sys.omega1;
  const double wp = impulse.omega;
  const double dp = impulse.delta;
  const double dtheta = sys.theta1 - impulse.theta;
  const double ek = impulse.energy();
  const cd gap = w - sys.delta1 / dp * wp * std::polar(1.0, dtheta);
  const double extra = 4.0 * w * wp * wp *
                       (w * ek * std::sin(dtheta) - w * dp * std::cos(dtheta) + sys.delta1 * wp) /
                       (ek * dp * dp);
  const double radicand = std::norm(gap) + extra * std::sin(dtheta);
  if (radicand < 0.0) throw Error(Errc::NumericalDomain, "omega_eff_limit: negative radicand");
  return std::sqrt(radicand);
}

double phase_kick_limit_estimate(const TwoLevelParams& sys, double theta1p) {
  return sys.omega1 * std::abs(1.0 - std::polar(1.0, sys.theta1 - theta1p));
}

}  // namespace kicked

#include "kicked/propagators.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "kicked/error.hpp"
#include "kicked/mat_core.hpp"

namespace kicked {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidParameter, what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const TwoLevelParams& sys) {
  require(finite(sys.delta1) && finite(sys.theta1), "two-level parameters must be finite");
  require(finite(sys.omega1) && sys.omega1 > 0, "omega1 must be positive");
}

void validate(const Impulse2& impulse) {
  require(finite(impulse.delta) && finite(impulse.theta), "impulse parameters must be finite");
  require(finite(impulse.omega) && impulse.omega >= 0, "impulse coupling must be non-negative");
}

void validate(const KickParams2& kick) {
  require(finite(kick.period) && kick.period > 0, "kick period must be positive");
  validate(kick.impulse);
}

void validate(const ThreeLevelParams& sys) {
  require(finite(sys.delta1) && finite(sys.delta2) && finite(sys.theta1) && finite(sys.theta2),
          "three-level parameters must be finite");
  require(finite(sys.omega1) && finite(sys.omega2) && sys.omega1 > 0 && sys.omega2 > 0,
          "three-level couplings must be positive");
}

void validate(const Impulse3& impulse) {
  require(finite(impulse.delta1) && finite(impulse.delta2) && finite(impulse.theta1) &&
              finite(impulse.theta2),
          "impulse parameters must be finite");
  require(finite(impulse.omega1) && finite(impulse.omega2) && impulse.omega1 >= 0 &&
              impulse.omega2 >= 0,
          "impulse couplings must be non-negative");
}

void validate(const KickParams3& kick) {
  require(finite(kick.period) && kick.period > 0, "kick period must be positive");
  validate(kick.impulse);
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

ThreeLevelSpecialParams ThreeLevelSpecialParams::from_general(const ThreeLevelParams& p) {
  if (!near(p.delta2, 2.0 * p.delta1) || !near(p.omega2, p.omega1) || !near(p.theta2, p.theta1)) {
    throw Error(Errc::NotSpecialCase, "requires delta2 = 2 delta1, omega2 = omega1, theta2 = theta1");
  }
  return {p.delta1, p.omega1, p.theta1};
}

SpecialImpulse SpecialImpulse::from_general(const Impulse3& p) {
  if (!near(p.delta2, 2.0 * p.delta1) || !near(p.omega2, p.omega1) || !near(p.theta2, p.theta1)) {
    throw Error(Errc::NotSpecialCase, "impulse requires delta2 = 2 delta1, omega2 = omega1, theta2 = theta1");
  }
  return {p.delta1, p.omega1, p.theta1};
}

Eigen::Matrix2cd two_level_hamiltonian(double delta, double omega, double theta) {
  Eigen::Matrix2cd h;
  const cd c = std::polar(omega, theta);
  h << 0.0, c, std::conj(c), delta;
  return h;
}

Eigen::Matrix2cd hamiltonian(const TwoLevelParams& sys) {
  return two_level_hamiltonian(sys.delta1, sys.omega1, sys.theta1);
}

Eigen::Matrix2cd impulse_matrix(const Impulse2& impulse) {
  return two_level_hamiltonian(impulse.delta, impulse.omega, impulse.theta);
}

Eigen::Matrix3cd ladder_hamiltonian(double delta1, double delta2, double omega1, double omega2,
                                    double theta1, double theta2) {
  const cd c1 = std::polar(omega1, theta1);
  const cd c2 = std::polar(omega2, theta2);
  Eigen::Matrix3cd h;
  h << 0.0, c1, 0.0,
       std::conj(c1), delta1, c2,
       0.0, std::conj(c2), delta2;
  return h;
}

Eigen::Matrix3cd hamiltonian(const ThreeLevelParams& sys) {
  return ladder_hamiltonian(sys.delta1, sys.delta2, sys.omega1, sys.omega2, sys.theta1, sys.theta2);
}

Eigen::Matrix3cd impulse_matrix(const Impulse3& impulse) {
  return ladder_hamiltonian(impulse.delta1, impulse.delta2, impulse.omega1, impulse.omega2,
                            impulse.theta1, impulse.theta2);
}

Eigen::Matrix2cd propagator_two_level(const TwoLevelParams& sys, double t) {
  const double e = sys.energy();
  const double c = std::cos(e * t);
  const double s = std::sin(e * t);
  const cd coupling = std::polar(sys.omega1 / e, sys.theta1);
  Eigen::Matrix2cd u;
  u << cd(c, sys.delta1 / (2.0 * e) * s), -kI * coupling * s,
       -kI * std::conj(coupling) * s, cd(c, -sys.delta1 / (2.0 * e) * s);
  return u;
}

Eigen::Matrix3cd propagator_three_level_special(const ThreeLevelSpecialParams& sys, double t) {
  const double d = sys.delta1;
  const double w = sys.omega1;
  const double e = sys.energy();
  if (e == 0.0) return Eigen::Matrix3cd::Identity();
  const double c = std::cos(e * t);
  const double s = std::sin(e * t);
  const cd ph = std::polar(1.0, sys.theta1);
  const cd u11(w * w + (d * d + w * w) * c, d * e * s);
  const cd u22(d * d + 2.0 * w * w * c, 0.0);
  const cd up = w * cd(d - d * c, -e * s);
  const cd u13 = w * w * ph * ph * (c - 1.0);
  const cd u23 = w * ph * cd(d * c - d, -e * s);
  const cd u32 = w * std::conj(ph) * cd(d * c - d, -e * s);
  Eigen::Matrix3cd u;
  u << u11, up * ph, u13,
       up * std::conj(ph), u22, u23,
       std::conj(u13), u32, std::conj(u11);
  return std::exp(-kI * (d * t)) / (e * e) * u;
}

Eigen::Matrix3cd propagator_three_level_special(const ThreeLevelParams& sys, double t) {
  return propagator_three_level_special(ThreeLevelSpecialParams::from_general(sys), t);
}

namespace {

std::array<EigenPair, 3> eig_fallback(const Eigen::Matrix3cd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
  std::array<EigenPair, 3> out;
  for (int n = 0; n < 3; ++n) out[n] = {es.eigenvalues()(n), es.eigenvectors().col(n)};
  return out;
}

// Null vector of the rank-two matrix a, from the largest cross product of rows.
// Eigen conjugates complex cross products, so the bilinear one is its conjugate.
Eigen::Vector3cd null_vector(const Eigen::Matrix3cd& a) {
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
  for (const auto& pr : pairs) {
    const Eigen::Vector3cd r0 = a.row(pr[0]).transpose();
    const Eigen::Vector3cd r1 = a.row(pr[1]).transpose();
    const Eigen::Vector3cd v = r0.cross(r1).conjugate();
    if (v.norm() > best.norm()) best = v;
  }
  return best;
}

}  // namespace

std::array<EigenPair, 3> eig_three_level(const ThreeLevelParams& sys) {
  const double d1 = sys.delta1;
  const double d2 = sys.delta2;
  if (!std::isfinite(d1) || !std::isfinite(d2) || !std::isfinite(sys.omega1) ||
      !std::isfinite(sys.omega2)) {
    throw Error(Errc::InvalidParameter, "eig_three_level: parameters must be finite");
  }
  const double w1sq = sys.omega1 * sys.omega1;
  const double w2sq = sys.omega2 * sys.omega2;
  const double sum = d1 + d2;
  const double c1 = d1 * d2 - w1sq - w2sq;
  const double c0 = w1sq * d2;
  const double p = c1 - sum * sum / 3.0;
  const double q = c0 + sum * c1 / 3.0 - 2.0 * sum * sum * sum / 27.0;

  const Eigen::Matrix3cd h = hamiltonian(sys);
  const double scale = std::max(1.0, max_abs(h));
  const double spread = -p / 3.0;
  if (spread <= 1e-24 * scale * scale) return eig_fallback(h);

  const double arg = detail::clamp_unit(-0.5 * q * std::pow(spread, -1.5), "eig_three_level arccos");
  const double u = std::acos(arg) / 3.0;
  const double radius = 2.0 * std::sqrt(spread);

  std::array<EigenPair, 3> out;
  for (int n = 0; n < 3; ++n) {
    double e = sum / 3.0 + radius * std::cos(u + 2.0 * std::numbers::pi * n / 3.0);
    // Newton polish on the characteristic cubic; the trigonometric form loses
    // digits when two roots nearly coincide.
    for (int it = 0; it < 3; ++it) {
      const double f = ((e - sum) * e + c1) * e + c0;
      const double df = (3.0 * e - 2.0 * sum) * e + c1;
      if (std::abs(df) < 1e-8 * scale * scale) break;
      const double step = f / df;
      if (std::abs(step) > 1e-6 * scale) break;
      e -= step;
    }
    Eigen::Vector3cd v;
    v << std::polar(sys.omega1, sys.theta1) * (e - d2), cd(e * (e - d2), 0.0),
        std::polar(sys.omega2, -sys.theta2) * e;
    if (v.norm() < 1e-4 * scale * scale) {
      v = null_vector(h - e * Eigen::Matrix3cd::Identity());
      if (v.norm() < 1e-4 * scale * scale) return eig_fallback(h);
    }
    out[n] = {e, v.normalized()};
  }
  return out;
}

}  // namespace kicked

#ifndef KICKED_PROPAGATORS_HPP
#define KICKED_PROPAGATORS_HPP

#include <Eigen/Dense>

#include <array>

#include "kicked/params.hpp"

namespace kicked {

// delta |2><2| + omega e^{i theta} |1><2| + h.c.
Eigen::Matrix2cd two_level_hamiltonian(double delta, double omega, double theta);
Eigen::Matrix2cd hamiltonian(const TwoLevelParams& sys);
Eigen::Matrix2cd impulse_matrix(const Impulse2& impulse);

Eigen::Matrix3cd ladder_hamiltonian(double delta1, double delta2, double omega1, double omega2,
                                    double theta1, double theta2);
Eigen::Matrix3cd hamiltonian(const ThreeLevelParams& sys);
Eigen::Matrix3cd impulse_matrix(const Impulse3& impulse);

// Free two-level propagator with the trace phase e^{-i delta1 t / 2} removed
// (determinant one).
Eigen::Matrix2cd propagator_two_level(const TwoLevelParams& sys, double t);

// Free propagator of the special ladder, including the e^{-i delta1 t}
// prefactor, so it equals exp(-i H t) exactly.
Eigen::Matrix3cd propagator_three_level_special(const ThreeLevelSpecialParams& sys, double t);
Eigen::Matrix3cd propagator_three_level_special(const ThreeLevelParams& sys, double t);

struct EigenPair {
  double value = 0.0;
  Eigen::Vector3cd vector;
};

// Trigonometric solution of the ladder's characteristic cubic, ordered by the
// cosine branch offsets 0, 2pi/3, 4pi/3.
std::array<EigenPair, 3> eig_three_level(const ThreeLevelParams& sys);

}  // namespace kicked

#endif  // KICKED_PROPAGATORS_HPP

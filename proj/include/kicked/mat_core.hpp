#ifndef KICKED_MAT_CORE_HPP
#define KICKED_MAT_CORE_HPP

// Small dense complex algebra for 2- and 3-level systems. Everything is
// templated on the Eigen expression so fixed and dynamic sizes both work.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kicked/error.hpp"

namespace kicked {

template <typename Real, int Dim>
using CMatrix = Eigen::Matrix<std::complex<Real>, Dim, Dim>;
template <typename Real, int Dim>
using CVector = Eigen::Matrix<std::complex<Real>, Dim, 1>;

namespace detail {

// sin(x)/x without the removable singularity.
template <typename Real>
Real sinc(Real x) {
  if (std::abs(x) < Real(1e-4)) {
    const Real x2 = x * x;
    return Real(1) - x2 / Real(6) + x2 * x2 / Real(120);
  }
  return std::sin(x) / x;
}

template <typename Real>
Real wrap_phase(Real phi) {
  const Real pi = std::numbers::pi_v<Real>;
  phi = std::remainder(phi, Real(2) * pi);
  if (phi <= -pi) phi += Real(2) * pi;
  return phi;
}

// arccos/arcsin argument clamping: tolerate float spillover, reject the rest.
template <typename Real>
Real clamp_unit(Real x, const char* what) {
  if (!(std::abs(x) <= Real(1) + Real(1e-12))) {
    throw Error(Errc::NumericalDomain, std::string(what) + " argument outside [-1, 1]");
  }
  return std::clamp(x, Real(-1), Real(1));
}

}  // namespace detail

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

// Tolerances are absolute for matrices of order one and relative beyond.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  typename Derived::RealScalar tol = 1e-12) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) return false;
  const Real scale = std::max(Real(1), max_abs(m));
  return max_abs(m - m.adjoint()) < tol * scale;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u,
                typename Derived::RealScalar tol = 1e-12) {
  if (u.rows() != u.cols()) return false;
  const auto id = Derived::PlainObject::Identity(u.rows(), u.cols());
  return max_abs(u.adjoint() * u - id) < tol;
}

template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Derived::RowsAtCompileTime, 1> populations(
    const Eigen::MatrixBase<Derived>& psi) {
  return psi.cwiseAbs2();
}

// exp(-i H t) for hermitian H. Dimension 2 uses the closed form, larger
// dimensions a real spectral decomposition.
template <typename Derived>
typename Derived::PlainObject expm_hermitian(const Eigen::MatrixBase<Derived>& h,
                                             typename Derived::RealScalar t) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  using Plain = typename Derived::PlainObject;
  if (!is_hermitian(h)) throw Error(Errc::InvalidMatrix, "expm_hermitian: matrix is not hermitian");
  if (!std::isfinite(t)) throw Error(Errc::InvalidParameter, "expm_hermitian: time is not finite");
  const Complex i(0, 1);
  if (h.rows() == 2) {
    const Real mean = (h(0, 0).real() + h(1, 1).real()) / Real(2);
    const Real half = (h(0, 0).real() - h(1, 1).real()) / Real(2);
    const Real energy = std::hypot(half, std::abs(h(0, 1)));
    Plain traceless = h;
    traceless(0, 0) = half;
    traceless(1, 1) = -half;
    traceless(1, 0) = std::conj(h(0, 1));
    const Plain id = Plain::Identity(2, 2);
    Plain out = std::cos(energy * t) * id - i * (t * detail::sinc(energy * t)) * traceless;
    return std::exp(-i * (mean * t)) * out;
  }
  Eigen::SelfAdjointEigenSolver<Plain> es(h);
  const auto& values = es.eigenvalues();
  Eigen::Matrix<Complex, Derived::RowsAtCompileTime, 1> phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::exp(-i * (values(k) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Traceless hermitian H with exp(-i H T) equal to U up to a global phase,
// taken on the principal branch of the eigenphases.
template <typename Derived>
typename Derived::PlainObject unitary_log_traceless(const Eigen::MatrixBase<Derived>& u,
                                                    typename Derived::RealScalar period) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  using Plain = typename Derived::PlainObject;
  if (!is_unitary(u, Real(1e-10))) throw Error(Errc::InvalidMatrix, "unitary_log_traceless: matrix is not unitary");
  if (!(period > 0)) throw Error(Errc::InvalidParameter, "unitary_log_traceless: period must be positive");
  Eigen::ComplexSchur<Plain> schur(u);
  const Plain& q = schur.matrixU();
  const Plain& tri = schur.matrixT();
  const Real pi = std::numbers::pi_v<Real>;
  Eigen::Matrix<Complex, Derived::RowsAtCompileTime, 1> energies(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    const Real phase = std::arg(tri(k, k));
    if (pi - std::abs(phase) < Real(1e-12)) {
      throw Error(Errc::BranchAmbiguity, "unitary_log_traceless: eigenphase at +-pi");
    }
    energies(k) = Complex(-phase / period, 0);
  }
  Plain h = q * energies.asDiagonal() * q.adjoint();
  const Complex mean = h.trace() / Real(u.rows());
  h -= mean * Plain::Identity(u.rows(), u.cols());
  return (h + h.adjoint()) / Real(2);
}

// max_abs(A - e^{i phi} B) with phi aligning the traces of A and B.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar distance_mod_phase(const Eigen::MatrixBase<DerivedA>& a,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Complex = typename DerivedA::Scalar;
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1);
  return max_abs(a - phase * b);
}

}  // namespace kicked

#endif  // KICKED_MAT_CORE_HPP

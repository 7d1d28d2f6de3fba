#pragma once

#include <complex>

#include <Eigen/Dense>

namespace xstates {

template <typename Real>
using Complex = std::complex<Real>;

using Scalar = Complex<double>;

template <typename S>
using Vector3 = Eigen::Matrix<S, 3, 1>;
template <typename S>
using Matrix2 = Eigen::Matrix<S, 2, 2>;
template <typename S>
using Matrix3 = Eigen::Matrix<S, 3, 3>;

using Vec3 = Vector3<Scalar>;
using Mat2 = Matrix2<Scalar>;
using Mat3 = Matrix3<Scalar>;
using VecX = Eigen::VectorXcd;
using MatX = Eigen::MatrixXcd;

inline constexpr Scalar kI{0.0, 1.0};

/// Bilinear cross product. Eigen's cross conjugates complex results; this one does not.
template <typename DerivedA, typename DerivedB>
auto cross(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using S = typename DerivedA::Scalar;
  return Vector3<S>(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

/// Absolute tolerance for structural equalities.
inline constexpr double kStructuralTol = 1e-12;
/// Tolerance for statements involving one inversion or eigenproblem.
inline constexpr double kSolveTol = 1e-9;

}  // namespace xstates

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace siegel {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr cplx kImagUnit{0.0, 1.0};

inline int kronecker_delta(int a, int b) { return a == b ? 1 : 0; }

// Entrywise max-abs norm, the ||.||_inf used by every residual in this library.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

inline ComplexMatrix to_complex(const RealMatrix& m) { return m.cast<cplx>(); }
inline ComplexMatrix to_complex(const IntMatrix& m) {
  return m.cast<double>().cast<cplx>();
}

// ||a - b||_inf / max(1, ||b||_inf): residuals of quantities whose natural
// scale grows with the group element are measured against that scale.
template <class A, class B>
double scaled_difference(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

}  // namespace siegel

#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "siegel/linalg.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

/// Independent coordinate Z_ij of a symmetric matrix, 1-based with i <= j.
struct OmegaIndex {
  int i = 1;
  int j = 1;

  friend auto operator<=>(const OmegaIndex&, const OmegaIndex&) = default;

  bool contains(int s) const { return i == s || j == s; }
  // The index paired with s in this coordinate; s itself for (s,s).
  int partner(int s) const { return i == s ? j : i; }
};

/// Builds the coordinate for Z_ab, ordering a and b.
inline OmegaIndex omega_of(int a, int b) { return a <= b ? OmegaIndex{a, b} : OmegaIndex{b, a}; }

int omega_size(int g);

/// N(I) = (i-1)(2g-i)/2 + j, the 1-based dictionary rank of I.
int omega_rank(const OmegaIndex& index, int g);

/// 0-based position of I in N-order.
inline int omega_position(const OmegaIndex& index, int g) { return omega_rank(index, g) - 1; }

std::vector<OmegaIndex> enumerate_omega(int g);

/// 1 iff Z_pa and Z_rs are the same coordinate of the symmetric matrix.
int sigma(std::pair<int, int> pa, const OmegaIndex& rs);

/// Coordinates (V_I) of a symmetric matrix in N-order.
ComplexVector omega_coordinates(const ComplexMatrix& v);
ComplexMatrix from_omega_coordinates(const ComplexVector& coords, int g);

/// E_J: the symmetric matrix with dZ = sum_J dZ_J E_J.
RealMatrix symmetric_unit(int g, const OmegaIndex& index);

/// The invariant metric data at a point: R = Y^{-1}, W and its inverse M.
class MetricPair {
 public:
  explicit MetricPair(const SiegelPoint& z);

  const SiegelPoint& point() const { return point_; }
  int degree() const { return point_.degree(); }
  const RealMatrix& inverse_imag() const { return r_; }
  const RealMatrix& w() const { return w_; }
  const RealMatrix& m() const { return m_; }

 private:
  SiegelPoint point_;
  RealMatrix r_;
  RealMatrix w_;
  RealMatrix m_;
};

RealMatrix metric_W(const SiegelPoint& z);
RealMatrix metric_M(const SiegelPoint& z);

/// dM_{K,L}/dZ_J, the four-sigma expression.
cplx dM_dZ(const SiegelPoint& z, const OmegaIndex& k, const OmegaIndex& l, const OmegaIndex& j);

/// dW_{I,L}/dZ_J from dR/dZ_J = (i/2) R E_J R.
cplx dW_dZ(const MetricPair& metric, const OmegaIndex& i, const OmegaIndex& l,
           const OmegaIndex& j);

/// Tr(Y^{-1} V1 Y^{-1} conj(V2)).
cplx metric_form(const SiegelPoint& z, const ComplexMatrix& v1, const ComplexMatrix& v2);

/// The same form assembled from W in dZ_I d(conj Z_J) coordinates.
cplx metric_form_from_w(const RealMatrix& w, const ComplexMatrix& v1, const ComplexMatrix& v2);

}  // namespace siegel

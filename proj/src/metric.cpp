#include "siegel/metric.hpp"

#include "siegel/errors.hpp"

namespace siegel {

namespace {

RealMatrix spd_inverse(const RealMatrix& y) {
  Eigen::LLT<RealMatrix> llt(y);
  if (llt.info() != Eigen::Success) throw DegeneracyError("imaginary part is not invertible");
  RealMatrix r = llt.solve(RealMatrix::Identity(y.rows(), y.cols()));
  Eigen::JacobiSVD<RealMatrix> svd(y);
  const auto& sv = svd.singularValues();
  if (sv(0) / sv(sv.size() - 1) > 1e12) throw DegeneracyError("imaginary part is near singular");
  return (r + r.transpose()) / 2.0;
}

}  // namespace

int omega_size(int g) { return g * (g + 1) / 2; }

int omega_rank(const OmegaIndex& index, int g) {
  if (index.i < 1 || index.i > index.j || index.j > g) throw DomainError("index outside Omega");
  return (index.i - 1) * (2 * g - index.i) / 2 + index.j;
}

std::vector<OmegaIndex> enumerate_omega(int g) {
  if (g <= 0) throw DomainError("degree must be positive");
  std::vector<OmegaIndex> out;
  out.reserve(omega_size(g));
  for (int i = 1; i <= g; ++i) {
    for (int j = i; j <= g; ++j) out.push_back({i, j});
  }
  return out;
}

int sigma(std::pair<int, int> pa, const OmegaIndex& rs) {
  const int direct = kronecker_delta(pa.first, rs.i) * kronecker_delta(pa.second, rs.j);
  const int swapped = kronecker_delta(pa.first, rs.j) * kronecker_delta(pa.second, rs.i);
  return direct + swapped - direct * swapped;
}

ComplexVector omega_coordinates(const ComplexMatrix& v) {
  const int g = static_cast<int>(v.rows());
  ComplexVector out(omega_size(g));
  int pos = 0;
  for (const auto& index : enumerate_omega(g)) out(pos++) = v(index.i - 1, index.j - 1);
  return out;
}

ComplexMatrix from_omega_coordinates(const ComplexVector& coords, int g) {
  if (coords.size() != omega_size(g)) throw DimensionError("coordinate vector has the wrong size");
  ComplexMatrix v(g, g);
  int pos = 0;
  for (const auto& index : enumerate_omega(g)) {
    v(index.i - 1, index.j - 1) = coords(pos);
    v(index.j - 1, index.i - 1) = coords(pos);
    ++pos;
  }
  return v;
}

RealMatrix symmetric_unit(int g, const OmegaIndex& index) {
  RealMatrix e = RealMatrix::Zero(g, g);
  e(index.i - 1, index.j - 1) = 1.0;
  e(index.j - 1, index.i - 1) = 1.0;
  return e;
}

MetricPair::MetricPair(const SiegelPoint& z) : point_(z), r_(spd_inverse(z.imag_part())) {
  const int g = z.degree();
  const auto omega = enumerate_omega(g);
  const auto n = static_cast<Eigen::Index>(omega.size());
  const RealMatrix& y = z.imag_part();
  w_.resize(n, n);
  m_.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const int i = omega[a].i - 1, j = omega[a].j - 1;
    for (Eigen::Index b = a; b < n; ++b) {
      const int r = omega[b].i - 1, s = omega[b].j - 1;
      const double scale = (i == j ? 2.0 : 1.0) * (r == s ? 2.0 : 1.0);
      w_(a, b) = w_(b, a) = (r_(i, r) * r_(j, s) + r_(j, r) * r_(i, s)) / scale;
      m_(a, b) = m_(b, a) = y(i, r) * y(j, s) + y(j, r) * y(i, s);
    }
  }
}

RealMatrix metric_W(const SiegelPoint& z) { return MetricPair(z).w(); }

RealMatrix metric_M(const SiegelPoint& z) { return MetricPair(z).m(); }

cplx dM_dZ(const SiegelPoint& z, const OmegaIndex& k, const OmegaIndex& l, const OmegaIndex& j) {
  const RealMatrix& y = z.imag_part();
  const int p = k.i, q = k.j, a = l.i, b = l.j;
  auto Y = [&](int row, int col) { return y(row - 1, col - 1); };
  const double bracket = sigma({p, a}, j) * Y(q, b) + sigma({q, b}, j) * Y(p, a) +
                         sigma({q, a}, j) * Y(p, b) + sigma({p, b}, j) * Y(q, a);
  return -0.5 * kImagUnit * bracket;
}

cplx dW_dZ(const MetricPair& metric, const OmegaIndex& i_index, const OmegaIndex& l_index,
           const OmegaIndex& j_index) {
  const RealMatrix& r = metric.inverse_imag();
  const int rr = j_index.i - 1, ss = j_index.j - 1;
  // dR_ab/dZ_J = (i/2) (R E_J R)_ab
  auto d_r = [&](int a, int b) {
    double e = r(a, rr) * r(ss, b);
    if (rr != ss) e += r(a, ss) * r(rr, b);
    return 0.5 * kImagUnit * e;
  };
  const int i = i_index.i - 1, j = i_index.j - 1;
  const int a = l_index.i - 1, b = l_index.j - 1;
  const double scale = (i == j ? 2.0 : 1.0) * (a == b ? 2.0 : 1.0);
  const cplx value = d_r(i, a) * r(j, b) + r(i, a) * d_r(j, b) + d_r(j, a) * r(i, b) +
                     r(j, a) * d_r(i, b);
  return value / scale;
}

cplx metric_form(const SiegelPoint& z, const ComplexMatrix& v1, const ComplexMatrix& v2) {
  const ComplexMatrix r = to_complex(MetricPair(z).inverse_imag());
  return (r * v1 * r * v2.conjugate()).trace();
}

cplx metric_form_from_w(const RealMatrix& w, const ComplexMatrix& v1, const ComplexMatrix& v2) {
  const ComplexVector a = omega_coordinates(v1);
  const ComplexVector b = omega_coordinates(v2);
  // ds^2 = sum 2^{2-d(i,j)-d(r,s)} (R_ir R_js + R_jr R_is)/2 dZ_I dZbar_J = 2 sum W_IJ dZ_I dZbar_J
  return 2.0 * (a.transpose() * w.cast<cplx>() * b.conjugate())(0, 0);
}

}  // namespace siegel

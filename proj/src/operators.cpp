#include "siegel/operators.hpp"

#include <cmath>

#include "siegel/connection.hpp"
#include "siegel/errors.hpp"

namespace siegel {

cplx directional_derivative(const std::function<cplx(const SiegelPoint&)>& f, const SiegelPoint& z,
                            const ComplexMatrix& v, double step) {
  const ComplexMatrix base = z.matrix();
  auto at = [&](double t) { return f(SiegelPoint::from_complex(base + t * v)); };
  return (at(-2 * step) - 8.0 * at(-step) + 8.0 * at(step) - at(2 * step)) / (12.0 * step);
}

double sym_gradient_residual(const ScalarField& f, const SiegelPoint& z, double step) {
  const int g = z.degree();
  const SymmetrizedGradient grad = sym_gradient(f, z);
  double worst = 0.0;
  for (const auto& index : enumerate_omega(g)) {
    const ComplexMatrix e = to_complex(symmetric_unit(g, index));
    const cplx expected = directional_derivative([&f](const SiegelPoint& p) { return f.value(p); }, z, e, step);
    const cplx actual = (grad * e).trace();
    worst = std::max(worst, std::abs(actual - expected) / std::max(1.0, std::abs(expected)));
  }
  return worst;
}

ComplexMatrix nabla(const Jet& f, int k, const ComplexMatrix& g_value) {
  if (k < 0) throw DomainError("k must be nonnegative");
  const int g = static_cast<int>(g_value.rows());
  return sym_gradient(f, g) - static_cast<double>(k) * f.value * g_value;
}

ComplexMatrix nabla(const ScalarField& f, const SiegelPoint& z, int k) {
  const ComplexMatrix g_value = kImagUnit * to_complex(MetricPair(z).inverse_imag());
  return nabla(f.jet(z), k, g_value);
}

ComplexMatrix nabla(const ScalarField& f, const SiegelPoint& z, int k, const MatrixFunctionField& g_field) {
  return nabla(f.jet(z), k, g_field.value(z));
}

cplx det_nabla(const ScalarField& f, const SiegelPoint& z, int k) { return nabla(f, z, k).determinant(); }

cplx det_nabla(const ScalarField& f, const SiegelPoint& z, int k, const MatrixFunctionField& g_field) {
  return nabla(f, z, k, g_field).determinant();
}

ModularExtension::ModularExtension(const ScalarField& f, int weight, SymplecticElement gamma,
                                   GradientMode mode)
    : f_(f), weight_(weight), gamma_(std::move(gamma)), inverse_(gamma_.inverse()), mode_(mode) {}

cplx ModularExtension::value(const SiegelPoint& w) const {
  const SiegelPoint z = act(inverse_, w);
  return std::pow(cocycle(gamma_, z).determinant(), weight_) * f_.value(z);
}

Jet ModularExtension::jet(const SiegelPoint& w) const {
  if (mode_ == GradientMode::FiniteDifference) {
    return finite_difference_jet([this](const SiegelPoint& p) { return value(p); }, w, default_step(w));
  }
  const int g = w.degree();
  const SiegelPoint z = act(inverse_, w);
  const ComplexMatrix m = cocycle(gamma_, z);
  const ComplexMatrix m_inv_c = m.partialPivLu().solve(to_complex(gamma_.c()));
  const cplx det_power = std::pow(m.determinant(), weight_);
  const Jet jf = f_.jet(z);
  const auto omega = enumerate_omega(g);
  // d/dZ_K det(CZ+D) = det(CZ+D) Tr((CZ+D)^{-1} C E_K)
  ComplexVector grad_z(static_cast<Eigen::Index>(omega.size()));
  for (std::size_t n = 0; n < omega.size(); ++n) {
    const cplx t = (m_inv_c * to_complex(symmetric_unit(g, omega[n]))).trace();
    grad_z(static_cast<Eigen::Index>(n)) = jf.grad(static_cast<Eigen::Index>(n)) + static_cast<double>(weight_) * jf.value * t;
  }
  const ComplexMatrix s_inverse = form_cocycle(inverse_, w).s;
  return {det_power * jf.value, det_power * (s_inverse * grad_z)};
}

NablaTransform verify_nabla_transform(const ScalarField& f, const SymplecticElement& gamma,
                                      const SiegelPoint& z, int k, const MatrixFunctionField& g_field,
                                      GradientMode mode) {
  const int g = z.degree();
  const ModularExtension extension(f, 2 * k, gamma, mode);
  const SiegelPoint w = act(gamma, z);
  const ComplexMatrix lhs = nabla(extension.jet(w), k, g_field.value(w));
  const ComplexMatrix m = cocycle(gamma, z);
  const cplx det_m = m.determinant();
  const ComplexMatrix here = nabla(f.jet(z), k, g_field.value(z));
  const ComplexMatrix rhs = std::pow(det_m, 2 * k) * m * here * m.transpose();

  NablaTransform out;
  out.matrix_residual = max_abs(lhs - rhs) / std::max(1.0, max_abs(rhs));
  const cplx det_here = here.determinant();
  if (std::abs(det_here) > 1e-8) {
    out.det_lhs = lhs.determinant();
    out.det_rhs = std::pow(det_m, 2 * g * k + 2) * det_here;
    out.det_relative = std::abs(out.det_lhs - out.det_rhs) / std::abs(out.det_rhs);
  }
  return out;
}

NablaTransform verify_nabla_transform(const ScalarField& f, const SymplecticElement& gamma,
                                      const SiegelPoint& z, int k, GradientMode mode) {
  return verify_nabla_transform(f, gamma, z, k, InverseImaginaryField(), mode);
}

double verify_G_law(const MatrixFunctionField& g_field, const SymplecticElement& gamma,
                    const SiegelPoint& z) {
  const SiegelPoint w = act(gamma, z);
  const ComplexMatrix m = cocycle(gamma, z);
  const ComplexMatrix lhs = m.partialPivLu().solve(g_field.value(w));
  const ComplexMatrix rhs = g_field.value(z) * m.transpose() + 2.0 * to_complex(gamma.c()).transpose();
  return max_abs(lhs - rhs) / std::max({1.0, max_abs(lhs), max_abs(rhs)});
}

namespace {

ComplexMatrix bracket_matrix(const Jet& f, const Jet& h, int g, double wf, double wh) {
  return wf * h.value * sym_gradient(f, g) - wh * f.value * sym_gradient(h, g);
}

}  // namespace

cplx bracket1(const ScalarField& f, const ScalarField& h, const SiegelPoint& z) {
  return bracket_matrix(f.jet(z), h.jet(z), z.degree(), 1.0, 1.0).determinant();
}

cplx bracket1_weighted(const ScalarField& f, const ScalarField& h, int r, int s, const SiegelPoint& z) {
  return bracket_matrix(f.jet(z), h.jet(z), z.degree(), s, r).determinant();
}

BracketTransform bracket1_transform(const ScalarField& f, const ScalarField& h, int r, int s,
                                    const SymplecticElement& gamma, const SiegelPoint& z,
                                    bool weighted) {
  const int g = z.degree();
  const double wf = weighted ? s : 1.0;
  const double wh = weighted ? r : 1.0;
  const ModularExtension ext_f(f, 2 * r, gamma);
  const ModularExtension ext_h(h, 2 * s, gamma);
  const SiegelPoint w = act(gamma, z);
  const ComplexMatrix lhs = bracket_matrix(ext_f.jet(w), ext_h.jet(w), g, wf, wh);
  const Jet jf = f.jet(z);
  const Jet jh = h.jet(z);
  const ComplexMatrix here = bracket_matrix(jf, jh, g, wf, wh);
  const ComplexMatrix m = cocycle(gamma, z);
  const cplx det_m = m.determinant();
  const cplx factor = std::pow(det_m, 2 * (r + s));
  const ComplexMatrix tensorial = factor * m * here * m.transpose();
  // Each extension picks up 2(weight/2) f (CZ+D) C^t beyond the tensorial part.
  const double defect_weight = 2.0 * (wf * r - wh * s);
  const ComplexMatrix predicted =
      defect_weight * factor * jf.value * jh.value * m * to_complex(gamma.c()).transpose();
  const ComplexMatrix defect = lhs - tensorial;

  BracketTransform out;
  const double scale = std::max(1.0, max_abs(tensorial));
  out.residual = max_abs(defect) / scale;
  out.defect_norm = max_abs(defect);
  out.predicted_norm = max_abs(predicted);
  out.defect_mismatch = max_abs(defect - predicted) / std::max(scale, max_abs(predicted));
  out.scalar_lhs = lhs.determinant();
  out.scalar_rhs = std::pow(det_m, 2 * (r + s) * g + 2) * here.determinant();
  return out;
}

QSeriesFunction::QSeriesFunction(QSeries series, Prefactor prefactor)
    : series_(std::move(series)), theta_(series_.theta()), prefactor_(prefactor) {}

cplx QSeriesFunction::value(const SiegelPoint& z) const {
  if (z.degree() != 1) throw DimensionError("q-series functions live on degree 1");
  return evaluate(series_, scalar_point(z), prefactor_);
}

Jet QSeriesFunction::jet(const SiegelPoint& z) const {
  Jet out = Jet::constant(value(z), 1);
  out.grad(0) = evaluate(theta_, scalar_point(z), prefactor_ * Prefactor{1, 0, 1});
  return out;
}

EisensteinG2Field::EisensteinG2Field(int terms) : g2_(g2_series(terms)) {}

ComplexMatrix EisensteinG2Field::value(const SiegelPoint& z) const {
  if (z.degree() != 1) throw DimensionError("iG2 lives on degree 1");
  ComplexMatrix out(1, 1);
  out(0, 0) = kImagUnit * evaluate(g2_, scalar_point(z));
  return out;
}

SiegelPoint point_from_scalar(cplx z) {
  RealMatrix x(1, 1), y(1, 1);
  x(0, 0) = z.real();
  y(0, 0) = z.imag();
  return SiegelPoint(x, y);
}

}  // namespace siegel

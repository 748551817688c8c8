#pragma once

#include <functional>
#include <optional>

#include "siegel/fields.hpp"
#include "siegel/qseries.hpp"
#include "siegel/test_function.hpp"

namespace siegel {

/// Derivative of t -> f(Z + tV) at t = 0 by the five-point stencil, which is
/// exact up to rounding on polynomials of degree <= 4 along the line.
cplx directional_derivative(const std::function<cplx(const SiegelPoint&)>& f, const SiegelPoint& z,
                            const ComplexMatrix& v, double step = 1e-2);

/// max_J |Tr(grad E_J) - df(E_J)| over the coordinate directions.
double sym_gradient_residual(const ScalarField& f, const SiegelPoint& z, double step = 1e-2);

/// d/dZ f - k G f from a jet and the value of G at the same point.
ComplexMatrix nabla(const Jet& f, int k, const ComplexMatrix& g_value);
/// Default G = iY^{-1}.
ComplexMatrix nabla(const ScalarField& f, const SiegelPoint& z, int k);
ComplexMatrix nabla(const ScalarField& f, const SiegelPoint& z, int k, const MatrixFunctionField& g_field);

cplx det_nabla(const ScalarField& f, const SiegelPoint& z, int k);
cplx det_nabla(const ScalarField& f, const SiegelPoint& z, int k, const MatrixFunctionField& g_field);

enum class GradientMode { ChainRule, FiniteDifference };

/// F(W) = det(C Z(W) + D)^weight f(Z(W)) with Z(W) = gamma^{-1} W, so that
/// F(gamma Z) = det(CZ + D)^weight f(Z).
class ModularExtension final : public ScalarField {
 public:
  ModularExtension(const ScalarField& f, int weight, SymplecticElement gamma,
                   GradientMode mode = GradientMode::ChainRule);

  cplx value(const SiegelPoint& w) const override;
  Jet jet(const SiegelPoint& w) const override;

  int weight() const { return weight_; }
  const SymplecticElement& gamma() const { return gamma_; }

 private:
  const ScalarField& f_;
  int weight_;
  SymplecticElement gamma_;
  SymplecticElement inverse_;
  GradientMode mode_;
};

struct NablaTransform {
  double matrix_residual = 0.0;            // relative to max(1, |rhs|)
  std::optional<double> det_relative;      // only where |det_nabla f| > 1e-8
  cplx det_lhs{0.0, 0.0};
  cplx det_rhs{0.0, 0.0};
};

/// Compares nabla(F)(gamma Z) with det(CZ+D)^{2k} (CZ+D) nabla(f)(Z) (ZC^t+D^t)
/// for F = ModularExtension(f, 2k, gamma).
NablaTransform verify_nabla_transform(const ScalarField& f, const SymplecticElement& gamma,
                                      const SiegelPoint& z, int k, const MatrixFunctionField& g_field,
                                      GradientMode mode = GradientMode::ChainRule);
NablaTransform verify_nabla_transform(const ScalarField& f, const SymplecticElement& gamma,
                                      const SiegelPoint& z, int k,
                                      GradientMode mode = GradientMode::ChainRule);

/// ||(CZ+D)^{-1} G(gamma Z) - G(Z)(CZ+D)^t - 2C^t|| relative to max(1, scale).
double verify_G_law(const MatrixFunctionField& g_field, const SymplecticElement& gamma,
                    const SiegelPoint& z);

/// det(h d/dZ f - f d/dZ h).
cplx bracket1(const ScalarField& f, const ScalarField& h, const SiegelPoint& z);
/// det(s h d/dZ f - r f d/dZ h).
cplx bracket1_weighted(const ScalarField& f, const ScalarField& h, int r, int s, const SiegelPoint& z);

struct BracketTransform {
  double residual = 0.0;            // tensorial law, relative
  double defect_norm = 0.0;         // |lhs - tensorial rhs| at matrix level
  double predicted_norm = 0.0;      // |2(r-s) det^{2(r+s)} f h (CZ+D) C^t|
  double defect_mismatch = 0.0;     // |defect - predicted| relative
  cplx scalar_lhs{0.0, 0.0};        // bracket of the extensions at gamma Z
  cplx scalar_rhs{0.0, 0.0};        // det(CZ+D)^{2(r+s)g+2} bracket(f,h)(Z)
};

/// Modularity test of the bracket with weights 2r, 2s through two extensions.
BracketTransform bracket1_transform(const ScalarField& f, const ScalarField& h, int r, int s,
                                    const SymplecticElement& gamma, const SiegelPoint& z,
                                    bool weighted = false);

/// A g = 1 q-series as a function on the upper half plane; the derivative
/// comes from theta: f' = 2 pi i theta f.
class QSeriesFunction final : public ScalarField {
 public:
  explicit QSeriesFunction(QSeries series, Prefactor prefactor = {});
  cplx value(const SiegelPoint& z) const override;
  Jet jet(const SiegelPoint& z) const override;

 private:
  QSeries series_;
  QSeries theta_;
  Prefactor prefactor_;
};

/// iG2 as a 1 x 1 matrix field.
class EisensteinG2Field final : public MatrixFunctionField {
 public:
  explicit EisensteinG2Field(int terms);
  ComplexMatrix value(const SiegelPoint& z) const override;
  std::string name() const override { return "iG2"; }

 private:
  ScaledSeries g2_;
};

inline cplx scalar_point(const SiegelPoint& z) { return {z.real_part()(0, 0), z.imag_part()(0, 0)}; }
SiegelPoint point_from_scalar(cplx z);

}  // namespace siegel

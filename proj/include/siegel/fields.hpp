#pragma once

#include <functional>
#include <memory>
#include <string>

#include "siegel/linalg.hpp"
#include "siegel/metric.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

/// First-order holomorphic jet of a function at a point: its value and the
/// Wirtinger partials d/dZ_I over the independent coordinates, in N-order.
struct Jet {
  cplx value{0.0, 0.0};
  ComplexVector grad;

  static Jet constant(cplx value, int n) { return {value, ComplexVector::Zero(n)}; }

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator*=(cplx s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
};

/// A scalar function on H_g that can report its value and holomorphic jet.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual cplx value(const SiegelPoint& z) const = 0;
  virtual Jet jet(const SiegelPoint& z) const = 0;
};

/// Symmetric g x g matrix of functions (a candidate G, or the curvature
/// seed iY^{-1} of the Levi-Civita connection).
class MatrixFunctionField {
 public:
  virtual ~MatrixFunctionField() = default;
  virtual ComplexMatrix value(const SiegelPoint& z) const = 0;
  virtual std::string name() const = 0;
};

/// iY^{-1}.
class InverseImaginaryField final : public MatrixFunctionField {
 public:
  ComplexMatrix value(const SiegelPoint& z) const override;
  std::string name() const override { return "iY^-1"; }
};

/// Matrix of symmetrized partials: entry (i,j) is 2^{d(i,j)-1} df/dZ_ij, so
/// that df(V) = Tr(grad V) for symmetric V.
using SymmetrizedGradient = ComplexMatrix;

SymmetrizedGradient sym_gradient(const Jet& jet, int g);
SymmetrizedGradient sym_gradient(const ScalarField& f, const SiegelPoint& z);

/// Default central-difference step h = 1e-6 (1 + ||Z||_inf).
double default_step(const SiegelPoint& z);

struct WirtingerPair {
  cplx holomorphic;      // d/dZ_J
  cplx antiholomorphic;  // d/d(conj Z_J)
};

/// Central differences of a scalar function along X_J and Y_J, combined as
/// d/dZ = (d/dX - i d/dY)/2 and d/dZbar = (d/dX + i d/dY)/2.
WirtingerPair wirtinger_difference(const std::function<cplx(const SiegelPoint&)>& f,
                                   const SiegelPoint& z, const OmegaIndex& j, double step);

/// Jet of f built from finite differences of its values.
Jet finite_difference_jet(const std::function<cplx(const SiegelPoint&)>& f, const SiegelPoint& z,
                          double step);

/// Wraps a field and replaces its analytic jet with a finite-difference one.
class FiniteDifferenceField final : public ScalarField {
 public:
  explicit FiniteDifferenceField(const ScalarField& inner, double step = 0.0)
      : inner_(inner), step_(step) {}
  cplx value(const SiegelPoint& z) const override { return inner_.value(z); }
  Jet jet(const SiegelPoint& z) const override;

 private:
  const ScalarField& inner_;
  double step_;
};

}  // namespace siegel

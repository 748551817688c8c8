#include "siegel/fields.hpp"

#include "siegel/errors.hpp"

namespace siegel {

Jet& Jet::operator+=(const Jet& other) {
  value += other.value;
  grad += other.grad;
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  value -= other.value;
  grad -= other.grad;
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  grad = grad * other.value + value * other.grad;
  value *= other.value;
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  value *= s;
  grad *= s;
  return *this;
}

ComplexMatrix InverseImaginaryField::value(const SiegelPoint& z) const {
  return kImagUnit * to_complex(MetricPair(z).inverse_imag());
}

SymmetrizedGradient sym_gradient(const Jet& jet, int g) {
  if (jet.grad.size() != omega_size(g)) throw DimensionError("jet has the wrong size");
  SymmetrizedGradient out(g, g);
  int pos = 0;
  for (const auto& index : enumerate_omega(g)) {
    const cplx d = jet.grad(pos++);
    if (index.i == index.j) {
      out(index.i - 1, index.i - 1) = d;
    } else {
      out(index.i - 1, index.j - 1) = out(index.j - 1, index.i - 1) = 0.5 * d;
    }
  }
  return out;
}

SymmetrizedGradient sym_gradient(const ScalarField& f, const SiegelPoint& z) {
  return sym_gradient(f.jet(z), z.degree());
}

double default_step(const SiegelPoint& z) {
  const double norm = std::max(max_abs(z.real_part()), max_abs(z.imag_part()));
  return 1e-6 * (1.0 + norm);
}

WirtingerPair wirtinger_difference(const std::function<cplx(const SiegelPoint&)>& f,
                                   const SiegelPoint& z, const OmegaIndex& j, double step) {
  const RealMatrix e = symmetric_unit(z.degree(), j);
  const RealMatrix& x = z.real_part();
  const RealMatrix& y = z.imag_part();
  const cplx dx = (f(SiegelPoint(x + step * e, y)) - f(SiegelPoint(x - step * e, y))) / (2 * step);
  const cplx dy = (f(SiegelPoint(x, y + step * e)) - f(SiegelPoint(x, y - step * e))) / (2 * step);
  return {0.5 * (dx - kImagUnit * dy), 0.5 * (dx + kImagUnit * dy)};
}

Jet finite_difference_jet(const std::function<cplx(const SiegelPoint&)>& f, const SiegelPoint& z,
                          double step) {
  const auto omega = enumerate_omega(z.degree());
  Jet out = Jet::constant(f(z), static_cast<int>(omega.size()));
  for (std::size_t n = 0; n < omega.size(); ++n) {
    out.grad(static_cast<Eigen::Index>(n)) = wirtinger_difference(f, z, omega[n], step).holomorphic;
  }
  return out;
}

Jet FiniteDifferenceField::jet(const SiegelPoint& z) const {
  const double h = step_ > 0.0 ? step_ : default_step(z);
  return finite_difference_jet([this](const SiegelPoint& p) { return inner_.value(p); }, z, h);
}

}  // namespace siegel

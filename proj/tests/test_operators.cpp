#include <doctest.h>

#include <numbers>

#include "siegel/operators.hpp"

using namespace siegel;

namespace {

IntMatrix int1(std::int64_t v) {
  IntMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

SymplecticElement sl2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return SymplecticElement(int1(a), int1(b), int1(c), int1(d));
}

}  // namespace

TEST_CASE("Jet arithmetic") {
  Jet a{cplx(2.0, 0.0), ComplexVector::Constant(2, cplx(1.0, 0.0))};
  Jet b{cplx(0.0, 1.0), ComplexVector::Constant(2, cplx(3.0, 0.0))};
  const Jet p = a * b;
  CHECK(p.value == cplx(0.0, 2.0));
  CHECK(p.grad(0) == cplx(6.0, 1.0));
}

TEST_CASE("test function derivatives are exact") {
  const TestFunction z12 = TestFunction::entry(2, 1, 2);
  const TestFunction f = z12 * z12 * TestFunction::entry(2, 1, 1);
  CHECK(f.derivative(1) == TestFunction::entry(2, 1, 2) * TestFunction::entry(2, 1, 1) * cplx(2.0, 0.0));
  CHECK(f.derivative(2).is_zero());
  CHECK(TestFunction::conj_variable(2, {1, 1}).conj_derivative(0) == TestFunction::constant(2, {1, 0}));
}

TEST_CASE("symmetrized gradient of det is det(Z) Z^-1") {
  for (int g = 1; g <= 4; ++g) {
    const SiegelPoint z = random_point(g, 3 + g);
    const ComplexMatrix zm = z.matrix();
    const ComplexMatrix expected = zm.determinant() * zm.inverse();
    CHECK(scaled_difference(sym_gradient(TestFunction::determinant(g), z), expected) < 1e-12);
    CHECK(sym_gradient_residual(TestFunction::determinant(g), z) < 1e-10);
  }
}

TEST_CASE("nabla of Z at i for g = 1") {
  const SiegelPoint z = point_from_scalar({0.0, 1.0});
  const TestFunction f = TestFunction::variable(1, {1, 1});
  // 1 - k (i/y) z at z = i with k = 1.
  CHECK(std::abs(nabla(f, z, 1)(0, 0) - cplx(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(nabla(f, z, 0)(0, 0) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("generic G path with iY^-1 reproduces the default") {
  const SiegelPoint z = random_point(3, 9);
  const TestFunction f = TestFunction::random(3, 10);
  CHECK(max_abs(nabla(f, z, 2) - nabla(f, z, 2, InverseImaginaryField())) < 1e-14);
}

TEST_CASE("modular extension transforms with weight") {
  const SymplecticElement gamma = random_symplectic(2, 4, 11);
  const SiegelPoint z = random_point(2, 12);
  const TestFunction f = TestFunction::random(2, 13);
  const ModularExtension big_f(f, 4, gamma);
  const cplx expected = std::pow(cocycle(gamma, z).determinant(), 4) * f.value(z);
  CHECK(std::abs(big_f.value(act(gamma, z)) - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("chain rule jet against finite differences") {
  const SymplecticElement gamma = random_symplectic(2, 3, 14);
  const SiegelPoint w = random_point(2, 15);
  const TestFunction f = TestFunction::random(2, 16);
  const Jet chain = ModularExtension(f, 2, gamma).jet(w);
  const Jet fd = ModularExtension(f, 2, gamma, GradientMode::FiniteDifference).jet(w);
  CHECK(max_abs(chain.grad - fd.grad) < 1e-5 * std::max(1.0, max_abs(chain.grad)));
}

TEST_CASE("nabla transformation law") {
  for (int g = 1; g <= 3; ++g) {
    for (int k = 1; k <= 2; ++k) {
      const SymplecticElement gamma = random_symplectic(g, 5, 20 + g * 3 + k);
      const SiegelPoint z = random_point(g, 30 + g * 3 + k);
      const TestFunction f = TestFunction::random(g, 40 + g * 3 + k);
      const NablaTransform t = verify_nabla_transform(f, gamma, z, k);
      CHECK(t.matrix_residual < 1e-7);
      if (t.det_relative) CHECK(*t.det_relative < 1e-7);
    }
  }
}

TEST_CASE("G law for iY^-1") {
  for (int g = 1; g <= 3; ++g) {
    CHECK(verify_G_law(InverseImaginaryField(), random_symplectic(g, 6, 50 + g), random_point(g, 60 + g)) < 1e-10);
  }
  CHECK(verify_G_law(InverseImaginaryField(), SymplecticElement::identity(2), random_point(2, 1)) == 0.0);
}

TEST_CASE("brackets") {
  const SiegelPoint z = random_point(2, 70);
  const TestFunction f = TestFunction::random(2, 71), h = TestFunction::random(2, 72);
  CHECK(bracket1(f, f, z) == cplx(0.0, 0.0));
  // det(-A) = det(A) for g = 2.
  CHECK(std::abs(bracket1(f, h, z) - bracket1(h, f, z)) < 1e-9 * std::max(1.0, std::abs(bracket1(f, h, z))));
  const SymplecticElement gamma = SymplecticElement::inversion(2) * random_symplectic(2, 3, 73);
  const BracketTransform equal = bracket1_transform(f, h, 1, 1, gamma, z);
  CHECK(equal.residual < 1e-7);
  const BracketTransform unequal = bracket1_transform(f, h, 1, 2, gamma, z);
  CHECK(unequal.residual > 1e-6);
  CHECK(unequal.defect_mismatch < 1e-7);
  const BracketTransform weighted = bracket1_transform(f, h, 1, 2, gamma, z, true);
  CHECK(weighted.residual < 1e-7);
}

TEST_CASE("iG2 operator on E4 is holomorphic and equals the Serre derivative") {
  const QSeries e4 = eisenstein(4, 200);
  const QSeriesFunction f(e4);
  const EisensteinG2Field g2(200);
  const SiegelPoint z = point_from_scalar({0.1, 1.1});
  const cplx value = nabla(f, z, 2, g2)(0, 0);
  const cplx serre = cplx(0.0, 2.0 * std::numbers::pi) * evaluate(serre_derivative(e4), scalar_point(z));
  CHECK(std::abs(value - serre) < 1e-8 * std::abs(serre));
  auto op = [&](const SiegelPoint& p) { return nabla(f, p, 2, g2)(0, 0); };
  CHECK(std::abs(wirtinger_difference(op, z, {1, 1}, default_step(z)).antiholomorphic) < 1e-6);
}

TEST_CASE("iG2 obeys the G law") {
  const EisensteinG2Field g2(300);
  for (const auto& gamma : {sl2(0, -1, 1, 0), sl2(1, 1, 0, 1), sl2(1, 1, 1, 2)}) {
    CHECK(verify_G_law(g2, gamma, point_from_scalar({0.15, 1.05})) < 1e-6);
  }
}

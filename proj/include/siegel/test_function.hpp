#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "siegel/fields.hpp"

namespace siegel {

/// Exact complex rational a + bi.
struct GaussianRational {
  mpq_class re{0};
  mpq_class im{0};

  static GaussianRational from(cplx value);  // exact: doubles are dyadic rationals

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  cplx to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Sparse polynomial in the coordinates Z_I and optionally conj(Z_I), I in
/// Omega, with exact Gaussian-rational coefficients. Evaluation runs in exact
/// arithmetic on the (dyadic) input point and rounds once at the end.
class TestFunction final : public ScalarField {
 public:
  // Exponents: first n entries for Z_I, next n for conj(Z_I), N-order.
  using Exponents = std::vector<std::uint8_t>;

  explicit TestFunction(int g);

  static TestFunction constant(int g, const GaussianRational& c);
  static TestFunction variable(int g, const OmegaIndex& index);
  static TestFunction conj_variable(int g, const OmegaIndex& index);
  /// Z_ab for arbitrary 1-based a, b (the symmetric entry).
  static TestFunction entry(int g, int a, int b);
  static TestFunction determinant(int g);
  /// Sparse holomorphic polynomial of total degree <= max_degree with small
  /// integer coefficients; conj terms are mixed in when with_conj is set.
  static TestFunction random(int g, std::uint64_t seed, int max_degree = 3, bool with_conj = false);

  int degree() const { return g_; }
  int variables() const { return n_; }
  const std::map<Exponents, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_holomorphic() const;

  TestFunction& operator+=(const TestFunction& o);
  TestFunction& operator-=(const TestFunction& o);
  TestFunction& operator*=(const TestFunction& o);
  TestFunction& operator*=(const GaussianRational& c);
  friend TestFunction operator+(TestFunction a, const TestFunction& b) { return a += b; }
  friend TestFunction operator-(TestFunction a, const TestFunction& b) { return a -= b; }
  friend TestFunction operator*(TestFunction a, const TestFunction& b) { return a *= b; }
  friend TestFunction operator*(TestFunction a, const GaussianRational& c) { return a *= c; }
  friend TestFunction operator*(TestFunction a, cplx c) { return a *= GaussianRational::from(c); }
  friend bool operator==(const TestFunction& a, const TestFunction& b) {
    return a.g_ == b.g_ && a.terms_ == b.terms_;
  }

  /// d/dZ_I (position 0-based, N-order).
  TestFunction derivative(int position) const;
  /// d/d(conj Z_I).
  TestFunction conj_derivative(int position) const;

  GaussianRational exact_value(const SiegelPoint& z) const;
  cplx value(const SiegelPoint& z) const override;
  Jet jet(const SiegelPoint& z) const override;
  ComplexVector conj_gradient(const SiegelPoint& z) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const GaussianRational& c);
  TestFunction partial(int variable) const;

  int g_;
  int n_;
  std::map<Exponents, GaussianRational> terms_;
};

bool is_zero(const TestFunction& f);

/// Symmetric g x g matrix of test functions.
class PolynomialMatrixField final : public MatrixFunctionField {
 public:
  explicit PolynomialMatrixField(std::vector<std::vector<TestFunction>> entries);

  /// Random symmetric matrix of holomorphic test functions.
  static PolynomialMatrixField random(int g, std::uint64_t seed, int max_degree = 2);

  int degree() const { return static_cast<int>(entries_.size()); }
  const TestFunction& entry(int i, int j) const { return entries_[i][j]; }
  ComplexMatrix value(const SiegelPoint& z) const override;
  std::string name() const override { return "polynomial"; }

 private:
  std::vector<std::vector<TestFunction>> entries_;
};

}  // namespace siegel

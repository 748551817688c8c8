#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "siegel/connection.hpp"
#include "siegel/errors.hpp"
#include "siegel/fields.hpp"
#include "siegel/test_function.hpp"

namespace siegel {

/// Commutative monomial dZ_{I1} ... dZ_{Ir}: sorted positions (N-order, 0-based).
using Monomial = std::vector<std::uint8_t>;

Monomial monomial_product(const Monomial& a, const Monomial& b);

inline bool coefficient_is_zero(cplx c) { return c == cplx{0.0, 0.0}; }
inline bool coefficient_is_zero(const Jet& c) {
  return c.value == cplx{0.0, 0.0} && (c.grad.size() == 0 || c.grad.isZero(0.0));
}
inline bool coefficient_is_zero(const TestFunction& c) { return c.is_zero(); }

/// Polynomial in the commuting generators dZ_I with coefficients in a ring
/// (numbers, jets, or test functions). Zero coefficients are never stored.
template <class Coeff>
class FormPolynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  explicit FormPolynomial(int g) : g_(g), n_(omega_size(g)) {}

  int degree() const { return g_; }
  int generators() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Monomial& m, const Coeff& c) {
    for (auto p : m) {
      if (p >= n_) throw DimensionError("monomial generator out of range");
    }
    if (coefficient_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (coefficient_is_zero(it->second)) terms_.erase(it);
  }

  /// Smallest and largest monomial length; {0, 0} for the zero form.
  std::pair<int, int> degree_range() const {
    if (terms_.empty()) return {0, 0};
    int lo = 1 << 30, hi = 0;
    for (const auto& [m, c] : terms_) {
      lo = std::min(lo, static_cast<int>(m.size()));
      hi = std::max(hi, static_cast<int>(m.size()));
    }
    return {lo, hi};
  }

  FormPolynomial& operator+=(const FormPolynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  FormPolynomial& operator-=(const FormPolynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, c * cplx{-1.0, 0.0});
    return *this;
  }
  friend FormPolynomial operator+(FormPolynomial a, const FormPolynomial& b) { return a += b; }
  friend FormPolynomial operator-(FormPolynomial a, const FormPolynomial& b) { return a -= b; }
  friend FormPolynomial operator*(const FormPolynomial& a, const FormPolynomial& b) {
    a.check_same(b);
    FormPolynomial out(a.g_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add(monomial_product(ma, mb), ca * cb);
    }
    return out;
  }

 private:
  void check_same(const FormPolynomial& o) const {
    if (o.g_ != g_) throw DimensionError("forms of different degree");
  }

  int g_;
  int n_;
  Terms terms_;
};

using ComplexForm = FormPolynomial<cplx>;
using JetForm = FormPolynomial<Jet>;
using FunctionForm = FormPolynomial<TestFunction>;

ComplexForm scaled(const ComplexForm& form, cplx s);
ComplexForm power(const ComplexForm& form, int k);

/// Drops coefficients below 1e-14 of the largest one.
ComplexForm pruned(const ComplexForm& form);

ComplexForm generator_form(int g, const OmegaIndex& index, cplx coefficient = 1.0);
ComplexForm constant_form(int g, cplx value);
/// det(dZ), expanded over permutations.
ComplexForm det_form(int g);
/// Tr(A dZ) = sum_ab A_ab dZ_ba.
ComplexForm trace_form(const ComplexMatrix& a);

JetForm to_jets(const FunctionForm& form, const SiegelPoint& z);
JetForm constant_jets(const ComplexForm& form);
ComplexForm values(const JetForm& form);

/// D on a form with jet coefficients: holomorphic df plus the Leibniz sum
/// over factors with D(dZ_K) = -sum_IJ Gamma_IJ^K dZ_I dZ_J.
ComplexForm apply_D(const ConnectionTable& table, const JetForm& form);
ComplexForm apply_D(const ConnectionTable& table, const FunctionForm& form, const SiegelPoint& z);

/// D(dZ_rs) = -sum_ab H_ab dZ_sa dZ_rb.
ComplexForm d_generator_closed(const ComplexMatrix& seed, const OmegaIndex& k);
/// D(det dZ) = -Tr(H dZ) det(dZ).
ComplexForm d_det_closed(const ComplexMatrix& seed);

/// Tr(A dZ) det(dZ)^k kept in factored form.
struct FactoredForm {
  ComplexMatrix trace_matrix;
  int det_power = 0;
  ComplexForm expand() const;
};

/// D(f det(dZ)^k) = Tr([d/dZ - kH] f dZ) det(dZ)^k.
FactoredForm d_f_detk(const ComplexMatrix& seed, const Jet& f, int k, int g);

/// Tr(G dZ) with function coefficients.
FunctionForm trace_function_form(const PolynomialMatrixField& g_field);

/// D(Tr(G dZ)) = Tr{[(d/dZ)^t (x) G][dZ (x) dZ]} - Tr(G dZ H dZ), with the
/// Kronecker products built literally.
ComplexForm d_trace_form(const ComplexMatrix& seed, const PolynomialMatrixField& g_field,
                         const SiegelPoint& z);

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

struct KroneckerTraces {
  cplx mixed;         // Tr((A (x) B)(C (x) D))
  cplx factored;      // Tr(AC) Tr(BD)
  cplx index_sum;     // sum a_ij b_kl c_lk d_ji
  cplx swapped;       // Tr((A (x) C)(B (x) D))
};

KroneckerTraces kronecker_traces(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c, const ComplexMatrix& d);

double max_coefficient_difference(const ComplexForm& a, const ComplexForm& b);
/// Difference relative to max(1, largest coefficient of either form).
double form_residual(const ComplexForm& a, const ComplexForm& b);

/// gamma^* of a form given at gamma Z: coefficients composed with gamma and
/// dW_K replaced by sum_J S_JK dZ_J. The jet version carries dS.
JetForm pullback_jets(const JetForm& at_image, const SymplecticElement& gamma,
                      const SiegelPoint& z);
ComplexForm pullback(const ComplexForm& at_image, const SymplecticElement& gamma,
                     const SiegelPoint& z);

/// || D(gamma^* form) - gamma^*(D form) || scaled, with the form's
/// coefficients evaluated at gamma Z.
double equivariance_residual(const ConnectionSource& source, const SymplecticElement& gamma,
                             const SiegelPoint& z, const FunctionForm& form);
double equivariance_residual(const ConnectionSource& source, const SymplecticElement& gamma,
                             const SiegelPoint& z,
                             const std::function<JetForm(const SiegelPoint&)>& form);

/// Random form of degree <= max_degree in dZ with random test-function
/// coefficients.
FunctionForm random_function_form(int g, std::uint64_t seed, int max_degree = 2);

}  // namespace siegel

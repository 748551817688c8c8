#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "siegel/linalg.hpp"

namespace siegel {

/// num/den in lowest terms.
mpq_class rational(long num, long den);

/// Truncated q-expansion c_0 + c_1 q + ... + c_{n-1} q^{n-1} with exact
/// rational coefficients and an optional declared weight.
class QSeries {
 public:
  explicit QSeries(std::vector<mpq_class> coefficients, std::optional<int> weight = std::nullopt);
  static QSeries constant(const mpq_class& c, int n, std::optional<int> weight = std::nullopt);

  int length() const { return static_cast<int>(coefficients_.size()); }
  const mpq_class& operator[](int m) const { return coefficients_.at(m); }
  const std::vector<mpq_class>& coefficients() const { return coefficients_; }
  std::optional<int> weight() const { return weight_; }
  QSeries with_weight(std::optional<int> weight) const;
  QSeries truncated(int n) const;
  bool is_zero() const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o);
  QSeries& operator*=(const mpq_class& s);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }
  friend QSeries operator*(QSeries a, const mpq_class& s) { return a *= s; }
  friend QSeries operator*(const mpq_class& s, QSeries a) { return a *= s; }
  /// Coefficients equal on the common length.
  friend bool operator==(const QSeries& a, const QSeries& b);

  /// theta = q d/dq; the weight is dropped since theta f is not modular.
  QSeries theta() const;

  std::string to_string() const;  // "c0, c1, ..." with exact p/q entries

 private:
  std::vector<mpq_class> coefficients_;
  std::optional<int> weight_;
};

/// rational * pi^pi_power * (2 pi i)^two_pi_i_power, kept symbolic.
struct Prefactor {
  mpq_class rational{1};
  int pi_power = 0;
  int two_pi_i_power = 0;

  cplx value() const;
  std::string to_string() const;
  friend Prefactor operator*(const Prefactor& a, const Prefactor& b);
};

struct ScaledSeries {
  Prefactor prefactor;
  QSeries series;
};

/// E_k for k in {2, 4, 6}: 1 - (2k/B_k) sum sigma_{k-1}(m) q^m.
QSeries eisenstein(int k, int n);
/// G2 := (pi/3) E2.
ScaledSeries g2_series(int n);
/// Delta = (E4^3 - E6^2)/1728.
QSeries delta(int n);

/// theta f - (w/12) E2 f for f of declared weight w.
QSeries serre_derivative(const QSeries& f);
/// h theta f - f theta h.
QSeries bracket1_classical(const QSeries& f, const QSeries& h);
/// s h theta f - r f theta h for weights 2r and 2s.
QSeries bracket1_weighted_classical(const QSeries& f, const QSeries& h);

/// Coefficient bound |c_m| <= A m^p behind the truncation estimate.
struct TailBound {
  double a = 0.0;
  int p = 0;
  double bound(int n, double abs_q) const;
};

TailBound tail_bound(const QSeries& f);
/// Terms needed for a tail below the threshold, or -1 if it is never reached.
int required_terms(const QSeries& f, cplx z, double threshold = 1e-9);

/// Horner evaluation at q = exp(2 pi i z), times the prefactor. Throws
/// TruncationError when the tail estimate exceeds 1e-9.
cplx evaluate(const QSeries& f, cplx z, const Prefactor& prefactor = {});
cplx evaluate(const ScaledSeries& f, cplx z);

int classical_dimension(int w);

/// Monomials E4^a E6^b with 4a + 6b = w.
struct ModularBasis {
  int weight = 0;
  std::vector<std::pair<int, int>> exponents;
  std::vector<QSeries> elements;
};

ModularBasis modular_basis(int w, int n);

struct Membership {
  bool member = false;
  std::vector<mpq_class> coordinates;
};

/// Exact solve against the E4^a E6^b basis; needs at least dim + 5 terms.
Membership membership_in_Mw(const QSeries& f, int w);
bool in_cusp_space(const QSeries& f, int w);

/// The matrix (a b; c d) of SL2(Z) acting on the upper half plane.
struct Sl2Element {
  long a = 1, b = 0, c = 0, d = 1;
};

cplx mobius(const Sl2Element& gamma, cplx z);

struct AnomalyTerms {
  cplx lhs;  // i G2(gamma z) / (cz+d)^2
  cplx rhs;  // i G2(z) + 2c/(cz+d)
  double residual = 0.0;
};

AnomalyTerms g2_anomaly(const Sl2Element& gamma, cplx z, int terms);

}  // namespace siegel

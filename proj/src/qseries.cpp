#include "siegel/qseries.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "siegel/errors.hpp"

namespace siegel {

QSeries::QSeries(std::vector<mpq_class> coefficients, std::optional<int> weight)
    : coefficients_(std::move(coefficients)), weight_(weight) {
  if (coefficients_.empty()) throw DomainError("q-series needs at least one coefficient");
  for (auto& c : coefficients_) c.canonicalize();
}

QSeries QSeries::constant(const mpq_class& c, int n, std::optional<int> weight) {
  if (n < 1) throw DomainError("q-series needs at least one coefficient");
  std::vector<mpq_class> coeffs(n, mpq_class(0));
  coeffs[0] = c;
  return QSeries(std::move(coeffs), weight);
}

QSeries QSeries::with_weight(std::optional<int> weight) const {
  QSeries out = *this;
  out.weight_ = weight;
  return out;
}

QSeries QSeries::truncated(int n) const {
  if (n < 1 || n > length()) throw DomainError("truncation out of range");
  return QSeries(std::vector<mpq_class>(coefficients_.begin(), coefficients_.begin() + n), weight_);
}

bool QSeries::is_zero() const {
  for (const auto& c : coefficients_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  coefficients_.resize(std::min(length(), o.length()));
  for (int m = 0; m < length(); ++m) coefficients_[m] += o.coefficients_[m];
  if (weight_ != o.weight_) weight_.reset();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  coefficients_.resize(std::min(length(), o.length()));
  for (int m = 0; m < length(); ++m) coefficients_[m] -= o.coefficients_[m];
  if (weight_ != o.weight_) weight_.reset();
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) {
  const int n = std::min(length(), o.length());
  std::vector<mpq_class> out(n, mpq_class(0));
  for (int i = 0; i < n; ++i) {
    if (sgn(coefficients_[i]) == 0) continue;
    for (int j = 0; i + j < n; ++j) out[i + j] += coefficients_[i] * o.coefficients_[j];
  }
  coefficients_ = std::move(out);
  if (weight_ && o.weight_) {
    weight_ = *weight_ + *o.weight_;
  } else {
    weight_.reset();
  }
  return *this;
}

QSeries& QSeries::operator*=(const mpq_class& s) {
  for (auto& c : coefficients_) c *= s;
  return *this;
}

bool operator==(const QSeries& a, const QSeries& b) {
  const int n = std::min(a.length(), b.length());
  for (int m = 0; m < n; ++m) {
    if (a.coefficients_[m] != b.coefficients_[m]) return false;
  }
  return true;
}

QSeries QSeries::theta() const {
  std::vector<mpq_class> out(coefficients_.size());
  for (int m = 0; m < length(); ++m) out[m] = coefficients_[m] * m;
  return QSeries(std::move(out));
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  for (int m = 0; m < length(); ++m) {
    if (m > 0) os << ", ";
    os << coefficients_[m].get_str();
  }
  return os.str();
}

cplx Prefactor::value() const {
  const double pi = std::numbers::pi;
  cplx out = rational.get_d() * std::pow(pi, pi_power);
  const cplx two_pi_i(0.0, 2.0 * pi);
  for (int i = 0; i < std::abs(two_pi_i_power); ++i) {
    out = two_pi_i_power > 0 ? out * two_pi_i : out / two_pi_i;
  }
  return out;
}

std::string Prefactor::to_string() const {
  std::ostringstream os;
  os << rational.get_str();
  if (pi_power != 0) os << "*pi" << (pi_power != 1 ? "^" + std::to_string(pi_power) : "");
  if (two_pi_i_power != 0) {
    os << "*(2*pi*i)" << (two_pi_i_power != 1 ? "^" + std::to_string(two_pi_i_power) : "");
  }
  return os.str();
}

mpq_class rational(long num, long den) {
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

Prefactor operator*(const Prefactor& a, const Prefactor& b) {
  return {a.rational * b.rational, a.pi_power + b.pi_power, a.two_pi_i_power + b.two_pi_i_power};
}

namespace {

mpz_class divisor_power_sum(long m, unsigned power) {
  mpz_class sum = 0;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), power);
    sum += term;
    const long e = m / d;
    if (e != d) {
      mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(e), power);
      sum += term;
    }
  }
  return sum;
}

}  // namespace

QSeries eisenstein(int k, int n) {
  if (n < 1) throw DomainError("q-series needs at least one coefficient");
  long factor = 0;
  switch (k) {
    case 2: factor = -24; break;
    case 4: factor = 240; break;
    case 6: factor = -504; break;
    default: throw DomainError("eisenstein series only for k = 2, 4, 6");
  }
  std::vector<mpq_class> coeffs(n);
  coeffs[0] = 1;
  for (long m = 1; m < n; ++m) coeffs[m] = mpq_class(divisor_power_sum(m, k - 1) * factor);
  return QSeries(std::move(coeffs), k);
}

ScaledSeries g2_series(int n) { return {Prefactor{mpq_class(1, 3), 1, 0}, eisenstein(2, n)}; }

QSeries delta(int n) {
  const QSeries e4 = eisenstein(4, n);
  const QSeries e6 = eisenstein(6, n);
  return ((e4 * e4 * e4 - e6 * e6) * mpq_class(1, 1728)).with_weight(12);
}

QSeries serre_derivative(const QSeries& f) {
  if (!f.weight()) throw ContractViolation("serre derivative needs a declared weight");
  const int w = *f.weight();
  QSeries out = f.theta() - rational(w, 12) * (eisenstein(2, f.length()).with_weight(std::nullopt) * f);
  return out.with_weight(w + 2);
}

QSeries bracket1_classical(const QSeries& f, const QSeries& h) {
  if (!f.weight() || !h.weight()) throw ContractViolation("bracket needs declared weights");
  QSeries out = h.with_weight(std::nullopt) * f.theta() - f.with_weight(std::nullopt) * h.theta();
  return out.with_weight(*f.weight() + *h.weight() + 2);
}

QSeries bracket1_weighted_classical(const QSeries& f, const QSeries& h) {
  if (!f.weight() || !h.weight()) throw ContractViolation("bracket needs declared weights");
  const mpq_class r = rational(*f.weight(), 2), s = rational(*h.weight(), 2);
  QSeries out = s * (h.with_weight(std::nullopt) * f.theta()) -
                r * (f.with_weight(std::nullopt) * h.theta());
  return out.with_weight(*f.weight() + *h.weight() + 2);
}

double TailBound::bound(int n, double abs_q) const {
  if (a == 0.0) return 0.0;
  const double m = std::max(n, 1);
  const double ratio = std::pow((m + 1.0) / m, p) * abs_q;
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return a * std::pow(m, p) * std::pow(abs_q, m) / (1.0 - ratio);
}

TailBound tail_bound(const QSeries& f) {
  TailBound out;
  out.p = f.weight() ? std::max(*f.weight(), 2) : 12;
  for (int m = 1; m < f.length(); ++m) {
    out.a = std::max(out.a, std::abs(f[m].get_d()) / std::pow(static_cast<double>(m), out.p));
  }
  return out;
}

int required_terms(const QSeries& f, cplx z, double threshold) {
  if (z.imag() <= 0.0) throw DomainError("evaluation point must lie in the upper half plane");
  const double abs_q = std::exp(-2.0 * std::numbers::pi * z.imag());
  const TailBound tb = tail_bound(f);
  for (int n = 1; n <= 1000000; ++n) {
    if (tb.bound(n, abs_q) < threshold) return n;
  }
  return -1;
}

cplx evaluate(const QSeries& f, cplx z, const Prefactor& prefactor) {
  const int needed = required_terms(f, z);
  if (needed < 0 || needed > f.length()) {
    throw TruncationError("q-series truncated too early for this point", needed);
  }
  const cplx q = std::exp(cplx(0.0, 2.0 * std::numbers::pi) * z);
  cplx sum = 0.0;
  for (int m = f.length() - 1; m >= 0; --m) sum = sum * q + f[m].get_d();
  return prefactor.value() * sum;
}

cplx evaluate(const ScaledSeries& f, cplx z) { return evaluate(f.series, z, f.prefactor); }

int classical_dimension(int w) {
  if (w < 0 || w % 2 != 0) return 0;
  if (w == 2) return 0;
  return w % 12 == 2 ? w / 12 : w / 12 + 1;
}

ModularBasis modular_basis(int w, int n) {
  ModularBasis out;
  out.weight = w;
  if (w < 0 || w % 2 != 0) return out;
  const QSeries e4 = eisenstein(4, n);
  const QSeries e6 = eisenstein(6, n);
  for (int b = 0; 6 * b <= w; ++b) {
    const int rest = w - 6 * b;
    if (rest % 4 != 0) continue;
    const int a = rest / 4;
    QSeries element = QSeries::constant(1, n, 0);
    for (int i = 0; i < a; ++i) element *= e4;
    for (int i = 0; i < b; ++i) element *= e6;
    out.exponents.emplace_back(a, b);
    out.elements.push_back(element.with_weight(w));
  }
  return out;
}

Membership membership_in_Mw(const QSeries& f, int w) {
  const int dim = classical_dimension(w);
  if (f.length() < dim + 5) throw TruncationError("series too short for the membership test", dim + 5);
  Membership out;
  if (dim == 0) {
    out.member = f.is_zero();
    return out;
  }
  const ModularBasis basis = modular_basis(w, f.length());
  const int n = f.length();
  const int cols = static_cast<int>(basis.elements.size());
  // Augmented system [basis | f], rows indexed by q-power.
  std::vector<std::vector<mpq_class>> rows(n, std::vector<mpq_class>(cols + 1));
  for (int m = 0; m < n; ++m) {
    for (int c = 0; c < cols; ++c) rows[m][c] = basis.elements[c][m];
    rows[m][cols] = f[m];
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < n; ++c) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (sgn(rows[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      const mpq_class factor = rows[r][c] / rows[rank][c];
      for (int k = c; k <= cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < n; ++r) {
    if (sgn(rows[r][cols]) != 0) return out;
  }
  out.coordinates.assign(cols, mpq_class(0));
  for (int r = 0; r < rank; ++r) out.coordinates[pivot_col[r]] = rows[r][cols] / rows[r][pivot_col[r]];
  out.member = true;
  return out;
}

bool in_cusp_space(const QSeries& f, int w) { return sgn(f[0]) == 0 && membership_in_Mw(f, w).member; }

cplx mobius(const Sl2Element& gamma, cplx z) {
  return (static_cast<double>(gamma.a) * z + static_cast<double>(gamma.b)) /
         (static_cast<double>(gamma.c) * z + static_cast<double>(gamma.d));
}

AnomalyTerms g2_anomaly(const Sl2Element& gamma, cplx z, int terms) {
  if (gamma.a * gamma.d - gamma.b * gamma.c != 1) throw DomainError("element is not in SL2(Z)");
  const ScaledSeries g2 = g2_series(terms);
  const cplx j = static_cast<double>(gamma.c) * z + static_cast<double>(gamma.d);
  AnomalyTerms out;
  out.lhs = kImagUnit * evaluate(g2, mobius(gamma, z)) / (j * j);
  out.rhs = kImagUnit * evaluate(g2, z) + 2.0 * static_cast<double>(gamma.c) / j;
  out.residual = std::abs(out.lhs - out.rhs) / std::max(1.0, std::abs(out.rhs));
  return out;
}

}  // namespace siegel

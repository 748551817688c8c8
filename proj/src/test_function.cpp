#include "siegel/test_function.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "siegel/errors.hpp"
#include "siegel/random.hpp"

namespace siegel {

GaussianRational GaussianRational::from(cplx value) {
  GaussianRational out;
  out.re = mpq_class(value.real());
  out.im = mpq_class(value.imag());
  return out;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class new_re = re * o.re - im * o.im;
  mpq_class new_im = re * o.im + im * o.re;
  re = std::move(new_re);
  im = std::move(new_im);
  return *this;
}

TestFunction::TestFunction(int g) : g_(g), n_(omega_size(g)) {
  if (g < 1) throw DomainError("degree must be positive");
}

void TestFunction::add_term(const Exponents& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TestFunction TestFunction::constant(int g, const GaussianRational& c) {
  TestFunction f(g);
  f.add_term(Exponents(2 * f.n_, 0), c);
  return f;
}

TestFunction TestFunction::variable(int g, const OmegaIndex& index) {
  TestFunction f(g);
  Exponents e(2 * f.n_, 0);
  e[omega_position(index, g)] = 1;
  f.add_term(e, GaussianRational{1, 0});
  return f;
}

TestFunction TestFunction::conj_variable(int g, const OmegaIndex& index) {
  TestFunction f(g);
  Exponents e(2 * f.n_, 0);
  e[f.n_ + omega_position(index, g)] = 1;
  f.add_term(e, GaussianRational{1, 0});
  return f;
}

TestFunction TestFunction::entry(int g, int a, int b) { return variable(g, omega_of(a, b)); }

TestFunction TestFunction::determinant(int g) {
  std::vector<int> perm(g);
  std::iota(perm.begin(), perm.end(), 1);
  TestFunction det(g);
  do {
    int inversions = 0;
    for (int a = 0; a < g; ++a) {
      for (int b = a + 1; b < g; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
    }
    TestFunction term = constant(g, GaussianRational{inversions % 2 == 0 ? 1 : -1, 0});
    for (int row = 1; row <= g; ++row) term *= entry(g, row, perm[row - 1]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

TestFunction TestFunction::random(int g, std::uint64_t seed, int max_degree, bool with_conj) {
  Rng rng(seed);
  TestFunction f(g);
  const int n = f.n_;
  const int term_count = static_cast<int>(rng.integer(3, 6));
  for (int t = 0; t < term_count; ++t) {
    const int deg = static_cast<int>(rng.integer(t == 0 ? 1 : 0, max_degree));
    Exponents e(2 * n, 0);
    for (int v = 0; v < deg; ++v) {
      auto var = rng.integer(0, n - 1);
      if (with_conj && rng.integer(0, 2) == 0) var += n;
      ++e[var];
    }
    std::int64_t re = 0;
    while (re == 0) re = rng.integer(-3, 3);
    const std::int64_t im = rng.integer(-2, 2);
    f.add_term(e, GaussianRational{mpq_class(static_cast<long>(re)), mpq_class(static_cast<long>(im))});
  }
  return f;
}

bool TestFunction::is_holomorphic() const {
  for (const auto& [e, c] : terms_) {
    for (int v = n_; v < 2 * n_; ++v) {
      if (e[v] != 0) return false;
    }
  }
  return true;
}

TestFunction& TestFunction::operator+=(const TestFunction& o) {
  if (o.g_ != g_) throw DimensionError("test functions of different degree");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TestFunction& TestFunction::operator-=(const TestFunction& o) {
  if (o.g_ != g_) throw DimensionError("test functions of different degree");
  for (const auto& [e, c] : o.terms_) add_term(e, GaussianRational{-c.re, -c.im});
  return *this;
}

TestFunction& TestFunction::operator*=(const TestFunction& o) {
  if (o.g_ != g_) throw DimensionError("test functions of different degree");
  TestFunction product(g_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint8_t>(ea[v] + eb[v]);
      product.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

TestFunction& TestFunction::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coefficient] : terms_) coefficient *= c;
  return *this;
}

TestFunction TestFunction::partial(int variable) const {
  TestFunction out(g_);
  for (const auto& [e, c] : terms_) {
    if (e[variable] == 0) continue;
    Exponents reduced = e;
    --reduced[variable];
    out.add_term(reduced, c * GaussianRational{e[variable], 0});
  }
  return out;
}

TestFunction TestFunction::derivative(int position) const {
  if (position < 0 || position >= n_) throw DomainError("coordinate out of range");
  return partial(position);
}

TestFunction TestFunction::conj_derivative(int position) const {
  if (position < 0 || position >= n_) throw DomainError("coordinate out of range");
  return partial(n_ + position);
}

GaussianRational TestFunction::exact_value(const SiegelPoint& z) const {
  if (z.degree() != g_) throw EvaluationError("test function evaluated at a point of another degree");
  const auto omega = enumerate_omega(g_);
  int max_power = 0;
  for (const auto& [e, c] : terms_) {
    for (auto p : e) max_power = std::max<int>(max_power, p);
  }
  // powers[v][p] = (variable v)^p
  std::vector<std::vector<GaussianRational>> powers(2 * n_);
  for (int v = 0; v < 2 * n_; ++v) {
    const OmegaIndex& index = omega[v % n_];
    const double x = z.real_part()(index.i - 1, index.j - 1);
    const double y = z.imag_part()(index.i - 1, index.j - 1);
    const GaussianRational base = GaussianRational::from(cplx(x, v < n_ ? y : -y));
    powers[v].push_back(GaussianRational{1, 0});
    for (int p = 1; p <= max_power; ++p) powers[v].push_back(powers[v].back() * base);
  }
  GaussianRational total;
  for (const auto& [e, c] : terms_) {
    GaussianRational term = c;
    for (int v = 0; v < 2 * n_; ++v) {
      if (e[v] != 0) term *= powers[v][e[v]];
    }
    total += term;
  }
  return total;
}

cplx TestFunction::value(const SiegelPoint& z) const { return exact_value(z).to_complex(); }

Jet TestFunction::jet(const SiegelPoint& z) const {
  Jet out = Jet::constant(value(z), n_);
  for (int pos = 0; pos < n_; ++pos) out.grad(pos) = derivative(pos).value(z);
  return out;
}

ComplexVector TestFunction::conj_gradient(const SiegelPoint& z) const {
  ComplexVector out(n_);
  for (int pos = 0; pos < n_; ++pos) out(pos) = conj_derivative(pos).value(z);
  return out;
}

std::string TestFunction::to_string() const {
  if (terms_.empty()) return "0";
  const auto omega = enumerate_omega(g_);
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.re.get_str() << (sgn(c.im) < 0 ? "" : "+") << c.im.get_str() << "i)";
    for (int v = 0; v < 2 * n_; ++v) {
      if (e[v] == 0) continue;
      const OmegaIndex& index = omega[v % n_];
      os << "*" << (v < n_ ? "Z" : "conjZ") << index.i << index.j;
      if (e[v] > 1) os << "^" << static_cast<int>(e[v]);
    }
  }
  return os.str();
}

bool is_zero(const TestFunction& f) { return f.is_zero(); }

PolynomialMatrixField::PolynomialMatrixField(std::vector<std::vector<TestFunction>> entries)
    : entries_(std::move(entries)) {
  const auto g = entries_.size();
  for (std::size_t i = 0; i < g; ++i) {
    if (entries_[i].size() != g) throw DimensionError("matrix field must be square");
    for (std::size_t j = 0; j < i; ++j) {
      if (!(entries_[i][j] == entries_[j][i])) throw ContractViolation("matrix field must be symmetric");
    }
  }
}

PolynomialMatrixField PolynomialMatrixField::random(int g, std::uint64_t seed, int max_degree) {
  std::vector<std::vector<TestFunction>> entries(g, std::vector<TestFunction>(g, TestFunction(g)));
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      entries[i][j] = TestFunction::random(g, mix_seed(seed, i, j), max_degree);
      entries[j][i] = entries[i][j];
    }
  }
  return PolynomialMatrixField(std::move(entries));
}

ComplexMatrix PolynomialMatrixField::value(const SiegelPoint& z) const {
  const int g = degree();
  ComplexMatrix out(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) out(i, j) = out(j, i) = entries_[i][j].value(z);
  }
  return out;
}

}  // namespace siegel

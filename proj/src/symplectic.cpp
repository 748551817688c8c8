#include "siegel/symplectic.hpp"

#include <string>
#include <utility>

#include "siegel/errors.hpp"
#include "siegel/random.hpp"

namespace siegel {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kDefiniteTolerance = 1e-12;
constexpr double kConditionLimit = 1e12;

RealMatrix symmetrized(const RealMatrix& m, const char* name) {
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.transpose()) > kSymmetryTolerance * scale) {
    throw ContractViolation(std::string(name) + " is not symmetric");
  }
  return (m + m.transpose()) / 2.0;
}

void require_positive_definite(const RealMatrix& y) {
  const double scale = max_abs(y);
  if (!(scale > 0.0)) throw DomainError("imaginary part is not positive definite");
  double bound = 1.0;
  for (Eigen::Index k = 1; k <= y.rows(); ++k) {
    bound *= scale;
    const double minor = y.topLeftCorner(k, k).determinant();
    if (!(minor > kDefiniteTolerance * bound)) {
      throw DomainError("imaginary part is not positive definite (leading minor " +
                        std::to_string(k) + ")");
    }
  }
}

IntMatrix symplectic_form(int g) {
  IntMatrix j = IntMatrix::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = IntMatrix::Identity(g, g);
  j.bottomLeftCorner(g, g) = -IntMatrix::Identity(g, g);
  return j;
}

void require_square_blocks(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c,
                           const IntMatrix& d) {
  const auto g = a.rows();
  for (const IntMatrix* m : {&a, &b, &c, &d}) {
    if (m->rows() != g || m->cols() != g) throw DimensionError("symplectic blocks must be g x g");
  }
  if (g < 1) throw DimensionError("degree must be positive");
}

void require_same_degree(const SymplecticElement& gamma, const SiegelPoint& z) {
  if (gamma.degree() != z.degree()) throw DimensionError("degree mismatch between element and point");
}

// Solves (CZ + D) with a conditioning guard shared by act and friends.
Eigen::PartialPivLU<ComplexMatrix> factor_cocycle(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest > kConditionLimit) {
    throw DegeneracyError("automorphy factor CZ+D is numerically singular");
  }
  return Eigen::PartialPivLU<ComplexMatrix>(m);
}

}  // namespace

SiegelPoint::SiegelPoint(RealMatrix x, RealMatrix y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw DimensionError("X and Y must be square of the same size");
  }
  if (x.rows() < 1) throw DimensionError("degree must be positive");
  x_ = symmetrized(x, "X");
  y_ = symmetrized(y, "Y");
  require_positive_definite(y_);
}

SiegelPoint SiegelPoint::from_complex(const ComplexMatrix& z) {
  return SiegelPoint(z.real(), z.imag());
}

ComplexMatrix SiegelPoint::matrix() const {
  ComplexMatrix z(x_.rows(), x_.cols());
  z.real() = x_;
  z.imag() = y_;
  return z;
}

SymplecticElement::SymplecticElement(Unchecked, IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

SymplecticElement::SymplecticElement(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d)
    : SymplecticElement(Unchecked{}, std::move(a), std::move(b), std::move(c), std::move(d)) {
  require_square_blocks(a_, b_, c_, d_);
  if (!is_symplectic(full())) throw ContractViolation("blocks do not satisfy MJM^t = J");
}

SymplecticElement SymplecticElement::identity(int g) {
  if (g < 1) throw DimensionError("degree must be positive");
  const IntMatrix one = IntMatrix::Identity(g, g);
  const IntMatrix zero = IntMatrix::Zero(g, g);
  return SymplecticElement(Unchecked{}, one, zero, zero, one);
}

SymplecticElement SymplecticElement::inversion(int g) {
  if (g < 1) throw DimensionError("degree must be positive");
  const IntMatrix one = IntMatrix::Identity(g, g);
  const IntMatrix zero = IntMatrix::Zero(g, g);
  return SymplecticElement(Unchecked{}, zero, one, -one, zero);
}

SymplecticElement SymplecticElement::translation(const IntMatrix& b) {
  if (b.rows() != b.cols() || b.rows() < 1) throw DimensionError("translation must be square");
  if (b != b.transpose()) throw ContractViolation("translation matrix must be symmetric");
  const auto g = b.rows();
  return SymplecticElement(Unchecked{}, IntMatrix::Identity(g, g), b, IntMatrix::Zero(g, g),
                           IntMatrix::Identity(g, g));
}

SymplecticElement SymplecticElement::unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols() || u.rows() < 1) throw DimensionError("unimodular block must be square");
  const std::int64_t det = integer_determinant(u);
  if (det != 1 && det != -1) throw ContractViolation("matrix is not unimodular");
  const IntMatrix inverse_transpose = (integer_adjugate(u) * det).transpose();
  const auto g = u.rows();
  return SymplecticElement(Unchecked{}, u, IntMatrix::Zero(g, g), IntMatrix::Zero(g, g),
                           inverse_transpose);
}

SymplecticElement SymplecticElement::from_full(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw DimensionError("symplectic matrix must be square of even dimension");
  }
  const auto g = m.rows() / 2;
  return SymplecticElement(m.topLeftCorner(g, g), m.topRightCorner(g, g),
                           m.bottomLeftCorner(g, g), m.bottomRightCorner(g, g));
}

IntMatrix SymplecticElement::full() const {
  const auto g = a_.rows();
  IntMatrix m(2 * g, 2 * g);
  m << a_, b_, c_, d_;
  return m;
}

SymplecticElement SymplecticElement::inverse() const {
  return SymplecticElement(Unchecked{}, d_.transpose(), -b_.transpose(), -c_.transpose(),
                           a_.transpose());
}

SymplecticElement operator*(const SymplecticElement& lhs, const SymplecticElement& rhs) {
  if (lhs.degree() != rhs.degree()) throw DimensionError("degree mismatch in product");
  return SymplecticElement(SymplecticElement::Unchecked{}, lhs.a_ * rhs.a_ + lhs.b_ * rhs.c_,
                           lhs.a_ * rhs.b_ + lhs.b_ * rhs.d_, lhs.c_ * rhs.a_ + lhs.d_ * rhs.c_,
                           lhs.c_ * rhs.b_ + lhs.d_ * rhs.d_);
}

bool operator==(const SymplecticElement& lhs, const SymplecticElement& rhs) {
  return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.c_ == rhs.c_ && lhs.d_ == rhs.d_;
}

SymplecticElement GeneratorWord::expand() const {
  SymplecticElement product = SymplecticElement::identity(degree);
  for (const auto& letter : letters) {
    switch (letter.kind) {
      case Generator::Kind::Inversion:
        product = product * SymplecticElement::inversion(degree);
        break;
      case Generator::Kind::Translation:
        product = product * SymplecticElement::translation(letter.parameter);
        break;
      case Generator::Kind::Unimodular:
        product = product * SymplecticElement::unimodular(letter.parameter);
        break;
    }
  }
  return product;
}

bool is_symplectic(const RealMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw DimensionError("symplectic test needs a square matrix of even dimension");
  }
  const RealMatrix j = symplectic_form(static_cast<int>(m.rows() / 2)).cast<double>();
  return max_abs(m * j * m.transpose() - j) < 1e-12;
}

bool is_symplectic(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw DimensionError("symplectic test needs a square matrix of even dimension");
  }
  const IntMatrix j = symplectic_form(static_cast<int>(m.rows() / 2));
  return m * j * m.transpose() == j;
}

ComplexMatrix cocycle(const SymplecticElement& gamma, const SiegelPoint& z) {
  require_same_degree(gamma, z);
  return to_complex(gamma.c()) * z.matrix() + to_complex(gamma.d());
}

SiegelPoint act(const SymplecticElement& gamma, const SiegelPoint& z) {
  const ComplexMatrix m = cocycle(gamma, z);
  const ComplexMatrix m_inv = factor_cocycle(m).inverse();
  const ComplexMatrix numerator = to_complex(gamma.a()) * z.matrix() + to_complex(gamma.b());
  const ComplexMatrix w = numerator * m_inv;
  const ComplexMatrix sym = (w + w.transpose()) / 2.0;
  return SiegelPoint(sym.real(), sym.imag());
}

RealMatrix im_of_action(const SymplecticElement& gamma, const SiegelPoint& z) {
  const ComplexMatrix m = cocycle(gamma, z);
  const ComplexMatrix m_inv = factor_cocycle(m).inverse();
  const ComplexMatrix m_bar =
      to_complex(gamma.c()) * z.matrix().conjugate() + to_complex(gamma.d());
  const ComplexMatrix left = m_bar.transpose().partialPivLu().solve(to_complex(z.imag_part()));
  const ComplexMatrix result = left * m_inv;
  const RealMatrix re = result.real();
  return (re + re.transpose()) / 2.0;
}

ComplexMatrix tangent_pushforward(const SymplecticElement& gamma, const SiegelPoint& z,
                                  const ComplexMatrix& v) {
  require_same_degree(gamma, z);
  if (v.rows() != z.degree() || v.cols() != z.degree()) {
    throw DimensionError("tangent direction has the wrong size");
  }
  if (max_abs(v - v.transpose()) > 1e-12 * std::max(1.0, max_abs(v))) {
    throw ContractViolation("tangent direction must be symmetric");
  }
  const ComplexMatrix m_inv = factor_cocycle(cocycle(gamma, z)).inverse();
  const ComplexMatrix out = m_inv.transpose() * v * m_inv;
  return (out + out.transpose()) / 2.0;
}

GeneratorWord random_word(int g, int word_length, std::uint64_t seed) {
  if (g < 1) throw DimensionError("degree must be positive");
  if (word_length < 0) throw DomainError("word length must be non-negative");
  Rng rng(seed);
  GeneratorWord word;
  word.degree = g;
  for (int n = 0; n < word_length; ++n) {
    Generator letter;
    switch (rng.integer(0, 2)) {
      case 0:
        letter.kind = Generator::Kind::Inversion;
        break;
      case 1: {
        letter.kind = Generator::Kind::Translation;
        IntMatrix b(g, g);
        for (int i = 0; i < g; ++i) {
          for (int j = i; j < g; ++j) b(i, j) = b(j, i) = rng.integer(-2, 2);
        }
        letter.parameter = b;
        break;
      }
      default: {
        letter.kind = Generator::Kind::Unimodular;
        IntMatrix u = IntMatrix::Identity(g, g);
        if (g == 1 || rng.integer(0, 3) == 0) {
          const auto i = rng.integer(0, g - 1);
          u(i, i) = -1;
        } else {
          const auto i = rng.integer(0, g - 1);
          auto j = rng.integer(0, g - 2);
          if (j >= i) ++j;
          u(i, j) = rng.integer(0, 1) == 0 ? -1 : 1;
        }
        letter.parameter = u;
        break;
      }
    }
    word.letters.push_back(std::move(letter));
  }
  return word;
}

SymplecticElement random_symplectic(int g, int word_length, std::uint64_t seed) {
  return random_word(g, word_length, seed).expand();
}

SiegelPoint random_point(int g, std::uint64_t seed) {
  if (g < 1) throw DimensionError("degree must be positive");
  Rng rng(seed);
  RealMatrix x(g, g);
  RealMatrix a(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) x(i, j) = x(j, i) = rng.uniform(-1.0, 1.0);
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  }
  const RealMatrix y = a * a.transpose() / g + 0.5 * RealMatrix::Identity(g, g);
  return SiegelPoint(x, y);
}

ComplexMatrix random_symmetric(int g, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix v(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      v(i, j) = v(j, i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
  }
  return v;
}

std::int64_t integer_determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const auto n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  std::int64_t det = 0;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (m(0, col) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      for (Eigen::Index c = 0, k = 0; c < n; ++c) {
        if (c != col) minor(r - 1, k++) = m(r, c);
      }
    }
    const std::int64_t sign = (col % 2 == 0) ? 1 : -1;
    det += sign * m(0, col) * integer_determinant(minor);
  }
  return det;
}

IntMatrix integer_adjugate(const IntMatrix& m) {
  const auto n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c != j) minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
      adj(j, i) = sign * integer_determinant(minor);
    }
  }
  return adj;
}

}  // namespace siegel

#pragma once

#include <cstdint>
#include <vector>

#include "siegel/linalg.hpp"

namespace siegel {

/// A point Z = X + iY of the Siegel upper half plane of degree g.
///
/// X and Y are stored symmetric. Input that is asymmetric by less than 1e-12
/// (relative) is symmetrized; anything worse is rejected, as is a Y whose
/// leading principal minors are not all positive.
class SiegelPoint {
 public:
  SiegelPoint(RealMatrix x, RealMatrix y);
  static SiegelPoint from_complex(const ComplexMatrix& z);

  int degree() const { return static_cast<int>(x_.rows()); }
  const RealMatrix& real_part() const { return x_; }
  const RealMatrix& imag_part() const { return y_; }
  ComplexMatrix matrix() const;

 private:
  RealMatrix x_;
  RealMatrix y_;
};

/// Element (A B; C D) of Sp(2g, Z) with exact integer blocks.
class SymplecticElement {
 public:
  SymplecticElement(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);

  static SymplecticElement identity(int g);
  static SymplecticElement inversion(int g);                  // J
  static SymplecticElement translation(const IntMatrix& b);   // (I B; 0 I), B symmetric
  static SymplecticElement unimodular(const IntMatrix& u);    // diag(U, U^{-t}), det U = +-1
  static SymplecticElement from_full(const IntMatrix& m);

  int degree() const { return static_cast<int>(a_.rows()); }
  const IntMatrix& a() const { return a_; }
  const IntMatrix& b() const { return b_; }
  const IntMatrix& c() const { return c_; }
  const IntMatrix& d() const { return d_; }
  IntMatrix full() const;

  SymplecticElement inverse() const;
  friend SymplecticElement operator*(const SymplecticElement& lhs, const SymplecticElement& rhs);
  friend bool operator==(const SymplecticElement& lhs, const SymplecticElement& rhs);

 private:
  struct Unchecked {};
  SymplecticElement(Unchecked, IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);

  IntMatrix a_, b_, c_, d_;
};

/// One letter of a generator word.
struct Generator {
  enum class Kind { Inversion, Translation, Unimodular };
  Kind kind;
  IntMatrix parameter;  // B for translations, U for unimodular letters, empty for J
};

struct GeneratorWord {
  int degree = 1;
  std::vector<Generator> letters;

  SymplecticElement expand() const;
};

bool is_symplectic(const RealMatrix& m);
bool is_symplectic(const IntMatrix& m);

SiegelPoint act(const SymplecticElement& gamma, const SiegelPoint& z);

/// The automorphy factor CZ + D.
ComplexMatrix cocycle(const SymplecticElement& gamma, const SiegelPoint& z);

/// Im(gamma Z) = ((C conj(Z) + D)^t)^{-1} Y (CZ + D)^{-1}.
RealMatrix im_of_action(const SymplecticElement& gamma, const SiegelPoint& z);

/// d(gamma Z) = (ZC^t + D^t)^{-1} V (CZ + D)^{-1} for a symmetric tangent V.
ComplexMatrix tangent_pushforward(const SymplecticElement& gamma, const SiegelPoint& z,
                                  const ComplexMatrix& v);

GeneratorWord random_word(int g, int word_length, std::uint64_t seed);
SymplecticElement random_symplectic(int g, int word_length, std::uint64_t seed);

/// Test corpus point: X uniform in [-1,1], Y = AA^t/g + I/2.
SiegelPoint random_point(int g, std::uint64_t seed);

/// Random complex symmetric tangent direction with entries in the unit box.
ComplexMatrix random_symmetric(int g, std::uint64_t seed);

// Exact helpers on integer matrices.
std::int64_t integer_determinant(const IntMatrix& m);
IntMatrix integer_adjugate(const IntMatrix& m);

}  // namespace siegel

#include "siegel/forms.hpp"

#include <numeric>

#include "siegel/random.hpp"

namespace siegel {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

Monomial single(int position) { return Monomial{static_cast<std::uint8_t>(position)}; }

int position_of(int a, int b, int g) { return omega_position(omega_of(a, b), g); }

double largest_coefficient(const ComplexForm& form) {
  double out = 0.0;
  for (const auto& [m, c] : form.terms()) out = std::max(out, std::abs(c));
  return out;
}

}  // namespace

ComplexForm scaled(const ComplexForm& form, cplx s) {
  ComplexForm out(form.degree());
  for (const auto& [m, c] : form.terms()) out.add(m, c * s);
  return out;
}

ComplexForm power(const ComplexForm& form, int k) {
  if (k < 0) throw DomainError("negative power of a form");
  ComplexForm out = constant_form(form.degree(), 1.0);
  for (int i = 0; i < k; ++i) out = out * form;
  return out;
}

ComplexForm pruned(const ComplexForm& form) {
  const double cutoff = 1e-14 * largest_coefficient(form);
  ComplexForm out(form.degree());
  for (const auto& [m, c] : form.terms()) {
    if (std::abs(c) > cutoff) out.add(m, c);
  }
  return out;
}

ComplexForm generator_form(int g, const OmegaIndex& index, cplx coefficient) {
  ComplexForm out(g);
  out.add(single(omega_position(index, g)), coefficient);
  return out;
}

ComplexForm constant_form(int g, cplx value) {
  ComplexForm out(g);
  out.add(Monomial{}, value);
  return out;
}

ComplexForm det_form(int g) {
  std::vector<int> perm(g);
  std::iota(perm.begin(), perm.end(), 1);
  ComplexForm out(g);
  do {
    int inversions = 0;
    for (int a = 0; a < g; ++a) {
      for (int b = a + 1; b < g; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
    }
    Monomial m;
    for (int row = 1; row <= g; ++row) m = monomial_product(m, single(position_of(row, perm[row - 1], g)));
    out.add(m, inversions % 2 == 0 ? 1.0 : -1.0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ComplexForm trace_form(const ComplexMatrix& a) {
  const int g = static_cast<int>(a.rows());
  if (a.cols() != g) throw DimensionError("trace form needs a square matrix");
  ComplexForm out(g);
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= g; ++j) out.add(single(position_of(j, i, g)), a(i - 1, j - 1));
  }
  return out;
}

JetForm to_jets(const FunctionForm& form, const SiegelPoint& z) {
  if (z.degree() != form.degree()) throw EvaluationError("form evaluated at a point of another degree");
  JetForm out(form.degree());
  for (const auto& [m, c] : form.terms()) out.add(m, c.jet(z));
  return out;
}

JetForm constant_jets(const ComplexForm& form) {
  JetForm out(form.degree());
  for (const auto& [m, c] : form.terms()) out.add(m, Jet::constant(c, form.generators()));
  return out;
}

ComplexForm values(const JetForm& form) {
  ComplexForm out(form.degree());
  for (const auto& [m, c] : form.terms()) out.add(m, c.value);
  return out;
}

ComplexForm apply_D(const ConnectionTable& table, const JetForm& form) {
  if (table.degree() != form.degree()) throw DimensionError("table and form of different degree");
  const int n = form.generators();
  ComplexForm out(form.degree());
  for (const auto& [m, c] : form.terms()) {
    if (c.grad.size() != n) throw EvaluationError("coefficient jet has the wrong size");
    for (int l = 0; l < n; ++l) out.add(monomial_product(m, single(l)), c.grad(l));
    for (std::size_t p = 0; p < m.size(); ++p) {
      const int k = m[p];
      Monomial rest = m;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const cplx gamma = table(k, i, j);
          if (gamma == cplx{0.0, 0.0}) continue;
          Monomial pair{static_cast<std::uint8_t>(std::min(i, j)), static_cast<std::uint8_t>(std::max(i, j))};
          out.add(monomial_product(rest, pair), -c.value * gamma);
        }
      }
    }
  }
  return pruned(out);
}

ComplexForm apply_D(const ConnectionTable& table, const FunctionForm& form, const SiegelPoint& z) {
  return apply_D(table, to_jets(form, z));
}

ComplexForm d_generator_closed(const ComplexMatrix& seed, const OmegaIndex& k) {
  const int g = static_cast<int>(seed.rows());
  const int r = k.i, s = k.j;
  ComplexForm out(g);
  for (int a = 1; a <= g; ++a) {
    for (int b = 1; b <= g; ++b) {
      out.add(monomial_product(single(position_of(s, a, g)), single(position_of(r, b, g))),
              -seed(a - 1, b - 1));
    }
  }
  return pruned(out);
}

ComplexForm d_det_closed(const ComplexMatrix& seed) {
  const int g = static_cast<int>(seed.rows());
  return pruned(scaled(trace_form(seed), -1.0) * det_form(g));
}

ComplexForm FactoredForm::expand() const {
  const int g = static_cast<int>(trace_matrix.rows());
  return pruned(trace_form(trace_matrix) * power(det_form(g), det_power));
}

FactoredForm d_f_detk(const ComplexMatrix& seed, const Jet& f, int k, int g) {
  if (k < 0) throw DomainError("weight exponent must be nonnegative");
  FactoredForm out;
  out.trace_matrix = sym_gradient(f, g) - static_cast<double>(k) * f.value * seed;
  out.det_power = k;
  return out;
}

FunctionForm trace_function_form(const PolynomialMatrixField& g_field) {
  const int g = g_field.degree();
  FunctionForm out(g);
  for (int a = 1; a <= g; ++a) {
    for (int b = 1; b <= g; ++b) out.add(single(position_of(b, a, g)), g_field.entry(a - 1, b - 1));
  }
  return out;
}

ComplexForm d_trace_form(const ComplexMatrix& seed, const PolynomialMatrixField& g_field,
                         const SiegelPoint& z) {
  const int g = g_field.degree();
  if (seed.rows() != g || z.degree() != g) throw DimensionError("degree mismatch");
  if (max_abs(seed - seed.transpose()) > 1e-12 * std::max(1.0, max_abs(seed))) {
    throw ContractViolation("seed must be symmetric");
  }
  // Kronecker rows and columns are pairs (a, b) -> a*g + b, 0-based.
  std::vector<SymmetrizedGradient> grads(static_cast<std::size_t>(g * g));
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) grads[a * g + b] = sym_gradient(g_field.entry(a, b), z);
  }
  const int size = g * g;
  ComplexMatrix p(size, size);  // (d/dZ)^t (x) G, entry d_{a2 a1} G_{b1 b2}
  for (int a1 = 0; a1 < g; ++a1) {
    for (int b1 = 0; b1 < g; ++b1) {
      for (int a2 = 0; a2 < g; ++a2) {
        for (int b2 = 0; b2 < g; ++b2) p(a1 * g + b1, a2 * g + b2) = grads[b1 * g + b2](a2, a1);
      }
    }
  }
  auto dz_dz = [g](int row, int col) {  // (dZ (x) dZ)_{row,col}
    const int a = row / g, b = row % g, c = col / g, d = col % g;
    return monomial_product(single(position_of(a + 1, c + 1, g)), single(position_of(b + 1, d + 1, g)));
  };
  ComplexForm out(g);
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) out.add(dz_dz(y, x), p(x, y));
  }
  const ComplexMatrix gz = g_field.value(z);
  for (int a = 1; a <= g; ++a) {
    for (int b = 1; b <= g; ++b) {
      for (int c = 1; c <= g; ++c) {
        for (int d = 1; d <= g; ++d) {
          out.add(monomial_product(single(position_of(b, c, g)), single(position_of(d, a, g))),
                  -gz(a - 1, b - 1) * seed(c - 1, d - 1));
        }
      }
    }
  }
  return pruned(out);
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

KroneckerTraces kronecker_traces(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c, const ComplexMatrix& d) {
  KroneckerTraces out;
  out.mixed = (kronecker(a, b) * kronecker(c, d)).trace();
  out.factored = (a * c).trace() * (b * d).trace();
  out.swapped = (kronecker(a, c) * kronecker(b, d)).trace();
  cplx sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) sum += a(i, j) * b(k, l) * c(l, k) * d(j, i);
      }
    }
  }
  out.index_sum = sum;
  return out;
}

double max_coefficient_difference(const ComplexForm& a, const ComplexForm& b) {
  return largest_coefficient(a - b);
}

double form_residual(const ComplexForm& a, const ComplexForm& b) {
  const double scale = std::max({1.0, largest_coefficient(a), largest_coefficient(b)});
  return max_coefficient_difference(a, b) / scale;
}

JetForm pullback_jets(const JetForm& at_image, const SymplecticElement& gamma,
                      const SiegelPoint& z) {
  const int g = z.degree();
  const int n = omega_size(g);
  const FormCocycle cocycle_s = form_cocycle(gamma, z);
  const auto omega = enumerate_omega(g);
  std::vector<ComplexMatrix> ds;
  ds.reserve(omega.size());
  for (const auto& index : omega) ds.push_back(ds_directional(gamma, z, to_complex(symmetric_unit(g, index))));

  // dW_K = sum_J S_JK dZ_J with S_JK a jet in Z.
  std::vector<JetForm> images;
  for (int k = 0; k < n; ++k) {
    JetForm image(g);
    for (int j = 0; j < n; ++j) {
      Jet entry = Jet::constant(cocycle_s.s(j, k), n);
      for (int m = 0; m < n; ++m) entry.grad(m) = ds[m](j, k);
      image.add(single(j), entry);
    }
    images.push_back(std::move(image));
  }

  JetForm out(g);
  for (const auto& [m, c] : at_image.terms()) {
    JetForm term(g);
    term.add(Monomial{}, Jet{c.value, cocycle_s.s * c.grad});
    for (auto k : m) term = term * images[k];
    out += term;
  }
  return out;
}

ComplexForm pullback(const ComplexForm& at_image, const SymplecticElement& gamma,
                     const SiegelPoint& z) {
  const int g = z.degree();
  const int n = omega_size(g);
  const ComplexMatrix s = form_cocycle(gamma, z).s;
  std::vector<ComplexForm> images;
  for (int k = 0; k < n; ++k) {
    ComplexForm image(g);
    for (int j = 0; j < n; ++j) image.add(single(j), s(j, k));
    images.push_back(std::move(image));
  }
  ComplexForm out(g);
  for (const auto& [m, c] : at_image.terms()) {
    ComplexForm term = constant_form(g, c);
    for (auto k : m) term = term * images[k];
    out += term;
  }
  return pruned(out);
}

double equivariance_residual(const ConnectionSource& source, const SymplecticElement& gamma,
                             const SiegelPoint& z,
                             const std::function<JetForm(const SiegelPoint&)>& form) {
  const SiegelPoint image = act(gamma, z);
  const JetForm at_image = form(image);
  const ComplexForm lhs = apply_D(source(z), pullback_jets(at_image, gamma, z));
  const ComplexForm rhs = pullback(apply_D(source(image), at_image), gamma, z);
  return form_residual(lhs, rhs);
}

double equivariance_residual(const ConnectionSource& source, const SymplecticElement& gamma,
                             const SiegelPoint& z, const FunctionForm& form) {
  return equivariance_residual(source, gamma, z,
                               [&form](const SiegelPoint& p) { return to_jets(form, p); });
}

FunctionForm random_function_form(int g, std::uint64_t seed, int max_degree) {
  Rng rng(seed);
  const int n = omega_size(g);
  FunctionForm out(g);
  const int term_count = static_cast<int>(rng.integer(2, 4));
  for (int t = 0; t < term_count; ++t) {
    const int deg = static_cast<int>(rng.integer(t == 0 ? 1 : 0, max_degree));
    Monomial m;
    for (int v = 0; v < deg; ++v) m = monomial_product(m, single(static_cast<int>(rng.integer(0, n - 1))));
    out.add(m, TestFunction::random(g, mix_seed(seed, 17, t), 2));
  }
  return out;
}

}  // namespace siegel

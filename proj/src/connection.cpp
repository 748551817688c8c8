#include "siegel/connection.hpp"

#include <cmath>

#include "siegel/errors.hpp"

namespace siegel {

const char* to_string(GammaProvenance provenance) {
  switch (provenance) {
    case GammaProvenance::ClosedForm: return "closed";
    case GammaProvenance::MetricPathA: return "metricA";
    case GammaProvenance::MetricPathB: return "metricB";
    case GammaProvenance::Expanded: return "expanded";
    case GammaProvenance::Seeded: return "seeded";
  }
  return "unknown";
}

ConnectionTable::ConnectionTable(SiegelPoint point, GammaProvenance provenance)
    : point_(std::move(point)),
      provenance_(provenance),
      n_(omega_size(point_.degree())),
      data_(static_cast<std::size_t>(n_) * n_ * n_, cplx{0.0, 0.0}) {}

cplx ConnectionTable::at(const OmegaIndex& k, const OmegaIndex& i, const OmegaIndex& j) const {
  const int g = degree();
  return (*this)(omega_position(k, g), omega_position(i, g), omega_position(j, g));
}

double ConnectionTable::max_difference(const ConnectionTable& other) const {
  if (other.n_ != n_) throw DimensionError("connection tables of different degree");
  double worst = 0.0;
  for (std::size_t n = 0; n < data_.size(); ++n) {
    worst = std::max(worst, std::abs(data_[n] - other.data_[n]));
  }
  return worst;
}

ConnectionTable gamma_seeded(const SiegelPoint& z, const ComplexMatrix& seed) {
  const int g = z.degree();
  if (seed.rows() != g || seed.cols() != g) throw DimensionError("seed must be g x g");
  const auto omega = enumerate_omega(g);
  const int n = static_cast<int>(omega.size());
  ConnectionTable table(z, GammaProvenance::Seeded);
  for (int k = 0; k < n; ++k) {
    const int r = omega[k].i, s = omega[k].j;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const OmegaIndex& big_i = omega[a];
        const OmegaIndex& big_j = omega[b];
        int row = 0, col = 0;
        if (big_i.contains(s) && big_j.contains(r)) {
          row = big_i.partner(s);
          col = big_j.partner(r);
        } else if (big_j.contains(s) && big_i.contains(r)) {
          row = big_j.partner(s);
          col = big_i.partner(r);
        } else {
          continue;
        }
        const bool halve = r != s && a != b;
        table(k, a, b) = seed(row - 1, col - 1) * (halve ? 0.5 : 1.0);
      }
    }
  }
  return table;
}

ConnectionTable gamma_closed(const SiegelPoint& z) {
  const MetricPair metric(z);
  const ConnectionTable seeded = gamma_seeded(z, kImagUnit * to_complex(metric.inverse_imag()));
  ConnectionTable table(z, GammaProvenance::ClosedForm);
  const int n = table.size();
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) table(k, a, b) = seeded(k, a, b);
    }
  }
  return table;
}

namespace {

ConnectionTable path_a(const SiegelPoint& z) {
  const MetricPair metric(z);
  const auto omega = enumerate_omega(z.degree());
  const int n = static_cast<int>(omega.size());
  // dw[(J * n + I) * n + L] = dW_IL / dZ_J
  std::vector<cplx> dw(static_cast<std::size_t>(n) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        dw[(static_cast<std::size_t>(j) * n + i) * n + l] = dW_dZ(metric, omega[i], omega[l], omega[j]);
      }
    }
  }
  auto d_w = [&](int i, int l, int j) { return dw[(static_cast<std::size_t>(j) * n + i) * n + l]; };
  ConnectionTable table(z, GammaProvenance::MetricPathA);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cplx sum = 0.0;
        for (int l = 0; l < n; ++l) sum += metric.m()(k, l) * (d_w(i, l, j) + d_w(j, l, i));
        table(k, i, j) = 0.5 * sum;
      }
    }
  }
  return table;
}

ConnectionTable path_b(const SiegelPoint& z) {
  const MetricPair metric(z);
  const auto omega = enumerate_omega(z.degree());
  const int n = static_cast<int>(omega.size());
  // dm[(J * n + K) * n + L] = dM_KL / dZ_J
  std::vector<cplx> dm(static_cast<std::size_t>(n) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        dm[(static_cast<std::size_t>(j) * n + k) * n + l] = dM_dZ(z, omega[k], omega[l], omega[j]);
      }
    }
  }
  auto d_m = [&](int k, int l, int j) { return dm[(static_cast<std::size_t>(j) * n + k) * n + l]; };
  ConnectionTable table(z, GammaProvenance::MetricPathB);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cplx sum = 0.0;
        for (int l = 0; l < n; ++l) {
          sum += d_m(k, l, j) * metric.w()(i, l) + d_m(k, l, i) * metric.w()(j, l);
        }
        table(k, i, j) = -0.5 * sum;
      }
    }
  }
  return table;
}

ConnectionTable expanded_form(const SiegelPoint& z) {
  const MetricPair metric(z);
  const auto omega = enumerate_omega(z.degree());
  const int n = static_cast<int>(omega.size());
  auto R = [&](int a, int b) { return metric.inverse_imag()(a - 1, b - 1); };
  auto d = [](int a, int b) { return static_cast<double>(kronecker_delta(a, b)); };
  ConnectionTable table(z, GammaProvenance::Expanded);
  for (int kk = 0; kk < n; ++kk) {
    const int p = omega[kk].i, q = omega[kk].j;
    for (int a = 0; a < n; ++a) {
      const int i = omega[a].i, j = omega[a].j;
      for (int b = 0; b < n; ++b) {
        const int r = omega[b].i, s = omega[b].j;
        const double first =
            d(q, j) * (d(p, r) * R(i, s) + d(p, s) * R(i, r) - d(p, r) * d(p, s) * R(i, s)) +
            d(q, i) * (d(p, r) * R(j, s) + d(p, s) * R(j, r) - d(p, r) * d(p, s) * R(j, s)) +
            d(p, i) * (d(q, r) * R(j, s) + d(q, s) * R(j, r) - d(q, r) * d(q, s) * R(j, s)) +
            d(p, j) * (d(q, r) * R(i, s) + d(q, s) * R(i, r) - d(q, r) * d(q, s) * R(i, s));
        const double second =
            d(q, s) * (d(p, i) * R(r, j) + d(p, j) * R(r, i) - d(p, i) * d(p, j) * R(r, j)) +
            d(q, r) * (d(p, i) * R(s, j) + d(p, j) * R(s, i) - d(p, i) * d(p, j) * R(s, j)) +
            d(p, r) * (d(q, i) * R(s, j) + d(q, j) * R(s, i) - d(q, i) * d(q, j) * R(s, j)) +
            d(p, s) * (d(q, i) * R(r, j) + d(q, j) * R(i, r) - d(q, i) * d(q, j) * R(r, j));
        table(kk, a, b) = kImagUnit * (first / std::ldexp(1.0, 2 + kronecker_delta(i, j)) +
                                       second / std::ldexp(1.0, 2 + kronecker_delta(r, s)));
      }
    }
  }
  return table;
}

}  // namespace

ConnectionTable gamma_from_metric(const SiegelPoint& z, MetricPath path) {
  switch (path) {
    case MetricPath::A: return path_a(z);
    case MetricPath::B: return path_b(z);
    case MetricPath::Expanded: return expanded_form(z);
  }
  throw DomainError("unknown metric path");
}

bool is_symmetric_table(const ConnectionTable& table) {
  const int n = table.size();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (table(k, i, j) != table(k, j, i)) return false;
      }
    }
  }
  return true;
}

bool has_closed_form_sparsity(const ConnectionTable& table) {
  const auto omega = enumerate_omega(table.degree());
  const int n = table.size();
  for (int k = 0; k < n; ++k) {
    const int r = omega[k].i, s = omega[k].j;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const bool allowed = (omega[i].contains(s) && omega[j].contains(r)) ||
                             (omega[j].contains(s) && omega[i].contains(r));
        if (!allowed && table(k, i, j) != cplx{0.0, 0.0}) return false;
      }
    }
  }
  return true;
}

bool is_purely_imaginary(const ConnectionTable& table) {
  const int n = table.size();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (table(k, i, j).real() != 0.0) return false;
      }
    }
  }
  return true;
}

ConnectionSource levi_civita_source() {
  return [](const SiegelPoint& z) { return gamma_closed(z); };
}

ConnectionSource seeded_source(std::shared_ptr<const MatrixFunctionField> field) {
  return [field](const SiegelPoint& z) { return gamma_seeded(z, field->value(z)); };
}

FormCocycle form_cocycle(const SymplecticElement& gamma, const SiegelPoint& z) {
  const int g = z.degree();
  const auto omega = enumerate_omega(g);
  const auto n = static_cast<Eigen::Index>(omega.size());
  ComplexMatrix s(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const ComplexMatrix image =
        tangent_pushforward(gamma, z, to_complex(symmetric_unit(g, omega[row])));
    s.row(row) = omega_coordinates(image).transpose();
  }
  return {gamma, z, s};
}

ComplexMatrix ds_directional(const SymplecticElement& gamma, const SiegelPoint& z,
                             const ComplexMatrix& v) {
  const int g = z.degree();
  if (v.rows() != g || v.cols() != g) throw DimensionError("direction has the wrong size");
  if (max_abs(v - v.transpose()) > 1e-12 * std::max(1.0, max_abs(v))) {
    throw ContractViolation("direction must be symmetric");
  }
  const ComplexMatrix m = cocycle(gamma, z);
  const Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const ComplexMatrix q = lu.inverse();
  const ComplexMatrix dq = -q * to_complex(gamma.c()) * v * q;
  const auto omega = enumerate_omega(g);
  const auto n = static_cast<Eigen::Index>(omega.size());
  ComplexMatrix ds(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const ComplexMatrix e = to_complex(symmetric_unit(g, omega[row]));
    const ComplexMatrix derivative = dq.transpose() * e * q + q.transpose() * e * dq;
    ds.row(row) = omega_coordinates(derivative).transpose();
  }
  return ds;
}

ComplexMatrix connection_matrix(const ConnectionTable& table, const ComplexVector& v_coords) {
  const int n = table.size();
  if (v_coords.size() != n) throw DimensionError("direction has the wrong size");
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (int k = 0; k < n; ++k) sum += table(j, i, k) * v_coords(k);
      out(i, j) = sum;
    }
  }
  return out;
}

MccTerms mcc_terms(const ConnectionSource& source, const SymplecticElement& gamma,
                   const SiegelPoint& z, const ComplexMatrix& v) {
  const SiegelPoint image = act(gamma, z);
  const FormCocycle cocycle_s = form_cocycle(gamma, z);
  const ComplexVector v_here = omega_coordinates(v);
  const ComplexVector v_there = omega_coordinates(tangent_pushforward(gamma, z, v));
  const ComplexMatrix omega_here = connection_matrix(source(z), v_here);
  const ComplexMatrix omega_there = connection_matrix(source(image), v_there);

  MccTerms terms;
  terms.pulled_back = cocycle_s.s * omega_there;
  terms.transported = omega_here * cocycle_s.s;
  terms.ds = ds_directional(gamma, z, v);
  terms.absolute = max_abs(terms.pulled_back - terms.transported + terms.ds);
  const double scale = std::max({1.0, max_abs(terms.pulled_back), max_abs(terms.transported),
                                 max_abs(terms.ds)});
  terms.residual = terms.absolute / scale;
  return terms;
}

double mcc_residual(const ConnectionSource& source, const SymplecticElement& gamma,
                    const SiegelPoint& z, const ComplexMatrix& v) {
  return mcc_terms(source, gamma, z, v).residual;
}

}  // namespace siegel

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "siegel/fields.hpp"
#include "siegel/linalg.hpp"
#include "siegel/metric.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

enum class GammaProvenance {
  ClosedForm,     // coordinate-labelling formula
  MetricPathA,    // 1/2 sum_L M_KL (dW_IL/dZ_J + dW_JL/dZ_I)
  MetricPathB,    // -1/2 sum_L (dM_KL/dZ_J W_IL + dM_KL/dZ_I W_JL)
  Expanded,  // the fully expanded delta form of path B
  Seeded,         // closed form driven by an arbitrary symmetric seed G
};

const char* to_string(GammaProvenance provenance);

/// Coefficients Gamma_{IJ}^K at one point, stored [K][I][J] in N-order.
class ConnectionTable {
 public:
  ConnectionTable(SiegelPoint point, GammaProvenance provenance);

  const SiegelPoint& point() const { return point_; }
  int degree() const { return point_.degree(); }
  int size() const { return n_; }
  GammaProvenance provenance() const { return provenance_; }

  cplx operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  cplx& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  cplx at(const OmegaIndex& k, const OmegaIndex& i, const OmegaIndex& j) const;

  double max_difference(const ConnectionTable& other) const;

 private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * n_ + i) * n_ + j;
  }

  SiegelPoint point_;
  GammaProvenance provenance_;
  int n_;
  std::vector<cplx> data_;
};

/// Closed form driven by a symmetric seed H: for K = (r,s) and I x J (or
/// J x I) in Omega_s x Omega_r, Gamma = H_ab / 2^{(1-d(r,s))(1-d(I,J))} where
/// a, b are the partners of s in I and of r in J. H = iY^{-1} gives the
/// Levi-Civita table; H = G gives the modular connection of G.
ConnectionTable gamma_seeded(const SiegelPoint& z, const ComplexMatrix& seed);

ConnectionTable gamma_closed(const SiegelPoint& z);

enum class MetricPath { A, B, Expanded };

ConnectionTable gamma_from_metric(const SiegelPoint& z, MetricPath path);

/// Gamma_{IJ}^K == Gamma_{JI}^K exactly.
bool is_symmetric_table(const ConnectionTable& table);

/// Every nonzero entry has I x J or J x I in Omega_s x Omega_r.
bool has_closed_form_sparsity(const ConnectionTable& table);

/// Every entry has exactly zero real part.
bool is_purely_imaginary(const ConnectionTable& table);

using ConnectionSource = std::function<ConnectionTable(const SiegelPoint&)>;

ConnectionSource levi_civita_source();
ConnectionSource seeded_source(std::shared_ptr<const MatrixFunctionField> field);

/// S(gamma, Z) in the row convention (dZ~_I) = (dZ_J) . S: row J holds the
/// coordinates of (CZ+D)^{-t} E_J (CZ+D)^{-1}.
struct FormCocycle {
  SymplecticElement gamma;
  SiegelPoint point;
  ComplexMatrix s;
};

FormCocycle form_cocycle(const SymplecticElement& gamma, const SiegelPoint& z);

/// Directional derivative dS(V) of Z -> S(gamma, Z), analytic.
ComplexMatrix ds_directional(const SymplecticElement& gamma, const SiegelPoint& z,
                             const ComplexMatrix& v);

/// omega(V)_{IJ} = sum_K Gamma_{IK}^J V_K.
ComplexMatrix connection_matrix(const ConnectionTable& table, const ComplexVector& v_coords);

struct MccTerms {
  ComplexMatrix pulled_back;  // S . gamma(omega)(V)
  ComplexMatrix transported;  // omega(V) . S
  ComplexMatrix ds;           // dS(V)
  double absolute = 0.0;      // ||S gamma(omega) - omega S + dS||_inf
  double residual = 0.0;      // absolute / max(1, scale of the three terms)
};

MccTerms mcc_terms(const ConnectionSource& source, const SymplecticElement& gamma,
                   const SiegelPoint& z, const ComplexMatrix& v);

double mcc_residual(const ConnectionSource& source, const SymplecticElement& gamma,
                    const SiegelPoint& z, const ComplexMatrix& v);

}  // namespace siegel

#pragma once

// The SO(n)-invariant metric g_ij = e^phi (delta_ij + sigma v_i v_j) on the
// fiber and the chain metric -> Christoffel symbols -> connection ->
// curvature -> equivariant curvature, together with the 2x2 matrices M and N
// through which the equivariant curvature factors.
//
// Computations are in the coordinate frame with v_i = v^i.

#include <optional>
#include <string>
#include <vector>

#include "thom/pfaffian.hpp"
#include "thom/scalar.hpp"
#include "thom/superalgebra.hpp"

namespace thom {

struct MetricSpec {
  int n = 2;
  RadialScalar u = RadialScalar(1);  // e^phi
  RadialScalar c;                    // C = dphi/dt
  RadialScalar sigma;
  /// sqrt(1 + t sigma), kept explicit so constrained specs can supply a
  /// factored root.
  RadialScalar sqrt_h = RadialScalar(1);
  /// Numeric meaning of the symbols phi, sigma and t0 that occur above.
  Bindings bindings;
  std::string label;

  /// phi and sigma left symbolic: u = exp(phi), C = c0, sigma = s0.
  static MetricSpec generic(int n);
  static MetricSpec from_expressions(int n, const Expr& phi, const Expr& sigma);
  static MetricSpec from_scalars(int n, const RadialScalar& u, const RadialScalar& c, const RadialScalar& sigma);

  RadialScalar one_plus_t_sigma() const { return RadialScalar(1) + RadialScalar::t() * sigma; }
  /// 1 + t sigma~ = 1 / (1 + t sigma).
  RadialScalar one_plus_t_tilde_sigma() const;
};

/// Throws DimensionMismatch for odd or out-of-range n and DegenerateMetric
/// when 1 + t sigma is identically zero or nonpositive at one of `samples`
/// evenly spaced t in [0, t_max].
void validate(const MetricSpec& spec, double t_max = 4.0, int samples = 32);

FormMatrix metric(const MetricSpec& spec);
FormMatrix inverse_metric(const MetricSpec& spec);

/// Gamma^k_ij stored as (k, i, j).
class Christoffel {
 public:
  explicit Christoffel(int n);
  int dim() const { return n_; }
  PolyCoefficient& operator()(int k, int i, int j) { return e_[(k * n_ + i) * n_ + j]; }
  const PolyCoefficient& operator()(int k, int i, int j) const { return e_[(k * n_ + i) * n_ + j]; }

 private:
  int n_;
  std::vector<PolyCoefficient> e_;
};

/// 1/2 g^{kl} (d_i g_lj + d_j g_il - d_l g_ij).
Christoffel christoffel(const MetricSpec& spec);
/// (1 + t s~) v^k [(sigma - C) delta_ij + (sigma' - sigma C) v_i v_j] + C (v_i delta_j^k + v_j delta_i^k).
Christoffel christoffel_closed_form(const MetricSpec& spec);

struct ConnectionCoefficients {
  RadialScalar a, b, c;
};
ConnectionCoefficients connection_coefficients(const MetricSpec& spec);

/// Gamma_i^j = Psi^k Gamma^j_{ik}, stored at (i, j).
FormMatrix connection_matrix(const MetricSpec& spec);
FormMatrix connection_matrix(const Christoffel& gamma);
/// A v^j v_i (v.Psi) + B v^j Psi_i + C (v_i Psi^j + delta_i^j v.Psi).
FormMatrix connection_closed_form(const MetricSpec& spec);

/// R_i^j = d Gamma_i^j + Gamma_k^j Gamma_i^k, stored at (i, j).
FormMatrix curvature(const MetricSpec& spec);
/// R^{ij} = g^{ik} R_k^j.
FormMatrix raised_curvature(const MetricSpec& spec);
/// g^{ik} (Omega^{kj} + Omega^{ml} v^m Gamma^j_{lk}).
FormMatrix omega_part(const MetricSpec& spec);
/// raised_curvature + omega_part.
FormMatrix equivariant_curvature(const MetricSpec& spec);
/// e^{-phi} (1 + t s~) Tr(M N).
FormMatrix equivariant_curvature_trace_form(const MetricSpec& spec);

MMatrix m_matrix(const MetricSpec& spec);
NMatrix n_matrix(int n);

}  // namespace thom

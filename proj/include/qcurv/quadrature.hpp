#pragma once

#include <span>
#include <utility>
#include <vector>

namespace qcurv::quad {

struct GaussRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
};

/// Three-term recurrence for the polynomials orthonormal with respect to
///   mass / Z * (1 - t^2)^(lambda - 1/2) dt   on [-1, 1],
/// i.e. normalized Gegenbauer polynomials C_l^(lambda). Values are produced
/// directly in orthonormal form so nothing overflows at high degree.
class GegenbauerRecurrence {
 public:
  GegenbauerRecurrence(double lambda, double mass);

  double lambda() const { return lambda_; }
  double mass() const { return mass_; }
  /// Value of the constant basis function, mass^(-1/2).
  double psi0() const { return psi0_; }
  /// Off-diagonal Jacobi-matrix entry a_l (l >= 1): t psi_l = a_{l+1} psi_{l+1} + a_l psi_{l-1}.
  double coupling(int l) const;

  /// psi_0(t) .. psi_{out.size()-1}(t).
  void evaluate(double t, std::span<double> out) const;
  /// Values and first derivatives, same degree range as `values`.
  void evaluate(double t, std::span<double> values, std::span<double> derivs) const;
  /// psi_degree(t) and its derivative.
  std::pair<double, double> value_and_derivative(int degree, double t) const;

 private:
  double lambda_;
  double mass_;
  double psi0_;
};

/// Gauss rule with `count` nodes for the measure of `GegenbauerRecurrence(lambda, mass)`.
/// Nodes are Newton-refined roots of psi_count; the rule is exactly symmetric
/// (t_i = -t_{count-1-i}). Exact for polynomials of degree <= 2*count - 1.
GaussRule gauss_gegenbauer(int count, double lambda, double mass);

/// Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(int count, double a, double b);

}  // namespace qcurv::quad

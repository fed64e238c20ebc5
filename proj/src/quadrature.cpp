#include "qcurv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcurv/error.hpp"

namespace qcurv::quad {

namespace {

constexpr double kNewtonTol = 1e-14;
constexpr int kNewtonMaxIter = 100;

}  // namespace

GegenbauerRecurrence::GegenbauerRecurrence(double lambda, double mass)
    : lambda_(lambda), mass_(mass), psi0_(1.0 / std::sqrt(mass)) {
  if (!(lambda > 0.0) || !(mass > 0.0)) {
    throw DomainError("GegenbauerRecurrence: lambda and mass must be positive");
  }
}

double GegenbauerRecurrence::coupling(int l) const {
  // Monic recurrence coefficient b_l = l (l + 2 lambda - 1) / (4 (l + lambda)(l + lambda - 1)).
  const double dl = l;
  const double b = dl * (dl + 2.0 * lambda_ - 1.0) /
                   (4.0 * (dl + lambda_) * (dl + lambda_ - 1.0));
  return std::sqrt(b);
}

void GegenbauerRecurrence::evaluate(double t, std::span<double> out) const {
  if (out.empty()) return;
  out[0] = psi0_;
  if (out.size() == 1) return;
  out[1] = t * psi0_ / coupling(1);
  double a_prev = coupling(1);
  for (std::size_t l = 1; l + 1 < out.size(); ++l) {
    const double a_next = coupling(static_cast<int>(l) + 1);
    out[l + 1] = (t * out[l] - a_prev * out[l - 1]) / a_next;
    a_prev = a_next;
  }
}

void GegenbauerRecurrence::evaluate(double t, std::span<double> values,
                                    std::span<double> derivs) const {
  const std::size_t count = values.size();
  if (count == 0) return;
  values[0] = psi0_;
  derivs[0] = 0.0;
  if (count == 1) return;
  const double a1 = coupling(1);
  values[1] = t * psi0_ / a1;
  derivs[1] = psi0_ / a1;
  double a_prev = a1;
  for (std::size_t l = 1; l + 1 < count; ++l) {
    const double a_next = coupling(static_cast<int>(l) + 1);
    values[l + 1] = (t * values[l] - a_prev * values[l - 1]) / a_next;
    derivs[l + 1] = (values[l] + t * derivs[l] - a_prev * derivs[l - 1]) / a_next;
    a_prev = a_next;
  }
}

std::pair<double, double> GegenbauerRecurrence::value_and_derivative(int degree,
                                                                     double t) const {
  double p_prev = 0.0, p = psi0_;
  double d_prev = 0.0, d = 0.0;
  double a_prev = 0.0;
  for (int l = 0; l < degree; ++l) {
    const double a_next = coupling(l + 1);
    const double p_next = (t * p - a_prev * p_prev) / a_next;
    const double d_next = (p + t * d - a_prev * d_prev) / a_next;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    a_prev = a_next;
  }
  return {p, d};
}

GaussRule gauss_gegenbauer(int count, double lambda, double mass) {
  if (count < 1) throw DomainError("gauss_gegenbauer: count must be positive");
  const GegenbauerRecurrence rec(lambda, mass);
  GaussRule rule;
  rule.nodes.assign(count, 0.0);
  rule.weights.assign(count, 0.0);

  // Roots in the closed upper half, largest first. Initial guesses interpolate
  // between the Chebyshev T (lambda = 0) and U (lambda = 1) root formulas.
  const int half = (count + 1) / 2;
  std::vector<double> psi(count);
  for (int i = 1; i <= half; ++i) {
    const int slot = count - i;  // ascending storage
    if (2 * i - 1 == count) {
      rule.nodes[slot] = 0.0;
      continue;
    }
    double t = std::cos((i - 0.5 * (1.0 - lambda)) * std::numbers::pi / (count + lambda));
    bool converged = false;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
      const auto [p, dp] = rec.value_and_derivative(count, t);
      const double step = p / dp;
      t -= step;
      if (std::abs(step) < kNewtonTol) {
        converged = true;
        break;
      }
    }
    if (!converged || !(t > 0.0) || !(t < 1.0)) {
      throw ConvergenceError("gauss_gegenbauer: Newton iteration failed for root " +
                             std::to_string(i) + " of " + std::to_string(count));
    }
    rule.nodes[slot] = t;
  }
  for (int i = 0; i < count / 2; ++i) rule.nodes[i] = -rule.nodes[count - 1 - i];

  for (int i = 1; i < count; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) {
      throw ConvergenceError("gauss_gegenbauer: roots not distinct (count " +
                             std::to_string(count) + ")");
    }
  }

  // Christoffel numbers: w_i = 1 / sum_{l < count} psi_l(t_i)^2.
  for (int i = count - half; i < count; ++i) {
    rec.evaluate(rule.nodes[i], psi);
    double s = 0.0;
    for (double v : psi) s += v * v;
    rule.weights[i] = 1.0 / s;
  }
  for (int i = 0; i < count / 2; ++i) rule.weights[i] = rule.weights[count - 1 - i];
  return rule;
}

GaussRule gauss_legendre(int count, double a, double b) {
  GaussRule ref = gauss_gegenbauer(count, 0.5, 2.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < count; ++i) {
    ref.nodes[i] = mid + half * ref.nodes[i];
    ref.weights[i] *= half;
  }
  return ref;
}

}  // namespace qcurv::quad

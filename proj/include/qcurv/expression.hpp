#pragma once

#include <string>
#include <vector>

namespace qcurv::expr {

/// Polynomial in t, coefficient i multiplies t^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, double c = 1.0);

  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double operator()(double t) const;
  Polynomial derivative() const;

  /// No odd-degree terms (exact, on the parsed coefficients).
  bool is_even() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial pow(int e) const;

 private:
  void trim();
  std::vector<double> c_{0.0};
};

/// Parses an expression in t built from numbers, t, named constants, + - *,
/// parentheses and nonnegative integer powers ^m, e.g. "1.5 + t^2" or
/// "Q_h + 0.3*t" or "2*(1 - t^2)^3". `names` and `values` list the named
/// constants. Throws ConfigError with the offending position.
Polynomial parse(const std::string& text, const std::vector<std::string>& names = {},
                 const std::vector<double>& values = {});

/// Taylor coefficients of f(cos(theta)) (sign = +1) or f(-cos(theta))
/// (sign = -1) in theta, orders 0..order.
std::vector<double> pole_series(const Polynomial& f, int sign, int order);

}  // namespace qcurv::expr

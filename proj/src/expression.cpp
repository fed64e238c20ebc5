#include "qcurv/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "qcurv/error.hpp"

namespace qcurv::expr {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
  trim();
}

Polynomial Polynomial::monomial(int degree, double c) {
  std::vector<double> v(degree + 1, 0.0);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double t) const {
  double s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d(std::max<std::size_t>(c_.size() - 1, 1), 0.0);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

bool Polynomial::is_even() const {
  for (std::size_t i = 1; i < c_.size(); i += 2) {
    if (c_[i] != 0.0) return false;
  }
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> v(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
  std::vector<double> v = c_;
  for (double& x : v) x = -x;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<double> v(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::pow(int e) const {
  Polynomial r = constant(1.0);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

namespace {

constexpr int kMaxDegree = 64;

// expr   := term (('+' | '-') term)*
// term   := factor ('*' factor)*
// factor := ('-' | '+') factor | power
// power  := atom ('^' integer)?
// atom   := number | 't' | name | '(' expr ')'
class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& names,
         const std::vector<double>& values)
      : s_(s), names_(names), values_(values) {}

  Polynomial run() {
    Polynomial p = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("f expression: " + what + " at position " + std::to_string(pos_) +
                      " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) {
        p = p + term();
      } else if (accept('-')) {
        p = p - term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = factor();
    while (accept('*')) p = p * factor();
    return p;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    if (static_cast<long>(e) * std::max(base.degree(), 0) > kMaxDegree) fail("degree too large");
    return base.pow(e);
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (accept('(')) {
      Polynomial p = expression();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      return Polynomial::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "t") return Polynomial::monomial(1);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return Polynomial::constant(values_[i]);
      }
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected character");
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  const std::vector<double>& values_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(const std::string& text, const std::vector<std::string>& names,
                 const std::vector<double>& values) {
  if (names.size() != values.size()) throw Error("expr::parse: names/values size mismatch");
  return Parser(text, names, values).run();
}

std::vector<double> pole_series(const Polynomial& f, int sign, int order) {
  // Truncated series of s * cos(theta), then Horner in the truncated ring.
  std::vector<double> c(order + 1, 0.0);
  double fact = 1.0;
  for (int j = 0; 2 * j <= order; ++j) {
    if (j > 0) fact *= (2.0 * j - 1.0) * (2.0 * j);
    c[2 * j] = sign * ((j % 2 == 0) ? 1.0 : -1.0) / fact;
  }
  std::vector<double> acc(order + 1, 0.0);
  const auto& a = f.coeffs();
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    std::vector<double> next(order + 1, 0.0);
    for (int i = 0; i <= order; ++i) {
      if (acc[i] == 0.0) continue;
      for (int j = 0; i + j <= order; ++j) next[i + j] += acc[i] * c[j];
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return acc;
}

}  // namespace qcurv::expr

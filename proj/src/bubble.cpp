#include "qcurv/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcurv/error.hpp"
#include "qcurv/quadrature.hpp"

namespace qcurv {

const char* to_string(Group g) { return g == Group::Trivial ? "trivial" : "antipodal"; }
const char* to_string(Pole p) { return p == Pole::North ? "north" : "south"; }

}  // namespace qcurv

namespace qcurv::bubble {

namespace {

constexpr double kRadialTol = 1e-10;
constexpr int kRadialStartNodes = 16;
constexpr int kRadialMaxNodes = 8192;

// Radial function sum_j coeff_j * y^(2 e_j) * (1 + y^2)^(-p_j) of y = |x|.
struct Term {
  double coeff;
  double power;
  int ypow;
};

using Radial = std::vector<Term>;

void add_term(Radial& f, Term t) {
  for (auto& s : f) {
    if (s.power == t.power && s.ypow == t.ypow) {
      s.coeff += t.coeff;
      return;
    }
  }
  f.push_back(t);
}

// Delta = -(d^2/dy^2 + (n-1)/y d/dy) on terms without a y^2 prefactor.
Radial laplacian(const Radial& f, int n) {
  Radial out;
  for (const auto& t : f) {
    if (t.ypow != 0) throw Error("radial laplacian: unsupported term");
    const double p = t.power;
    add_term(out, {-2.0 * p * (2.0 * p + 2.0 - n) * t.coeff, p + 1.0, 0});
    add_term(out, {4.0 * p * (p + 1.0) * t.coeff, p + 2.0, 0});
  }
  return out;
}

Radial product(const Radial& a, const Radial& b) {
  Radial out;
  for (const auto& s : a) {
    for (const auto& t : b) add_term(out, {s.coeff * t.coeff, s.power + t.power, s.ypow + t.ypow});
  }
  return out;
}

// |d f / dy|^2 for f without y^2 prefactors.
Radial gradient_squared(const Radial& f) {
  Radial g;  // df/dy = y * sum(-2 p c rho^{-p-1})
  for (const auto& t : f) add_term(g, {-2.0 * t.power * t.coeff, t.power + 1.0, 0});
  Radial sq = product(g, g);
  for (auto& t : sq) t.ypow += 1;
  return sq;
}

// omega_{n-1} * int_0^inf F(mu r) r^(n-1) dr with r = tan(phi), Gauss-Legendre in phi.
double radial_integral(const Radial& f, int n, double mu, int nodes) {
  const auto rule = quad::gauss_legendre(nodes, 0.0, 0.5 * std::numbers::pi);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double s = std::sin(rule.nodes[i]);
    const double c = std::cos(rule.nodes[i]);
    const double q = c * c + mu * mu * s * s;
    double v = 0.0;
    for (const auto& t : f) {
      v += t.coeff * std::pow(mu, 2 * t.ypow) * std::pow(s, 2 * t.ypow + n - 1) *
           std::pow(c, 2.0 * t.power - 2.0 * t.ypow - n - 1.0) / std::pow(q, t.power);
    }
    sum += rule.weights[i] * v;
  }
  return SphereContext::sphere_volume(n - 1) * sum;
}

Radial extremal(int n, int k) { return Radial{{1.0, 0.5 * (n - 2 * k), 0}}; }

}  // namespace

double bubble_value(const SphereContext& ctx, double beta, double s) {
  const double root = std::sqrt((beta - 1.0) * (beta + 1.0));
  return std::pow(root / (beta - s), ctx.c_nk);
}

zonal::ZonalField bubble_field(zonal::GridPtr grid, const BubbleParams& p) {
  if (!(p.beta > 1.0)) throw DomainError("bubble_field: beta must exceed 1");
  const SphereContext& ctx = grid->ctx();
  const double sign = p.pole == Pole::North ? 1.0 : -1.0;
  auto field = zonal::ZonalField::sample(grid, [&](double t) {
    return bubble_value(ctx, p.beta, sign * t);
  });
  const long double beta = p.beta;
  const long double root = std::sqrt((beta - 1.0L) * (beta + 1.0L));
  const long double c = ctx.c_nk;
  field.coeffs = zonal::analyze_function(*grid, [&](long double t) {
    return std::pow(root / (beta - sign * t), c);
  });
  return field;
}

double sobolev_quotient(int n, int k, double dilation) {
  if (2 * k >= n || k < 1) throw DomainError("sobolev_quotient: requires 1 <= k, 2k < n");
  if (!(dilation > 0.0)) throw DomainError("sobolev_quotient: dilation must be positive");
  const double two_star = 2.0 * n / (n - 2 * k);

  Radial g = extremal(n, k);
  for (int j = 0; j < k / 2; ++j) g = laplacian(g, n);
  const Radial numerator = (k % 2 == 0) ? product(g, g) : gradient_squared(g);
  const Radial denominator{{1.0, 0.5 * (n - 2 * k) * two_star, 0}};

  const double mu = dilation;
  const double scale = std::pow(mu, 2 * k);
  double previous = 0.0;
  for (int nodes = kRadialStartNodes; nodes <= kRadialMaxNodes; nodes *= 2) {
    const double num = scale * radial_integral(numerator, n, mu, nodes);
    const double den = radial_integral(denominator, n, mu, nodes);
    const double value = num / std::pow(den, 2.0 / two_star);
    if (nodes > kRadialStartNodes && std::abs(value - previous) < kRadialTol * std::abs(value)) {
      return value;
    }
    previous = value;
  }
  throw ConvergenceError("sobolev_quotient: radial quadrature did not converge for n=" +
                         std::to_string(n) + ", k=" + std::to_string(k));
}

double sobolev_constant(int n, int k) { return 1.0 / sobolev_quotient(n, k, 1.0); }

double sobolev_constant(const SphereContext& ctx) { return sobolev_constant(ctx.n, ctx.k); }

double extremal_constant(int n, int k) {
  Radial g = extremal(n, k);
  for (int j = 0; j < k; ++j) g = laplacian(g, n);
  const double target = 0.5 * (n + 2 * k);
  double lead = 0.0, rest = 0.0;
  for (const auto& t : g) {
    if (t.power == target) {
      lead = t.coeff;
    } else {
      rest = std::max(rest, std::abs(t.coeff));
    }
  }
  if (rest > 1e-9 * std::abs(lead)) {
    throw Error("extremal_constant: Delta^k U is not a multiple of U^(2*-1)");
  }
  return lead;
}

double extremal_profile(int n, int k, double a, double r) {
  return std::pow(1.0 + a * r * r, k - 0.5 * n);
}

InteractionEnergy interaction_energy(const zonal::ZonalGrid& grid, double beta,
                                     const OrbitSpec& orbit) {
  if (!(beta > 1.0)) throw DomainError("interaction_energy: beta must exceed 1");
  InteractionEnergy out;
  if (orbit.group == Group::Trivial) return out;
  const SphereContext& ctx = grid.ctx();
  const auto t = grid.nodes();
  std::vector<double> g(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double un = bubble_value(ctx, beta, t[i]);
    const double us = bubble_value(ctx, beta, -t[i]);
    g[i] = un * std::pow(us, ctx.two_star - 1.0);
  }
  out.d_beta = zonal::integrate(grid, g);
  out.lambda_estimate = out.d_beta / std::pow((beta - 1.0) * (beta + 1.0), ctx.c_nk);
  return out;
}

double interaction_constant(const SphereContext& ctx, const OrbitSpec& orbit) {
  if (orbit.group == Group::Trivial) return 0.0;
  const int n = ctx.n, k = ctx.k;
  // (1 - cos th)^(k - n/2) sin^(n-1) th = 2^(k + n/2 - 1) sin^(2k-1)(th/2) cos^(n-1)(th/2).
  const double pre = std::pow(2.0, k + 0.5 * n - 1.0);
  auto integral = [&](int nodes) {
    const auto rule = quad::gauss_legendre(nodes, 0.0, std::numbers::pi);
    double s = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double h = 0.5 * rule.nodes[i];
      s += rule.weights[i] * pre * std::pow(std::sin(h), 2 * k - 1) * std::pow(std::cos(h), n - 1);
    }
    return SphereContext::sphere_volume(n - 1) * s;
  };
  double prev = integral(kRadialStartNodes);
  double value = prev;
  for (int nodes = 2 * kRadialStartNodes; nodes <= kRadialMaxNodes; nodes *= 2) {
    value = integral(nodes);
    if (std::abs(value - prev) < 1e-13 * std::abs(value)) break;
    prev = value;
  }
  // Antipodal orbit: one partner at distance pi, 1 - cos(pi) = 2.
  return value * std::pow(2.0, k - 0.5 * n);
}

double interaction_constant_extrapolated(const zonal::ZonalGrid& grid, const OrbitSpec& orbit,
                                         double beta_small, double beta_large) {
  const double x1 = (beta_small - 1.0) * (beta_small + 1.0);
  const double x2 = (beta_large - 1.0) * (beta_large + 1.0);
  const double l1 = interaction_energy(grid, beta_small, orbit).lambda_estimate;
  const double l2 = interaction_energy(grid, beta_large, orbit).lambda_estimate;
  return (x2 * l1 - x1 * l2) / (x2 - x1);
}

double antipodal_asymmetry(const zonal::ZonalField& f) {
  double scale = 0.0, gap = 0.0;
  const int m = static_cast<int>(f.values.size());
  for (int i = 0; i < m; ++i) {
    scale = std::max(scale, std::abs(f.values[i]));
    gap = std::max(gap, std::abs(f.values[i] - f.values[m - 1 - i]));
  }
  return scale > 0.0 ? gap / scale : 0.0;
}

OrbitSpec OrbitSpec::of(Group group) {
  OrbitSpec o;
  o.group = group;
  if (group == Group::Antipodal) {
    o.size = 2;
    o.poles = {Pole::North, Pole::South};
    o.separation = std::numbers::pi;
  }
  return o;
}

TestEnergy test_energy(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f, double beta,
                       const OrbitSpec& orbit) {
  if (!(beta > 1.0)) throw DomainError("test_energy: beta must exceed 1");
  for (double v : f.values) {
    if (!(v > 0.0)) throw DomainError("test_energy: f must be positive");
  }
  if (orbit.group == Group::Antipodal && antipodal_asymmetry(f) > 1e-10) {
    throw DomainError("test_energy: f is not antipodally even (violates G-invariance)");
  }
  const SphereContext& ctx = spec.ctx;
  const zonal::GridPtr& grid = f.grid;
  std::vector<double> u(grid->size(), 0.0);
  std::vector<double> a(grid->band_limit() + 1, 0.0);
  for (Pole p : orbit.poles) {
    const auto b = bubble_field(grid, {beta, p});
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += b.values[i];
    for (std::size_t l = 0; l < a.size(); ++l) a[l] += (*b.coeffs)[l];
  }
  double num = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) num += spec.eigenvalues[l] * a[l] * a[l];
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = f.values[i] * std::pow(u[i], ctx.two_star);
  const double den = std::pow(zonal::integrate(*grid, g), 2.0 / ctx.two_star);

  const double f_pole = zonal::evaluate(*grid, zonal::coefficients(f), 1.0);
  TestEnergy out;
  out.I_value = num / den;
  out.threshold = std::pow(static_cast<double>(orbit.size), 2.0 * ctx.k / ctx.n) /
                  (std::pow(f_pole, 2.0 / ctx.two_star) * ctx.K_nk);
  out.strict = out.I_value < out.threshold;
  out.margin = out.threshold - out.I_value;
  return out;
}

ThresholdReport threshold_profile(const SphereContext& ctx, const zonal::ZonalField& f,
                                  const OrbitSpec& orbit) {
  ThresholdReport r;
  const double m_factor = std::pow(static_cast<double>(orbit.size), 2.0 * ctx.k / ctx.n);
  const double to_mu_f = 2.0 / (ctx.n - 2 * ctx.k);
  r.values.resize(f.values.size());
  r.mu_f_values.resize(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!(f.values[i] > 0.0)) throw DomainError("threshold_profile: f must be positive");
    r.values[i] = m_factor / (std::pow(f.values[i], 2.0 / ctx.two_star) * ctx.K_nk);
    r.mu_f_values[i] = to_mu_f * r.values[i];
  }
  const auto it = std::min_element(r.values.begin(), r.values.end());
  r.argmin = static_cast<int>(it - r.values.begin());
  r.min_value = *it;
  r.argmin_t = f.grid->nodes()[r.argmin];
  // The poles are not nodes; maxima of f often sit there.
  const auto a = zonal::coefficients(f);
  for (double pole : {1.0, -1.0}) {
    const double fp = zonal::evaluate(*f.grid, a, pole);
    if (!(fp > 0.0)) throw DomainError("threshold_profile: f must be positive");
    const double tp = m_factor / (std::pow(fp, 2.0 / ctx.two_star) * ctx.K_nk);
    if (tp < r.min_value) {
      r.min_value = tp;
      r.argmin_t = pole;
    }
  }
  r.min_mu_f = to_mu_f * r.min_value;
  return r;
}

}  // namespace qcurv::bubble

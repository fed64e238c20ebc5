#include "qcurv/gjms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcurv/error.hpp"

namespace qcurv::gjms {

std::vector<double> factor_constants(int n, int k) {
  if (2 * k >= n) throw DomainError("gjms: requires 2k < n");
  std::vector<double> c(k);
  const double half_n = 0.5 * n;
  for (int j = 1; j <= k; ++j) c[j - 1] = (half_n + j - 1) * (half_n - j);
  return c;
}

GjmsSpectrum build_spectrum(const SphereContext& ctx, int band_limit) {
  if (2 * ctx.k >= ctx.n) throw DomainError("build_spectrum: requires 2k < n");
  if (band_limit < 0) throw DomainError("build_spectrum: negative band limit");
  GjmsSpectrum spec;
  spec.ctx = ctx;
  spec.factors = factor_constants(ctx.n, ctx.k);
  spec.eigenvalues.resize(band_limit + 1);
  for (int l = 0; l <= band_limit; ++l) {
    const double d = zonal::laplace_eig(ctx, l);
    double p = 1.0;
    for (double c : spec.factors) p *= d + c;
    spec.eigenvalues[l] = p;
  }
  spec.coercive = *std::min_element(spec.eigenvalues.begin(), spec.eigenvalues.end()) > 0.0;
  return spec;
}

namespace {

void check_compatible(const GjmsSpectrum& spec, const zonal::ZonalGrid& grid) {
  if (spec.band_limit() != grid.band_limit() || spec.ctx.n != grid.ctx().n ||
      spec.ctx.k != grid.ctx().k) {
    throw DomainError("gjms: spectrum and grid do not match");
  }
}

}  // namespace

zonal::ZonalField apply_P(const GjmsSpectrum& spec, const zonal::ZonalField& u) {
  check_compatible(spec, *u.grid);
  std::vector<double> a =
      u.coeffs ? *u.coeffs : zonal::analyze_denoised(*u.grid, u.values);
  for (std::size_t l = 0; l < a.size(); ++l) a[l] *= spec.eigenvalues[l];
  return zonal::synthesize(u.grid, a);
}

zonal::ZonalField apply_P_inverse(const GjmsSpectrum& spec, const zonal::ZonalField& w) {
  check_compatible(spec, *w.grid);
  std::vector<double> a = zonal::coefficients(w);
  for (std::size_t l = 0; l < a.size(); ++l) a[l] /= spec.eigenvalues[l];
  return zonal::synthesize(w.grid, a);
}

double rayleigh(const GjmsSpectrum& spec, const zonal::ZonalField& f, double q,
                const zonal::ZonalField& u) {
  check_compatible(spec, *u.grid);
  if (!(q > 2.0) || q > spec.ctx.two_star + 1e-12) {
    throw DomainError("rayleigh: exponent must lie in (2, 2*]");
  }
  if (f.values.size() != u.values.size()) throw DomainError("rayleigh: grid mismatch");
  for (double fv : f.values) {
    if (!(fv > 0.0)) throw DomainError("rayleigh: f must be positive at every node");
  }
  const std::vector<double> a = zonal::coefficients(u);
  double num = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) num += spec.eigenvalues[l] * a[l] * a[l];

  std::vector<double> g(u.values.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f.values[i] * std::pow(std::abs(u.values[i]), q);
  const double den = zonal::integrate(*u.grid, g);
  if (!(den > 0.0)) throw DomainError("rayleigh: vanishing denominator (u == 0?)");
  return num / std::pow(den, 2.0 / q);
}

zonal::ZonalField conformal_q(const GjmsSpectrum& spec, const zonal::ZonalField& u) {
  for (double v : u.values) {
    if (!(v > 0.0)) {
      throw DomainError("conformal_q: conformal factor is not positive at every node");
    }
  }
  const zonal::ZonalField pu = apply_P(spec, u);
  const double scale = 2.0 / (spec.ctx.n - 2 * spec.ctx.k);
  std::vector<double> q(u.values.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = scale * std::pow(u.values[i], 1.0 - spec.ctx.two_star) * pu.values[i];
  }
  return zonal::ZonalField::from_values(u.grid, std::move(q));
}

CoercivityReport check_coercivity(const GjmsSpectrum& spec) {
  CoercivityReport r;
  const auto& ev = spec.eigenvalues;
  const auto it = std::min_element(ev.begin(), ev.end());
  r.min_eigenvalue = *it;
  r.argmin = static_cast<int>(it - ev.begin());
  r.positive = r.min_eigenvalue > 0.0;
  r.equivalence_lower = std::numeric_limits<double>::infinity();
  r.equivalence_upper = 0.0;
  for (int l = 0; l <= spec.band_limit(); ++l) {
    const double h = std::pow(1.0 + zonal::laplace_eig(spec.ctx, l), spec.ctx.k);
    const double ratio = ev[l] / h;
    r.equivalence_lower = std::min(r.equivalence_lower, ratio);
    r.equivalence_upper = std::max(r.equivalence_upper, ratio);
  }
  const int top = spec.band_limit();
  if (top > 0) {
    r.leading_symbol_ratio = ev[top] / std::pow(zonal::laplace_eig(spec.ctx, top), spec.ctx.k);
  }
  return r;
}

double ppp_probe(const GjmsSpectrum& spec, const zonal::ZonalField& w) {
  const zonal::ZonalField v = apply_P_inverse(spec, w);
  return *std::min_element(v.values.begin(), v.values.end());
}

}  // namespace qcurv::gjms

#include "qcurv/zonal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qcurv/error.hpp"

namespace qcurv::zonal {

namespace {

// Multiple of machine epsilon times sum_i |w_i v_i psi_l(t_i)| below which a
// computed coefficient is treated as rounding noise.
constexpr double kNoiseFactor = 64.0;

constexpr int kMinBandLimit = 8;

void check_finite(std::span<const double> v, const char* where) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(where) + ": non-finite value");
  }
}

}  // namespace

int ZonalGrid::min_nodes(const SphereContext& ctx, int band_limit) {
  const int ceil_star = static_cast<int>(std::ceil(ctx.two_star - 1e-12));
  const int half = ((ceil_star + 1) * band_limit + 1) / 2;  // ceil((ceil(2*)+1) L / 2)
  return half + 1;
}

ZonalGrid::ZonalGrid(const SphereContext& ctx, int band_limit, int node_count)
    : ctx_(ctx),
      band_limit_(band_limit),
      recurrence_(0.5 * (ctx.n - 1), ctx.omega_n) {
  if (ctx.n <= 2 * ctx.k) {
    throw DomainError("build_grid: requires n > 2k (got n=" + std::to_string(ctx.n) +
                      ", k=" + std::to_string(ctx.k) + ")");
  }
  if (band_limit < kMinBandLimit) {
    throw DomainError("build_grid: band limit must be >= 8");
  }
  if (node_count < min_nodes(ctx, band_limit)) {
    throw DomainError("build_grid: node count below the dealiasing minimum");
  }

  // dv_h = omega_{n-1} (1 - t^2)^((n-2)/2) dt: Gegenbauer weight with
  // lambda = (n-1)/2 and total mass omega_n.
  auto rule = quad::gauss_gegenbauer(node_count, recurrence_.lambda(), ctx.omega_n);
  nodes_ = std::move(rule.nodes);
  weights_ = std::move(rule.weights);

  const std::size_t m = nodes_.size();
  const std::size_t rows = static_cast<std::size_t>(band_limit) + 1;
  basis_.assign(rows * m, 0.0);
  std::vector<double> psi(rows);
  for (std::size_t i = 0; i < m; ++i) {
    // Evaluate on the nonnegative half and mirror so parity holds exactly.
    const std::size_t mi = m - 1 - i;
    if (nodes_[i] < 0.0 && mi > i) continue;
    recurrence_.evaluate(nodes_[i], psi);
    for (std::size_t l = 0; l < rows; ++l) {
      basis_[l * m + i] = psi[l];
      if (mi != i) basis_[l * m + mi] = (l % 2 == 0) ? psi[l] : -psi[l];
    }
  }
}

GridPtr build_grid(const SphereContext& ctx, int band_limit, int node_count) {
  if (ctx.n <= 2 * ctx.k) {
    throw DomainError("build_grid: requires n > 2k (got n=" + std::to_string(ctx.n) +
                      ", k=" + std::to_string(ctx.k) + ")");
  }
  if (band_limit < kMinBandLimit) throw DomainError("build_grid: band limit must be >= 8");
  const int m = node_count == 0 ? ZonalGrid::min_nodes(ctx, band_limit) : node_count;
  return std::make_shared<const ZonalGrid>(ctx, band_limit, m);
}

ZonalField ZonalField::from_values(GridPtr grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid->size()) {
    throw DomainError("ZonalField: value count does not match grid");
  }
  return ZonalField{std::move(grid), std::move(values), std::nullopt};
}

ZonalField ZonalField::constant(GridPtr grid, double c) {
  std::vector<double> a(grid->band_limit() + 1, 0.0);
  a[0] = c * std::sqrt(grid->ctx().omega_n);
  const int m = grid->size();
  return ZonalField{std::move(grid), std::vector<double>(m, c), std::move(a)};
}

std::vector<double> analyze(const ZonalGrid& grid, std::span<const double> values) {
  if (static_cast<int>(values.size()) != grid.size()) {
    throw DomainError("analyze: value count does not match grid");
  }
  check_finite(values, "analyze");
  const auto w = grid.weights();
  std::vector<double> wv(values.size());
  for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = w[i] * values[i];
  std::vector<double> a(grid.band_limit() + 1);
  for (int l = 0; l <= grid.band_limit(); ++l) {
    const auto row = grid.basis_row(l);
    double s = 0.0;
    for (std::size_t i = 0; i < wv.size(); ++i) s += wv[i] * row[i];
    a[l] = s;
  }
  return a;
}

std::vector<double> analyze(const ZonalField& field) {
  return analyze(*field.grid, field.values);
}

std::vector<double> analyze_denoised(const ZonalGrid& grid, std::span<const double> values) {
  if (static_cast<int>(values.size()) != grid.size()) {
    throw DomainError("analyze: value count does not match grid");
  }
  check_finite(values, "analyze");
  const auto w = grid.weights();
  std::vector<double> wv(values.size());
  for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = w[i] * values[i];
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> a(grid.band_limit() + 1, 0.0);
  int last = -1;
  for (int l = 0; l <= grid.band_limit(); ++l) {
    const auto row = grid.basis_row(l);
    double s = 0.0, bound = 0.0;
    for (std::size_t i = 0; i < wv.size(); ++i) {
      const double term = wv[i] * row[i];
      s += term;
      bound += std::abs(term);
    }
    a[l] = s;
    if (std::abs(s) > kNoiseFactor * eps * bound) last = l;
  }
  for (int l = last + 1; l <= grid.band_limit(); ++l) a[l] = 0.0;
  return a;
}

std::vector<double> analyze_function(const ZonalGrid& grid,
                                     const std::function<long double(long double)>& fn) {
  using R = long double;
  const int m = grid.size();
  const int rows = grid.band_limit() + 1;
  const R lambda = grid.recurrence().lambda();
  const R psi0 = 1.0L / std::sqrt(static_cast<R>(grid.ctx().omega_n));
  std::vector<R> coupling(m + 1, 0.0L);
  for (int l = 1; l <= m; ++l) {
    const R d = l;
    coupling[l] = std::sqrt(d * (d + 2 * lambda - 1) / (4 * (d + lambda) * (d + lambda - 1)));
  }

  std::vector<R> sum(rows, 0.0L), bound(rows, 0.0L), psi(m);
  const auto nodes = grid.nodes();
  for (int i = m / 2; i < m; ++i) {
    // Two Newton steps on psi_M polish the double-precision root.
    R t = nodes[i];
    for (int it = 0; it < 2 && t != 0.0L; ++it) {
      R p_prev = 0, p = psi0, d_prev = 0, d = 0;
      for (int l = 0; l < m; ++l) {
        const R p_next = (t * p - coupling[l] * p_prev) / coupling[l + 1];
        const R d_next = (p + t * d - coupling[l] * d_prev) / coupling[l + 1];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
      }
      t -= p / d;
    }
    psi[0] = psi0;
    for (int l = 0; l + 1 < m; ++l) {
      psi[l + 1] = (t * psi[l] - (l > 0 ? coupling[l] * psi[l - 1] : 0.0L)) / coupling[l + 1];
    }
    R norm = 0;
    for (int l = 0; l < m; ++l) norm += psi[l] * psi[l];
    const R w = 1.0L / norm;
    const bool paired = grid.mirror(i) != i;
    const R up = fn(t);
    const R down = paired ? fn(-t) : 0.0L;
    for (int l = 0; l < rows; ++l) {
      const R even = w * up * psi[l];
      const R odd = paired ? ((l % 2 == 0) ? 1 : -1) * w * down * psi[l] : 0.0L;
      sum[l] += even + odd;
      bound[l] += std::abs(even) + std::abs(odd);
    }
  }
  const R eps = std::numeric_limits<R>::epsilon();
  std::vector<double> a(rows, 0.0);
  int last = -1;
  for (int l = 0; l < rows; ++l) {
    if (std::abs(sum[l]) > kNoiseFactor * eps * bound[l]) last = l;
  }
  for (int l = 0; l <= last; ++l) a[l] = static_cast<double>(sum[l]);
  return a;
}

std::vector<double> coefficients(const ZonalField& field) {
  if (field.coeffs) return *field.coeffs;
  return analyze(field);
}

ZonalField synthesize(GridPtr grid, std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) > grid->band_limit() + 1) {
    throw DomainError("synthesize: more coefficients than the band limit allows");
  }
  const std::size_t m = grid->size();
  std::vector<double> v(m, 0.0);
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    const double c = coeffs[l];
    if (c == 0.0) continue;
    const auto row = grid->basis_row(static_cast<int>(l));
    for (std::size_t i = 0; i < m; ++i) v[i] += c * row[i];
  }
  std::vector<double> a(grid->band_limit() + 1, 0.0);
  std::copy(coeffs.begin(), coeffs.end(), a.begin());
  return ZonalField{std::move(grid), std::move(v), std::move(a)};
}

double integrate(const ZonalGrid& grid, std::span<const double> values) {
  if (static_cast<int>(values.size()) != grid.size()) {
    throw DomainError("integrate: value count does not match grid");
  }
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += w[i] * values[i];
  return s;
}

double laplace_eig(const SphereContext& ctx, int l) {
  if (l < 0) throw DomainError("laplace_eig: degree must be nonnegative");
  return static_cast<double>(l) * static_cast<double>(l + ctx.n - 1);
}

double evaluate(const ZonalGrid& grid, std::span<const double> coeffs, double t) {
  std::vector<double> psi(coeffs.size());
  grid.recurrence().evaluate(t, psi);
  double s = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) s += coeffs[l] * psi[l];
  return s;
}

double evaluate_derivative(const ZonalGrid& grid, std::span<const double> coeffs, double t) {
  std::vector<double> psi(coeffs.size()), dpsi(coeffs.size());
  grid.recurrence().evaluate(t, psi, dpsi);
  double s = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) s += coeffs[l] * dpsi[l];
  return s;
}

std::vector<double> derivative_at_nodes(const ZonalGrid& grid, std::span<const double> coeffs) {
  const auto t = grid.nodes();
  std::vector<double> out(t.size());
  std::vector<double> psi(coeffs.size()), dpsi(coeffs.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    grid.recurrence().evaluate(t[i], psi, dpsi);
    double s = 0.0;
    for (std::size_t l = 0; l < coeffs.size(); ++l) s += coeffs[l] * dpsi[l];
    out[i] = s;
  }
  return out;
}

}  // namespace qcurv::zonal

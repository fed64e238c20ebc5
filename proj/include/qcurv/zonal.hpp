#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qcurv/quadrature.hpp"
#include "qcurv/sphere_context.hpp"

namespace qcurv::zonal {

/// Quadrature nodes t_i = cos(theta_i) and weights realizing the integral over
/// S^n for zonal integrands, together with the orthonormal zonal harmonics
/// psi_0..psi_L sampled at the nodes.
///
/// The weights integrate exactly every zonal polynomial of degree <= 2M - 1.
/// M is over-sized relative to L so that powers such as u^(2*-1) of a band-
/// limited u are integrated with small aliasing error.
class ZonalGrid {
 public:
  ZonalGrid(const SphereContext& ctx, int band_limit, int node_count);

  const SphereContext& ctx() const { return ctx_; }
  int band_limit() const { return band_limit_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  /// psi_l at every node.
  std::span<const double> basis_row(int l) const {
    return {basis_.data() + static_cast<std::size_t>(l) * nodes_.size(), nodes_.size()};
  }
  const quad::GegenbauerRecurrence& recurrence() const { return recurrence_; }

  /// Index of the node paired with node i under t -> -t.
  int mirror(int i) const { return size() - 1 - i; }

  /// Smallest admissible node count for band limit L:
  /// ceil((ceil(2*) + 1) L / 2) + 1.
  static int min_nodes(const SphereContext& ctx, int band_limit);

 private:
  SphereContext ctx_;
  int band_limit_;
  quad::GegenbauerRecurrence recurrence_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> basis_;  // (L+1) x M, row-major
};

using GridPtr = std::shared_ptr<const ZonalGrid>;

/// Gauss grid for zonal functions on S^n with band limit L >= 8.
/// `node_count` = 0 selects ZonalGrid::min_nodes; larger values over-resolve.
GridPtr build_grid(const SphereContext& ctx, int band_limit, int node_count = 0);

/// A zonal function held by its node values and, when known, its coefficients
/// in the orthonormal basis psi_0..psi_L.
struct ZonalField {
  GridPtr grid;
  std::vector<double> values;
  std::optional<std::vector<double>> coeffs;

  static ZonalField from_values(GridPtr grid, std::vector<double> values);

  template <class F>
  static ZonalField sample(GridPtr grid, F&& fn) {
    std::vector<double> v(grid->size());
    const auto t = grid->nodes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(t[i]);
    return from_values(std::move(grid), std::move(v));
  }

  static ZonalField constant(GridPtr grid, double c);
};

/// a_l = sum_i w_i v_i psi_l(t_i), l = 0..L.
std::vector<double> analyze(const ZonalGrid& grid, std::span<const double> values);
std::vector<double> analyze(const ZonalField& field);

/// Like analyze, but trailing coefficients that cannot be distinguished from
/// floating-point rounding in the quadrature sum are set to zero. Used before
/// applying high-order multipliers, which would otherwise amplify the noise.
std::vector<double> analyze_denoised(const ZonalGrid& grid, std::span<const double> values);

/// Coefficients of a function known in closed form. Nodes, weights, basis
/// values and fn are re-evaluated in extended precision and the result is
/// denoised at that precision, so high-order multipliers stay accurate.
std::vector<double> analyze_function(const ZonalGrid& grid,
                                     const std::function<long double(long double)>& fn);

/// Stored coefficients when present, otherwise analyze(values).
std::vector<double> coefficients(const ZonalField& field);

/// values_i = sum_l a_l psi_l(t_i); coeffs may be shorter than L + 1.
ZonalField synthesize(GridPtr grid, std::span<const double> coeffs);

/// sum_i w_i v_i.
double integrate(const ZonalGrid& grid, std::span<const double> values);

/// Eigenvalue l (l + n - 1) of the (nonnegative) Laplace-Beltrami operator.
double laplace_eig(const SphereContext& ctx, int l);

/// Point evaluation of sum_l a_l psi_l(t) for any t in [-1, 1].
double evaluate(const ZonalGrid& grid, std::span<const double> coeffs, double t);

/// d/dt of sum_l a_l psi_l at t.
double evaluate_derivative(const ZonalGrid& grid, std::span<const double> coeffs, double t);

/// d/dt of sum_l a_l psi_l at every node.
std::vector<double> derivative_at_nodes(const ZonalGrid& grid, std::span<const double> coeffs);

}  // namespace qcurv::zonal

#include "qcurv/obstruction.hpp"

#include <algorithm>
#include <cmath>

#include "qcurv/error.hpp"

namespace qcurv::obstruction {

namespace {

constexpr double kFlatDerivative = 1e-8;

}  // namespace

const char* to_string(Interpretation i) {
  return i == Interpretation::ConsistentWithSolution ? "ConsistentWithSolution"
                                                     : "ObstructionSignal";
}

KwReport kw_functional(const zonal::ZonalField& f, const zonal::ZonalField& u) {
  if (f.grid != u.grid) throw DomainError("kw_functional: f and u live on different grids");
  for (double v : u.values) {
    if (!(v > 0.0)) throw DomainError("kw_functional: u must be positive");
  }
  const auto& grid = *u.grid;
  const double two_star = grid.ctx().two_star;
  const auto t = grid.nodes();
  const auto df =
      zonal::derivative_at_nodes(grid, f.coeffs ? *f.coeffs : zonal::analyze_denoised(grid, f.values));

  std::vector<double> g(t.size()), mass(t.size());
  double df_max = 0.0, f_max = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mass[i] = std::pow(u.values[i], two_star);
    g[i] = (1.0 - t[i] * t[i]) * df[i] * mass[i];
    df_max = std::max(df_max, std::abs(df[i]));
    f_max = std::max(f_max, std::abs(f.values[i]));
  }
  KwReport r;
  r.value = zonal::integrate(grid, g);
  // A derivative at roundoff level (constant f) must not set the scale.
  const double scale = std::max(df_max, kFlatDerivative * f_max) * zonal::integrate(grid, mass);
  r.normalized_value = scale > 0.0 ? r.value / scale : 0.0;
  r.interpretation = std::abs(r.normalized_value) < kConsistencyTol
                         ? Interpretation::ConsistentWithSolution
                         : Interpretation::ObstructionSignal;
  return r;
}

}  // namespace qcurv::obstruction

#include "qcurv/sphere_context.hpp"

#include <cmath>
#include <numbers>

#include "qcurv/bubble.hpp"
#include "qcurv/error.hpp"
#include "qcurv/gjms.hpp"

namespace qcurv {

double SphereContext::sphere_volume(int d) {
  if (d < 0) throw DomainError("sphere_volume: negative dimension");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

SphereContext SphereContext::create(int n, int k) {
  if (n < 3) throw DomainError("SphereContext: dimension must be at least 3");
  if (k < 1) throw DomainError("SphereContext: order must be at least 1");
  if (2 * k >= n) throw DomainError("SphereContext: requires 2k < n");
  SphereContext ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.two_star = 2.0 * n / (n - 2 * k);
  ctx.c_nk = 0.5 * (n - 2 * k);
  ctx.omega_n = sphere_volume(n);
  double lambda0 = 1.0;
  for (double c : gjms::factor_constants(n, k)) lambda0 *= c;
  ctx.Q_h = lambda0 / ctx.c_nk;
  ctx.K_nk = bubble::sobolev_constant(n, k);
  return ctx;
}

}  // namespace qcurv

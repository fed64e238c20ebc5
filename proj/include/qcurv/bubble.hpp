#pragma once

#include <vector>

#include "qcurv/gjms.hpp"
#include "qcurv/sphere_context.hpp"
#include "qcurv/zonal.hpp"

namespace qcurv {

enum class Pole { North, South };

/// Isometry groups supported by the zonal reduction.
enum class Group { Trivial, Antipodal };

const char* to_string(Group g);
const char* to_string(Pole p);

}  // namespace qcurv

namespace qcurv::bubble {

/// Conformal factor of a Moebius dilation centred at a pole:
///   u(x) = (sqrt(beta^2 - 1) / (beta - cos d(x, pole)))^((n - 2k)/2),  beta > 1.
struct BubbleParams {
  double beta = 2.0;
  Pole pole = Pole::North;
};

/// Orbit of the north pole under the group.
struct OrbitSpec {
  Group group = Group::Trivial;
  int size = 1;
  std::vector<Pole> poles{Pole::North};
  double separation = 0.0;  // geodesic distance between distinct orbit points

  static OrbitSpec of(Group group);
};

/// Concentration thresholds T(x) = |O(x)|^(2k/n) / (f(x)^(2/2*) K(n,k)) per node.
/// The minimum also covers the two poles; `argmin` is the best node and
/// `argmin_t` the location of the overall minimum.
struct ThresholdReport {
  std::vector<double> values;       // I-functional (mu_{2*}) scale
  std::vector<double> mu_f_values;  // values * 2/(n-2k)
  double min_value = 0.0;
  double min_mu_f = 0.0;
  int argmin = 0;
  double argmin_t = 0.0;
};

/// Bubble value at cos d = s.
double bubble_value(const SphereContext& ctx, double beta, double s);

zonal::ZonalField bubble_field(zonal::GridPtr grid, const BubbleParams& p);

/// Sobolev Rayleigh quotient evaluated on U(mu x), U(x) = (1 + |x|^2)^(k - n/2),
/// by radial quadrature after the substitution r = tan(phi). Independent of mu
/// up to quadrature error.
double sobolev_quotient(int n, int k, double dilation = 1.0);

/// K(n,k) = 1 / sobolev_quotient(n, k).
double sobolev_constant(int n, int k);
double sobolev_constant(const SphereContext& ctx);

/// C with Delta^k U = C U^(2*-1) for U = (1 + |x|^2)^(k - n/2), from the
/// symbolic radial Laplacian.
double extremal_constant(int n, int k);

/// (1 + a r^2)^(k - n/2): extremal dilated so that Delta^k U = a^k C U^(2*-1).
double extremal_profile(int n, int k, double a, double r);

struct InteractionEnergy {
  double d_beta = 0.0;
  double lambda_estimate = 0.0;  // d_beta / (beta^2 - 1)^((n-2k)/2)
};

/// d_beta = sum_{i >= 2} int u_{beta,p} u_{beta,sigma_i(p)}^(2*-1) dv_h.
InteractionEnergy interaction_energy(const zonal::ZonalGrid& grid, double beta,
                                     const OrbitSpec& orbit);

/// Lambda_{p,G} from its defining integral, by Gauss-Legendre quadrature in
/// the polar angle.
double interaction_constant(const SphereContext& ctx, const OrbitSpec& orbit);

/// beta -> 1 Richardson extrapolation of the estimate, linear in beta^2 - 1,
/// from the two given beta values.
double interaction_constant_extrapolated(const zonal::ZonalGrid& grid, const OrbitSpec& orbit,
                                         double beta_small, double beta_large);

struct TestEnergy {
  double I_value = 0.0;
  double threshold = 0.0;
  bool strict = false;
  double margin = 0.0;  // threshold - I_value
};

/// I_h of u_beta = sum over the orbit of the pole bubbles, against the
/// threshold m^(2k/n) / (f(N)^(2/2*) K). Antipodal orbits require f even.
TestEnergy test_energy(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f, double beta,
                       const OrbitSpec& orbit);

ThresholdReport threshold_profile(const SphereContext& ctx, const zonal::ZonalField& f,
                                  const OrbitSpec& orbit);

/// Max relative deviation |f(t) - f(-t)| / max|f| over paired nodes.
double antipodal_asymmetry(const zonal::ZonalField& f);

}  // namespace qcurv::bubble

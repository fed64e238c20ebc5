#pragma once

#include <vector>

#include "qcurv/sphere_context.hpp"
#include "qcurv/zonal.hpp"

namespace qcurv::gjms {

/// Constants c_j = (n/2 + j - 1)(n/2 - j), j = 1..k, of the factorization
/// P_h = prod_j (Delta + c_j) on the round sphere.
std::vector<double> factor_constants(int n, int k);

/// P_h as a diagonal multiplier on zonal harmonics:
/// lambda_l = prod_j (l (l + n - 1) + c_j).
struct GjmsSpectrum {
  SphereContext ctx;
  std::vector<double> factors;
  std::vector<double> eigenvalues;  // lambda_0 .. lambda_L
  bool coercive = false;

  int band_limit() const { return static_cast<int>(eigenvalues.size()) - 1; }
};

GjmsSpectrum build_spectrum(const SphereContext& ctx, int band_limit);

/// P_h u. Uses the stored coefficients of u when present; otherwise the node
/// values are analyzed with rounding noise removed.
zonal::ZonalField apply_P(const GjmsSpectrum& spec, const zonal::ZonalField& u);

/// Solves P_h v = w on the band-limited space.
zonal::ZonalField apply_P_inverse(const GjmsSpectrum& spec, const zonal::ZonalField& w);

/// I_q(u) = sum_l lambda_l a_l^2 / (int f |u|^q)^(2/q).
double rayleigh(const GjmsSpectrum& spec, const zonal::ZonalField& f, double q,
                const zonal::ZonalField& u);

/// Q-curvature of u^(4/(n-2k)) h: (2/(n-2k)) u^(1-2*) P_h u. Requires u > 0.
zonal::ZonalField conformal_q(const GjmsSpectrum& spec, const zonal::ZonalField& u);

struct CoercivityReport {
  double min_eigenvalue = 0.0;
  int argmin = 0;
  bool positive = false;
  /// min / max over l <= L of lambda_l / (1 + l(l+n-1))^k: spectral form of
  /// the equivalence between the P-norm and the H_k^2 norm.
  double equivalence_lower = 0.0;
  double equivalence_upper = 0.0;
  /// lambda_L / (L(L+n-1))^k, which tends to 1 with the leading symbol Delta^k.
  double leading_symbol_ratio = 0.0;
};

CoercivityReport check_coercivity(const GjmsSpectrum& spec);

/// Discrete positivity preservation probe: min over nodes of P^{-1} w, where
/// w should be positive. A positive result is consistent with (PPP).
double ppp_probe(const GjmsSpectrum& spec, const zonal::ZonalField& w);

}  // namespace qcurv::gjms

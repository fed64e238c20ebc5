#pragma once

namespace qcurv {

/// Dimension/order constants for the GJMS problem of order 2k on the round S^n.
/// Requires 2k < n.
struct SphereContext {
  int n = 0;
  int k = 0;
  double two_star = 0.0;  // 2n / (n - 2k)
  double c_nk = 0.0;      // (n - 2k) / 2
  double omega_n = 0.0;   // volume of the unit S^n
  double Q_h = 0.0;       // Q-curvature of the round metric
  double K_nk = 0.0;      // sharp Sobolev constant of D_k^2(R^n) -> L^{2*}

  /// Builds every constant. Q_h comes from the GJMS product formula, K_nk
  /// from Euclidean radial quadrature; the two are independent.
  static SphereContext create(int n, int k);

  /// Volume of the unit sphere S^d, 2 pi^((d+1)/2) / Gamma((d+1)/2).
  static double sphere_volume(int d);
};

}  // namespace qcurv

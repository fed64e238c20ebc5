#pragma once

#include "qcurv/zonal.hpp"

namespace qcurv::obstruction {

enum class Interpretation { ConsistentWithSolution, ObstructionSignal };
const char* to_string(Interpretation i);

/// Integral of X(f) against u^(2*) dv_h for X the gradient of the degree-one
/// zonal harmonic t. Vanishes when f is the Q-curvature of u^(4/(n-2k)) h.
struct KwReport {
  double value = 0.0;
  double normalized_value = 0.0;  // value / (max(max|f'|, 1e-8 max|f|) int u^(2*))
  Interpretation interpretation = Interpretation::ConsistentWithSolution;
};

/// |normalized_value| below this is read as consistent with a solution.
inline constexpr double kConsistencyTol = 1e-6;

/// sum_i w_i (1 - t_i^2) f'(t_i) u(t_i)^(2*), with f' from the coefficients of f.
KwReport kw_functional(const zonal::ZonalField& f, const zonal::ZonalField& u);

}  // namespace qcurv::obstruction

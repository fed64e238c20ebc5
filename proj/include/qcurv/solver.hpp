#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcurv/bubble.hpp"
#include "qcurv/error.hpp"
#include "qcurv/gjms.hpp"
#include "qcurv/zonal.hpp"

namespace qcurv::solver {

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  double damping = 0.5;  // theta: u <- theta * new + (1 - theta) * old
};

/// Solution of P u = mu f u^(q-1), int f u^q = 1, at one exponent.
struct SubcriticalState {
  double q = 0.0;
  zonal::ZonalField u;
  double mu_q = 0.0;
  double residual = 0.0;  // max|P u - mu f u^(q-1)| / max|P u|
  int iterations = 0;
  bool converged = false;
  double sup_norm = 0.0;
  double odd_mass = 0.0;  // largest odd-coefficient norm over accepted iterates
};

/// Solver failure carrying the last iterate for diagnosis.
class SolverError : public ConvergenceError {
 public:
  SolverError(const std::string& what, SubcriticalState partial)
      : ConvergenceError(what), state_(std::move(partial)) {}
  const SubcriticalState& state() const { return state_; }

 private:
  SubcriticalState state_;
};

/// An iterate has a non-positive node value.
class PositivityLost : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Tolerance not reached within max_iter iterations.
class MaxIterations : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Trivial: identity. Antipodal: (u(t) + u(-t)) / 2, by zeroing odd degrees.
zonal::ZonalField symmetrize(const zonal::ZonalField& u, Group group);

/// Damped inverse iteration u <- normalize(symmetrize(P^{-1}(f u^(q-1)))).
/// Accepts 2 < q <= 2*. Throws PositivityLost or MaxIterations.
SubcriticalState solve_fixed_q(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                               double q, const zonal::ZonalField& init, Group group,
                               const SolverOptions& opts = {});

/// q_j = 2* - (2* - 2) 2^(-j), j = 1..J.
std::vector<double> default_schedule(const SphereContext& ctx, int J);

enum class Verdict { Converged, BlowUp };
const char* to_string(Verdict v);

struct BlowupDiagnostics {
  std::vector<double> sup_norms;
  std::vector<double> peak_t;        // x_q as cos(theta)
  std::vector<double> peak_theta;
  std::vector<double> alpha_q;       // u(x_q)^(-2/(n-2k))
  std::vector<double> beta_q;        // alpha_q^((q-2)/(2*-2))
  std::vector<double> druet_monitor;  // max d(x, orbit)^((n-2k)/2) u(x)
  bool druet_stable = true;
  double x_inf_t = 1.0;
  double x_inf_theta = 0.0;
  double grad_f_at_peak = 0.0;  // |f'(t)| sqrt(1 - t^2) at x_inf
  double grad_f_max = 0.0;      // same over all nodes
  bool gradient_vanishes = false;
  double cap_radius = 0.0;
  std::vector<double> orbit_mass;  // per orbit point, last state
  double orbit_mass_total = 0.0;
  double profile_a = 0.0;          // dilation of the comparison extremal
  double profile_deviation = 0.0;  // on |x| <= 5, last state
  double beta_over_alpha = 0.0;    // last state
  /// mu_q V_f^(2/q - 2/2*) per state, and whether it dominates the reference.
  std::vector<double> comparison_bound;
  bool comparison_holds = true;
  Verdict verdict = Verdict::Converged;
};

struct ContinuationOptions {
  int J = 8;
  double blowup_cap = 1e4;
  SolverOptions solver;
  /// Relative gap below the minimal concentration threshold that the critical
  /// solve must reach to count as compact.
  double threshold_margin = 1e-4;
};

struct CriticalSolution {
  SubcriticalState state;
  zonal::ZonalField q_curvature;  // Q of mu_f^(1/k) u^(4/(n-2k)) h
  double q_defect = 0.0;          // max|Q - f| / max f
};

struct ContinuationResult {
  std::vector<SubcriticalState> states;
  std::optional<CriticalSolution> critical;
  bubble::ThresholdReport thresholds;
  BlowupDiagnostics diag;
  std::string note;  // reason for the verdict
};

ContinuationResult run_continuation(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                                    Group group, const std::vector<double>& schedule,
                                    const ContinuationOptions& opts = {});

/// Peak, profile, mass and gradient diagnostics of the last states. `mu_ref`
/// is the reference for the comparison bound (critical mu, or the minimal
/// threshold when no critical solution exists).
BlowupDiagnostics blowup_diagnostics(const std::vector<SubcriticalState>& states,
                                     const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                                     Group group, double mu_ref);

}  // namespace qcurv::solver

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcurv/bubble.hpp"
#include "qcurv/expression.hpp"
#include "qcurv/obstruction.hpp"
#include "qcurv/solver.hpp"

namespace qcurv::scenario {

inline constexpr const char* kToolName = "qcurv";
inline constexpr const char* kToolVersion = "1.0.0";

struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<std::string> tags;
  int n = 0;
  int k = 0;
  int L = 0;
  Group group = Group::Trivial;
  std::string f_spec;
  expr::Polynomial f;  // parsed f_spec
  std::optional<Pole> vanishing_at;
  int J = 8;
  double blowup_cap = 1e4;
  solver::SolverOptions solver;
  std::vector<double> betas{1.1, 2.0, 10.0};
  std::string report_file;
  std::string table_file;
  std::string curves_file;

  /// Parses and validates; throws ConfigError naming the violated hypothesis.
  static ScenarioConfig from_json(const nlohmann::json& j);
  static ScenarioConfig load(const std::filesystem::path& path);

  nlohmann::json to_json() const;
  /// FNV-1a of the canonical config dump, as 16 hex digits.
  std::string fingerprint() const;
  bool has_tag(const std::string& tag) const;
};

struct VanishingCheck {
  Pole pole = Pole::North;
  int order = 0;
  std::vector<double> taylor;  // of f(cos theta) at the pole, orders 0..order
  bool satisfied = false;
};

struct RunReport {
  ScenarioConfig config;
  SphereContext ctx;
  solver::ContinuationResult result;
  obstruction::KwReport kw;
  std::optional<VanishingCheck> vanishing;
  double aliasing_residual = 0.0;
  double elapsed_seconds = 0.0;
  /// Final field (critical solution when present, else the last state).
  zonal::ZonalField final_u;
  double final_mu = 0.0;
  std::vector<double> spectrum;  // lambda_0..lambda_L

  solver::Verdict verdict() const { return result.diag.verdict; }
  /// Full report; the "timing" key is the only non-deterministic part.
  nlohmann::json to_json(bool include_timing = true) const;
};

/// f at the grid nodes, with coefficients from the exact polynomial.
zonal::ZonalField sample_f(zonal::GridPtr grid, const expr::Polynomial& f);

/// Checks that f's derivatives of order 1..n-2k vanish at the pole.
VanishingCheck check_vanishing(const ScenarioConfig& cfg, Pole pole);

RunReport run_scenario(const ScenarioConfig& cfg);

/// Writes the report JSON, the per-q CSV (q,mu_q,sup_norm,residual,iters)
/// and the u / Q curves CSV at 512 uniform theta points into `dir`. Files are
/// staged and renamed only after every write succeeded.
std::vector<std::filesystem::path> emit_reports(const RunReport& report,
                                                const std::filesystem::path& dir);

/// Per-q table rows, critical solve last when present.
std::string table_csv(const RunReport& report);
std::string curves_csv(const RunReport& report);

/// Eigenvalues, factor constants and coercivity of P on S^n up to degree L.
nlohmann::json spectrum_report(int n, int k, int L);

/// Per-beta bubble residual, volume identity and conformal Q defect, the
/// Sobolev-constant cross-check and, for the antipodal group, the interaction
/// constant by both routes.
nlohmann::json bubble_report(const ScenarioConfig& cfg);

/// Concentration thresholds of f and test-function energies at each beta.
nlohmann::json threshold_report(const ScenarioConfig& cfg);

/// Obstruction functional on bubble trial fields at each beta.
nlohmann::json obstruction_report(const ScenarioConfig& cfg);

/// Copy of a report with the timing block removed.
nlohmann::json without_timing(nlohmann::json j);

}  // namespace qcurv::scenario

#include "qcurv/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "qcurv/error.hpp"

namespace qcurv::scenario {

using nlohmann::json;

namespace {

constexpr int kProbePoints = 1024;
constexpr int kCurvePoints = 512;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing required key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": key '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, where);
}

Group parse_group(const std::string& s) {
  if (s == "trivial") return Group::Trivial;
  if (s == "antipodal") return Group::Antipodal;
  throw ConfigError("group must be 'trivial' or 'antipodal' (got '" + s + "')");
}

Pole parse_pole(const std::string& s) {
  if (s == "north") return Pole::North;
  if (s == "south") return Pole::South;
  throw ConfigError("vanishing_at must be 'north' or 'south' (got '" + s + "')");
}

}  // namespace

zonal::ZonalField sample_f(zonal::GridPtr grid, const expr::Polynomial& f) {
  auto field = zonal::ZonalField::sample(grid, [&](double t) { return f(t); });
  const auto& c = f.coeffs();
  field.coeffs = zonal::analyze_function(*grid, [&](long double t) {
    long double v = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  });
  return field;
}

namespace {

double probe_t(int j) { return std::cos(std::numbers::pi * j / (kProbePoints - 1)); }

void validate(const ScenarioConfig& c) {
  if (c.n < 3) throw ConfigError("n must be at least 3");
  if (c.k < 1) throw ConfigError("k must be at least 1");
  if (2 * c.k >= c.n) {
    throw ConfigError("requires n > 2k (got n=" + std::to_string(c.n) +
                      ", k=" + std::to_string(c.k) + ")");
  }
  if (c.L < 8) throw ConfigError("L must be at least 8");
  if (c.f.degree() > c.L) throw ConfigError("f has degree above the band limit L");
  if (c.J < 1) throw ConfigError("schedule.J must be positive");
  if (!(c.blowup_cap > 0.0)) throw ConfigError("schedule.blowup_cap must be positive");
  if (!(c.solver.tol > 0.0)) throw ConfigError("solver.tol must be positive");
  if (c.solver.max_iter < 1) throw ConfigError("solver.max_iter must be positive");
  if (!(c.solver.damping > 0.0) || !(c.solver.damping < 2.0)) {
    throw ConfigError("solver.damping must lie in (0, 2)");
  }
  for (double b : c.betas) {
    if (!(b > 1.0)) throw ConfigError("bubble.beta values must exceed 1");
  }

  double fmax = 0.0;
  for (int j = 0; j < kProbePoints; ++j) {
    const double v = c.f(probe_t(j));
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "f not positive at t=" << probe_t(j) << " (value " << v
          << ") - violates positivity of the prescribed function";
      throw ConfigError(msg.str());
    }
    fmax = std::max(fmax, v);
  }
  if (c.group == Group::Antipodal) {
    bool even = c.f.is_even();
    for (int j = 0; even && j < kProbePoints; ++j) {
      const double t = probe_t(j);
      if (std::abs(c.f(t) - c.f(-t)) > 1e-12 * fmax) even = false;
    }
    if (!even) throw ConfigError("f not antipodally even - violates G-invariance");
  }
  if (c.has_tag("theorem:main")) {
    if (c.n != 2 * c.k + 1) {
      throw ConfigError("scenario tagged theorem:main requires n = 2k + 1");
    }
    if (c.group != Group::Antipodal) {
      throw ConfigError("scenario tagged theorem:main requires a group acting without fixed point");
    }
  }
  if (c.vanishing_at) {
    const VanishingCheck v = check_vanishing(c, *c.vanishing_at);
    if (!v.satisfied) {
      throw ConfigError(std::string("f has a nonvanishing derivative of order <= n - 2k at the ") +
                        to_string(*c.vanishing_at) + " pole");
    }
  }
}

json state_json(const solver::SubcriticalState& st) {
  return {{"q", st.q},
          {"mu_q", st.mu_q},
          {"sup_norm", st.sup_norm},
          {"residual", st.residual},
          {"iterations", st.iterations},
          {"converged", st.converged},
          {"odd_mass", st.odd_mass},
          {"coefficients", *st.u.coeffs}};
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

bool ScenarioConfig::has_tag(const std::string& tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  check_keys(j, {"name", "tags", "n", "k", "L", "group", "f", "vanishing_at", "schedule",
                 "solver", "bubble", "outputs"},
             "config");
  ScenarioConfig c;
  c.name = get_or<std::string>(j, "name", c.name, "config");
  c.tags = get_or<std::vector<std::string>>(j, "tags", {}, "config");
  c.n = get<int>(j, "n", "config");
  c.k = get<int>(j, "k", "config");
  c.L = get<int>(j, "L", "config");
  c.group = parse_group(get<std::string>(j, "group", "config"));
  c.f_spec = get<std::string>(j, "f", "config");
  if (j.contains("vanishing_at") && !j.at("vanishing_at").is_null()) {
    c.vanishing_at = parse_pole(get<std::string>(j, "vanishing_at", "config"));
  }
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    check_keys(s, {"J", "blowup_cap"}, "schedule");
    c.J = get_or<int>(s, "J", c.J, "schedule");
    c.blowup_cap = get_or<double>(s, "blowup_cap", c.blowup_cap, "schedule");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    check_keys(s, {"tol", "max_iter", "damping"}, "solver");
    c.solver.tol = get_or<double>(s, "tol", c.solver.tol, "solver");
    c.solver.max_iter = get_or<int>(s, "max_iter", c.solver.max_iter, "solver");
    c.solver.damping = get_or<double>(s, "damping", c.solver.damping, "solver");
  }
  if (j.contains("bubble")) {
    const json& b = j.at("bubble");
    check_keys(b, {"beta"}, "bubble");
    c.betas = get_or<std::vector<double>>(b, "beta", c.betas, "bubble");
  }
  c.report_file = c.name + ".json";
  c.table_file = c.name + "_table.csv";
  c.curves_file = c.name + "_curves.csv";
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    check_keys(o, {"report", "table", "curves"}, "outputs");
    c.report_file = get_or<std::string>(o, "report", c.report_file, "outputs");
    c.table_file = get_or<std::string>(o, "table", c.table_file, "outputs");
    c.curves_file = get_or<std::string>(o, "curves", c.curves_file, "outputs");
  }

  if (c.n >= 3 && c.k >= 1 && 2 * c.k < c.n) {
    const SphereContext ctx = SphereContext::create(c.n, c.k);
    c.f = expr::parse(c.f_spec, {"Q_h"}, {ctx.Q_h});
  } else {
    c.f = expr::parse(c.f_spec);
  }
  validate(c);
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

json ScenarioConfig::to_json() const {
  json j = {{"name", name},
            {"tags", tags},
            {"n", n},
            {"k", k},
            {"L", L},
            {"group", to_string(group)},
            {"f", f_spec},
            {"vanishing_at", vanishing_at ? json(to_string(*vanishing_at)) : json(nullptr)},
            {"schedule", {{"J", J}, {"blowup_cap", blowup_cap}}},
            {"solver",
             {{"tol", solver.tol}, {"max_iter", solver.max_iter}, {"damping", solver.damping}}},
            {"bubble", {{"beta", betas}}},
            {"outputs", {{"report", report_file}, {"table", table_file}, {"curves", curves_file}}}};
  return j;
}

std::string ScenarioConfig::fingerprint() const {
  const std::string s = to_json().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

VanishingCheck check_vanishing(const ScenarioConfig& cfg, Pole pole) {
  VanishingCheck v;
  v.pole = pole;
  v.order = cfg.n - 2 * cfg.k;
  v.taylor = expr::pole_series(cfg.f, pole == Pole::North ? 1 : -1, v.order);
  double scale = 0.0;
  for (double c : cfg.f.coeffs()) scale = std::max(scale, std::abs(c));
  v.satisfied = true;
  for (int i = 1; i <= v.order; ++i) {
    if (std::abs(v.taylor[i]) > 1e-12 * std::max(1.0, scale)) v.satisfied = false;
  }
  return v;
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.config = cfg;
  r.ctx = SphereContext::create(cfg.n, cfg.k);
  const auto grid = zonal::build_grid(r.ctx, cfg.L);
  const auto spec = gjms::build_spectrum(r.ctx, cfg.L);
  r.spectrum = spec.eigenvalues;
  const auto f = sample_f(grid, cfg.f);
  if (cfg.vanishing_at) r.vanishing = check_vanishing(cfg, *cfg.vanishing_at);

  solver::ContinuationOptions opts;
  opts.J = cfg.J;
  opts.blowup_cap = cfg.blowup_cap;
  opts.solver = cfg.solver;
  r.result = solver::run_continuation(spec, f, cfg.group, solver::default_schedule(r.ctx, cfg.J),
                                      opts);

  double q_final;
  if (r.result.critical) {
    r.final_u = r.result.critical->state.u;
    r.final_mu = r.result.critical->state.mu_q;
    q_final = r.ctx.two_star;
  } else {
    r.final_u = r.result.states.back().u;
    r.final_mu = r.result.states.back().mu_q;
    q_final = r.result.states.back().q;
  }
  r.kw = obstruction::kw_functional(f, r.final_u);

  // Aliasing: int f u^q on the working grid against a grid with twice the nodes.
  {
    const auto fine = zonal::build_grid(r.ctx, cfg.L, 2 * grid->size());
    const auto uf = zonal::synthesize(fine, *r.final_u.coeffs);
    std::vector<double> g(fine->size()), h(grid->size());
    const auto tf = fine->nodes();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = cfg.f(tf[i]) * std::pow(uf.values[i], q_final);
    for (std::size_t i = 0; i < h.size(); ++i) {
      h[i] = f.values[i] * std::pow(r.final_u.values[i], q_final);
    }
    const double fine_val = zonal::integrate(*fine, g);
    r.aliasing_residual = std::abs(zonal::integrate(*grid, h) - fine_val) / std::abs(fine_val);
  }
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json RunReport::to_json(bool include_timing) const {
  const auto& res = result;
  const auto& d = res.diag;
  json table = json::array();
  for (const auto& st : res.states) table.push_back(state_json(st));

  json critical = nullptr;
  if (res.critical) {
    critical = state_json(res.critical->state);
    critical["q_defect"] = res.critical->q_defect;
    critical["mu_f"] = res.critical->state.mu_q / ctx.c_nk;
  }
  const auto& th = res.thresholds;
  json j = {
      {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
      {"fingerprint", config.fingerprint()},
      {"config", config.to_json()},
      {"context",
       {{"n", ctx.n},
        {"k", ctx.k},
        {"two_star", ctx.two_star},
        {"c_nk", ctx.c_nk},
        {"omega_n", ctx.omega_n},
        {"Q_h", ctx.Q_h},
        {"K_nk", ctx.K_nk}}},
      {"spectrum_head",
       std::vector<double>(spectrum.begin(),
                           spectrum.begin() + std::min<std::size_t>(spectrum.size(), 8))},
      {"verdict", solver::to_string(d.verdict)},
      {"note", res.note},
      {"table", table},
      {"critical", critical},
      {"final_mu", final_mu},
      {"threshold",
       {{"min_value", th.min_value},
        {"min_mu_f", th.min_mu_f},
        {"argmin_t", th.argmin_t},
        {"final_mu_below_min", final_mu < th.min_value}}},
      {"diagnostics",
       {{"sup_norms", d.sup_norms},
        {"peak_t", d.peak_t},
        {"peak_theta", d.peak_theta},
        {"alpha_q", d.alpha_q},
        {"beta_q", d.beta_q},
        {"beta_over_alpha", d.beta_over_alpha},
        {"x_inf_t", d.x_inf_t},
        {"x_inf_theta", d.x_inf_theta},
        {"grad_f_at_peak", d.grad_f_at_peak},
        {"grad_f_max", d.grad_f_max},
        {"gradient_vanishes", d.gradient_vanishes},
        {"cap_radius", d.cap_radius},
        {"orbit_mass", d.orbit_mass},
        {"orbit_mass_total", d.orbit_mass_total},
        {"profile_a", d.profile_a},
        {"profile_deviation", d.profile_deviation},
        {"druet_monitor", d.druet_monitor},
        {"druet_stable", d.druet_stable},
        {"comparison_bound", d.comparison_bound},
        {"comparison_holds", d.comparison_holds}}},
      {"kw",
       {{"value", kw.value},
        {"normalized_value", kw.normalized_value},
        {"interpretation", obstruction::to_string(kw.interpretation)}}},
      {"aliasing_residual", aliasing_residual},
  };
  if (vanishing) {
    j["vanishing"] = {{"pole", to_string(vanishing->pole)},
                      {"order", vanishing->order},
                      {"taylor", vanishing->taylor},
                      {"satisfied", vanishing->satisfied}};
  }
  if (include_timing) j["timing"] = {{"total_seconds", elapsed_seconds}};
  return j;
}

json without_timing(json j) {
  j.erase("timing");
  return j;
}

std::string table_csv(const RunReport& report) {
  std::ostringstream out;
  out << "q,mu_q,sup_norm,residual,iters\n";
  auto row = [&](const solver::SubcriticalState& st) {
    out << number(st.q) << ',' << number(st.mu_q) << ',' << number(st.sup_norm) << ','
        << number(st.residual) << ',' << st.iterations << '\n';
  };
  for (const auto& st : report.result.states) row(st);
  if (report.result.critical) row(report.result.critical->state);
  return out.str();
}

std::string curves_csv(const RunReport& report) {
  const auto& u = report.final_u;
  const auto& grid = *u.grid;
  const auto& a = *u.coeffs;
  std::vector<double> pa(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) pa[l] = report.spectrum[l] * a[l];
  const double two_star = report.ctx.two_star;
  const double mu_f = report.final_mu / report.ctx.c_nk;
  std::ostringstream out;
  out << "theta,t,u,q_curvature,f\n";
  for (int j = 0; j < kCurvePoints; ++j) {
    const double theta = std::numbers::pi * j / (kCurvePoints - 1);
    const double t = std::cos(theta);
    const double uv = zonal::evaluate(grid, a, t);
    const double pu = zonal::evaluate(grid, pa, t);
    const double q = pu * std::pow(uv, 1.0 - two_star) / (report.ctx.c_nk * mu_f);
    out << number(theta) << ',' << number(t) << ',' << number(uv) << ',' << number(q) << ','
        << number(report.config.f(t)) << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_reports(const RunReport& report,
                                                const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const std::vector<std::pair<fs::path, std::string>> files = {
      {dir / report.config.report_file, report.to_json().dump(2) + "\n"},
      {dir / report.config.table_file, table_csv(report)},
      {dir / report.config.curves_file, curves_csv(report)},
  };
  std::vector<fs::path> staged;
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".tmp";
      write_file(tmp, content);
      staged.push_back(tmp);
    }
  } catch (...) {
    for (const auto& p : staged) fs::remove(p, ec);
    throw;
  }
  // Refuse targets that cannot be replaced before moving anything.
  for (const auto& [path, content] : files) {
    if (fs::is_directory(path)) {
      for (const auto& p : staged) fs::remove(p, ec);
      throw Error("cannot replace '" + path.string() + "': it is a directory");
    }
  }
  std::vector<fs::path> written;
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(staged[i], files[i].first, ec);
    if (ec) {
      const std::string reason = ec.message();
      for (std::size_t j = i; j < staged.size(); ++j) fs::remove(staged[j], ec);
      for (const auto& p : written) fs::remove(p, ec);
      throw Error("cannot move '" + staged[i].string() + "' into place: " + reason);
    }
    written.push_back(files[i].first);
  }
  return written;
}

}  // namespace qcurv::scenario

namespace qcurv::scenario {

namespace {

struct Setup {
  SphereContext ctx;
  zonal::GridPtr grid;
  gjms::GjmsSpectrum spec;
  zonal::ZonalField f;
};

Setup setup(const ScenarioConfig& cfg) {
  Setup s;
  s.ctx = SphereContext::create(cfg.n, cfg.k);
  s.grid = zonal::build_grid(s.ctx, cfg.L);
  s.spec = gjms::build_spectrum(s.ctx, cfg.L);
  s.f = sample_f(s.grid, cfg.f);
  return s;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

json spectrum_report(int n, int k, int L) {
  const SphereContext ctx = SphereContext::create(n, k);
  const auto spec = gjms::build_spectrum(ctx, L);
  const auto co = gjms::check_coercivity(spec);
  return {{"n", n},
          {"k", k},
          {"lmax", L},
          {"factors", spec.factors},
          {"eigenvalues", spec.eigenvalues},
          {"Q_h", ctx.Q_h},
          {"K_nk", ctx.K_nk},
          {"omega_n", ctx.omega_n},
          {"two_star", ctx.two_star},
          {"coercivity",
           {{"min_eigenvalue", co.min_eigenvalue},
            {"argmin", co.argmin},
            {"positive", co.positive},
            {"equivalence_lower", co.equivalence_lower},
            {"equivalence_upper", co.equivalence_upper},
            {"leading_symbol_ratio", co.leading_symbol_ratio}}}};
}

json bubble_report(const ScenarioConfig& cfg) {
  const Setup s = setup(cfg);
  const auto& ctx = s.ctx;
  json rows = json::array();
  for (double beta : cfg.betas) {
    const auto u = bubble::bubble_field(s.grid, {beta, Pole::North});
    const auto pu = gjms::apply_P(s.spec, u);
    const auto qc = gjms::conformal_q(s.spec, u);
    std::vector<double> defect(u.values.size()), vol(u.values.size()), qdev(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      defect[i] = pu.values[i] - ctx.c_nk * ctx.Q_h * std::pow(u.values[i], ctx.two_star - 1.0);
      vol[i] = std::pow(u.values[i], ctx.two_star);
      qdev[i] = qc.values[i] - ctx.Q_h;
    }
    rows.push_back({{"beta", beta},
                    {"pde_residual", max_abs(defect) / max_abs(pu.values)},
                    {"volume_error", zonal::integrate(*s.grid, vol) / ctx.omega_n - 1.0},
                    {"q_curvature_defect", max_abs(qdev) / ctx.Q_h}});
  }
  const double identity =
      1.0 / (ctx.c_nk * ctx.Q_h * std::pow(ctx.omega_n, (ctx.two_star - 2.0) / ctx.two_star));
  json out = {{"n", ctx.n},
              {"k", ctx.k},
              {"L", cfg.L},
              {"bubbles", rows},
              {"sobolev",
               {{"K_quadrature", ctx.K_nk},
                {"K_sphere_identity", identity},
                {"relative_gap", ctx.K_nk / identity - 1.0},
                {"extremal_constant", bubble::extremal_constant(ctx.n, ctx.k)}}}};
  if (cfg.group == Group::Antipodal) {
    const auto orbit = bubble::OrbitSpec::of(cfg.group);
    json est = json::array();
    for (double beta : cfg.betas) {
      const auto e = bubble::interaction_energy(*s.grid, beta, orbit);
      est.push_back({{"beta", beta}, {"d_beta", e.d_beta}, {"lambda_estimate", e.lambda_estimate}});
    }
    std::vector<double> sorted = cfg.betas;
    std::sort(sorted.begin(), sorted.end());
    json interaction = {{"lambda_formula", bubble::interaction_constant(ctx, orbit)},
                        {"estimates", est}};
    if (sorted.size() >= 2) {
      interaction["lambda_extrapolated"] =
          bubble::interaction_constant_extrapolated(*s.grid, orbit, sorted[0], sorted[1]);
    }
    out["interaction"] = interaction;
  }
  return out;
}

json threshold_report(const ScenarioConfig& cfg) {
  const Setup s = setup(cfg);
  const auto orbit = bubble::OrbitSpec::of(cfg.group);
  const auto th = bubble::threshold_profile(s.ctx, s.f, orbit);
  json energies = json::array();
  for (double beta : cfg.betas) {
    const auto e = bubble::test_energy(s.spec, s.f, beta, orbit);
    energies.push_back({{"beta", beta},
                        {"I_value", e.I_value},
                        {"threshold", e.threshold},
                        {"margin", e.margin},
                        {"strict", e.strict}});
  }
  return {{"n", s.ctx.n},
          {"k", s.ctx.k},
          {"group", to_string(cfg.group)},
          {"orbit_size", orbit.size},
          {"min_value", th.min_value},
          {"min_mu_f", th.min_mu_f},
          {"argmin_t", th.argmin_t},
          {"max_value", max_abs(th.values)},
          {"test_energies", energies}};
}

json obstruction_report(const ScenarioConfig& cfg) {
  const Setup s = setup(cfg);
  json rows = json::array();
  for (double beta : cfg.betas) {
    auto u = bubble::bubble_field(s.grid, {beta, Pole::North});
    if (cfg.group == Group::Antipodal) {
      const auto v = bubble::bubble_field(s.grid, {beta, Pole::South});
      for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] += v.values[i];
      for (std::size_t l = 0; l < u.coeffs->size(); ++l) (*u.coeffs)[l] += (*v.coeffs)[l];
    }
    const auto kw = obstruction::kw_functional(s.f, u);
    rows.push_back({{"beta", beta},
                    {"value", kw.value},
                    {"normalized_value", kw.normalized_value},
                    {"interpretation", obstruction::to_string(kw.interpretation)}});
  }
  return {{"n", s.ctx.n}, {"k", s.ctx.k}, {"group", to_string(cfg.group)}, {"trial_fields", rows}};
}

}  // namespace qcurv::scenario

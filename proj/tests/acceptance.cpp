// Acceptance checks. One PASS/FAIL line per criterion; the process fails when
// any criterion outside the expected-failure list fails, or when an expected
// failure unexpectedly passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcurv/bubble.hpp"
#include "qcurv/gjms.hpp"
#include "qcurv/obstruction.hpp"
#include "qcurv/scenario.hpp"
#include "qcurv/solver.hpp"

using namespace qcurv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double bubble_residual(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& u) {
  const auto pu = gjms::apply_P(spec, u);
  const double lam0 = spec.ctx.c_nk * spec.ctx.Q_h;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    num = std::max(num, std::abs(pu.values[i] - lam0 * std::pow(u.values[i], spec.ctx.two_star - 1)));
    den = std::max(den, std::abs(pu.values[i]));
  }
  return num / den;
}

// Criteria 1 and 2 share the bubble fields.
struct BubbleSweep {
  double worst_residual = 0.0;
  double worst_volume = 0.0;
};

BubbleSweep bubble_sweep() {
  BubbleSweep s;
  for (auto [n, k] : {std::pair{3, 1}, {5, 2}}) {
    const auto ctx = SphereContext::create(n, k);
    const auto spec = gjms::build_spectrum(ctx, 256);
    const auto grid = zonal::build_grid(ctx, 256);
    for (double beta : {1.1, 2.0, 10.0}) {
      const auto u = bubble::bubble_field(grid, {beta, Pole::North});
      s.worst_residual = std::max(s.worst_residual, bubble_residual(spec, u));
      std::vector<double> p(u.values.size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::pow(u.values[i], ctx.two_star);
      s.worst_volume = std::max(s.worst_volume, rel(zonal::integrate(*grid, p), ctx.omega_n));
    }
  }
  return s;
}

Outcome sobolev_cross_check() {
  double worst = 0.0;
  for (auto [n, k] : {std::pair{3, 1}, {5, 1}, {5, 2}, {7, 3}}) {
    const auto ctx = SphereContext::create(n, k);
    const double via_q = 1.0 / (ctx.c_nk * ctx.Q_h * std::pow(ctx.omega_n, (ctx.two_star - 2) / ctx.two_star));
    worst = std::max(worst, rel(bubble::sobolev_constant(n, k), via_q));
  }
  const double k31 = bubble::sobolev_constant(3, 1);
  return {worst < 1e-5 && std::abs(k31 - 0.18255) < 1e-4,
          "max rel diff " + fmt("%.2e", worst) + ", K(3,1) = " + fmt("%.6f", k31)};
}

Outcome interaction_limit() {
  const auto ctx = SphereContext::create(3, 1);
  const auto grid = zonal::build_grid(ctx, 512);
  const auto orbit = bubble::OrbitSpec::of(Group::Antipodal);
  const double target = 16.0 * std::numbers::pi / 3.0;
  std::vector<double> est;
  for (double eps : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
    est.push_back(bubble::interaction_energy(*grid, 1.0 + eps, orbit).lambda_estimate);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < est.size(); ++i) {
    if (std::abs(est[i] - target) >= std::abs(est[i - 1] - target)) monotone = false;
  }
  const double err = rel(est.back(), target);
  return {err < 0.02 && monotone,
          "estimate " + fmt("%.4f", est.back()) + " vs " + fmt("%.4f", target) + " (rel " +
              fmt("%.1e", err) + "), monotone " + (monotone ? "yes" : "no")};
}

Outcome strict_test_inequality() {
  std::vector<double> eps;
  for (int i = 0; i <= 8; ++i) eps.push_back(std::pow(10.0, -1.0 - 2.0 * i / 8.0));
  bool strict = true, increasing = true;
  std::string detail;
  for (int n : {3, 5}) {
    const int k = (n - 1) / 2;
    const auto ctx = SphereContext::create(n, k);
    const int L = 768;
    const auto spec = gjms::build_spectrum(ctx, L);
    const auto grid = zonal::build_grid(ctx, L);
    auto f = zonal::ZonalField::constant(grid, ctx.Q_h);
    f.coeffs = zonal::analyze(f);
    const auto orbit = bubble::OrbitSpec::of(Group::Antipodal);
    std::vector<double> margins;
    for (double e : eps) {
      const auto te = bubble::test_energy(spec, f, 1.0 + e, orbit);
      margins.push_back(te.margin);
      if (!te.strict) strict = false;
    }
    // eps decreases along the grid, so margins should grow.
    for (std::size_t i = 1; i < margins.size(); ++i) {
      if (!(margins[i] > margins[i - 1])) increasing = false;
    }
    detail += "n=" + std::to_string(n) + " margin " + fmt("%.3f", margins.front()) + " -> " +
              fmt("%.3f", margins.back()) + "; ";
  }
  detail += std::string("strict ") + (strict ? "yes" : "no") + ", increasing " +
            (increasing ? "yes" : "no");
  return {strict && increasing, detail};
}

Outcome threshold_saturation() {
  const auto ctx = SphereContext::create(3, 1);
  const auto spec = gjms::build_spectrum(ctx, 16);
  const auto grid = zonal::build_grid(ctx, 16);
  const auto f = zonal::ZonalField::constant(grid, ctx.Q_h);
  const double r = gjms::rayleigh(spec, f, ctx.two_star, zonal::ZonalField::constant(grid, 1.0));
  const auto tp = bubble::threshold_profile(ctx, f, bubble::OrbitSpec::of(Group::Trivial));
  const double d = rel(r, tp.min_value);
  // Closed form lambda_0 omega / (Q_h omega)^(1/3) on S^3.
  const double exact = 0.75 * ctx.omega_n / std::cbrt(1.5 * ctx.omega_n);
  const double e = rel(r, exact);
  return {d < 1e-5 && e < 1e-12,
          "rayleigh " + fmt("%.6f", r) + ", threshold " + fmt("%.6f", tp.min_value) + " (rel " +
              fmt("%.1e", d) + "), closed form " + fmt("%.6f", exact)};
}

Outcome solver_smoke() {
  double worst_mu = 0.0;
  double mu_34 = 0.0;
  for (auto [n, k] : {std::pair{3, 1}, {5, 2}}) {
    const auto ctx = SphereContext::create(n, k);
    const auto spec = gjms::build_spectrum(ctx, 32);
    const auto grid = zonal::build_grid(ctx, 32);
    const auto f = zonal::ZonalField::constant(grid, 1.0);
    const auto init = zonal::ZonalField::sample(grid, [](double t) { return 1.0 + 0.1 * t; });
    for (double q : {2.5, 4.0, ctx.two_star - 0.25}) {
      const auto st = solver::solve_fixed_q(spec, f, q, init, Group::Trivial);
      const double want = spec.eigenvalues[0] * std::pow(ctx.omega_n, 1.0 - 2.0 / q);
      worst_mu = std::max(worst_mu, rel(st.mu_q, want));
      if (n == 3 && q == 4.0) mu_34 = st.mu_q;
    }
  }

  // Self-adjointness <P u, v> = <u, P v> and Parseval on smooth test fields.
  const auto ctx = SphereContext::create(5, 2);
  const auto spec = gjms::build_spectrum(ctx, 64);
  const auto grid = zonal::build_grid(ctx, 64);
  const auto u = zonal::ZonalField::sample(grid, [](double t) { return std::exp(t) + t * t * t; });
  const auto v = zonal::ZonalField::sample(grid, [](double t) { return 1.0 / (2.0 - t); });
  const auto pu = gjms::apply_P(spec, u);
  const auto pv = gjms::apply_P(spec, v);
  std::vector<double> a(u.values.size()), b(u.values.size()), sq(u.values.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = pu.values[i] * v.values[i];
    b[i] = u.values[i] * pv.values[i];
    sq[i] = u.values[i] * u.values[i];
  }
  const double ab = zonal::integrate(*grid, a), ba = zonal::integrate(*grid, b);
  const double sa = rel(ab, ba);
  const auto c = zonal::analyze(u);
  double csum = 0.0;
  for (double x : c) csum += x * x;
  const double pa = rel(csum, zonal::integrate(*grid, sq));
  return {worst_mu < 1e-8 && std::abs(mu_34 - 3.3322) < 1e-4 && sa < 1e-10 && pa < 1e-10,
          "mu rel " + fmt("%.1e", worst_mu) + ", mu(n=3,q=4) " + fmt("%.4f", mu_34) +
              ", symmetry " + fmt("%.1e", sa) + ", Parseval " + fmt("%.1e", pa)};
}

Outcome theorem_instance(const scenario::RunReport& r) {
  const bool conv = r.verdict() == solver::Verdict::Converged && r.result.critical.has_value();
  const double defect = conv ? r.result.critical->q_defect : INFINITY;
  const double kw = std::abs(r.kw.normalized_value);
  const double mu = r.final_mu, tmin = r.result.thresholds.min_value;
  return {conv && defect < 1e-6 && kw < 1e-6 && mu < tmin,
          std::string("verdict ") + solver::to_string(r.verdict()) + ", Q defect " +
              fmt("%.1e", defect) + ", KW " + fmt("%.1e", kw) + ", mu " + fmt("%.4f", mu) +
              " < " + fmt("%.4f", tmin)};
}

Outcome obstruction_instance(const scenario::RunReport& r) {
  const auto& d = r.result.diag;
  const double f1 = r.config.f(1.0);
  const double mu_pred = 1.0 / (std::pow(f1, 2.0 / r.ctx.two_star) * r.ctx.K_nk);
  const double mu_last = r.result.states.back().mu_q;
  const double mu_err = rel(mu_last, mu_pred);
  const bool blow = r.verdict() == solver::Verdict::BlowUp;
  const bool peak = std::abs(d.x_inf_t - 1.0) < 1e-6 && d.gradient_vanishes;
  const bool mass = std::abs(d.orbit_mass_total - 1.0) <= 0.05;
  const bool ratio = std::abs(d.beta_over_alpha - 1.0) <= 0.05;
  const bool profile = d.profile_deviation <= 0.05;
  return {blow && peak && mu_err <= 0.03 && mass && ratio && profile,
          std::string("verdict ") + solver::to_string(r.verdict()) + ", peak t " +
              fmt("%.6f", d.x_inf_t) + (d.gradient_vanishes ? " (gradient ok)" : " (gradient FAILED)") +
              ", mu rel " + fmt("%.1e", mu_err) + ", mass " + fmt("%.4f", d.orbit_mass_total) +
              ", beta/alpha " + fmt("%.4f", d.beta_over_alpha) + ", profile " +
              fmt("%.4f", d.profile_deviation)};
}

Outcome golden_match(const std::vector<std::pair<std::string, const scenario::RunReport*>>& runs) {
  std::string detail;
  bool ok = true;
  for (const auto& [name, report] : runs) {
    const fs::path path = fs::path(QCURV_GOLDEN) / (name + ".json");
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    const std::string fresh = scenario::without_timing(report->to_json()).dump(2) + "\n";
    const bool same = s.str() == fresh;
    ok = ok && same;
    detail += name + (same ? " identical" : " DIFFERS") + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  // Criteria expected to fail as stated; see the project notes.
  const std::set<int> expected_failures = {5};
  int unexpected = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool xfail = expected_failures.count(id) > 0;
    std::printf("%s %2d %s: %s [%.1fs]%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                secs, xfail ? (o.pass ? " (unexpected pass)" : " (expected failure)") : "");
    std::fflush(stdout);
    if (o.pass == xfail) ++unexpected;
  };

  BubbleSweep sweep;
  report(1, "bubble equation residual", [&] {
    sweep = bubble_sweep();
    return Outcome{sweep.worst_residual < 1e-8, "max residual " + fmt("%.2e", sweep.worst_residual)};
  });
  report(2, "bubble volume identity", [&] {
    return Outcome{sweep.worst_volume < 1e-8, "max rel error " + fmt("%.2e", sweep.worst_volume)};
  });
  report(3, "Sobolev constant cross-check", sobolev_cross_check);
  report(4, "antipodal interaction constant", interaction_limit);
  report(5, "strict test-function inequality", strict_test_inequality);
  report(6, "threshold saturation", threshold_saturation);
  report(7, "solver smoke tests", solver_smoke);

  const fs::path scen = QCURV_SCENARIOS;
  std::optional<scenario::RunReport> main_run, kw_run;
  report(8, "antipodal existence instance", [&] {
    main_run = scenario::run_scenario(scenario::ScenarioConfig::load(scen / "theorem-main.json"));
    return theorem_instance(*main_run);
  });
  report(9, "obstruction dichotomy", [&] {
    kw_run = scenario::run_scenario(scenario::ScenarioConfig::load(scen / "kw-obstruction.json"));
    return obstruction_instance(*kw_run);
  });
  report(10, "golden reports reproduced", [&] {
    if (!main_run || !kw_run) return Outcome{false, "scenario runs missing"};
    return golden_match({{"theorem-main", &*main_run}, {"kw-obstruction", &*kw_run}});
  });

  std::printf("%s\n", unexpected == 0 ? "acceptance: OK" : "acceptance: UNEXPECTED RESULTS");
  return unexpected == 0 ? 0 : 1;
}

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "qcurv/error.hpp"
#include "qcurv/expression.hpp"
#include "qcurv/scenario.hpp"

using namespace qcurv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config() {
  return {{"name", "unit"}, {"n", 3}, {"k", 1}, {"L", 32}, {"group", "trivial"}, {"f", "2 + 0.5*t"}};
}

std::string config_error(const json& j) {
  try {
    scenario::ScenarioConfig::from_json(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QCURV_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("qcurv_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("polynomial parser") {
  const auto p = expr::parse("1.5 + t^2");
  CHECK(p.coeffs() == std::vector<double>{1.5, 0.0, 1.0});
  CHECK(p.is_even());
  const auto q = expr::parse("2*(1 - t^2)^3 - (t)", {"c"}, {4.0});
  CHECK(q.degree() == 6);
  CHECK(q(0.5) == doctest::Approx(2 * std::pow(0.75, 3) - 0.5));
  CHECK_FALSE(q.is_even());
  CHECK(expr::parse("Q_h + 0.3*t", {"Q_h"}, {0.75})(1.0) == doctest::Approx(1.05));
  CHECK(expr::parse("-t^2")(2.0) == -4.0);
  CHECK(expr::parse("3e-1*t")(1.0) == doctest::Approx(0.3));
  CHECK(p.derivative().coeffs() == std::vector<double>{0.0, 2.0});
  for (const char* bad : {"", "1 +", "t^", "t^-1", "(1 + t", "x", "1 / t", "t^65", "2 t"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(expr::parse(bad), ConfigError);
  }
}

TEST_CASE("pole series") {
  // f = t: cos(theta) = 1 - theta^2/2 + theta^4/24.
  const auto s = expr::pole_series(expr::parse("t"), 1, 4);
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(std::abs(s[1]) < 1e-15);
  CHECK(s[2] == doctest::Approx(-0.5));
  CHECK(std::abs(s[3]) < 1e-15);
  CHECK(s[4] == doctest::Approx(1.0 / 24.0));
  const auto m = expr::pole_series(expr::parse("t"), -1, 2);
  CHECK(m[0] == doctest::Approx(-1.0));
  CHECK(m[2] == doctest::Approx(0.5));
  // 2 - (1 - t^2)^2 = 2 - sin^4 is flat to order 3.
  const auto flat = expr::pole_series(expr::parse("2 - (1 - t^2)^2"), 1, 4);
  CHECK(std::abs(flat[2]) < 1e-14);
  CHECK(flat[4] == doctest::Approx(-1.0));
}

TEST_CASE("config parsing and defaults") {
  const auto c = scenario::ScenarioConfig::from_json(base_config());
  CHECK(c.n == 3);
  CHECK(c.J == 8);
  CHECK(c.solver.damping == 0.5);
  CHECK(c.solver.tol == 1e-10);
  CHECK(c.betas == std::vector<double>{1.1, 2.0, 10.0});
  CHECK(c.report_file == "unit.json");
  const auto again = scenario::ScenarioConfig::from_json(c.to_json());
  CHECK(again.to_json() == c.to_json());
  CHECK(again.fingerprint() == c.fingerprint());
  CHECK(c.fingerprint().size() == 16);
  auto other = base_config();
  other["L"] = 48;
  CHECK(scenario::ScenarioConfig::from_json(other).fingerprint() != c.fingerprint());
}

TEST_CASE("config validation names the violated hypothesis") {
  auto j = base_config();
  j["group"] = "antipodal";
  CHECK(config_error(j).find("f not antipodally even - violates G-invariance") != std::string::npos);

  j = base_config();
  j["n"] = 4;
  j["k"] = 2;
  CHECK(config_error(j).find("n > 2k") != std::string::npos);

  j = base_config();
  j["f"] = "t";
  CHECK(config_error(j).find("not positive") != std::string::npos);

  j = base_config();
  j["tags"] = {"theorem:main"};
  j["group"] = "antipodal";
  j["f"] = "1 + t^2";
  j["n"] = 5;
  CHECK(config_error(j).find("n = 2k + 1") != std::string::npos);
  j["n"] = 3;
  CHECK(config_error(j).empty());
  j["group"] = "trivial";
  CHECK(config_error(j).find("theorem:main") != std::string::npos);

  j = base_config();
  j["bogus"] = 1;
  CHECK(config_error(j).find("unknown key 'bogus'") != std::string::npos);
  j = base_config();
  j.erase("L");
  CHECK(config_error(j).find("missing required key 'L'") != std::string::npos);
  j = base_config();
  j["L"] = "many";
  CHECK(config_error(j).find("wrong type") != std::string::npos);
  j = base_config();
  j["solver"] = {{"damping", 2.5}};
  CHECK(config_error(j).find("damping") != std::string::npos);
  j = base_config();
  j["f"] = "1 + t^40";
  CHECK(config_error(j).find("band limit") != std::string::npos);
  j = base_config();
  j["bubble"] = {{"beta", {0.5}}};
  CHECK(config_error(j).find("beta") != std::string::npos);

  CHECK_THROWS_AS(scenario::ScenarioConfig::load("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("vanishing derivatives at a pole") {
  auto j = base_config();
  j["f"] = "2 - (1 - t^2)^2";
  j["vanishing_at"] = "north";
  const auto c = scenario::ScenarioConfig::from_json(j);
  const auto v = scenario::check_vanishing(c, Pole::North);
  CHECK(v.order == 1);
  CHECK(v.satisfied);
  j["f"] = "2 + 0.5*t";
  // d/dtheta of f(cos theta) vanishes at the poles for every smooth zonal f.
  CHECK(config_error(j).empty());
  j["n"] = 5;
  j["k"] = 1;
  CHECK(config_error(j).find("nonvanishing derivative") != std::string::npos);
  j["f"] = "2 - (1 - t^2)^2";
  CHECK(config_error(j).empty());
}

TEST_CASE("scenario runs are deterministic") {
  const auto cfg = scenario::ScenarioConfig::load(fs::path(QCURV_SCENARIOS) / "theorem-main.json");
  const auto a = scenario::run_scenario(cfg);
  const auto b = scenario::run_scenario(cfg);
  CHECK(scenario::without_timing(a.to_json()).dump() == scenario::without_timing(b.to_json()).dump());
  CHECK(a.to_json().contains("timing"));
  CHECK_FALSE(scenario::without_timing(a.to_json()).contains("timing"));
  CHECK(a.verdict() == solver::Verdict::Converged);
  CHECK(a.aliasing_residual < 1e-10);
  CHECK(a.kw.interpretation == obstruction::Interpretation::ConsistentWithSolution);

  // The stored coefficients reproduce mu through the Rayleigh quotient.
  const auto j = a.to_json();
  const auto coeffs = j.at("critical").at("coefficients").get<std::vector<double>>();
  const auto ctx = SphereContext::create(cfg.n, cfg.k);
  const auto grid = zonal::build_grid(ctx, cfg.L);
  const auto spec = gjms::build_spectrum(ctx, cfg.L);
  auto u = zonal::synthesize(grid, coeffs);
  u.coeffs = coeffs;
  const auto f = zonal::ZonalField::sample(grid, [&](double t) { return cfg.f(t); });
  CHECK(gjms::rayleigh(spec, f, ctx.two_star, u) ==
        doctest::Approx(j.at("critical").at("mu_q").get<double>()).epsilon(1e-10));
}

TEST_CASE("report files") {
  const auto cfg = scenario::ScenarioConfig::load(fs::path(QCURV_SCENARIOS) / "round-sphere.json");
  const auto r = scenario::run_scenario(cfg);
  CHECK(r.verdict() == solver::Verdict::Converged);
  const auto dir = scratch_dir("reports");
  const auto written = scenario::emit_reports(r, dir);
  REQUIRE(written.size() == 3);
  for (const auto& p : written) CHECK(fs::exists(p));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
  const std::string table = slurp(dir / cfg.table_file);
  CHECK(table.rfind("q,mu_q,sup_norm,residual,iters\n", 0) == 0);
  const std::string curves = slurp(dir / cfg.curves_file);
  CHECK(curves.rfind("theta,t,u,q_curvature,f\n", 0) == 0);
  CHECK(std::count(curves.begin(), curves.end(), '\n') == 513);
  const auto report = json::parse(slurp(dir / cfg.report_file));
  CHECK(report.at("verdict") == "Converged");
  CHECK(report.at("fingerprint") == cfg.fingerprint());

  // Constant curvature: every sampled Q equals f.
  std::istringstream lines(curves);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    CHECK(v[3] == doctest::Approx(v[4]).epsilon(1e-9));
  }

  // A blocked target leaves no partial output behind.
  const auto blocked = scratch_dir("blocked");
  fs::create_directories(blocked / cfg.table_file);
  CHECK_THROWS(scenario::emit_reports(r, blocked));
  CHECK_FALSE(fs::exists(blocked / cfg.report_file));
  for (const auto& e : fs::directory_iterator(blocked)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("command reports") {
  const auto s = scenario::spectrum_report(5, 2, 10);
  CHECK(s.dump().find("13.125") != std::string::npos);
  const auto cfg = scenario::ScenarioConfig::load(fs::path(QCURV_SCENARIOS) / "theorem-main.json");
  CHECK_FALSE(scenario::bubble_report(cfg).empty());
  CHECK_FALSE(scenario::threshold_report(cfg).empty());
  CHECK_FALSE(scenario::obstruction_report(cfg).empty());
}

TEST_CASE("command-line exit codes") {
  const std::string scen = QCURV_SCENARIOS;
  const std::string data = QCURV_TEST_DATA;
  CHECK(run_cli("spectrum --n 5 --k 2 --lmax 16") == 0);
  CHECK(run_cli("spectrum --n 4 --k 2 --lmax 16") == 2);
  CHECK(run_cli("spectrum --n 5") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("solve --config " + data + "/odd-antipodal.json") == 2);
  CHECK(run_cli("solve --config /nonexistent.json") == 2);
  CHECK(run_cli("threshold --config " + scen + "/theorem-main.json") == 0);
  CHECK(run_cli("bubble --config " + scen + "/round-sphere.json") == 0);
  CHECK(run_cli("obstruction --config " + scen + "/theorem-main.json") == 0);
  const auto dir = scratch_dir("cli");
  CHECK(run_cli("solve --config " + scen + "/round-sphere.json --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "round-sphere.json"));
}

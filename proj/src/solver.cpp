#include "qcurv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcurv::solver {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr int kProfileSamples = 201;
constexpr double kProfileRadius = 5.0;

zonal::ZonalField scaled(const zonal::ZonalField& u, double c) {
  zonal::ZonalField out = u;
  for (double& v : out.values) v *= c;
  if (out.coeffs) {
    for (double& a : *out.coeffs) a *= c;
  }
  return out;
}

zonal::ZonalField normalized(const zonal::ZonalField& u, const zonal::ZonalField& f, double q) {
  std::vector<double> g(u.values.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f.values[i] * std::pow(std::abs(u.values[i]), q);
  const double s = zonal::integrate(*u.grid, g);
  if (!(s > 0.0)) throw DomainError("solver: cannot normalize a vanishing iterate");
  return scaled(u, std::pow(s, -1.0 / q));
}

double odd_fraction(std::span<const double> a) {
  double odd = 0.0, all = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    all += a[l] * a[l];
    if (l % 2 == 1) odd += a[l] * a[l];
  }
  return all > 0.0 ? std::sqrt(odd / all) : 0.0;
}

// mu (for int f u^q = 1) and the relative residual of P u = mu f u^(q-1).
std::pair<double, double> measure(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                                  double q, const zonal::ZonalField& u) {
  const auto& a = *u.coeffs;
  double mu = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) mu += spec.eigenvalues[l] * a[l] * a[l];
  const zonal::ZonalField pu = gjms::apply_P(spec, u);
  double defect = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double rhs = mu * f.values[i] * std::pow(u.values[i], q - 1.0);
    defect = std::max(defect, std::abs(pu.values[i] - rhs));
    scale = std::max(scale, std::abs(pu.values[i]));
  }
  return {mu, scale > 0.0 ? defect / scale : defect};
}

double sup_norm(const zonal::ZonalField& u) {
  double m = 0.0;
  for (double v : u.values) m = std::max(m, std::abs(v));
  const auto& a = *u.coeffs;
  m = std::max(m, std::abs(zonal::evaluate(*u.grid, a, 1.0)));
  m = std::max(m, std::abs(zonal::evaluate(*u.grid, a, -1.0)));
  return m;
}

void check_inputs(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f, double q,
                  const zonal::ZonalField& init, Group group) {
  const double two_star = spec.ctx.two_star;
  if (!(q > 2.0) || q > two_star + 1e-12) {
    throw DomainError("solve_fixed_q: exponent must lie in (2, 2*]");
  }
  if (f.grid != init.grid) throw DomainError("solve_fixed_q: f and init live on different grids");
  for (double v : f.values) {
    if (!(v > 0.0)) throw DomainError("solve_fixed_q: f must be positive");
  }
  for (double v : init.values) {
    if (!(v > 0.0)) throw DomainError("solve_fixed_q: initial guess must be positive");
  }
  if (group == Group::Antipodal && bubble::antipodal_asymmetry(f) > kSymmetryTol) {
    throw DomainError("solve_fixed_q: f is not antipodally even (violates G-invariance)");
  }
}

double theta_of(double t) { return std::acos(std::clamp(t, -1.0, 1.0)); }

struct Peak {
  double theta = 0.0;
  double value = 0.0;
};

// Largest node value, refined by a parabola through the neighbours in theta.
// At the first and last node the missing neighbour is the mirror image across
// the pole.
Peak locate_peak(const zonal::ZonalField& u) {
  const auto t = u.grid->nodes();
  const auto& v = u.values;
  const int m = static_cast<int>(v.size());
  const int i = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  auto th = [&](int j) { return theta_of(t[j]); };
  double x0, x1 = th(i), x2, y0, y1 = v[i], y2;
  if (i == m - 1) {
    x0 = -x1;
    y0 = y1;
    x2 = th(i - 1);
    y2 = v[i - 1];
  } else if (i == 0) {
    x0 = th(1);
    y0 = v[1];
    x2 = 2.0 * std::numbers::pi - x1;
    y2 = y1;
  } else {
    x0 = th(i + 1);
    y0 = v[i + 1];
    x2 = th(i - 1);
    y2 = v[i - 1];
  }
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  double theta = x1;
  if (curv < 0.0) theta = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
  theta = std::clamp(theta, std::min(x0, x2), std::max(x0, x2));
  theta = std::clamp(theta, 0.0, std::numbers::pi);
  const double val = zonal::evaluate(*u.grid, *u.coeffs, std::cos(theta));
  if (val >= y1) return {theta, val};
  return {x1, y1};
}

std::vector<double> orbit_thetas(double peak_theta, Group group) {
  if (group == Group::Antipodal) return {peak_theta, std::numbers::pi - peak_theta};
  return {peak_theta};
}

}  // namespace

zonal::ZonalField symmetrize(const zonal::ZonalField& u, Group group) {
  if (group == Group::Trivial) return u;
  std::vector<double> a = zonal::coefficients(u);
  for (std::size_t l = 1; l < a.size(); l += 2) a[l] = 0.0;
  return zonal::synthesize(u.grid, a);
}

SubcriticalState solve_fixed_q(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                               double q, const zonal::ZonalField& init, Group group,
                               const SolverOptions& opts) {
  check_inputs(spec, f, q, init, group);
  if (!(opts.damping > 0.0) || !(opts.damping < 2.0)) {
    throw DomainError("solve_fixed_q: damping must lie in (0, 2)");
  }
  const auto& grid = init.grid;
  const std::size_t m = init.values.size();

  SubcriticalState st;
  st.q = q;
  zonal::ZonalField u = init;
  if (!u.coeffs) u.coeffs = zonal::analyze(u);
  u = normalized(symmetrize(u, group), f, q);
  st.odd_mass = odd_fraction(*u.coeffs);

  std::vector<double> w(m);
  for (int it = 0;; ++it) {
    std::tie(st.mu_q, st.residual) = measure(spec, f, q, u);
    st.iterations = it;
    st.u = u;
    st.sup_norm = sup_norm(u);
    if (st.residual < opts.tol) {
      st.converged = true;
      return st;
    }
    if (it >= opts.max_iter) {
      std::ostringstream msg;
      msg << "solve_fixed_q: no convergence in " << opts.max_iter
          << " iterations at q=" << q << " (residual " << st.residual << ")";
      throw MaxIterations(msg.str(), st);
    }

    for (std::size_t i = 0; i < m; ++i) w[i] = f.values[i] * std::pow(u.values[i], q - 1.0);
    std::vector<double> a = zonal::analyze(*grid, w);
    for (std::size_t l = 0; l < a.size(); ++l) a[l] /= spec.eigenvalues[l];
    if (group == Group::Antipodal) {
      for (std::size_t l = 1; l < a.size(); l += 2) a[l] = 0.0;
    }
    zonal::ZonalField next = normalized(zonal::synthesize(grid, a), f, q);
    if (opts.damping != 1.0) {
      auto& b = *next.coeffs;
      const auto& c = *u.coeffs;
      for (std::size_t l = 0; l < b.size(); ++l) {
        b[l] = opts.damping * b[l] + (1.0 - opts.damping) * c[l];
      }
      next = normalized(zonal::synthesize(grid, b), f, q);
    }
    for (double v : next.values) {
      if (!(v > 0.0)) {
        st.iterations = it + 1;
        st.u = next;
        st.sup_norm = sup_norm(next);
        std::ostringstream msg;
        msg << "solve_fixed_q: iterate lost positivity at q=" << q << " after " << it + 1
            << " iterations";
        throw PositivityLost(msg.str(), st);
      }
    }
    u = std::move(next);
    st.odd_mass = std::max(st.odd_mass, odd_fraction(*u.coeffs));
  }
}

std::vector<double> default_schedule(const SphereContext& ctx, int J) {
  if (J < 1) throw DomainError("default_schedule: J must be positive");
  std::vector<double> q(J);
  for (int j = 1; j <= J; ++j) q[j - 1] = ctx.two_star - (ctx.two_star - 2.0) * std::ldexp(1.0, -j);
  return q;
}

const char* to_string(Verdict v) { return v == Verdict::Converged ? "Converged" : "BlowUp"; }

BlowupDiagnostics blowup_diagnostics(const std::vector<SubcriticalState>& states,
                                     const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                                     Group group, double mu_ref) {
  BlowupDiagnostics d;
  if (states.empty()) return d;
  const SphereContext& ctx = spec.ctx;
  const auto& grid = *f.grid;
  const auto t = grid.nodes();
  const double cnk = ctx.c_nk;
  const auto fa = f.coeffs ? *f.coeffs : zonal::analyze_denoised(grid, f.values);

  const double v_f = zonal::integrate(grid, f.values);
  for (const auto& st : states) {
    const Peak pk = locate_peak(st.u);
    const double alpha = std::pow(pk.value, -2.0 / (ctx.n - 2 * ctx.k));
    d.sup_norms.push_back(std::max(st.sup_norm, pk.value));
    d.peak_theta.push_back(pk.theta);
    d.peak_t.push_back(std::cos(pk.theta));
    d.alpha_q.push_back(alpha);
    d.beta_q.push_back(std::pow(alpha, (st.q - 2.0) / (ctx.two_star - 2.0)));

    const auto orbit = orbit_thetas(pk.theta, group);
    double druet = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double th = theta_of(t[i]);
      double dist = std::numbers::pi;
      for (double o : orbit) dist = std::min(dist, std::abs(th - o));
      druet = std::max(druet, std::pow(dist, cnk) * st.u.values[i]);
    }
    d.druet_monitor.push_back(druet);

    const double bound = st.mu_q * std::pow(v_f, 2.0 / st.q - 2.0 / ctx.two_star);
    d.comparison_bound.push_back(bound);
    if (mu_ref > bound * (1.0 + 1e-9)) d.comparison_holds = false;
  }
  const std::size_t s = d.druet_monitor.size();
  if (s >= 3) {
    const double lo = std::min({d.druet_monitor[s - 3], d.druet_monitor[s - 2], d.druet_monitor[s - 1]});
    d.druet_stable = d.druet_monitor[s - 1] <= 1.25 * lo;
  }

  const SubcriticalState& last = states.back();
  d.x_inf_theta = d.peak_theta.back();
  d.x_inf_t = d.peak_t.back();
  auto sphere_grad = [&](double tt) {
    return std::abs(zonal::evaluate_derivative(grid, fa, tt)) * std::sqrt(std::max(0.0, 1.0 - tt * tt));
  };
  d.grad_f_at_peak = sphere_grad(d.x_inf_t);
  for (double tt : t) d.grad_f_max = std::max(d.grad_f_max, sphere_grad(tt));
  d.gradient_vanishes = d.grad_f_at_peak <= 1e-3 * d.grad_f_max;

  // Mass of f u^q in geodesic caps (bands, for a ring) around each orbit point.
  const auto orbit = orbit_thetas(d.x_inf_theta, group);
  const bubble::OrbitSpec spec_orbit = bubble::OrbitSpec::of(group);
  d.cap_radius = spec_orbit.size > 1 ? spec_orbit.separation / 4.0 : std::numbers::pi / 4.0;
  const auto w = grid.weights();
  for (double o : orbit) {
    double mass = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::abs(theta_of(t[i]) - o) < d.cap_radius) {
        mass += w[i] * f.values[i] * std::pow(last.u.values[i], last.q);
      }
    }
    d.orbit_mass.push_back(mass);
    d.orbit_mass_total += mass;
  }

  const double alpha = d.alpha_q.back();
  const double beta = d.beta_q.back();
  d.beta_over_alpha = beta / alpha;
  const double f_peak = zonal::evaluate(grid, fa, d.x_inf_t);
  d.profile_a = std::pow(last.mu_q * f_peak / bubble::extremal_constant(ctx.n, ctx.k), 1.0 / ctx.k);
  const double amp = std::pow(alpha, cnk);
  for (int j = 0; j < kProfileSamples; ++j) {
    const double r = kProfileRadius * j / (kProfileSamples - 1);
    const double ref = bubble::extremal_profile(ctx.n, ctx.k, d.profile_a, r);
    for (double sign : {1.0, -1.0}) {
      const double th = d.x_inf_theta + sign * beta * r;
      const double val = amp * zonal::evaluate(grid, *last.u.coeffs, std::cos(th));
      d.profile_deviation = std::max(d.profile_deviation, std::abs(val - ref) / ref);
    }
  }
  return d;
}

ContinuationResult run_continuation(const gjms::GjmsSpectrum& spec, const zonal::ZonalField& f,
                                    Group group, const std::vector<double>& schedule,
                                    const ContinuationOptions& opts) {
  if (schedule.empty()) throw DomainError("run_continuation: empty schedule");
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    if (!(schedule[j] > 2.0) || schedule[j] >= spec.ctx.two_star ||
        (j > 0 && !(schedule[j] > schedule[j - 1]))) {
      throw DomainError("run_continuation: schedule must increase within (2, 2*)");
    }
  }
  const SphereContext& ctx = spec.ctx;
  ContinuationResult res;
  res.thresholds = bubble::threshold_profile(ctx, f, bubble::OrbitSpec::of(group));
  const double t_min = res.thresholds.min_value;

  Verdict verdict = Verdict::Converged;
  bool decided = false;
  zonal::ZonalField u = zonal::ZonalField::constant(f.grid, 1.0);
  for (double q : schedule) {
    try {
      res.states.push_back(solve_fixed_q(spec, f, q, u, group, opts.solver));
    } catch (const SolverError& e) {
      // Failure counts as blow-up only when the sup-norms were growing fast.
      std::vector<double> sups;
      for (const auto& st : res.states) sups.push_back(st.sup_norm);
      sups.push_back(e.state().sup_norm);
      const std::size_t s = sups.size();
      const bool growing = s >= 3 && sups[s - 3] < sups[s - 2] && sups[s - 2] < sups[s - 1] &&
                           sups[s - 1] >= 10.0 * sups[s - 3];
      if (!growing) {
        std::ostringstream msg;
        msg << e.what() << " [continuation failed at q=" << q << "]";
        throw ConvergenceError(msg.str());
      }
      verdict = Verdict::BlowUp;
      decided = true;
      res.note = std::string("solver failure with growing sup-norms: ") + e.what();
      break;
    }
    u = res.states.back().u;
    if (res.states.back().sup_norm > opts.blowup_cap) {
      verdict = Verdict::BlowUp;
      decided = true;
      res.note = "sup-norm exceeded the blow-up cap";
      break;
    }
  }

  double mu_ref = t_min;
  if (!decided) {
    try {
      CriticalSolution crit;
      crit.state = solve_fixed_q(spec, f, ctx.two_star, u, group, opts.solver);
      if (crit.state.mu_q < t_min * (1.0 - opts.threshold_margin)) {
        const double mu_f = crit.state.mu_q / ctx.c_nk;
        crit.q_curvature = gjms::conformal_q(spec, crit.state.u);
        double fmax = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
          crit.q_curvature.values[i] /= mu_f;
          crit.q_defect = std::max(crit.q_defect, std::abs(crit.q_curvature.values[i] - f.values[i]));
          fmax = std::max(fmax, std::abs(f.values[i]));
        }
        crit.q_defect /= fmax;
        mu_ref = crit.state.mu_q;
        res.critical = std::move(crit);
        res.note = "critical solve converged below the minimal threshold";
      } else {
        verdict = Verdict::BlowUp;
        res.note = "critical solve did not go below the minimal threshold";
      }
    } catch (const SolverError& e) {
      verdict = Verdict::BlowUp;
      res.note = std::string("critical solve failed: ") + e.what();
    }
  }

  res.diag = blowup_diagnostics(res.states, spec, f, group, mu_ref);
  res.diag.verdict = verdict;
  return res;
}

}  // namespace qcurv::solver

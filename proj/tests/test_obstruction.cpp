#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcurv/bubble.hpp"
#include "qcurv/error.hpp"
#include "qcurv/obstruction.hpp"
#include "qcurv/quadrature.hpp"

using namespace qcurv;

TEST_CASE("constant f gives a consistent reading") {
  const auto ctx = SphereContext::create(3, 1);
  const auto g = zonal::build_grid(ctx, 128);
  auto f = zonal::ZonalField::constant(g, ctx.Q_h);
  f.coeffs = zonal::analyze(f);
  for (double beta : {1.1, 2.0, 10.0}) {
    const auto r = obstruction::kw_functional(f, bubble::bubble_field(g, {beta, Pole::North}));
    CHECK(std::abs(r.normalized_value) < obstruction::kConsistencyTol);
    CHECK(r.interpretation == obstruction::Interpretation::ConsistentWithSolution);
  }
}

TEST_CASE("f = t against a north bubble matches an independent theta quadrature") {
  for (auto [n, k] : {std::pair{3, 1}, {5, 2}}) {
    const auto ctx = SphereContext::create(n, k);
    const auto g = zonal::build_grid(ctx, 128);
    const auto f = zonal::ZonalField::sample(g, [](double t) { return 2.0 + t; });
    const double beta = 3.0;
    const auto u = bubble::bubble_field(g, {beta, Pole::North});

    // int_0^pi sin^2 u(cos theta)^(2*) omega_{n-1} sin^(n-1) theta d theta
    const auto rule = quad::gauss_legendre(400, 0.0, std::numbers::pi);
    double want = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double th = rule.nodes[i];
      const double up = std::pow(bubble::bubble_value(ctx, beta, std::cos(th)), ctx.two_star);
      const double meas = rule.weights[i] * SphereContext::sphere_volume(n - 1) * std::pow(std::sin(th), n - 1);
      want += std::sin(th) * std::sin(th) * up * meas;
    }
    const auto r = obstruction::kw_functional(f, u);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-10));
    CHECK(r.normalized_value == doctest::Approx(want / ctx.omega_n).epsilon(1e-10));
    CHECK(r.interpretation == obstruction::Interpretation::ObstructionSignal);
  }
}

TEST_CASE("sign follows the tilt of f") {
  const auto g = zonal::build_grid(SphereContext::create(3, 1), 32);
  const auto up = zonal::ZonalField::sample(g, [](double t) { return 2.0 + t; });
  const auto down = zonal::ZonalField::sample(g, [](double t) { return 2.0 - t; });
  const auto u = bubble::bubble_field(g, {2.0, Pole::South});
  CHECK(obstruction::kw_functional(up, u).value > 0.0);
  CHECK(obstruction::kw_functional(down, u).value < 0.0);
  CHECK(std::string(obstruction::to_string(obstruction::Interpretation::ObstructionSignal)) ==
        "ObstructionSignal");
}

TEST_CASE("input checks") {
  const auto ctx = SphereContext::create(3, 1);
  const auto g1 = zonal::build_grid(ctx, 16);
  const auto g2 = zonal::build_grid(ctx, 16);
  const auto f = zonal::ZonalField::constant(g1, 1.0);
  CHECK_THROWS_AS(obstruction::kw_functional(f, zonal::ZonalField::constant(g2, 1.0)), DomainError);
  CHECK_THROWS_AS(obstruction::kw_functional(f, zonal::ZonalField::constant(g1, 0.0)), DomainError);
}

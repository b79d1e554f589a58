#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/oracle.hpp"
#include "hjcrit/quadrature.hpp"

using namespace hjcrit;

TEST_CASE("q_star") {
  CHECK(q_star(1) == 1.5);
  CHECK(q_star(2) == 4.0 / 3.0);
  CHECK(q_star(3) == 1.25);
  CHECK_THROWS_AS(q_star(0), InvalidArgument);
}

TEST_CASE("gaussian_profile and heat_self_similar") {
  const Grid g(1, 12.0, 257);
  const ScalarField G = gaussian_profile(g);
  CHECK(G[128] == 1.0 / std::sqrt(4.0 * std::numbers::pi));
  for (int i = 0; i < 257; ++i) CHECK(G[i] == G[256 - i]);
  CHECK(std::abs(integrate(G) - 1.0) < 1e-8);

  const ScalarField g1 = heat_self_similar(1.0, g);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(g1[k] == G[k]);

  const Grid wide(1, 40.0, 2049);
  for (double t : {0.5, 2.0, 10.0}) {
    const ScalarField gt = heat_self_similar(t, wide);
    CHECK(std::abs(lp_norm(gt, 1.0) - 1.0) < 1e-8);
    CHECK(lp_norm(gt, kInfinity) == doctest::Approx(1.0 / std::sqrt(4.0 * std::numbers::pi * t)));
  }
  const Grid g2(2, 40.0, 257);
  CHECK(lp_norm(heat_self_similar(3.0, g2), kInfinity) ==
        doctest::Approx(1.0 / (4.0 * std::numbers::pi * 3.0)));
  CHECK_THROWS_AS(heat_self_similar(0.0, g), InvalidArgument);
  CHECK_THROWS_AS(heat_self_similar(-1.0, g), InvalidArgument);
}

TEST_CASE("gradient norm closed form against adaptive quadrature") {
  for (int dim : {1, 2}) {
    CAPTURE(dim);
    const double closed = grad_G_qstar_norm(dim);
    const double quad = oracle::gradient_norm(dim, q_star(dim));
    CHECK(std::abs(closed - quad) < 1e-10);
    // Homogeneity on the quadrature path.
    CHECK(oracle::gradient_norm(dim, q_star(dim), 2.0) == doctest::Approx(2.0 * quad).epsilon(1e-12));
  }
  // Frozen values (50-digit reference evaluation of the Gamma-function form).
  CHECK(grad_G_qstar_norm(1) == doctest::Approx(0.299148207597309779).epsilon(1e-14));
  CHECK(grad_G_qstar_norm(2) == doctest::Approx(0.343319157186341794).epsilon(1e-14));
  CHECK_THROWS_AS(grad_G_qstar_norm(3), InvalidArgument);
}

TEST_CASE("M_star and CriticalData invariants") {
  CHECK(std::abs(m_star(1) * std::pow(grad_G_qstar_norm(1), 3) - 4.0) < 1e-12);
  CHECK(std::abs(m_star(2) * std::pow(grad_G_qstar_norm(2), 4) - 27.0) < 1e-12);
  CHECK(m_star(1) == doctest::Approx(149.417262803127362).epsilon(1e-13));
  CHECK(m_star(2) == doctest::Approx(1943.44213085995081).epsilon(1e-13));
  for (int dim : {1, 2}) {
    const CriticalData c = critical_data(dim);
    CHECK(c.q_star == (dim + 2.0) / (dim + 1.0));
    CHECK(c.c_mass == std::pow(c.grad_G_norm, c.q_star));
    CHECK(std::abs(c.m_star * std::pow(c.grad_G_norm, dim + 2.0) - std::pow(dim + 1.0, dim + 1.0)) < 1e-12 * std::pow(dim + 1.0, dim + 1.0));
    const double cross = std::pow((c.q_star - 1.0) * c.c_mass, -(dim + 1.0));
    CHECK(std::abs(cross - c.m_star) < 1e-10 * c.m_star);
  }
  CHECK_THROWS_AS(m_star(0), InvalidArgument);
}

#include <cmath>

#include "doctest.h"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/operators.hpp"
#include "hjcrit/quadrature.hpp"
#include "hjcrit/similarity.hpp"
#include "hjcrit/spectral.hpp"

using namespace hjcrit;

TEST_CASE("projections") {
  const Grid g(1, 12.0, 513);
  const ScalarField G = gaussian_profile(g);
  const ScalarField w = gaussian_plus_moment(0.4, g) * 2.5;
  const ScalarField p = project_P0(w);
  const ScalarField q = project_Q0(w);
  CHECK(integrate(q) == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
  CHECK(integrate(p) == doctest::Approx(integrate(w) * integrate(G)).epsilon(1e-14));
  CHECK((project_P0(p) - p).sup_norm() < 1e-8 * p.sup_norm());
  CHECK(std::abs(integrate(project_Q0(q))) < 1e-14);
  CHECK(((p + q) - w).sup_norm() < 1e-15);
}

TEST_CASE("hermite modes are eigenfunctions") {
  for (int k : {0, 1, 2}) {
    CAPTURE(k);
    const SpectralProbeResult r = eigenmode_residual(k);
    CHECK(r.residual <= 1e-3);
    CHECK(r.expected_rate == 0.5 * k);
    // Second order: refinement divides the residual by about 4.
    const double fine = eigenmode_residual(k, Grid(1, 12.0, 1025)).residual;
    CHECK(r.residual / fine == doctest::Approx(4.0).epsilon(0.125));
  }
  CHECK_THROWS_AS(hermite_mode(3, Grid(1, 12.0, 33)), InvalidArgument);

  // ∂₁G from the sampled profile matches the closed-form mode.
  const Grid g(1, 12.0, 1025);
  const ScalarField d = gradient(gaussian_profile(g))[0];
  const ScalarField m = hermite_mode(1, g);
  CHECK((d - m).sup_norm() < 2e-4 * m.sup_norm());
}

TEST_CASE("spectral_bound") {
  CHECK(spectral_bound(1.0, 1) == doctest::Approx(-0.25));
  CHECK(spectral_bound(2.0, 2) == doctest::Approx(-0.5));
  CHECK(spectral_bound(1.5, 2) == doctest::Approx(-0.25));
  CHECK_THROWS_AS(spectral_bound(0.5, 1), InvalidArgument);
  CHECK_THROWS_AS(spectral_bound(1.0, 2), InvalidArgument);
}

TEST_CASE("semigroup decay rates") {
  const Grid g(1, 12.0, 513);
  const WeightParams m(1.0, 1);

  const SpectralProbeResult first = semigroup_decay_rate(hermite_mode(1, g), m);
  CHECK(first.applicable);
  CHECK(first.expected_rate == 0.5);
  CHECK(first.measured_rate == doctest::Approx(0.5).epsilon(0.04));

  const SpectralProbeResult second = semigroup_decay_rate(hermite_mode(2, g), m);
  CHECK(second.expected_rate == 1.0);
  CHECK(second.measured_rate == doctest::Approx(1.0).epsilon(0.05));

  // Mixed data: the slowest mode sets the rate.
  ScalarField mixed = hermite_mode(1, g);
  mixed += hermite_mode(2, g) * 2.0;
  const SpectralProbeResult slow = semigroup_decay_rate(mixed, m, 4.0, 10.0);
  CHECK(slow.expected_rate == 0.5);
  CHECK(slow.measured_rate == doctest::Approx(0.5).epsilon(0.05));

  const SpectralProbeResult kernel = semigroup_decay_rate(gaussian_profile(g) * 2.0, m);
  CHECK_FALSE(kernel.applicable);

  CHECK_THROWS_AS(semigroup_decay_rate(hermite_mode(1, g), m, 1.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(semigroup_decay_rate(ScalarField(g), m), InvalidArgument);
}

TEST_CASE("linear flow commutes with the kernel projection") {
  // Mass is conserved, so P₀ of the evolved data equals P₀ of the data.
  const Grid g(1, 12.0, 257);
  const ScalarField w0 = gaussian_plus_moment(0.5, g);
  SolverConfig cfg;
  cfg.nonlinearity = Nonlinearity::off;
  cfg.tau_end = 1.0;
  const ScalarField w1 = evolve(w0, cfg, std::nullopt).final_state.field;
  CHECK((project_P0(w1) - project_P0(w0)).sup_norm() < 1e-12);
  // Q₀ part decays.
  const WeightParams m(1.0, 1);
  CHECK(weighted_l2_norm(project_Q0(w1), m) < std::exp(-0.45) * weighted_l2_norm(project_Q0(w0), m));
}

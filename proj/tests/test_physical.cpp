#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/operators.hpp"
#include "hjcrit/oracle.hpp"
#include "hjcrit/physical.hpp"
#include "hjcrit/quadrature.hpp"

using namespace hjcrit;

namespace {

SolverConfig physical_config(Nonlinearity nl = Nonlinearity::full, int record_every = 100) {
  SolverConfig cfg;
  cfg.nonlinearity = nl;
  cfg.record_every = record_every;
  return cfg;
}

}  // namespace

TEST_CASE("rhs_physical") {
  const Grid g(1, 20.0, 801);
  CHECK(rhs_physical({0.0, ScalarField(g), 1.5}).sup_norm() == 0.0);

  // Flat top: where the discrete gradient vanishes the rhs is the Laplacian.
  const ScalarField plateau = ScalarField::from_function(g, [](double x, double) {
    const double s = std::abs(x) - 3.0;
    return s <= 0.0 ? 1.0 : std::exp(-s * s * s);
  });
  const ScalarField r = rhs_physical({0.0, plateau, 2.0});
  const ScalarField lap = laplacian(plateau);
  const auto grad = gradient(plateau);
  int flat = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (grad[0][k] == 0.0) {
      CHECK(r[k] == lap[k]);
      ++flat;
    }
  }
  CHECK(flat > 100);

  // ∫Δg - |∇g|^{q★} = -t^{-1} ∫|∇G|^{q★} for the heat kernel g(t) in 1-D.
  const Grid wide(1, 40.0, 4001);
  const double q = q_star(1);
  const double reference = std::pow(oracle::gradient_norm(1, q), q);
  for (double t : {1.0, 2.0, 4.0}) {
    const ScalarField gt = heat_self_similar(t, wide);
    const double total = integrate(rhs_physical({t, gt, q}));
    CHECK(total < 0.0);
    CHECK(total == doctest::Approx(-reference / t).epsilon(1e-4));
  }
}

TEST_CASE("evolve_physical") {
  const Grid g(1, 40.0, 1001);
  const ScalarField G = gaussian_profile(g);
  const double m0 = lp_norm(G, 1.0);

  const PhysicalTrajectory full = evolve_physical(G, q_star(1), 5.0, physical_config());
  REQUIRE(full.records.size() > 10);
  CHECK(full.records.back().t == 5.0);
  CHECK(full.final_state.t == 5.0);
  for (std::size_t i = 1; i < full.records.size(); ++i) {
    CHECK(full.records[i].l1 < full.records[i - 1].l1);
    CHECK(full.records[i].min_value >= -1e-8 * full.records[i].linf);
  }
  // u(t) is dominated by the heat solution, so t^{1/2}‖u‖∞ ≤ ‖u₀‖₁/√(4π).
  for (const auto& rec : full.records) {
    CHECK(std::sqrt(rec.t) * rec.linf <= m0 / std::sqrt(4.0 * std::numbers::pi));
    CHECK(rec.grad_linf > 0.0);
  }

  const PhysicalTrajectory heat =
      evolve_physical(G, q_star(1), 5.0, physical_config(Nonlinearity::off));
  for (const auto& rec : heat.records) CHECK(std::abs(rec.l1 - m0) < 1e-8);
  // Heat flow from g(1) lands on g(1 + t).
  const ScalarField expected = heat_self_similar(6.0, g);
  CHECK((heat.final_state.field - expected).sup_norm() < 1e-4 * expected.sup_norm());

  SolverConfig bad = physical_config(Nonlinearity::truncated);
  CHECK_THROWS_AS(evolve_physical(G, 1.5, 1.0, bad), InvalidArgument);
}

TEST_CASE("comparison monotonicity") {
  const Grid g(1, 30.0, 601);
  const ScalarField upper = gaussian_profile(g);
  const ScalarField lower = ScalarField::from_function(g, [](double x, double) {
    return 0.5 * std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  });
  for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(lower[k] <= upper[k]);
  SolverConfig cfg = physical_config(Nonlinearity::full, 20);
  cfg.store_snapshots = true;
  const auto a = evolve_physical(lower, 1.5, 3.0, cfg);
  const auto b = evolve_physical(upper, 1.5, 3.0, cfg);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  REQUIRE(a.snapshots.size() > 5);
  for (std::size_t s = 0; s < a.snapshots.size(); ++s) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(a.snapshots[s].field[k] <= b.snapshots[s].field[k] + 1e-8);
    }
  }
}

TEST_CASE("change of variables") {
  const Grid xg(1, 40.0, 2001);
  const Grid sg(1, 12.0, 513);

  SUBCASE("t = 0 is the identity") {
    const PhysicalState u{0.0, gaussian_profile(sg), 1.5};
    const SimilarityState v = to_similarity(u, sg);
    CHECK(v.tau == 0.0);
    for (std::size_t k = 0; k < sg.size(); ++k) CHECK(v.field[k] == u.field[k]);
    const PhysicalState back = from_similarity(v, sg, 1.5);
    CHECK(back.t == 0.0);
    for (std::size_t k = 0; k < sg.size(); ++k) CHECK(back.field[k] == u.field[k]);
  }
  SUBCASE("t = e - 1 is tau = 1") {
    const double t = std::numbers::e - 1.0;
    const PhysicalState u{t, heat_self_similar(1.0 + t, xg), 1.5};
    const SimilarityState v = to_similarity(u, sg);
    CHECK(v.tau == doctest::Approx(1.0).epsilon(1e-15));
    // g(1+t) rescales to G; linear interpolation error only.
    const ScalarField G = gaussian_profile(sg);
    CHECK((v.field - G).sup_norm() < 1e-3 * G.sup_norm());
    CHECK(lp_norm(v.field, 1.0) == doctest::Approx(lp_norm(u.field, 1.0)).epsilon(1e-4));

    const PhysicalState back = from_similarity({1.0, G}, xg, 1.5);
    CHECK(back.t == doctest::Approx(t).epsilon(1e-15));
    CHECK((back.field - u.field).sup_norm() < 1e-3 * u.field.sup_norm());
  }
  SUBCASE("targets outside the physical grid") {
    const Grid narrow(1, 8.0, 129);
    const PhysicalState u{0.0, gaussian_profile(narrow), 1.5};
    CHECK_THROWS_AS(to_similarity(u, sg), InvalidArgument);
  }
}

TEST_CASE("cross-solver agreement") {
  const Grid xg(1, 40.0, 1001);
  const Grid sg(1, 12.0, 513);
  PhysicalState u{0.0, gaussian_profile(xg), q_star(1)};
  SimilarityState v{0.0, gaussian_profile(sg)};
  SolverConfig cfg;
  cfg.record_every = 1000;
  for (double t : {1.0, std::numbers::e - 1.0, 5.0}) {
    u = evolve_physical(u, t, cfg).final_state;
    SolverConfig sc = cfg;
    sc.tau_end = std::log1p(t);
    v = evolve(v, sc, std::nullopt).final_state;
    const SimilarityState mapped = to_similarity(u, sg);
    CAPTURE(t);
    CHECK(lp_norm(mapped.field - v.field, 1.0) <= 1e-3 * lp_norm(v.field, 1.0));
  }
}

TEST_CASE("asymptotic_law_error") {
  const Grid g(1, 60.0, 1201);
  const CriticalData crit = critical_data(1);
  for (double t : {2.0, 10.0}) {
    const double lt = std::log(t);
    const ScalarField law = heat_self_similar(t, g) * (crit.m_star / (lt * lt));
    CHECK(asymptotic_law_error({t, law, 1.5}, 1.0, crit) < 1e-12);
    CHECK(asymptotic_law_error({t, law, 1.5}, kInfinity, crit) < 1e-12);

    const ScalarField other = heat_self_similar(t, g) * 3.0;
    const double diff1 = lp_norm(other - law, 1.0);
    CHECK(asymptotic_law_error({t, other, 1.5}, 1.0, crit) == doctest::Approx(lt * lt * diff1));
    const double diff2 = lp_norm(other - law, 2.0);
    CHECK(asymptotic_law_error({t, other, 1.5}, 2.0, crit) ==
          doctest::Approx(std::pow(t, 0.25) * lt * lt * diff2));
  }
  CHECK_THROWS_AS(asymptotic_law_error({1.0, gaussian_profile(g), 1.5}, 1.0, crit), InvalidArgument);
  CHECK_THROWS_AS(asymptotic_law_error({0.5, gaussian_profile(g), 1.5}, 1.0, crit), InvalidArgument);
}

TEST_CASE("asymptotic_law_error along a similarity run") {
  // E₁ is scale invariant, so the physical grid is the ξ-grid stretched by √(1+t).
  const Grid sg(1, 12.0, 257);
  const CriticalData crit = critical_data(1);
  SolverConfig cfg;
  cfg.record_every = 1 << 30;
  SimilarityState v{0.0, gaussian_profile(sg)};
  std::vector<double> errors;
  for (double tau = 10.0; tau <= 15.0; tau += 1.0) {
    cfg.tau_end = tau;
    v = evolve(v, cfg, std::nullopt).final_state;
    const Grid xg(1, 12.0 * std::exp(0.5 * tau), 257);
    errors.push_back(asymptotic_law_error(from_similarity(v, xg, crit.q_star), 1.0, crit));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) CHECK(errors[i] < errors[i - 1]);
}

TEST_CASE("l1_limit_probe") {
  const Grid g(1, 40.0, 1001);
  const ScalarField G = gaussian_profile(g);
  const double m0 = lp_norm(G, 1.0);

  const L1LimitProbe super = l1_limit_probe(G, 1.7, ProbeHorizon{});
  CHECK_FALSE(super.decaying);
  CHECK(super.plateau_estimate >= 0.3 * m0);
  CHECK(super.plateau_estimate <= super.mass.back());
  CHECK(super.invariant_violations.empty());

  const L1LimitProbe critical = l1_limit_probe(G, q_star(1), ProbeHorizon{});
  CHECK(critical.decaying);
  CHECK(critical.tail_slope < -1e-3);
  CHECK(critical.invariant_violations.empty());
  for (std::size_t i = 1; i < critical.mass.size(); ++i) CHECK(critical.mass[i] < critical.mass[i - 1]);

  ProbeHorizon heat;
  heat.nonlinear = false;
  const L1LimitProbe linear = l1_limit_probe(G, 1.7, heat);
  CHECK_FALSE(linear.decaying);
  // Only the piecewise-linear transfer between grids perturbs the mass.
  CHECK(linear.plateau_estimate == doctest::Approx(m0).epsilon(1e-6));

  ProbeHorizon short_run;
  short_run.tau_end = 2.5;
  CHECK_THROWS_AS(l1_limit_probe(G, 1.7, short_run), InconclusiveError);
  CHECK_THROWS_AS(l1_limit_probe(G, 1.0, ProbeHorizon{}), InvalidArgument);
}

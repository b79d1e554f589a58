#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hjcrit/fields.hpp"
#include "hjcrit/gaussian.hpp"
#include "hjcrit/operators.hpp"
#include "hjcrit/oracle.hpp"
#include "hjcrit/quadrature.hpp"

using namespace hjcrit;

namespace {

constexpr double pi = std::numbers::pi;

double interior_max_error(const ScalarField& f, const std::function<double(double, double)>& exact) {
  const Grid& g = f.grid();
  double err = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.on_boundary(k)) continue;
    const auto p = g.point(k);
    err = std::max(err, std::abs(f[k] - exact(p[0], p[1])));
  }
  return err;
}

double G1(double x) { return std::exp(-0.25 * x * x) / std::sqrt(4.0 * pi); }

ScalarField random_field(const Grid& g, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  ScalarField f(g);
  for (std::size_t k = 0; k < g.size(); ++k) f[k] = normal(rng);
  return f;
}

}  // namespace

TEST_CASE("build_grid coordinates and validation") {
  const Grid tiny = build_grid(1, 12.0, 3);
  CHECK(tiny.coordinate(0) == -12.0);
  CHECK(tiny.coordinate(1) == 0.0);
  CHECK(tiny.coordinate(2) == 12.0);

  const Grid g = build_grid(1, 12.0, 1025);
  CHECK(g.spacing() == 0.0234375);
  CHECK(g.spacing() * (g.points_per_axis() - 1) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(g.coordinate(512) == 0.0);
  for (int i = 0; i < 1025; ++i) CHECK(g.coordinate(i) == -g.coordinate(1024 - i));

  const Grid g2 = build_grid(2, 12.0, 129);
  CHECK(g2.size() == 129u * 129u);
  CHECK(g2.point(0)[0] == -12.0);
  CHECK(g2.point(0)[1] == -12.0);
  CHECK(g2.point(1)[1] == doctest::Approx(-12.0 + g2.spacing()));
  CHECK(g2.point(129)[0] == doctest::Approx(-12.0 + g2.spacing()));

  CHECK_THROWS_AS(build_grid(1, 12.0, 128), InvalidArgument);
  CHECK_THROWS_AS(build_grid(3, 12.0, 129), InvalidArgument);
  CHECK_THROWS_AS(build_grid(0, 12.0, 129), InvalidArgument);
  CHECK_THROWS_AS(build_grid(1, 7.5, 129), InvalidArgument);
}

TEST_CASE("WeightParams enforces m > N/2") {
  CHECK_NOTHROW(WeightParams(0.6, 1));
  CHECK_THROWS_AS(WeightParams(0.5, 1), InvalidArgument);
  CHECK_THROWS_AS(WeightParams(1.0, 2), InvalidArgument);
  CHECK_NOTHROW(WeightParams(1.01, 2));
}

TEST_CASE("gradient") {
  const Grid g(1, 12.0, 257);
  const auto lin = gradient(ScalarField::from_function(g, [](double x, double) { return x; }));
  CHECK(interior_max_error(lin[0], [](double, double) { return 1.0; }) < 1e-12);
  // One-sided boundary differences are exact on quadratics too.
  const auto quad = gradient(ScalarField::from_function(g, [](double x, double) { return x * x; }));
  CHECK(quad[0][0] == doctest::Approx(-24.0).epsilon(1e-12));
  CHECK(quad[0][256] == doctest::Approx(24.0).epsilon(1e-12));

  const auto cst = gradient(ScalarField::from_function(g, [](double, double) { return 3.0; }));
  CHECK(interior_max_error(cst[0], [](double, double) { return 0.0; }) == 0.0);

  const Grid g2(2, 12.0, 65);
  const auto grad2 =
      gradient(ScalarField::from_function(g2, [](double x, double y) { return 2.0 * x - y; }));
  CHECK(interior_max_error(grad2[0], [](double, double) { return 2.0; }) < 1e-12);
  CHECK(interior_max_error(grad2[1], [](double, double) { return -1.0; }) < 1e-12);
}

TEST_CASE("laplacian") {
  const Grid g(1, 12.0, 257);
  const auto lap = laplacian(ScalarField::from_function(g, [](double x, double) { return x * x; }));
  CHECK(interior_max_error(lap, [](double, double) { return 2.0; }) < 1e-10);
  CHECK(lap[0] == 0.0);
  CHECK(laplacian(ScalarField(g)).sup_norm() == 0.0);

  const Grid g2(2, 12.0, 65);
  const auto lap2 =
      laplacian(ScalarField::from_function(g2, [](double x, double y) { return x * x + 3 * y * y; }));
  CHECK(interior_max_error(lap2, [](double, double) { return 8.0; }) < 1e-9);
}

TEST_CASE("second-order convergence on the Gaussian profile") {
  // Residuals against the analytic derivatives of G over three refinements.
  std::vector<double> grad_err, lap_err, l_err;
  for (int n : {129, 257, 513, 1025}) {
    const Grid g(1, 12.0, n);
    const ScalarField G = gaussian_profile(g);
    grad_err.push_back(interior_max_error(gradient(G)[0], [](double x, double) { return -0.5 * x * G1(x); }));
    lap_err.push_back(interior_max_error(laplacian(G), [](double x, double) { return (0.25 * x * x - 0.5) * G1(x); }));
    l_err.push_back(apply_L(G).sup_norm());
  }
  for (std::size_t i = 0; i + 1 < grad_err.size(); ++i) {
    CAPTURE(i);
    CHECK(grad_err[i] / grad_err[i + 1] == doctest::Approx(4.0).epsilon(0.125));
    CHECK(lap_err[i] / lap_err[i + 1] == doctest::Approx(4.0).epsilon(0.125));
    CHECK(l_err[i] / l_err[i + 1] == doctest::Approx(4.0).epsilon(0.125));
  }
}

TEST_CASE("integrate and lp_norm on the Gaussian") {
  const Grid g(1, 12.0, 257);
  const ScalarField G = gaussian_profile(g);
  CHECK(std::abs(integrate(G) - 1.0) < 1e-8);
  CHECK(std::abs(lp_norm(G, 1.0) - 1.0) < 1e-8);
  CHECK(lp_norm(G, kInfinity) == doctest::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-15));
  CHECK(std::abs(lp_norm(G, 2.0) - std::pow(8.0 * pi, -0.25)) < 1e-8);

  // ∫G² against the adaptive-quadrature oracle.
  const double g2_oracle = oracle::integrate_real_line([](double x) { return G1(x) * G1(x); });
  CHECK(g2_oracle == doctest::Approx(1.0 / std::sqrt(8.0 * pi)).epsilon(1e-12));
  CHECK(std::abs(inner(G, G) - g2_oracle) < 1e-8);

  const ScalarField odd = ScalarField::from_function(g, [](double x, double) { return x * G1(x); });
  CHECK(std::abs(integrate(odd)) < 1e-15);

  CHECK_THROWS_AS(lp_norm(G, 0.5), InvalidArgument);

  const Grid g2(2, 12.0, 129);
  const ScalarField G2 = gaussian_profile(g2);
  CHECK(std::abs(integrate(G2) - 1.0) < 1e-8);
  CHECK(lp_norm(G2, kInfinity) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
  CHECK(std::abs(lp_norm(G2, 2.0) - std::pow(8.0 * pi, -0.5)) < 1e-8);
}

TEST_CASE("trapezoid is exact for piecewise-linear fields") {
  const Grid g(1, 12.0, 33);
  std::mt19937 rng(7);
  const ScalarField f = random_field(g, rng);
  // Exact integral of the piecewise-linear interpolant, segment by segment.
  double exact = 0.0;
  for (int i = 0; i + 1 < 33; ++i) exact += 0.5 * g.spacing() * (f[i] + f[i + 1]);
  CHECK(integrate(f) == doctest::Approx(exact).epsilon(1e-13));
  CHECK(lp_norm(abs(f), 1.0) == doctest::Approx(integrate(abs(f))).epsilon(1e-14));
}

TEST_CASE("weighted norms") {
  const Grid g(1, 12.0, 513);
  const WeightParams m1(1.0, 1);
  CHECK(weighted_l2_norm(ScalarField(g), m1) == 0.0);
  CHECK(h1m_norm(ScalarField(g), m1) == 0.0);

  const ScalarField G = gaussian_profile(g);
  const double second_moment =
      oracle::integrate_real_line([](double x) { return x * x * G1(x) * G1(x); });
  CHECK(second_moment == doctest::Approx(std::sqrt(2.0 * pi) / (4.0 * pi)).epsilon(1e-12));
  const double expected = std::sqrt(1.0 / std::sqrt(8.0 * pi) + second_moment);
  CHECK(std::abs(weighted_l2_norm(G, m1) - expected) < 1e-8);

  CHECK(weighted_l2_norm(-3.0 * G, m1) == doctest::Approx(3.0 * weighted_l2_norm(G, m1)).epsilon(1e-14));

  // H¹_1 norm of G: (∫(1+ξ²)(G² + G'²))^{1/2}. The discrete gradient carries
  // an O(h²) defect, so compare the error under refinement.
  const double grad_part = oracle::integrate_real_line([](double x) {
    const double d = -0.5 * x * G1(x);
    return (1.0 + x * x) * d * d;
  });
  const double h1_exact = std::sqrt(expected * expected + grad_part);
  const double e513 = std::abs(h1m_norm(G, m1) - h1_exact);
  const Grid fine(1, 12.0, 1025);
  const double e1025 = std::abs(h1m_norm(gaussian_profile(fine), m1) - h1_exact);
  CHECK(e513 < 1e-4 * h1_exact);
  CHECK(e513 / e1025 == doctest::Approx(4.0).epsilon(0.1));
  // With the exact derivative sampled on the grid the quadrature itself is at 1e-6.
  const ScalarField dG = ScalarField::from_function(g, [](double x, double) { return -0.5 * x * G1(x); });
  const double quad_only = std::sqrt(std::pow(weighted_l2_norm(G, m1), 2) + std::pow(weighted_l2_norm(dG, m1), 2));
  CHECK(std::abs(quad_only - h1_exact) < 1e-6);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField f = random_field(g, rng);
    CHECK(h1m_norm(f, m1) >= weighted_l2_norm(f, m1));
  }
}

TEST_CASE("L1 is controlled by the weighted L2 norm for m > N/2") {
  std::mt19937 rng(3);
  for (int dim : {1, 2}) {
    const Grid g(dim, 12.0, dim == 1 ? 257 : 65);
    const WeightParams w(0.5 * dim + 0.25, dim);
    // Cauchy-Schwarz constant (Σ w_k / (1 + |ξ_k|^{2m}))^{1/2}, independent of f.
    double c2 = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) c2 += g.quadrature_weight(k) / w.weight(g.radius_squared(k));
    const double c = std::sqrt(c2);
    for (int trial = 0; trial < 25; ++trial) {
      const ScalarField f = random_field(g, rng);
      CHECK(lp_norm(f, 1.0) <= c * weighted_l2_norm(f, w) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("apply_L") {
  const Grid g(1, 12.0, 513);
  const ScalarField G = gaussian_profile(g);
  CHECK(apply_L(G).sup_norm() / G.sup_norm() < 1e-3);
  CHECK(apply_L(ScalarField(g)).sup_norm() == 0.0);

  // ∂₁G is an eigenfunction with eigenvalue -1/2.
  const ScalarField dG = ScalarField::from_function(g, [](double x, double) { return -0.5 * x * G1(x); });
  ScalarField r = apply_L(dG);
  r.add_scaled(0.5, dG);
  CHECK(r.sup_norm() / dG.sup_norm() < 2e-3);

  const Grid g2(2, 12.0, 129);
  CHECK(apply_L(gaussian_profile(g2)).sup_norm() / gaussian_profile(g2).sup_norm() < 1e-2);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField f = random_field(g, rng);
    const ScalarField h = random_field(g, rng);
    const double a = 1.7, b = -0.3;
    ScalarField combo = a * f + b * h;
    ScalarField lhs = apply_L(combo);
    lhs -= a * apply_L(f) + b * apply_L(h);
    CHECK(lhs.sup_norm() < 1e-9 * apply_L(f).sup_norm());
  }
}

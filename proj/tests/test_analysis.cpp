#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "willmore/analysis.hpp"
#include "willmore/minimize.hpp"

using namespace willmore;

static const double pi = std::acos(-1.0);

TEST_CASE("bump function: compact support and finite-difference consistency") {
  const BumpFunction f{0.2, -0.1, 0.5};
  CHECK(f.value(0.2 + 0.51, -0.1) == 0.0);
  CHECK(f.value(0.2, -0.1) == 1.0);

  const double h = 1e-5;
  for (double x : {0.0, 0.3, 0.55}) {
    for (double y : {-0.3, 0.0, 0.2}) {
      const auto j = f.jet(x, y);
      const double fx_fd = (f.value(x + h, y) - f.value(x - h, y)) / (2 * h);
      const double fy_fd = (f.value(x, y + h) - f.value(x, y - h)) / (2 * h);
      const double fxx_fd =
          (f.value(x + h, y) - 2 * f.value(x, y) + f.value(x - h, y)) / (h * h);
      CHECK(std::abs(j.fx - fx_fd) < 1e-8);
      CHECK(std::abs(j.fy - fy_fd) < 1e-8);
      CHECK(std::abs(j.fxx - fxx_fd) < 1e-4);
    }
  }
}

TEST_CASE("covariant hessian: flat chart, f = x^2 gives diag(2, 0)") {
  const AnalyticImmersion imm = plane();
  const Chart c = imm.make_chart(65);
  const GeometryBundle b = evaluate_bundle(imm, c);
  const ChartScalar f = sample_scalar(c, [](double x, double) { return x * x; });
  const HessianField h = covariant_hessian(f, b);
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      if (!c.interior(i, j)) continue;
      CHECK(std::abs(h.h11.at(i, j) - 2.0) < 1e-11);
      CHECK(std::abs(h.h12.at(i, j)) < 1e-11);
      CHECK(std::abs(h.h22.at(i, j)) < 1e-11);
    }
}

TEST_CASE("covariant hessian trace is the Laplace-Beltrami operator") {
  const AnalyticImmersion imm = sphere_stereo(1.0);
  const Chart c = imm.make_chart(129);
  const GeometryBundle b = evaluate_bundle(imm, c);
  const ChartScalar f =
      sample_scalar(c, [](double x, double y) { return std::sin(x) * std::cos(y); });
  const HessianField h = covariant_hessian(f, b);
  const ChartScalar lap = laplacian_conformal(f, b.lambda);
  double worst = 0;
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      if (!c.interior(i, j)) continue;
      const double tr = h.h11.at(i, j) + h.h22.at(i, j);
      worst = std::max(worst,
                       std::abs(tr - std::exp(2 * b.lambda.at(i, j)) * lap.at(i, j)));
    }
  CHECK(worst < 1e-7);
}

TEST_CASE("covariant hessian norm self-converges on the sphere chart") {
  const AnalyticImmersion imm = sphere_stereo(1.0);
  auto hess_norm = [&](int n) {
    const Chart c = imm.make_chart(n);
    const GeometryBundle b = evaluate_bundle(imm, c);
    const ChartScalar f =
        sample_scalar(c, [](double x, double y) { return std::sin(x + 0.3 * y); });
    const HessianField h = covariant_hessian(f, b);
    ChartScalar n2(c);
    for (int k = 0; k < c.size(); ++k) {
      const double e4 = std::exp(4 * b.lambda.v[k]);
      n2.v[k] = (h.h11.v[k] * h.h11.v[k] + 2 * h.h12.v[k] * h.h12.v[k] +
                 h.h22.v[k] * h.h22.v[k]) /
                e4;
    }
    // fixed interior rectangle so the two resolutions integrate the
    // same region
    return integrate(n2, b.lambda, Region::rectangle(-0.8, 0.8, -0.8, 0.8));
  };
  const double coarse = hess_norm(97);
  const double fine = hess_norm(389);
  CHECK(std::abs(coarse - fine) < 1e-4 * std::abs(fine));
}

TEST_CASE("flat-plane Bochner identity is exact") {
  const AnalyticImmersion imm = plane();
  const Chart c = imm.make_chart(513);
  const GeometryBundle b = evaluate_bundle(imm, c);
  const AmbientMetric g = euclidean_metric();
  const BumpFunction f{0.1, -0.05, 0.6};
  const BochnerResult r = bochner_check(f, b, g);
  CHECK(r.lhs > 0);
  CHECK(r.defect < 1e-8);
}

TEST_CASE("Bochner defect refines at second order on sphere and torus charts") {
  const AmbientMetric g = euclidean_metric();
  std::mt19937_64 rng(314);
  for (const AnalyticImmersion& imm : {sphere_stereo(1.0), willmore_torus()}) {
    for (int trial = 0; trial < 5; ++trial) {
      const double span = imm.natural_extent;
      std::uniform_real_distribution<double> cpos(-0.25 * span, 0.25 * span);
      std::uniform_real_distribution<double> crad(0.3 * span, 0.5 * span);
      const BumpFunction f{cpos(rng), cpos(rng), crad(rng)};
      const Chart cc = imm.make_chart(129);
      const Chart cf = imm.make_chart(257);
      const double dc = bochner_check(f, evaluate_bundle(imm, cc), g).defect;
      const double df = bochner_check(f, evaluate_bundle(imm, cf), g).defect;
      const double order = observed_order(dc, df, cc.hx(), cf.hx());
      INFO(imm.name << " trial " << trial << " coarse " << dc << " fine " << df);
      CHECK(order >= 2.0);
    }
  }
}

TEST_CASE("Bochner sides are quadratically homogeneous in the bump") {
  const AnalyticImmersion imm = sphere_stereo(1.0);
  const Chart c = imm.make_chart(129);
  const GeometryBundle b = evaluate_bundle(imm, c);
  const AmbientMetric g = euclidean_metric();
  BumpFunction f{0.1, 0.0, 0.5};
  const BochnerResult r1 = bochner_check(f, b, g);
  f.amp = 2.0;
  const BochnerResult r2 = bochner_check(f, b, g);
  CHECK(std::abs(r2.lhs - 4 * r1.lhs) < 1e-10 * r2.lhs);
  CHECK(std::abs(r2.rhs - 4 * r1.rhs) < 1e-10 * std::abs(r2.rhs));
}

TEST_CASE("bump support must stay inside the chart") {
  const AnalyticImmersion imm = plane();
  const Chart c = imm.make_chart(65);
  const GeometryBundle b = evaluate_bundle(imm, c);
  const AmbientMetric g = euclidean_metric();
  const BumpFunction f{0.8, 0.0, 0.5};  // pokes past the margin
  CHECK_THROWS(bochner_check(f, b, g));
  CHECK_THROWS(stability_check(f, b, 0.0, g));
}

TEST_CASE("stability on the unit-sphere chart: the integrand cancels exactly") {
  const AnalyticImmersion imm = sphere_stereo(1.0);
  const Chart c = imm.make_chart(129);
  const GeometryBundle b = evaluate_bundle(imm, c);
  const AmbientMetric g = euclidean_metric();
  const BumpFunction f{0.0, 0.1, 0.6};
  const StabilityResult r = stability_check(f, b, 0.0, g);
  CHECK(std::abs(r.lhs) < 1e-8);
  CHECK(r.rhs > 0);
  CHECK(r.margin > 0);
  CHECK(r.h_positive_on_support);
  CHECK(r.min_lambda_plus_half_scal == 0.0);  // flat ambient, lambda = 0
}

TEST_CASE("stability margin depends on the surface only through the support") {
  const AnalyticImmersion imm = sphere_stereo(1.0);
  const Chart c = imm.make_chart(97);
  GeometryBundle b = evaluate_bundle(imm, c);
  const AmbientMetric g = euclidean_metric();
  const BumpFunction f{0.0, 0.0, 0.4};
  const StabilityResult r1 = stability_check(f, b, 0.3, g);
  // vandalize the curvature fields outside the support disk
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      const double dx = c.x(i), dy = c.y(j);
      if (dx * dx + dy * dy > 0.45 * 0.45) {
        b.A0sq.at(i, j) = 1e6;
        b.H_tr.at(i, j) = -1e6;
        b.K.at(i, j) = 1e6;
      }
    }
  const StabilityResult r2 = stability_check(f, b, 0.3, g);
  CHECK(r1.margin == r2.margin);
}

TEST_CASE("stability on the round sphere shape (trivial multiplier)") {
  const AmbientMetric g = euclidean_metric();
  const RadialShape s = RadialShape::sphere({0, 0, 0}, 1.0, 2, 48, 96);
  const StabilityResult r = stability_check(s, {0, 0, 1.0}, 0.8, 0.0, g);
  CHECK(std::abs(r.lhs) < 1e-10);
  CHECK(r.rhs > 0);
  CHECK(r.margin >= -1e-4);
  CHECK(r.h_positive_on_support);
}

TEST_CASE("stability holds on a converged flat minimizer with the fitted multiplier") {
  const AmbientMetric g = euclidean_metric();
  RadialShape s0 = RadialShape::sphere({0, 0, 0}, 1.0, 3, 48, 96);
  s0.coeff(2, 0) = 0.08;
  MinimizeOptions opts;
  opts.step0 = 0.1;
  const MinimizeResult res = minimize_shape(s0, 4 * pi, g, opts);
  REQUIRE(res.trace.termination == "gradient_tolerance");
  const GradientPair grad = shape_gradient(res.shape, g);
  const double lam = lagrange_estimate(grad);

  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> ang(0.0, pi);
  std::uniform_real_distribution<double> rad(0.3, 0.8);
  for (int trial = 0; trial < 5; ++trial) {
    const double th = 0.2 + 0.6 * ang(rng), ph = 2 * ang(rng);
    const Vec3 p = shape_jet(res.shape, th, ph).F;
    const StabilityResult r = stability_check(res.shape, p, rad(rng), lam, g);
    INFO("trial " << trial << " margin " << r.margin);
    CHECK(r.margin >= -1e-4);
    CHECK(r.h_positive_on_support);
  }
}

TEST_CASE("zero bump gives zero on both sides") {
  const AmbientMetric g = euclidean_metric();
  const RadialShape s = RadialShape::sphere({0, 0, 0}, 1.0, 2, 32, 64);
  // support disjoint from the surface
  const StabilityResult r = stability_check(s, {0, 0, 5.0}, 0.5, 0.2, g);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.margin == 0.0);
}

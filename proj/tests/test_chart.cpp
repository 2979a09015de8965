#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "willmore/chart.hpp"
#include "willmore/geometry.hpp"
#include "willmore/surfaces.hpp"

using namespace willmore;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("derivative is exact on cubics") {
  Chart c = Chart::square(33, 1.0);
  ChartScalar f = sample_scalar(c, [](double x, double) { return x * x * x; });
  ChartScalar fx = derivative(f, Axis::X);
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      if (!c.interior(i, j, 2)) continue;
      CHECK(fx.at(i, j) == doctest::Approx(3.0 * c.x(i) * c.x(i)).epsilon(1e-12));
    }
}

TEST_CASE("derivative of a constant is zero") {
  Chart c = Chart::square(33, 1.0);
  ChartScalar f = sample_scalar(c, [](double, double) { return 7.25; });
  ChartScalar fx = derivative(f, Axis::X);
  CHECK(interior_norms(fx, 2).max == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("derivative converges at 4th order for sin(x)") {
  auto err = [](int n) {
    Chart c = Chart::square(n, 1.0);
    ChartScalar f = sample_scalar(c, [](double x, double) { return std::sin(x); });
    ChartScalar fx = derivative(f, Axis::X);
    ChartScalar ref = sample_scalar(c, [](double x, double) { return std::cos(x); });
    return interior_norms(sub(fx, ref), 2).max;
  };
  const double ratio = err(65) / err(129);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.10));
}

TEST_CASE("div(grad_perp) vanishes to round-off") {
  // the x and y stencils commute on the lattice, so div(grad_perp f) is
  // exactly zero in exact arithmetic; only round-off survives
  for (int n : {65, 129}) {
    Chart c = Chart::square(n, 1.0);
    ChartScalar f =
        sample_scalar(c, [](double x, double y) { return std::exp(x) * std::cos(y); });
    CHECK(interior_norms(divergence(grad_perp(f)), 6).max < 1e-11);
  }
}

TEST_CASE("grad_perp of a constant vanishes") {
  Chart c = Chart::square(17, 1.0);
  ChartScalar f = sample_scalar(c, [](double, double) { return 3.0; });
  CHECK(interior_norms(grad_perp(f), 2).max == doctest::Approx(0.0));
}

TEST_CASE("laplacian_flat exact on quadratics") {
  Chart c = Chart::square(17, 1.0);
  ChartScalar f = sample_scalar(c, [](double x, double y) { return x * x + y * y; });
  ChartScalar lf = laplacian_flat(f);
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      if (!c.interior(i, j, 4)) continue;
      CHECK(lf.at(i, j) == doctest::Approx(4.0).epsilon(1e-11));
    }
}

TEST_CASE("laplacian_conformal with zero lambda equals flat laplacian") {
  Chart c = Chart::square(17, 1.0);
  ChartScalar f = sample_scalar(c, [](double x, double y) { return std::sin(x + 2 * y); });
  ChartScalar zero = sample_scalar(c, [](double, double) { return 0.0; });
  ChartScalar a = laplacian_conformal(f, zero);
  ChartScalar b = laplacian_flat(f);
  CHECK(interior_norms(sub(a, b), 4).max == doctest::Approx(0.0));
}

TEST_CASE("laplacian_conformal of a constant vanishes on the sphere chart") {
  AnalyticImmersion imm = sphere_stereo(1.0);
  Chart c = imm.make_chart(65);
  ChartScalar lam = sample_lambda(imm, c);
  ChartScalar f = sample_scalar(c, [](double, double) { return -1.0; });
  CHECK(interior_norms(laplacian_conformal(f, lam), 6).max == doctest::Approx(0.0));
}

TEST_CASE("operators are linear to round-off") {
  Chart c = Chart::square(33, 1.0);
  ChartScalar f = sample_scalar(c, [](double x, double y) { return std::sin(3 * x) * y; });
  ChartScalar g = sample_scalar(c, [](double x, double y) { return std::cos(x - y); });
  ChartScalar lhs = derivative(add(scaled(f, 2.5), g), Axis::Y);
  ChartScalar rhs = add(scaled(derivative(f, Axis::Y), 2.5), derivative(g, Axis::Y));
  CHECK(interior_norms(sub(lhs, rhs), 2).max < 1e-13);
}

TEST_CASE("mixed-chart operations are rejected") {
  Chart a = Chart::square(17, 1.0), b = Chart::square(33, 1.0);
  ChartScalar fa(a), fb(b);
  CHECK_THROWS_AS(add(fa, fb), chart_error);
  CHECK_THROWS_AS(dot(grad(fa), grad(fb)), chart_error);
}

TEST_CASE("chart construction validates its arguments") {
  CHECK_THROWS_AS(Chart::square(8, 1.0), chart_error);   // even n
  CHECK_THROWS_AS(Chart::square(7, 1.0), chart_error);   // too small
  CHECK_THROWS_AS(Chart::square(17, -1.0), chart_error); // bad extent
  CHECK_THROWS_AS(Chart::square(17, 1.0, 1), chart_error);
}

TEST_CASE("wedge conventions") {
  Vec3 e1{1, 0, 0}, e2{0, 1, 0};
  Vec3 n = wedge(e1, e2);
  CHECK(n.x == 0.0);
  CHECK(n.y == 0.0);
  CHECK(n.z == 1.0);
  Vec3 u{0.3, -1.2, 0.7};
  CHECK(norm(wedge(u, u)) == doctest::Approx(0.0));
}

TEST_CASE("1D panel integration is 4th order on partial intervals") {
  auto err = [](int n) {
    const double h = 1.0 / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::sin(3.0 * i * h);
    // integral over [0.3, 0.85] in physical units
    const double a = 0.3 / h, b = 0.85 / h;
    const double exact = (std::cos(0.9) - std::cos(2.55)) / 3.0;
    return std::abs(integrate_1d_samples(f, h, a, b) - exact);
  };
  CHECK(err(129) < 1e-8);
  CHECK(err(65) / err(129) > 10.0);
}

TEST_CASE("integrate: constant over the unit square") {
  Chart c = Chart::square(65, 1.0);
  ChartScalar one = sample_scalar(c, [](double, double) { return 1.0; });
  ChartScalar zero = sample_scalar(c, [](double, double) { return 0.0; });
  const double v = integrate(one, zero, Region::rectangle(-0.5, 0.5, -0.5, 0.5));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate: full-domain constant is exact") {
  Chart c = Chart::square(33, 1.5);
  ChartScalar one = sample_scalar(c, [](double, double) { return 2.0; });
  CHECK(integrate(one, Region::full()) == doctest::Approx(2.0 * 9.0).epsilon(1e-13));
  Chart p = Chart::periodic_both(32 + 1, kPi);
  ChartScalar onep = sample_scalar(p, [](double, double) { return 1.0; });
  CHECK(integrate(onep, Region::full()) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("integrate: hemisphere area on the unit-sphere chart") {
  AnalyticImmersion imm = sphere_stereo(1.0);
  Chart c = imm.make_chart(257);
  ChartScalar lam = sample_lambda(imm, c);
  ChartScalar one = sample_scalar(c, [](double, double) { return 1.0; });
  const double area = integrate(one, lam, Region::disk(0.0, 0.0, 1.0));
  CHECK(std::abs(area - 2.0 * kPi) / (2.0 * kPi) < 1e-6);
}

TEST_CASE("integrate: half the sphere's Willmore energy over the unit disk") {
  AnalyticImmersion imm = sphere_stereo(1.0);
  Chart c = imm.make_chart(257);
  ChartScalar lam = sample_lambda(imm, c);
  // H_tr = 2 on the unit sphere, so H_tr^2/2 = 2
  ChartScalar f = sample_scalar(c, [](double, double) { return 2.0; });
  const double w = integrate(f, lam, Region::disk(0.0, 0.0, 1.0));
  CHECK(std::abs(w - 4.0 * kPi) / (4.0 * kPi) < 1e-6);
}

TEST_CASE("integrate rejects regions outside the chart") {
  Chart c = Chart::square(33, 1.0);
  ChartScalar f(c);
  CHECK_THROWS_AS(integrate(f, Region::rectangle(-2.0, 0.5, 0.0, 0.5)), chart_error);
  CHECK_THROWS_AS(integrate(f, Region::disk(0.9, 0.0, 0.5)), chart_error);
}

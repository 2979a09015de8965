#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "willmore/minimize.hpp"

using namespace willmore;

static const double pi = std::acos(-1.0);

TEST_CASE("parameter vector round trip") {
  RadialShape s = RadialShape::sphere({0.1, -0.2, 0.3}, 1.7, 3);
  s.coeff(2, 1) = 0.05;
  const std::vector<double> p = shape_params(s);
  CHECK((int)p.size() == sh_count(3) + 4);
  const RadialShape t = shape_from_params(s, p);
  CHECK(t.R == s.R);
  CHECK(t.center.z == s.center.z);
  CHECK(t.coeff(2, 1) == s.coeff(2, 1));
  std::vector<double> bad(p.begin(), p.end() - 1);
  CHECK_THROWS(shape_from_params(s, bad));
}

TEST_CASE("round sphere gradients: dA/dR = 8 pi R, dW = 0") {
  const AmbientMetric g = euclidean_metric();
  const RadialShape s = RadialShape::sphere({0, 0, 0}, 1.3, 4, 48, 96);
  const GradientPair grad = shape_gradient(s, g);
  const int nc = sh_count(s.L);
  CHECK(std::abs(grad.A[nc + 3] - 8 * pi * 1.3) < 1e-6);
  // W is translation and coefficient critical at the round sphere
  double wn = 0;
  for (double v : grad.W) wn += v * v;
  CHECK(std::sqrt(wn) < 1e-5);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(grad.A[nc + k]) < 1e-6);
}

TEST_CASE("center gradient of W matches the translation first variation") {
  const AmbientMetric g = normal_form_metric(Riemann3::constant_curvature(1.0));
  RadialShape s = RadialShape::sphere({0.05, 0.02, -0.03}, 0.06, 2, 48, 96);
  s.coeff(2, 0) = 0.01;
  const GradientPair grad = shape_gradient(s, g);
  const int nc = sh_count(s.L);
  const Vec3 dirs[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int k = 0; k < 3; ++k) {
    const double fv = first_variation(s, g, constant_field(dirs[k]));
    CHECK(std::abs(grad.W[nc + k] - fv) <
          1e-3 * std::max(std::abs(fv), 1e-6));
  }
}

TEST_CASE("restore_area hits the target exactly") {
  const AmbientMetric flat = euclidean_metric();
  RadialShape s = RadialShape::sphere({0, 0, 0}, 1.0, 2, 32, 64);
  s.coeff(2, 0) = 0.07;
  const double a = 4 * pi * 1.21;
  const RadialShape r = restore_area(s, a, flat);
  CHECK(std::abs(area(r, flat) - a) < 1e-10 * a);

  const AmbientMetric g = normal_form_metric(Riemann3::constant_curvature(1.0));
  RadialShape c = RadialShape::sphere({0.01, 0, 0.02}, 0.05, 2, 32, 64);
  c.coeff(2, 0) = 0.02;
  const double ac = 4 * pi * 0.05 * 0.05 * 0.9;
  const RadialShape rc = restore_area(c, ac, g);
  CHECK(std::abs(area(rc, g) - ac) < 1e-10 * ac);
  CHECK_THROWS(restore_area(s, -1.0, flat));
}

TEST_CASE("flat constrained descent returns to the round sphere") {
  const AmbientMetric g = euclidean_metric();
  RadialShape s0 = RadialShape::sphere({0, 0, 0}, 1.0, 4, 48, 96);
  s0.coeff(2, 0) = 0.1;  // 10% quadrupole perturbation
  const double a = 4 * pi;

  MinimizeOptions opts;
  opts.step0 = 0.1;
  const MinimizeResult res = minimize_shape(s0, a, g, opts);

  CHECK(res.trace.termination == "gradient_tolerance");
  const EnergyArea ea = energy_area(res.shape, g);
  CHECK(ea.W <= 8 * pi + 1e-3);
  CHECK(res.shape.max_coeff() < 1e-2);
  // area held at every accepted iterate
  for (const auto& e : res.trace.entries) CHECK(std::abs(e.A - a) < 1e-8 * a);
  // energy never dipped below the global lower bound
  for (const auto& e : res.trace.entries) CHECK(e.W >= 8 * pi - 1e-6);
  // constrained stationarity
  const GradientPair grad = shape_gradient(res.shape, g);
  const double lambda = lagrange_estimate(grad);
  CHECK(kkt_residual(grad, lambda) < 5e-4);
}

TEST_CASE("exact sphere terminates immediately at the gradient tolerance") {
  const AmbientMetric g = euclidean_metric();
  const RadialShape s = RadialShape::sphere({0, 0, 0}, 1.0, 4, 48, 96);
  const MinimizeResult res = minimize_shape(s, 4 * pi, g);
  CHECK(res.trace.termination == "gradient_tolerance");
  CHECK(res.trace.entries.size() == 1);
}

TEST_CASE("scalar-curvature well attracts the constrained minimizer") {
  const Vec3 q{0, 0, 0};
  const AmbientMetric g = conformal_metric(0.05, q, 1.0);
  const double a = 4 * pi * 0.81;

  MinimizeOptions opts;
  opts.max_iter = 18;
  opts.grad_tol = 5e-4;

  const Vec3 starts[3] = {{0.3, 0, 0}, {0, 0.25, -0.1}, {-0.2, -0.2, 0.15}};
  for (const Vec3& c0 : starts) {
    const RadialShape s0 = RadialShape::sphere(c0, 0.9, 2, 24, 48);
    const MinimizeResult res = minimize_shape(s0, a, g, opts);
    const double d0 = norm(c0 - q);
    const double d1 = norm(res.shape.center - q);
    CHECK(d1 < d0 - 1e-3);  // strictly closer to the curvature maximum
    // attraction from the first accepted step onward
    const Vec3 step = res.shape.center - c0;
    CHECK(dot(step, q - c0) > 0);
    for (const auto& e : res.trace.entries)
      CHECK(std::abs(e.A - a) < 1e-8 * a);
  }
}

TEST_CASE("estimate report vanishes on the round sphere") {
  const AmbientMetric g = euclidean_metric();
  const RadialShape s = RadialShape::sphere({0, 0, 0}, 1.4, 4, 48, 96);
  const EstimateReport rep = estimate_report(s, g);
  CHECK(std::abs(rep.R_eff - 1.4) < 1e-10);
  CHECK(rep.grad2H_integral < 1e-6);
  CHECK(rep.A0_l2 < 1e-6);
  CHECK(rep.H_dev_inf < 1e-8);
  CHECK(rep.C_corollary < 1e-8);
  CHECK(rep.H_positive);
}

TEST_CASE("estimate report on a perturbed sphere is finite and positive-signed") {
  const AmbientMetric g = euclidean_metric();
  RadialShape s = RadialShape::sphere({0, 0, 0}, 1.0, 4, 48, 96);
  s.coeff(2, 0) = 0.05;
  s.coeff(3, 1) = 0.02;
  const EstimateReport rep = estimate_report(s, g);
  CHECK(rep.grad2H_integral > 0);
  CHECK(std::isfinite(rep.grad2H_integral));
  CHECK(rep.A0_l2 > 0);
  CHECK(rep.H_dev_inf > 0);
  CHECK(rep.H_positive);
  CHECK(rep.C_corollary == rep.H_dev_inf / std::sqrt(energy_area(s, g).A));
}

#include "willmore/surfaces.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;

ImmersionJet from_jets(const Jet2& X, const Jet2& Y, const Jet2& Z) {
  ImmersionJet j;
  j.p = {X.v, Y.v, Z.v};
  j.px = {X.dx, Y.dx, Z.dx};
  j.py = {X.dy, Y.dy, Z.dy};
  j.pxx = {X.dxx, Y.dxx, Z.dxx};
  j.pxy = {X.dxy, Y.dxy, Z.dxy};
  j.pyy = {X.dyy, Y.dyy, Z.dyy};
  return j;
}

}  // namespace

AnalyticImmersion plane() {
  AnalyticImmersion imm;
  imm.name = "plane";
  imm.natural_extent = 1.0;
  imm.eval = [](double x, double y) {
    ImmersionJet j;
    j.p = {x, y, 0};
    j.px = {1, 0, 0};
    j.py = {0, 1, 0};
    return j;
  };
  imm.lambda = [](double, double) { return 0.0; };
  return imm;
}

AnalyticImmersion sphere_stereo(double radius) {
  if (radius <= 0) throw std::invalid_argument("sphere_stereo: radius must be positive");
  AnalyticImmersion imm;
  imm.name = "sphere";
  imm.natural_extent = 1.25;
  imm.eval = [radius](double x0, double y0) {
    const Jet2 x = Jet2::var_x(x0), y = Jet2::var_y(y0);
    const Jet2 d = 1.0 + x * x + y * y;
    return from_jets(radius * (2.0 * x / d), radius * (2.0 * y / d),
                     radius * ((x * x + y * y - 1.0) / d));
  };
  imm.lambda = [radius](double x, double y) {
    return std::log(2.0 * radius / (1.0 + x * x + y * y));
  };
  return imm;
}

AnalyticImmersion cylinder() {
  AnalyticImmersion imm;
  imm.name = "cylinder";
  imm.periodic_x = true;
  imm.natural_extent = kPi;
  imm.eval = [](double x, double y) {
    ImmersionJet j;
    j.p = {std::cos(x), std::sin(x), y};
    j.px = {-std::sin(x), std::cos(x), 0};
    j.py = {0, 0, 1};
    j.pxx = {-std::cos(x), -std::sin(x), 0};
    return j;
  };
  imm.lambda = [](double, double) { return 0.0; };
  return imm;
}

AnalyticImmersion catenoid() {
  AnalyticImmersion imm;
  imm.name = "catenoid";
  imm.periodic_x = true;
  imm.natural_extent = kPi;
  imm.eval = [](double x0, double y0) {
    const Jet2 x = Jet2::var_x(x0), y = Jet2::var_y(y0);
    return from_jets(cosh(y) * cos(x), cosh(y) * sin(x), y);
  };
  imm.lambda = [](double, double y) { return std::log(std::cosh(y)); };
  return imm;
}

namespace {

const double kSqrt2 = std::sqrt(2.0);

// u_tilde(u) = 2 atan((sqrt2 - 1) tan(u/2)) on (-pi, pi), extended by
// u_tilde(+-pi) = +-pi; strictly increasing with
// du_tilde/du = 1/(sqrt2 + cos u).
double torus_forward(double u) {
  if (u >= kPi) return kPi;
  if (u <= -kPi) return -kPi;
  return 2.0 * std::atan((kSqrt2 - 1.0) * std::tan(0.5 * u));
}

}  // namespace

double torus_angle_from_conformal(double u_tilde) {
  // bracketed Newton; derivative bounded below by 1/(sqrt2 + 1)
  double lo = -kPi, hi = kPi;
  double u = u_tilde;
  for (int it = 0; it < 100; ++it) {
    const double f = torus_forward(u) - u_tilde;
    if (f > 0)
      hi = u;
    else
      lo = u;
    const double fp = 1.0 / (kSqrt2 + std::cos(u));
    double next = u - f / fp;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < 1e-14) return next;
    u = next;
  }
  return u;
}

AnalyticImmersion willmore_torus() {
  AnalyticImmersion imm;
  imm.name = "torus";
  imm.periodic_x = true;
  imm.periodic_y = true;
  imm.natural_extent = kPi;
  imm.eval = [](double ut, double v0) {
    const double u0 = torus_angle_from_conformal(ut);
    const double a0 = kSqrt2 + std::cos(u0);
    // u as a jet in (u_tilde, v): du/du_tilde = sqrt2 + cos u,
    // d2u/du_tilde2 = -sin(u) * (sqrt2 + cos u)
    Jet2 u;
    u.v = u0;
    u.dx = a0;
    u.dxx = -std::sin(u0) * a0;
    const Jet2 v = Jet2::var_y(v0);
    const Jet2 a = kSqrt2 + cos(u);
    return from_jets(a * cos(v), a * sin(v), sin(u));
  };
  imm.lambda = [](double ut, double) {
    return std::log(kSqrt2 + std::cos(torus_angle_from_conformal(ut)));
  };
  return imm;
}

double conformality_defect(const AnalyticImmersion& imm, const Chart& chart) {
  double defect = 0.0;
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) {
      const auto jet = imm.eval(chart.x(i), chart.y(j));
      const double nx = norm(jet.px), ny = norm(jet.py);
      const double el = std::exp(imm.lambda(chart.x(i), chart.y(j)));
      defect = std::max(defect, std::abs(dot(jet.px, jet.py)));
      defect = std::max(defect, std::abs(nx - ny));
      defect = std::max(defect, std::abs(nx - el));
    }
  return defect;
}

ChartVec3 sample_position(const AnalyticImmersion& imm, const Chart& chart) {
  ChartVec3 out(chart);
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) out.at(i, j) = imm.eval(chart.x(i), chart.y(j)).p;
  return out;
}

ChartScalar sample_lambda(const AnalyticImmersion& imm, const Chart& chart) {
  ChartScalar out(chart);
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) out.at(i, j) = imm.lambda(chart.x(i), chart.y(j));
  return out;
}

ChartScalar sample_scalar(const Chart& chart, const std::function<double(double, double)>& f) {
  ChartScalar out(chart);
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) out.at(i, j) = f(chart.x(i), chart.y(j));
  return out;
}

ChartVec3 sample_vec3(const Chart& chart, const std::function<Vec3(double, double)>& f) {
  ChartVec3 out(chart);
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) out.at(i, j) = f(chart.x(i), chart.y(j));
  return out;
}

}  // namespace willmore

#pragma once

#include <functional>
#include <string>

#include "willmore/chart.hpp"
#include "willmore/jet2.hpp"
#include "willmore/vec3.hpp"

namespace willmore {

// Position and derivatives of an immersion at one chart point.
struct ImmersionJet {
  Vec3 p, px, py, pxx, pxy, pyy;
};

// A conformal parametrization with closed-form derivatives. The jet
// closure returns position plus first and second partials; lambda is the
// conformal factor, e^lambda = |Phi_x| = |Phi_y|.
struct AnalyticImmersion {
  std::string name;
  std::function<ImmersionJet(double, double)> eval;
  std::function<double(double, double)> lambda;
  bool periodic_x = false;
  bool periodic_y = false;
  double natural_extent = 1.0;

  Chart make_chart(int n, int margin = 6) const {
    if (periodic_x && periodic_y) return Chart::periodic_both(n, natural_extent);
    if (periodic_x) return Chart::periodic_in_x(n, natural_extent, margin);
    return Chart::square(n, natural_extent, margin);
  }
};

AnalyticImmersion plane();
AnalyticImmersion sphere_stereo(double radius);
AnalyticImmersion cylinder();
AnalyticImmersion catenoid();
// The sqrt(2) torus of revolution in its conformal parametrization; the
// angular coordinate substitution is inverted by bracketed Newton.
AnalyticImmersion willmore_torus();

// Largest of |<Phi_x,Phi_y>|, ||Phi_x|-|Phi_y|| and ||Phi_x|-e^lambda|
// over the chart nodes.
double conformality_defect(const AnalyticImmersion& imm, const Chart& chart);

// Sampling helpers.
ChartVec3 sample_position(const AnalyticImmersion& imm, const Chart& chart);
ChartScalar sample_lambda(const AnalyticImmersion& imm, const Chart& chart);
ChartScalar sample_scalar(const Chart& chart, const std::function<double(double, double)>& f);
ChartVec3 sample_vec3(const Chart& chart, const std::function<Vec3(double, double)>& f);

// Inversion of the torus angle substitution, exposed for tests.
double torus_angle_from_conformal(double u_tilde);

}  // namespace willmore

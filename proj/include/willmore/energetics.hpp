#pragma once

#include <functional>

#include "willmore/ambient.hpp"
#include "willmore/shape.hpp"

namespace willmore {

// Extrinsic geometry of a parametrized surface point in an ambient
// metric. H is the trace mean curvature (round radius-R sphere with
// outward normal: H = 2/R); the normal is g-unit and outward for
// radial graphs.
struct PointGeometry {
  Vec3 nu;
  double H = 0.0;
  double A2 = 0.0;    // |A|^2
  double A0sq = 0.0;  // |A|^2 - H^2/2
  double area_el = 0.0;  // sqrt(det induced metric)
  double gbar[2][2] = {};
  double gbar_inv[2][2] = {};
  double h[2][2] = {};
};

PointGeometry point_geometry(const SurfaceJet& j, const AmbientMetric& g,
                             const MetricJet& mj);
PointGeometry point_geometry(const SurfaceJet& j, const AmbientMetric& g);

struct EnergyArea {
  double W = 0.0;
  double A = 0.0;
  double A2_integral = 0.0;  // integral of |A|^2
};

EnergyArea energy_area(const QuadGrid& q, const AmbientMetric& g);
EnergyArea energy_area(const RadialShape& s, const AmbientMetric& g);
double willmore_energy(const RadialShape& s, const AmbientMetric& g);
double area(const RadialShape& s, const AmbientMetric& g);

// Smooth ambient vector field with closed-form derivatives.
//   dX[a][b]     = d_b X^a
//   d2X[c][a][b] = d_c d_b X^a
struct AmbientField {
  std::function<Vec3(const Vec3&)> X;
  std::function<Mat3(const Vec3&)> dX;
  std::function<std::array<Mat3, 3>(const Vec3&)> d2X;
};

AmbientField constant_field(const Vec3& v);
AmbientField position_field();

// delta_X W: the integral form with ambient second covariant
// derivatives of X; matches the central difference of W along F + tX.
double first_variation(const QuadGrid& q, const AmbientMetric& g, const AmbientField& X);
double first_variation(const RadialShape& s, const AmbientMetric& g, const AmbientField& X);

// Quadrature grid of F + t (X o F) with chain-ruled jets.
QuadGrid displace_grid(const QuadGrid& q, const AmbientField& X, double t);

}  // namespace willmore

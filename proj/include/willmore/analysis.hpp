#pragma once

#include "willmore/energetics.hpp"
#include "willmore/geometry.hpp"

namespace willmore {

// Compactly supported radial bump f = (1 - s)^4, s = |x - c|^2 / r^2,
// extended by zero: three continuous derivatives across the support
// circle, with closed-form partials.
struct BumpFunction {
  double cx = 0, cy = 0, r = 1;
  double amp = 1;  // overall amplitude, for homogeneity checks

  struct Jet {
    double f = 0, fx = 0, fy = 0, fxx = 0, fxy = 0, fyy = 0;
  };
  Jet jet(double x, double y) const;
  double value(double x, double y) const { return jet(x, y).f; }
  bool supported_inside(const Chart& chart) const;
};

// Hess_ij f = d_i d_j f - Gamma^k_ij d_k f with the Christoffels of the
// conformal metric e^{2 lambda} delta (built from 4th-order differences
// of lambda and f).
struct HessianField {
  ChartScalar h11, h12, h22;
};
HessianField covariant_hessian(const ChartScalar& f, const GeometryBundle& b);

// Integral identity for compactly supported f on the chart surface:
//   lhs = int |Hess f|^2 dmu
//   rhs = int (Lap_g f)^2 + |grad f|^2 (1/2 |A0|^2 - 1/4 H^2
//         - 1/2 Scal + Ric(nu, nu)) dmu
// with ambient curvature evaluated along the surface. f-derivatives are
// analytic, lambda-derivatives 4th-order differences.
struct BochnerResult {
  double lhs = 0, rhs = 0, defect = 0;
};
BochnerResult bochner_check(const BumpFunction& f, const GeometryBundle& b,
                            const AmbientMetric& g);

// Test-function inequality for area-constrained critical surfaces with
// positive mean curvature:
//   lhs = int f^2 (1/2 |A0|^2 + 1/4 H^2 + 1/2 Scal - 1/2 Scal_Sigma
//         + lambda) dmu  <=  rhs = int |grad f|^2 dmu.
// The multiplier hypothesis lambda >= -1/2 Scal is recorded pointwise
// (minimum over the support), not asserted.
struct StabilityResult {
  double lhs = 0, rhs = 0, margin = 0;
  bool h_positive_on_support = true;
  double min_lambda_plus_half_scal = 0;
};

// Chart overload: intrinsic curvature from the bundle (Scal_Sigma = 2K).
StabilityResult stability_check(const BumpFunction& f, const GeometryBundle& b,
                                double lambda, const AmbientMetric& g);

// Shape overload: ambient bump f = (1 - |x - p|^2 / r^2)^4 restricted to
// the surface; Scal_Sigma from the trace of the Gauss equation.
StabilityResult stability_check(const RadialShape& s, const Vec3& p, double r,
                                double lambda, const AmbientMetric& g);

}  // namespace willmore

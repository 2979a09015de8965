#pragma once

#include <string>

#include "willmore/energetics.hpp"

namespace willmore {

// Parameter vector layout for coefficient-space calculus:
// [a_00 ... a_LL, center.x, center.y, center.z, R].
std::vector<double> shape_params(const RadialShape& s);
RadialShape shape_from_params(const RadialShape& prototype, const std::vector<double>& p);

struct GradientPair {
  std::vector<double> W, A;  // same layout as shape_params
};

// Central finite differences per parameter; coefficient step 1e-5,
// center/radius step 1e-5 R.
GradientPair shape_gradient(const RadialShape& s, const AmbientMetric& g,
                            const ShapeSampler& sampler);
GradientPair shape_gradient(const RadialShape& s, const AmbientMetric& g);

// Least-squares multiplier <gW, gA> / <gA, gA>.
double lagrange_estimate(const GradientPair& grad);
double lagrange_estimate(const RadialShape& s, const AmbientMetric& g);

// KKT residual norm |gW - lambda gA|.
double kkt_residual(const GradientPair& grad, double lambda);

// Rescale the radius about the center so area = a (closed form in flat
// space, bisection otherwise); tolerance 1e-12 relative.
RadialShape restore_area(const RadialShape& s, double a, const AmbientMetric& g);

struct MinimizeOptions {
  int max_iter = 300;
  double grad_tol = 2e-4;
  double step0 = 0.05;
  int max_backtrack = 30;
};

struct TraceEntry {
  double W = 0, A = 0, lambda = 0, grad_norm = 0;
  Vec3 center;
};

struct DescentTrace {
  std::vector<TraceEntry> entries;
  std::string termination;
};

struct MinimizeResult {
  RadialShape shape;
  DescentTrace trace;
};

// Projected gradient descent on -(gW - lambda gA) with backtracking and
// exact area restoration after every step. In flat ambient every
// evaluated energy is checked against the 8 pi lower bound.
MinimizeResult minimize_shape(const RadialShape& s0, double a, const AmbientMetric& g,
                              const MinimizeOptions& opts = {});

struct EstimateReport {
  double grad2H_integral = 0;  // int |nabla^2 H|^2 + H^2 |nabla H|^2 + H^4 |A0|^2
  double A0_l2 = 0;            // L2 norm of the trace-free second fundamental form
  double H_dev_inf = 0;        // sup |H - 2/R_eff|, 4 pi R_eff^2 = |Sigma|
  double R_eff = 0;
  bool H_positive = false;
  double C_corollary = 0;  // realized constant H_dev_inf / |Sigma|^{1/2}
};

EstimateReport estimate_report(const RadialShape& s, const AmbientMetric& g);

}  // namespace willmore

#pragma once

#include <vector>

#include "willmore/energetics.hpp"

namespace willmore {

struct SweepEntry {
  double r = 0.0;
  double W = 0.0;
};

struct SweepResult {
  std::vector<SweepEntry> table;
  double c2 = 0.0;            // least-squares slope of W = 8 pi + c2 r^2
  double fit_residual = 0.0;  // rms misfit of the quadratic model
};

// Willmore energies of coordinate spheres about the origin (geodesic
// spheres by the Gauss lemma for euclidean/normal-form metrics).
// Throws for conformal metrics and for radii beyond the validity ball.
SweepResult sphere_energy_sweep(const AmbientMetric& g, const std::vector<double>& radii,
                                int ntheta = 64, int nphi = 128);

// Coordinate dilation x -> e^t x; exact on radial shapes.
RadialShape scaling_flow(const RadialShape& s, double t);

struct AreaAdjustment {
  double t0 = 0.0;
  RadialShape shape;
  double area_before = 0.0;
  double bound = 0.0;  // 2 | |Sigma| - a | / a
};

// Bisection in t so that area(e^t Sigma) = a to 1e-10 relative.
// Preconditions: |Sigma| in (a/2, 3a/2) and the flow stays inside the
// validity ball. The returned t0 always satisfies |t0| <= bound.
AreaAdjustment adjust_area(const RadialShape& s, double a, const AmbientMetric& g);

// Central difference in t of the total |A|^2 integral along the
// scaling flow, at t = 0. Zero in flat space by scale invariance.
double scaling_curvature_delta(const RadialShape& s, const AmbientMetric& g,
                               double dt = 1e-4);

// delta W / delta A along the scaling flow (the normal speed <x, nu>).
double estimate_lambda_scaling(const RadialShape& s, const AmbientMetric& g,
                               double dt = 1e-4);

struct SimonEntry {
  double r = 0.0;
  double area_r = 0.0;   // |Sigma intersect B_r|
  double W_r = 0.0;      // (1/2) int_{Sigma_r} H^2
  double flux_r = 0.0;   // int_{Sigma_r} H <x, nu>
  double slack = 0.0;    // r^{-2}|Sigma_r| + W_r/8 - flux_r/(2 r^2) - pi
  bool contained = false;     // Sigma subset B_r
  double area_bound_slack = 0.0;  // r^2 W - |Sigma| when contained
};

struct SimonReport {
  std::vector<SimonEntry> entries;
  double total_area = 0.0;
  double total_W = 0.0;
  double diameter = 0.0;
  double diameter_ratio = 0.0;  // diam / (|S|^{1/2} W^{1/2} + |S|)
};

// Flat-ambient Simon inequalities for an AXISYMMETRIC radial shape
// (m = 0 coefficients only), translated so the south pole sits at the
// origin; balls B_r are centered there. Integrals over Sigma_r use 1D
// quadrature in theta with the cut radius resolved by bisection, so the
// sphere equality case carries no masking error.
SimonReport simon_checks(const RadialShape& s, const std::vector<double>& radii);

}  // namespace willmore

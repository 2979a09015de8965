#pragma once

#include "willmore/geometry.hpp"

namespace willmore {

// 2K n + e^{-2 lambda} (grad n ^ grad_perp n); vanishes for every
// conformal immersion.
ChartVec3 gauss_wedge_residual(const GeometryBundle& b);

// grad n + n ^ grad_perp n + 2 H grad Phi (per slot).
ChartGrad3 help_wedge_residual(const GeometryBundle& b);

// T = H grad n - 2 grad H n - H (n ^ grad_perp n); divergence-free
// exactly when the Willmore equation holds.
ChartGrad3 conserved_field(const GeometryBundle& b);

struct ConservationResiduals {
  ChartVec3 div_T;
  // div T + 2 e^{2 lambda} (Delta_g H + 2H(H^2-K)) n; vanishes at
  // truncation order for EVERY conformal immersion, Willmore or not.
  ChartVec3 generalized;
};
ConservationResiduals conservation_residual(const GeometryBundle& b);

// Scalar potential P with grad P = G, by cumulative 4th-order line
// integration from the base node along axis-aligned paths (x-then-y and
// y-then-x). The reconstruction lives on the sub-grid with the given
// margin; the defect is the max cross-path disagreement and certifies
// that G was curl-free.
struct ScalarPotential {
  ChartScalar P;
  double path_defect = 0.0;
  int recon_margin = 0;
};
ScalarPotential reconstruct_gradient(const ChartGrad2& G, int base_i, int base_j,
                                     int recon_margin = 6);
// Potential of a rotated field: grad_perp P = F.
ScalarPotential reconstruct_potential(const ChartGrad2& F, int base_i, int base_j,
                                      int recon_margin = 6);

struct VectorPotential {
  ChartVec3 P;
  double path_defect = 0.0;
  int recon_margin = 0;
};
VectorPotential reconstruct_gradient(const ChartGrad3& G, int base_i, int base_j,
                                     int recon_margin = 6);
VectorPotential reconstruct_potential(const ChartGrad3& F, int base_i, int base_j,
                                      int recon_margin = 6);

// curl of a 2-slot field, d_x G_y - d_y G_x.
ChartScalar curl(const ChartGrad2& G);
ChartVec3 curl(const ChartGrad3& G);

struct PotentialSet {
  ChartGrad3 T;
  ChartVec3 L;
  ChartScalar S;
  ChartVec3 R;
  int base_i = 0, base_j = 0;
  int recon_margin = 0;
  double defect_L = 0.0;      // cross-path defect of the L reconstruction
  double defect_S = 0.0, defect_R = 0.0;
  InteriorNorms curl_GS, curl_GR;  // curl defects of the S/R generator fields
};

// Reconstructs L from T, then S and R from the generator fields
//   G_S = (L.Phi_x, L.Phi_y),  G_R = (Phi_s ^ L - 2 H Phi_s).
// Throws if the conservation residual exceeds the Willmore-quality
// threshold: a non-Willmore input makes the potentials path-dependent.
PotentialSet build_potentials(const GeometryBundle& b, double willmore_threshold,
                              int base_i = -1, int base_j = -1, int recon_margin = 6);

// 10x the measured max-norm of div T on the round unit sphere at the same
// resolution, evaluated with the stencil-derivative pipeline (the analytic
// pipeline has T = 0 there and would give a degenerate envelope). The
// default Willmore-quality threshold.
double willmore_quality_threshold(int n);

struct Cons2Residuals {
  InteriorNorms r_a;  // grad_perp L . grad Phi
  InteriorNorms r_b;  // grad Phi ^ grad_perp L - 2 grad_perp H . grad Phi
};
// Evaluated with grad_perp L = T (its defining property), so the check is
// independent of the reconstruction path.
Cons2Residuals cons2_residuals(const PotentialSet& set, const GeometryBundle& b);

struct RsResiduals {
  InteriorNorms rs1;  // grad_perp R - (grad S n + grad R ^ n)
  InteriorNorms rs2;  // Delta R - grad S . grad_perp n - grad R ^ grad_perp n
  int norm_margin = 0;
};
RsResiduals rs_residuals(const PotentialSet& set, const GeometryBundle& b);

}  // namespace willmore

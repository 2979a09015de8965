#pragma once

#include "willmore/chart.hpp"
#include "willmore/surfaces.hpp"

namespace willmore {

enum class DerivativeSource { Analytic, FiniteDifference };

// Full curvature data of a conformal immersion on a chart.
//
// Convention ledger: H_avg is half the trace of the second fundamental
// form (the convention of the conservation-law identities), H_tr = 2 H_avg
// is the sum of principal curvatures (the convention in which the round
// sphere has energy 8 pi). A0sq is |A0|^2 in the trace convention,
// (h11-h22)^2/2 + 2 h12^2.
struct GeometryBundle {
  Chart chart;
  ChartVec3 pos;
  ChartScalar lambda;
  ChartVec3 e1, e2, n;
  ChartGrad3 grad_phi;  // (Phi_x, Phi_y)
  ChartGrad3 grad_n;    // analytic or finite-difference per derivative_source
  ChartScalar h11, h12, h22;
  ChartScalar H_avg, H_tr, K, A0sq;
  double h12_symmetry_defect = 0.0;  // max |h12 - h21| over interior nodes
  DerivativeSource source = DerivativeSource::Analytic;
};

// lambda = log|Phi_x|, n = e1 ^ e2, h_ij = -e^{-lambda} <e_j, d_i n>.
// With DerivativeSource::FiniteDifference the normal derivatives (and so
// the curvatures) come from 4th-order chart stencils instead of the
// closed forms.
GeometryBundle evaluate_bundle(const AnalyticImmersion& imm, const Chart& chart,
                               DerivativeSource source = DerivativeSource::Analytic,
                               double conformality_threshold = 1e-8);

struct IdentityResiduals {
  InteriorNorms delta_phi;     // Delta Phi - 2 e^{2 lambda} H_avg n
  InteriorNorms mean_from_grads;  // H_avg + (e^{-2 lambda}/2) grad n . grad Phi
  InteriorNorms conformal_metric; // grad Phi . grad Phi - 2 e^{2 lambda}
  InteriorNorms wedge_phi;        // grad Phi ^ n - grad_perp Phi
};

IdentityResiduals identity_checks(const GeometryBundle& b);

// Delta_g H + 2 H (H^2 - K) with H = H_avg and Delta_g = e^{-2 lambda} Delta.
ChartScalar el_residual_flat(const GeometryBundle& b);

// log(coarse/fine) / log(h_coarse/h_fine): the observed convergence order.
double observed_order(double res_coarse, double res_fine, double h_coarse, double h_fine);

// Rotate the slots of a 2-slot field: (A_x, A_y) -> (-A_y, A_x), i.e.
// turn grad into grad_perp without re-differencing.
ChartGrad3 rotate_slots(const ChartGrad3& a);
ChartGrad2 rotate_slots(const ChartGrad2& a);

// Per-slot v ^ a_s (left factor fixed), for expressions like n ^ grad_perp n.
ChartGrad3 wedge_vec_slots(const ChartVec3& v, const ChartGrad3& a);

}  // namespace willmore

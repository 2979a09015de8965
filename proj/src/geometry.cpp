#include "willmore/geometry.hpp"

#include <cmath>

namespace willmore {

GeometryBundle evaluate_bundle(const AnalyticImmersion& imm, const Chart& chart,
                               DerivativeSource source, double conformality_threshold) {
  const double defect = conformality_defect(imm, chart);
  if (defect > conformality_threshold)
    throw chart_error("evaluate_bundle: conformality defect " + std::to_string(defect) +
                      " exceeds threshold (non-conformal input?)");

  GeometryBundle b;
  b.chart = chart;
  b.source = source;
  b.pos = ChartVec3(chart);
  b.lambda = ChartScalar(chart);
  b.e1 = ChartVec3(chart);
  b.e2 = ChartVec3(chart);
  b.n = ChartVec3(chart);
  b.grad_phi = ChartGrad3(chart);
  b.grad_n = ChartGrad3(chart);
  b.h11 = ChartScalar(chart);
  b.h12 = ChartScalar(chart);
  b.h22 = ChartScalar(chart);
  b.H_avg = ChartScalar(chart);
  b.H_tr = ChartScalar(chart);
  b.K = ChartScalar(chart);
  b.A0sq = ChartScalar(chart);

  // frame, normal and (analytic) first derivatives
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) {
      const auto jet = imm.eval(chart.x(i), chart.y(j));
      const int k = chart.idx(i, j);
      const double el = norm(jet.px);
      if (el < 1e-12) throw chart_error("evaluate_bundle: degenerate immersion, |Phi_x| ~ 0");
      b.pos.v[k] = jet.p;
      b.lambda.v[k] = std::log(el);
      b.e1.v[k] = jet.px / el;
      b.e2.v[k] = jet.py / el;
      b.n.v[k] = wedge(b.e1.v[k], b.e2.v[k]);
      b.grad_phi.sx[k] = jet.px;
      b.grad_phi.sy[k] = jet.py;
      if (source == DerivativeSource::Analytic) {
        // n = w/|w| with w = Phi_x ^ Phi_y
        const Vec3 w = wedge(jet.px, jet.py);
        const Vec3 wx = wedge(jet.pxx, jet.py) + wedge(jet.px, jet.pxy);
        const Vec3 wy = wedge(jet.pxy, jet.py) + wedge(jet.px, jet.pyy);
        const double wn = norm(w);
        const Vec3 nv = w / wn;
        b.grad_n.sx[k] = (wx - nv * dot(nv, wx)) / wn;
        b.grad_n.sy[k] = (wy - nv * dot(nv, wy)) / wn;
      }
    }

  if (source == DerivativeSource::FiniteDifference) b.grad_n = grad(b.n);

  for (int k = 0; k < chart.size(); ++k) {
    const double eml = std::exp(-b.lambda.v[k]);
    b.h11.v[k] = -eml * dot(b.e1.v[k], b.grad_n.sx[k]);
    b.h22.v[k] = -eml * dot(b.e2.v[k], b.grad_n.sy[k]);
    const double h12a = -eml * dot(b.e2.v[k], b.grad_n.sx[k]);
    const double h12b = -eml * dot(b.e1.v[k], b.grad_n.sy[k]);
    b.h12.v[k] = 0.5 * (h12a + h12b);
    b.H_avg.v[k] = 0.5 * (b.h11.v[k] + b.h22.v[k]);
    b.H_tr.v[k] = 2.0 * b.H_avg.v[k];
    b.K.v[k] = b.h11.v[k] * b.h22.v[k] - b.h12.v[k] * b.h12.v[k];
    const double d = b.h11.v[k] - b.h22.v[k];
    b.A0sq.v[k] = 0.5 * d * d + 2.0 * b.h12.v[k] * b.h12.v[k];
  }

  // symmetry defect of the two off-diagonal formulas, interior only
  double sym = 0.0;
  for (int j = 0; j < chart.n; ++j)
    for (int i = 0; i < chart.n; ++i) {
      if (!chart.interior(i, j)) continue;
      const int k = chart.idx(i, j);
      const double eml = std::exp(-b.lambda.v[k]);
      const double h12a = -eml * dot(b.e2.v[k], b.grad_n.sx[k]);
      const double h12b = -eml * dot(b.e1.v[k], b.grad_n.sy[k]);
      sym = std::max(sym, std::abs(h12a - h12b));
    }
  b.h12_symmetry_defect = sym;
  return b;
}

IdentityResiduals identity_checks(const GeometryBundle& b) {
  const Chart& c = b.chart;
  IdentityResiduals r;

  // All first derivatives here come from fresh chart stencils, never from
  // the bundle's (possibly analytic) arrays: otherwise several of these
  // identities hold algebraically and the residual would measure nothing
  // but round-off.
  const ChartGrad3 gp = grad(b.pos);
  const ChartGrad3 gn = grad(b.n);

  // Delta Phi - 2 e^{2 lambda} H_avg n
  {
    ChartVec3 res = laplacian_flat(b.pos);
    for (int k = 0; k < c.size(); ++k)
      res.v[k] -= b.n.v[k] * (2.0 * std::exp(2.0 * b.lambda.v[k]) * b.H_avg.v[k]);
    r.delta_phi = interior_norms(res);
  }

  // H_avg + (e^{-2 lambda}/2) grad n . grad Phi
  {
    ChartScalar res = dot(gn, gp);
    for (int k = 0; k < c.size(); ++k)
      res.v[k] = b.H_avg.v[k] + 0.5 * std::exp(-2.0 * b.lambda.v[k]) * res.v[k];
    r.mean_from_grads = interior_norms(res);
  }

  // grad Phi . grad Phi - 2 e^{2 lambda}
  {
    ChartScalar res = dot(gp, gp);
    for (int k = 0; k < c.size(); ++k) res.v[k] -= 2.0 * std::exp(2.0 * b.lambda.v[k]);
    r.conformal_metric = interior_norms(res);
  }

  // grad Phi ^ n - grad_perp Phi (per slot): Phi_x ^ n = -Phi_y and
  // Phi_y ^ n = Phi_x for the right-handed conformal frame
  {
    ChartGrad3 res(c);
    for (int k = 0; k < c.size(); ++k) {
      res.sx[k] = wedge(gp.sx[k], b.n.v[k]) + gp.sy[k];
      res.sy[k] = wedge(gp.sy[k], b.n.v[k]) - gp.sx[k];
    }
    r.wedge_phi = interior_norms(res);
  }
  return r;
}

ChartScalar el_residual_flat(const GeometryBundle& b) {
  ChartScalar res = laplacian_conformal(b.H_avg, b.lambda);
  for (int k = 0; k < b.chart.size(); ++k) {
    const double H = b.H_avg.v[k];
    res.v[k] += 2.0 * H * (H * H - b.K.v[k]);
  }
  return res;
}

double observed_order(double res_coarse, double res_fine, double h_coarse, double h_fine) {
  if (res_fine <= 0.0 || res_coarse <= 0.0) return 0.0;
  return std::log(res_coarse / res_fine) / std::log(h_coarse / h_fine);
}

ChartGrad3 rotate_slots(const ChartGrad3& a) {
  ChartGrad3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] = -a.sy[k];
    out.sy[k] = a.sx[k];
  }
  return out;
}

ChartGrad2 rotate_slots(const ChartGrad2& a) {
  ChartGrad2 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] = -a.sy[k];
    out.sy[k] = a.sx[k];
  }
  return out;
}

ChartGrad3 wedge_vec_slots(const ChartVec3& v, const ChartGrad3& a) {
  require_same_chart(v.chart, a.chart, "wedge_vec_slots");
  ChartGrad3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] = wedge(v.v[k], a.sx[k]);
    out.sy[k] = wedge(v.v[k], a.sy[k]);
  }
  return out;
}

}  // namespace willmore

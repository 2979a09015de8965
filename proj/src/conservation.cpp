#include "willmore/conservation.hpp"

#include <algorithm>
#include <cmath>

namespace willmore {

ChartVec3 gauss_wedge_residual(const GeometryBundle& b) {
  ChartVec3 res = wedge(b.grad_n, rotate_slots(b.grad_n));
  for (int k = 0; k < b.chart.size(); ++k) {
    res.v[k] *= std::exp(-2.0 * b.lambda.v[k]);
    res.v[k] += b.n.v[k] * (2.0 * b.K.v[k]);
  }
  return res;
}

ChartGrad3 help_wedge_residual(const GeometryBundle& b) {
  ChartGrad3 res = add(b.grad_n, wedge_vec_slots(b.n, rotate_slots(b.grad_n)));
  for (int k = 0; k < b.chart.size(); ++k) {
    res.sx[k] += b.grad_phi.sx[k] * (2.0 * b.H_avg.v[k]);
    res.sy[k] += b.grad_phi.sy[k] * (2.0 * b.H_avg.v[k]);
  }
  return res;
}

ChartGrad3 conserved_field(const GeometryBundle& b) {
  const ChartGrad2 gH = grad(b.H_avg);
  ChartGrad3 T = scale_slots(b.H_avg, b.grad_n);
  const ChartGrad3 nwn = wedge_vec_slots(b.n, rotate_slots(b.grad_n));
  for (int k = 0; k < b.chart.size(); ++k) {
    T.sx[k] += b.n.v[k] * (-2.0 * gH.sx[k]) - nwn.sx[k] * b.H_avg.v[k];
    T.sy[k] += b.n.v[k] * (-2.0 * gH.sy[k]) - nwn.sy[k] * b.H_avg.v[k];
  }
  return T;
}

ConservationResiduals conservation_residual(const GeometryBundle& b) {
  ConservationResiduals r;
  r.div_T = divergence(conserved_field(b));
  const ChartScalar el = el_residual_flat(b);
  r.generalized = r.div_T;
  for (int k = 0; k < b.chart.size(); ++k)
    r.generalized.v[k] += b.n.v[k] * (2.0 * std::exp(2.0 * b.lambda.v[k]) * el.v[k]);
  return r;
}

namespace {

double mag(double x) { return std::abs(x); }
double mag(const Vec3& x) { return norm(x); }

// Integral over one cell [i, i+1] of the cubic through four consecutive
// samples; the window is clamped to the valid data range [lo, hi].
template <typename T>
T cell_integral(const std::vector<T>& f, int lo, int hi, int i) {
  const int w0 = std::clamp(i - 1, lo, hi - 3);
  const T c0 = f[w0];
  const T c1 = (f[w0] * (-11.0) + f[w0 + 1] * 18.0 + f[w0 + 2] * (-9.0) + f[w0 + 3] * 2.0) *
               (1.0 / 6.0);
  const T c2 = (f[w0] * 2.0 + f[w0 + 1] * (-5.0) + f[w0 + 2] * 4.0 + f[w0 + 3] * (-1.0)) * 0.5;
  const T c3 = (f[w0] * (-1.0) + f[w0 + 1] * 3.0 + f[w0 + 2] * (-3.0) + f[w0 + 3]) * (1.0 / 6.0);
  auto P = [&](double t) {
    return (c0 + (c1 * 0.5 + (c2 * (1.0 / 3.0) + c3 * (0.25 * t)) * t) * t) * t;
  };
  const double u = i - w0;
  return P(u + 1.0) - P(u);
}

// Cumulative line integral from the base node, 4th order; entries outside
// [lo, hi] are left untouched.
template <typename T>
void cumulative_line(const std::vector<T>& f, int lo, int hi, int base, double h,
                     std::vector<T>& cum) {
  cum[base] = T{};
  for (int i = base; i < hi; ++i) cum[i + 1] = cum[i] + cell_integral(f, lo, hi, i) * h;
  for (int i = base - 1; i >= lo; --i) cum[i] = cum[i + 1] - cell_integral(f, lo, hi, i) * h;
}

// Shared path-pair reconstruction: P with dP/dx = gx, dP/dy = gy on the
// sub-grid [m0, n-1-m0]^2; returns the cross-path defect.
template <typename T, typename Out>
double recon_impl(const Chart& c, const std::vector<T>& gx, const std::vector<T>& gy,
                  int bi, int bj, int m0, Out& out) {
  const int n = c.n;
  if (m0 < 3 || 2 * m0 + 4 > n)
    throw chart_error("reconstruct: margin out of range for this chart");
  if (bi < m0 || bi > n - 1 - m0 || bj < m0 || bj > n - 1 - m0)
    throw chart_error("reconstruct: base node outside reconstruction sub-grid");
  const int lo = m0 - 1, hi = n - m0;  // window pad of one node past the sub-grid
  const double hx = c.hx(), hy = c.hy();

  std::vector<T> line(n), cum(n);
  auto fill_row = [&](const std::vector<T>& g, int j) {
    for (int i = 0; i < n; ++i) line[i] = g[c.idx(i, j)];
  };
  auto fill_col = [&](const std::vector<T>& g, int i) {
    for (int j = 0; j < n; ++j) line[j] = g[c.idx(i, j)];
  };

  // path 1: x along the base row, then y up each column
  std::vector<T> p1(c.size());
  fill_row(gx, bj);
  cumulative_line(line, lo, hi, bi, hx, cum);
  std::vector<T> base_row = cum;
  for (int i = lo; i <= hi; ++i) {
    fill_col(gy, i);
    cumulative_line(line, lo, hi, bj, hy, cum);
    for (int j = lo; j <= hi; ++j) p1[c.idx(i, j)] = base_row[i] + cum[j];
  }

  // path 2: y along the base column, then x along each row
  std::vector<T> p2(c.size());
  fill_col(gy, bi);
  cumulative_line(line, lo, hi, bj, hy, cum);
  std::vector<T> base_col = cum;
  for (int j = lo; j <= hi; ++j) {
    fill_row(gx, j);
    cumulative_line(line, lo, hi, bi, hx, cum);
    for (int i = lo; i <= hi; ++i) p2[c.idx(i, j)] = base_col[j] + cum[i];
  }

  double defect = 0.0;
  for (int j = m0; j <= n - 1 - m0; ++j)
    for (int i = m0; i <= n - 1 - m0; ++i) {
      const int k = c.idx(i, j);
      defect = std::max(defect, mag(p1[k] - p2[k]));
      out.v[k] = (p1[k] + p2[k]) * 0.5;
    }
  return defect;
}

}  // namespace

ScalarPotential reconstruct_gradient(const ChartGrad2& G, int base_i, int base_j,
                                     int recon_margin) {
  ScalarPotential out;
  out.P = ChartScalar(G.chart);
  out.recon_margin = recon_margin;
  out.path_defect = recon_impl(G.chart, G.sx, G.sy, base_i, base_j, recon_margin, out.P);
  return out;
}

ScalarPotential reconstruct_potential(const ChartGrad2& F, int base_i, int base_j,
                                      int recon_margin) {
  // grad_perp P = F  <=>  grad P = (F_y, -F_x)
  ChartGrad2 G(F.chart);
  for (int k = 0; k < F.chart.size(); ++k) {
    G.sx[k] = F.sy[k];
    G.sy[k] = -F.sx[k];
  }
  return reconstruct_gradient(G, base_i, base_j, recon_margin);
}

VectorPotential reconstruct_gradient(const ChartGrad3& G, int base_i, int base_j,
                                     int recon_margin) {
  VectorPotential out;
  out.P = ChartVec3(G.chart);
  out.recon_margin = recon_margin;
  out.path_defect = recon_impl(G.chart, G.sx, G.sy, base_i, base_j, recon_margin, out.P);
  return out;
}

VectorPotential reconstruct_potential(const ChartGrad3& F, int base_i, int base_j,
                                      int recon_margin) {
  ChartGrad3 G(F.chart);
  for (int k = 0; k < F.chart.size(); ++k) {
    G.sx[k] = F.sy[k];
    G.sy[k] = F.sx[k] * -1.0;
  }
  return reconstruct_gradient(G, base_i, base_j, recon_margin);
}

ChartScalar curl(const ChartGrad2& G) {
  ChartScalar gx{G.chart, G.sx}, gy{G.chart, G.sy};
  ChartScalar out = derivative(gy, Axis::X);
  ChartScalar dxy = derivative(gx, Axis::Y);
  for (int k = 0; k < G.chart.size(); ++k) out.v[k] -= dxy.v[k];
  return out;
}

ChartVec3 curl(const ChartGrad3& G) {
  ChartVec3 gx{G.chart, G.sx}, gy{G.chart, G.sy};
  ChartVec3 out = derivative(gy, Axis::X);
  ChartVec3 dxy = derivative(gx, Axis::Y);
  for (int k = 0; k < G.chart.size(); ++k) out.v[k] -= dxy.v[k];
  return out;
}

PotentialSet build_potentials(const GeometryBundle& b, double willmore_threshold,
                              int base_i, int base_j, int recon_margin) {
  const Chart& c = b.chart;
  if (base_i < 0) base_i = c.n / 2;
  if (base_j < 0) base_j = c.n / 2;

  const ConservationResiduals res = conservation_residual(b);
  const int div_margin = std::max(c.margin, 6);
  const double div_max = interior_norms(res.div_T, div_margin).max;
  if (div_max > willmore_threshold)
    throw chart_error("build_potentials: |div T| = " + std::to_string(div_max) +
                      " exceeds the Willmore-quality threshold " +
                      std::to_string(willmore_threshold) +
                      "; potentials would be path-dependent");

  PotentialSet set;
  set.base_i = base_i;
  set.base_j = base_j;
  set.recon_margin = recon_margin;
  set.T = conserved_field(b);

  // grad_perp L = T
  VectorPotential L = reconstruct_potential(set.T, base_i, base_j, recon_margin);
  set.L = L.P;
  set.defect_L = L.path_defect;

  // grad S = L . grad Phi, grad R = grad Phi ^ L - 2 H grad Phi (per slot)
  ChartGrad2 GS(c);
  ChartGrad3 GR(c);
  for (int k = 0; k < c.size(); ++k) {
    GS.sx[k] = dot(set.L.v[k], b.grad_phi.sx[k]);
    GS.sy[k] = dot(set.L.v[k], b.grad_phi.sy[k]);
    const double twoH = 2.0 * b.H_avg.v[k];
    GR.sx[k] = wedge(b.grad_phi.sx[k], set.L.v[k]) - b.grad_phi.sx[k] * twoH;
    GR.sy[k] = wedge(b.grad_phi.sy[k], set.L.v[k]) - b.grad_phi.sy[k] * twoH;
  }
  set.curl_GS = subgrid_norms(curl(GS), recon_margin + 2);
  set.curl_GR = subgrid_norms(curl(GR), recon_margin + 2);

  // The generator fields are only valid where L was reconstructed, so the
  // S/R reconstruction must shrink by one node: the cubic windows of the
  // boundary cells reach one node past their sub-grid.
  const int m_sr = recon_margin + 1;
  ScalarPotential S = reconstruct_gradient(GS, base_i, base_j, m_sr);
  set.S = S.P;
  set.defect_S = S.path_defect;
  VectorPotential R = reconstruct_gradient(GR, base_i, base_j, m_sr);
  set.R = R.P;
  set.defect_R = R.path_defect;
  set.recon_margin = m_sr;  // margin of the tightest fields (S and R)
  return set;
}

double willmore_quality_threshold(int n) {
  const AnalyticImmersion imm = sphere_stereo(1.0);
  const Chart c = imm.make_chart(n);
  const GeometryBundle b = evaluate_bundle(imm, c, DerivativeSource::FiniteDifference);
  const ConservationResiduals res = conservation_residual(b);
  return std::max(10.0 * interior_norms(res.div_T, std::max(c.margin, 6)).max, 1e-10);
}

Cons2Residuals cons2_residuals(const PotentialSet& set, const GeometryBundle& b) {
  Cons2Residuals out;
  const int m = std::max(b.chart.margin, 6);
  out.r_a = interior_norms(dot(set.T, b.grad_phi), m);

  ChartVec3 rb = wedge(b.grad_phi, set.T);
  const ChartVec3 corr = dot(rotate_slots(grad(b.H_avg)), b.grad_phi);
  for (int k = 0; k < b.chart.size(); ++k) rb.v[k] -= corr.v[k] * 2.0;
  out.r_b = interior_norms(rb, m);
  return out;
}

RsResiduals rs_residuals(const PotentialSet& set, const GeometryBundle& b) {
  RsResiduals out;
  // S, R live on the reconstruction sub-grid; each stencil pass eats two
  // more nodes, and the Laplacian eats four.
  out.norm_margin = set.recon_margin + 4;

  const ChartGrad2 gS = grad(set.S);
  const ChartGrad3 gR = grad(set.R);
  const ChartGrad3 perp_n = rotate_slots(b.grad_n);

  ChartGrad3 rs1 = sub(rotate_slots(gR), add(scale_slots(gS, b.n), wedge_slots(gR, b.n)));
  out.rs1 = subgrid_norms(rs1, out.norm_margin);

  // Differentiating rs1 once under these slot conventions gives
  // Delta R = +grad S . grad_perp n + grad R ^ grad_perp n (the sign in
  // front of the right-hand side depends on the slot-contraction
  // convention; the round-sphere closed form pins it).
  ChartVec3 rs2 = laplacian_flat(set.R);
  const ChartVec3 t1 = dot(gS, perp_n);
  const ChartVec3 t2 = wedge(gR, perp_n);
  for (int k = 0; k < b.chart.size(); ++k) rs2.v[k] -= t1.v[k] + t2.v[k];
  out.rs2 = subgrid_norms(rs2, out.norm_margin);
  return out;
}

}  // namespace willmore

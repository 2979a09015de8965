#include "willmore/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace willmore {

BumpFunction::Jet BumpFunction::jet(double x, double y) const {
  Jet j;
  const double dx = x - cx, dy = y - cy;
  const double s = (dx * dx + dy * dy) / (r * r);
  if (s >= 1.0) return j;
  const double u = 1.0 - s;
  const double f = amp * u * u * u * u;
  const double fs = amp * -4.0 * u * u * u;  // df/ds
  const double fss = amp * 12.0 * u * u;     // d2f/ds2
  const double sx = 2.0 * dx / (r * r), sy = 2.0 * dy / (r * r);
  const double sxx = 2.0 / (r * r);
  j.f = f;
  j.fx = fs * sx;
  j.fy = fs * sy;
  j.fxx = fss * sx * sx + fs * sxx;
  j.fyy = fss * sy * sy + fs * sxx;
  j.fxy = fss * sx * sy;
  return j;
}

bool BumpFunction::supported_inside(const Chart& chart) const {
  // The bump formula is not periodic, so the support disk must stay
  // clear of the domain edge on every axis (and of the stencil margin
  // on non-periodic ones).
  const int m = chart.margin;
  const double lox = chart.periodic_x ? chart.x(0) : chart.x(m);
  const double hix = chart.periodic_x ? chart.x(chart.n - 1) : chart.x(chart.n - 1 - m);
  const double loy = chart.periodic_y ? chart.y(0) : chart.y(m);
  const double hiy = chart.periodic_y ? chart.y(chart.n - 1) : chart.y(chart.n - 1 - m);
  return cx - r > lox && cx + r < hix && cy - r > loy && cy + r < hiy;
}

HessianField covariant_hessian(const ChartScalar& f, const GeometryBundle& b) {
  require_same_chart(f.chart, b.chart, "covariant_hessian");
  const ChartGrad2 df = grad(f);
  const ChartScalar fxx = derivative(derivative(f, Axis::X), Axis::X);
  const ChartScalar fxy = derivative(derivative(f, Axis::X), Axis::Y);
  const ChartScalar fyy = derivative(derivative(f, Axis::Y), Axis::Y);
  const ChartGrad2 dl = grad(b.lambda);

  HessianField h{ChartScalar(b.chart), ChartScalar(b.chart), ChartScalar(b.chart)};
  for (int k = 0; k < b.chart.size(); ++k) {
    const double lx = dl.sx[k], ly = dl.sy[k];
    const double fx = df.sx[k], fy = df.sy[k];
    h.h11.v[k] = fxx.v[k] - lx * fx + ly * fy;
    h.h12.v[k] = fxy.v[k] - ly * fx - lx * fy;
    h.h22.v[k] = fyy.v[k] + lx * fx - ly * fy;
  }
  return h;
}

BochnerResult bochner_check(const BumpFunction& f, const GeometryBundle& b,
                            const AmbientMetric& g) {
  if (!f.supported_inside(b.chart))
    throw std::invalid_argument("bochner_check: bump support touches the chart boundary");

  const Chart& c = b.chart;
  const ChartGrad2 dl = grad(b.lambda);
  ChartScalar lhs_f(c), rhs_f(c);
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      const int k = c.idx(i, j);
      const BumpFunction::Jet bj = f.jet(c.x(i), c.y(j));
      if (bj.f == 0 && bj.fx == 0 && bj.fy == 0) continue;
      const double lam = b.lambda.v[k];
      const double e2 = std::exp(2.0 * lam);
      const double lx = dl.sx[k], ly = dl.sy[k];
      // covariant Hessian with analytic f-partials
      const double h11 = bj.fxx - lx * bj.fx + ly * bj.fy;
      const double h12 = bj.fxy - ly * bj.fx - lx * bj.fy;
      const double h22 = bj.fyy + lx * bj.fx - ly * bj.fy;
      lhs_f.v[k] = (h11 * h11 + 2 * h12 * h12 + h22 * h22) / (e2 * e2);

      const double lap = (bj.fxx + bj.fyy) / e2;
      const double grad2 = (bj.fx * bj.fx + bj.fy * bj.fy) / e2;
      const MetricJet mj = g.jet(b.pos.v[k]);
      const Vec3 nu = b.n.v[k];
      double ric_nn = 0;
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb) ric_nn += mj.ricci[a][bb] * nu[a] * nu[bb];
      const double bracket = 0.5 * b.A0sq.v[k] - 0.25 * b.H_tr.v[k] * b.H_tr.v[k] -
                             0.5 * mj.scal + ric_nn;
      rhs_f.v[k] = lap * lap + grad2 * bracket;
    }

  BochnerResult out;
  out.lhs = integrate(lhs_f, b.lambda, Region::full());
  out.rhs = integrate(rhs_f, b.lambda, Region::full());
  out.defect = std::abs(out.lhs - out.rhs) / std::max(out.lhs, 1.0);
  return out;
}

StabilityResult stability_check(const BumpFunction& f, const GeometryBundle& b,
                                double lambda, const AmbientMetric& g) {
  if (!f.supported_inside(b.chart))
    throw std::invalid_argument("stability_check: bump support touches the chart boundary");

  const Chart& c = b.chart;
  ChartScalar lhs_f(c), rhs_f(c);
  StabilityResult out;
  out.min_lambda_plus_half_scal = std::numeric_limits<double>::infinity();
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      const int k = c.idx(i, j);
      const BumpFunction::Jet bj = f.jet(c.x(i), c.y(j));
      if (bj.f == 0 && bj.fx == 0 && bj.fy == 0) continue;
      const MetricJet mj = g.jet(b.pos.v[k]);
      const double H = b.H_tr.v[k];
      const double bracket = 0.5 * b.A0sq.v[k] + 0.25 * H * H + 0.5 * mj.scal -
                             b.K.v[k] + lambda;  // Scal_Sigma = 2K
      lhs_f.v[k] = bj.f * bj.f * bracket;
      // |grad f|^2 dmu: the conformal factors cancel
      rhs_f.v[k] = (bj.fx * bj.fx + bj.fy * bj.fy) / std::exp(2.0 * b.lambda.v[k]);
      if (bj.f > 0) {
        if (H <= 0) out.h_positive_on_support = false;
        out.min_lambda_plus_half_scal =
            std::min(out.min_lambda_plus_half_scal, lambda + 0.5 * mj.scal);
      }
    }
  out.lhs = integrate(lhs_f, b.lambda, Region::full());
  out.rhs = integrate(rhs_f, b.lambda, Region::full());
  out.margin = out.rhs - out.lhs;
  return out;
}

StabilityResult stability_check(const RadialShape& s, const Vec3& p, double r,
                                double lambda, const AmbientMetric& g) {
  if (r <= 0) throw std::invalid_argument("stability_check: bump radius must be positive");
  const QuadGrid q = sample_shape(s);
  StabilityResult out;
  out.min_lambda_plus_half_scal = std::numeric_limits<double>::infinity();
  double lhs = 0, rhs = 0;
  for (int k = 0; k < q.nt * q.np; ++k) {
    const SurfaceJet& j = q.jets[k];
    const Vec3 d = j.F - p;
    const double sr = dot(d, d) / (r * r);
    if (sr >= 1.0) continue;
    const double u = 1.0 - sr;
    const double f = u * u * u * u;
    const Vec3 gradf = (-4.0 * u * u * u) * (2.0 / (r * r)) * d;  // coordinate gradient

    const MetricJet mj = g.jet(j.F);
    const PointGeometry pg = point_geometry(j, g, mj);
    double ric_nn = 0;
    for (int a = 0; a < 3; ++a)
      for (int bb = 0; bb < 3; ++bb) ric_nn += mj.ricci[a][bb] * pg.nu[a] * pg.nu[bb];
    // trace of the Gauss equation
    const double scal_sigma =
        mj.scal - 2.0 * ric_nn + 0.5 * pg.H * pg.H - pg.A0sq;
    const double bracket = 0.5 * pg.A0sq + 0.25 * pg.H * pg.H + 0.5 * mj.scal -
                           0.5 * scal_sigma + lambda;
    const double df_t = dot(gradf, j.Ft), df_p = dot(gradf, j.Fp);
    double grad2 = 0;
    const double d1[2] = {df_t, df_p};
    for (int a = 0; a < 2; ++a)
      for (int bb = 0; bb < 2; ++bb) grad2 += pg.gbar_inv[a][bb] * d1[a] * d1[bb];

    lhs += f * f * bracket * pg.area_el * q.w[k];
    rhs += grad2 * pg.area_el * q.w[k];
    if (f > 0) {
      if (pg.H <= 0) out.h_positive_on_support = false;
      out.min_lambda_plus_half_scal =
          std::min(out.min_lambda_plus_half_scal, lambda + 0.5 * mj.scal);
    }
  }
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = rhs - lhs;
  return out;
}

}  // namespace willmore

#include "willmore/chart.hpp"

#include <algorithm>
#include <cmath>

namespace willmore {

Chart Chart::square(int n, double extent, int margin) {
  if (n < 9 || n % 2 == 0) throw chart_error("chart: n must be odd and >= 9");
  if (extent <= 0) throw chart_error("chart: extent must be positive");
  if (margin < 2) throw chart_error("chart: margin must be >= stencil radius");
  Chart c;
  c.n = n;
  c.extent = extent;
  c.margin = margin;
  return c;
}

Chart Chart::periodic_both(int n, double extent) {
  Chart c = square(n, extent);
  c.periodic_x = c.periodic_y = true;
  c.margin = 0;
  return c;
}

Chart Chart::periodic_in_x(int n, double extent, int margin) {
  Chart c = square(n, extent, margin);
  c.periodic_x = true;
  return c;
}

void require_same_chart(const Chart& a, const Chart& b, const char* op) {
  if (!(a == b)) throw chart_error(std::string(op) + ": fields sampled on different charts");
}

namespace {

// d/dt f = (f[-2] - 8 f[-1] + 8 f[+1] - f[+2]) / (12 h), axis-wise.
template <typename T>
void diff_axis(const Chart& c, const std::vector<T>& in, std::vector<T>& out, Axis axis) {
  const bool per = (axis == Axis::X) ? c.periodic_x : c.periodic_y;
  const double h = (axis == Axis::X) ? c.hx() : c.hy();
  const double s = 1.0 / (12.0 * h);
  const int n = c.n;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int k = (axis == Axis::X) ? i : j;
      if (!per && (k < 2 || k >= n - 2)) continue;
      auto node = [&](int off) {
        int kk = per ? c.wrap(k + off) : k + off;
        return (axis == Axis::X) ? in[c.idx(kk, j)] : in[c.idx(i, kk)];
      };
      out[c.idx(i, j)] = (node(-2) - 8.0 * node(-1) + 8.0 * node(1) - node(2)) * s;
    }
  }
}

}  // namespace

ChartScalar derivative(const ChartScalar& f, Axis axis) {
  if (f.chart.n < 9) throw chart_error("derivative: chart too small for stencil");
  ChartScalar out(f.chart);
  diff_axis(f.chart, f.v, out.v, axis);
  return out;
}

ChartVec3 derivative(const ChartVec3& f, Axis axis) {
  if (f.chart.n < 9) throw chart_error("derivative: chart too small for stencil");
  ChartVec3 out(f.chart);
  diff_axis(f.chart, f.v, out.v, axis);
  return out;
}

ChartGrad2 grad(const ChartScalar& f) {
  ChartGrad2 g(f.chart);
  g.sx = derivative(f, Axis::X).v;
  g.sy = derivative(f, Axis::Y).v;
  return g;
}

ChartGrad2 grad_perp(const ChartScalar& f) {
  ChartGrad2 g(f.chart);
  ChartScalar fx = derivative(f, Axis::X);
  ChartScalar fy = derivative(f, Axis::Y);
  for (int k = 0; k < f.chart.size(); ++k) {
    g.sx[k] = -fy.v[k];
    g.sy[k] = fx.v[k];
  }
  return g;
}

ChartGrad3 grad(const ChartVec3& f) {
  ChartGrad3 g(f.chart);
  g.sx = derivative(f, Axis::X).v;
  g.sy = derivative(f, Axis::Y).v;
  return g;
}

ChartGrad3 grad_perp(const ChartVec3& f) {
  ChartGrad3 g(f.chart);
  ChartVec3 fx = derivative(f, Axis::X);
  ChartVec3 fy = derivative(f, Axis::Y);
  for (int k = 0; k < f.chart.size(); ++k) {
    g.sx[k] = -fy.v[k];
    g.sy[k] = fx.v[k];
  }
  return g;
}

ChartScalar divergence(const ChartGrad2& F) {
  ChartScalar fx{F.chart, F.sx}, fy{F.chart, F.sy};
  ChartScalar dx = derivative(fx, Axis::X);
  ChartScalar dy = derivative(fy, Axis::Y);
  for (int k = 0; k < F.chart.size(); ++k) dx.v[k] += dy.v[k];
  return dx;
}

ChartVec3 divergence(const ChartGrad3& F) {
  ChartVec3 fx{F.chart, F.sx}, fy{F.chart, F.sy};
  ChartVec3 dx = derivative(fx, Axis::X);
  ChartVec3 dy = derivative(fy, Axis::Y);
  for (int k = 0; k < F.chart.size(); ++k) dx.v[k] += dy.v[k];
  return dx;
}

ChartScalar laplacian_flat(const ChartScalar& f) { return divergence(grad(f)); }
ChartVec3 laplacian_flat(const ChartVec3& f) { return divergence(grad(f)); }

ChartScalar laplacian_conformal(const ChartScalar& f, const ChartScalar& lambda) {
  require_same_chart(f.chart, lambda.chart, "laplacian_conformal");
  ChartScalar out = laplacian_flat(f);
  for (int k = 0; k < f.chart.size(); ++k) {
    if (!std::isfinite(lambda.v[k])) throw chart_error("laplacian_conformal: non-finite lambda");
    out.v[k] *= std::exp(-2.0 * lambda.v[k]);
  }
  return out;
}

ChartVec3 laplacian_conformal(const ChartVec3& f, const ChartScalar& lambda) {
  require_same_chart(f.chart, lambda.chart, "laplacian_conformal");
  ChartVec3 out = laplacian_flat(f);
  for (int k = 0; k < f.chart.size(); ++k) {
    if (!std::isfinite(lambda.v[k])) throw chart_error("laplacian_conformal: non-finite lambda");
    out.v[k] *= std::exp(-2.0 * lambda.v[k]);
  }
  return out;
}

ChartScalar dot(const ChartGrad2& a, const ChartGrad2& b) {
  require_same_chart(a.chart, b.chart, "dot");
  ChartScalar out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) out.v[k] = a.sx[k] * b.sx[k] + a.sy[k] * b.sy[k];
  return out;
}

ChartScalar dot(const ChartGrad3& a, const ChartGrad3& b) {
  require_same_chart(a.chart, b.chart, "dot");
  ChartScalar out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k)
    out.v[k] = willmore::dot(a.sx[k], b.sx[k]) + willmore::dot(a.sy[k], b.sy[k]);
  return out;
}

ChartVec3 dot(const ChartGrad2& a, const ChartGrad3& b) {
  require_same_chart(a.chart, b.chart, "dot");
  ChartVec3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) out.v[k] = a.sx[k] * b.sx[k] + a.sy[k] * b.sy[k];
  return out;
}

ChartVec3 wedge(const ChartGrad3& a, const ChartGrad3& b) {
  require_same_chart(a.chart, b.chart, "wedge");
  ChartVec3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k)
    out.v[k] = willmore::wedge(a.sx[k], b.sx[k]) + willmore::wedge(a.sy[k], b.sy[k]);
  return out;
}

ChartGrad3 wedge_slots(const ChartGrad3& a, const ChartVec3& v) {
  require_same_chart(a.chart, v.chart, "wedge_slots");
  ChartGrad3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] = willmore::wedge(a.sx[k], v.v[k]);
    out.sy[k] = willmore::wedge(a.sy[k], v.v[k]);
  }
  return out;
}

ChartGrad3 scale_slots(const ChartGrad2& a, const ChartVec3& v) {
  require_same_chart(a.chart, v.chart, "scale_slots");
  ChartGrad3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] = v.v[k] * a.sx[k];
    out.sy[k] = v.v[k] * a.sy[k];
  }
  return out;
}

ChartGrad3 scale_slots(const ChartScalar& s, const ChartGrad3& a) {
  require_same_chart(s.chart, a.chart, "scale_slots");
  ChartGrad3 out(a.chart);
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] = a.sx[k] * s.v[k];
    out.sy[k] = a.sy[k] * s.v[k];
  }
  return out;
}

#define WM_BINOP(NAME, TYPE, EXPR)                          \
  TYPE NAME(const TYPE& a, const TYPE& b) {                 \
    require_same_chart(a.chart, b.chart, #NAME);            \
    TYPE out = a;                                           \
    EXPR;                                                   \
    return out;                                             \
  }

ChartScalar add(const ChartScalar& a, const ChartScalar& b) {
  require_same_chart(a.chart, b.chart, "add");
  ChartScalar out = a;
  for (int k = 0; k < a.chart.size(); ++k) out.v[k] += b.v[k];
  return out;
}
ChartVec3 add(const ChartVec3& a, const ChartVec3& b) {
  require_same_chart(a.chart, b.chart, "add");
  ChartVec3 out = a;
  for (int k = 0; k < a.chart.size(); ++k) out.v[k] += b.v[k];
  return out;
}
ChartGrad3 add(const ChartGrad3& a, const ChartGrad3& b) {
  require_same_chart(a.chart, b.chart, "add");
  ChartGrad3 out = a;
  for (int k = 0; k < a.chart.size(); ++k) {
    out.sx[k] += b.sx[k];
    out.sy[k] += b.sy[k];
  }
  return out;
}
ChartScalar sub(const ChartScalar& a, const ChartScalar& b) { return add(a, scaled(b, -1.0)); }
ChartVec3 sub(const ChartVec3& a, const ChartVec3& b) { return add(a, scaled(b, -1.0)); }
ChartGrad3 sub(const ChartGrad3& a, const ChartGrad3& b) { return add(a, scaled(b, -1.0)); }

ChartScalar scaled(const ChartScalar& a, double s) {
  ChartScalar out = a;
  for (auto& x : out.v) x *= s;
  return out;
}
ChartVec3 scaled(const ChartVec3& a, double s) {
  ChartVec3 out = a;
  for (auto& x : out.v) x *= s;
  return out;
}
ChartGrad3 scaled(const ChartGrad3& a, double s) {
  ChartGrad3 out = a;
  for (auto& x : out.sx) x *= s;
  for (auto& x : out.sy) x *= s;
  return out;
}
ChartScalar mul(const ChartScalar& a, const ChartScalar& b) {
  require_same_chart(a.chart, b.chart, "mul");
  ChartScalar out = a;
  for (int k = 0; k < a.chart.size(); ++k) out.v[k] *= b.v[k];
  return out;
}
ChartVec3 mul(const ChartScalar& a, const ChartVec3& b) {
  require_same_chart(a.chart, b.chart, "mul");
  ChartVec3 out = b;
  for (int k = 0; k < a.chart.size(); ++k) out.v[k] *= a.v[k];
  return out;
}

#undef WM_BINOP

namespace {

template <typename GetSq>
InteriorNorms norms_impl(const Chart& c, int margin, GetSq&& sq) {
  if (margin < 0) margin = c.margin;
  InteriorNorms r;
  double sum = 0.0;
  int count = 0;
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i < c.n; ++i) {
      if (!c.interior(i, j, margin)) continue;
      const double s = sq(c.idx(i, j));
      sum += s;
      r.max = std::max(r.max, std::sqrt(s));
      ++count;
    }
  r.l2 = count > 0 ? std::sqrt(sum / count) : 0.0;
  return r;
}

}  // namespace

InteriorNorms interior_norms(const ChartScalar& f, int margin) {
  return norms_impl(f.chart, margin, [&](int k) { return f.v[k] * f.v[k]; });
}
InteriorNorms interior_norms(const ChartVec3& f, int margin) {
  return norms_impl(f.chart, margin, [&](int k) { return norm2(f.v[k]); });
}
InteriorNorms interior_norms(const ChartGrad2& f, int margin) {
  return norms_impl(f.chart, margin,
                    [&](int k) { return f.sx[k] * f.sx[k] + f.sy[k] * f.sy[k]; });
}
InteriorNorms interior_norms(const ChartGrad3& f, int margin) {
  return norms_impl(f.chart, margin, [&](int k) { return norm2(f.sx[k]) + norm2(f.sy[k]); });
}

namespace {

template <typename GetSq>
InteriorNorms subgrid_norms_impl(const Chart& c, int margin, GetSq&& sq) {
  InteriorNorms r;
  double sum = 0.0;
  int count = 0;
  for (int j = margin; j < c.n - margin; ++j)
    for (int i = margin; i < c.n - margin; ++i) {
      const double s = sq(c.idx(i, j));
      sum += s;
      r.max = std::max(r.max, std::sqrt(s));
      ++count;
    }
  r.l2 = count > 0 ? std::sqrt(sum / count) : 0.0;
  return r;
}

}  // namespace

InteriorNorms subgrid_norms(const ChartScalar& f, int margin) {
  return subgrid_norms_impl(f.chart, margin, [&](int k) { return f.v[k] * f.v[k]; });
}
InteriorNorms subgrid_norms(const ChartVec3& f, int margin) {
  return subgrid_norms_impl(f.chart, margin, [&](int k) { return norm2(f.v[k]); });
}
InteriorNorms subgrid_norms(const ChartGrad3& f, int margin) {
  return subgrid_norms_impl(f.chart, margin,
                            [&](int k) { return norm2(f.sx[k]) + norm2(f.sy[k]); });
}

Region Region::rectangle(double x0, double x1, double y0, double y1) {
  Region r;
  r.kind = Kind::Rectangle;
  r.x0 = x0;
  r.x1 = x1;
  r.y0 = y0;
  r.y1 = y1;
  return r;
}

Region Region::disk(double cx, double cy, double rad) {
  Region r;
  r.kind = Kind::Disk;
  r.cx = cx;
  r.cy = cy;
  r.r = rad;
  return r;
}

namespace {

// Integral over [u, v] (local coordinate, 0 <= u <= v <= 3) of the cubic
// through samples at 0, 1, 2, 3.
double integrate_cubic(double f0, double f1, double f2, double f3, double u, double v) {
  const double c0 = f0;
  const double c1 = (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / 6.0;
  const double c2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / 2.0;
  const double c3 = (-f0 + 3.0 * f1 - 3.0 * f2 + f3) / 6.0;
  auto P = [&](double t) {
    return t * (c0 + t * (c1 / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
  };
  return P(v) - P(u);
}

// Partial panel [a, b] with both endpoints inside one cell; uses the four
// nodes around the cell. n0 is clamped so all four nodes exist.
double partial_panel(const std::vector<double>& f, int n, double a, double b) {
  int n0 = static_cast<int>(std::floor(a)) - 1;
  n0 = std::clamp(n0, 0, n - 4);
  return integrate_cubic(f[n0], f[n0 + 1], f[n0 + 2], f[n0 + 3], a - n0, b - n0);
}

}  // namespace

double integrate_1d_samples(const std::vector<double>& f, double h, double a, double b) {
  const int n = static_cast<int>(f.size());
  if (a > b) std::swap(a, b);
  if (a < -1e-12 || b > n - 1 + 1e-12)
    throw chart_error("integrate_1d: interval outside sample range");
  a = std::clamp(a, 0.0, double(n - 1));
  b = std::clamp(b, 0.0, double(n - 1));

  int i0 = static_cast<int>(std::ceil(a - 1e-12));
  int i1 = static_cast<int>(std::floor(b + 1e-12));
  if (i0 > i1) return h * partial_panel(f, n, a, b);  // interval inside one cell
  double total = 0.0;
  if (a < i0) total += partial_panel(f, n, a, i0);
  if (b > i1) total += partial_panel(f, n, i1, b);

  int m = i1 - i0;  // number of whole intervals
  int i = i0;
  if (m % 2 == 1) {
    if (m >= 3) {
      // one Simpson 3/8 panel to make the rest even
      total += 3.0 / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
      i += 3;
      m -= 3;
    } else {
      // single interval: cubic through surrounding nodes
      total += partial_panel(f, n, double(i), double(i + 1));
      i += 1;
      m -= 1;
    }
  }
  for (; i + 2 <= i1; i += 2)
    total += (f[i] + 4.0 * f[i + 1] + f[i + 2]) / 3.0;
  return h * total;
}

namespace {

std::vector<double> row(const ChartScalar& g, int j) {
  std::vector<double> r(g.chart.n);
  for (int i = 0; i < g.chart.n; ++i) r[i] = g.at(i, j);
  return r;
}

std::vector<double> col(const ChartScalar& g, int i) {
  std::vector<double> r(g.chart.n);
  for (int j = 0; j < g.chart.n; ++j) r[j] = g.at(i, j);
  return r;
}

double integrate_full(const ChartScalar& g) {
  const Chart& c = g.chart;
  auto axis_weights = [&](bool periodic, double h) {
    std::vector<double> w(c.n, h);
    if (!periodic) {
      // composite Simpson: n odd, n-1 intervals even
      for (int k = 0; k < c.n; ++k) w[k] = (k % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
      w[0] = w[c.n - 1] = h / 3.0;
    }
    return w;
  };
  const auto wx = axis_weights(c.periodic_x, c.hx());
  const auto wy = axis_weights(c.periodic_y, c.hy());
  double total = 0.0;
  for (int j = 0; j < c.n; ++j) {
    double rowsum = 0.0;
    for (int i = 0; i < c.n; ++i) rowsum += wx[i] * g.at(i, j);
    total += wy[j] * rowsum;
  }
  return total;
}

double integrate_rect(const ChartScalar& g, double x0, double x1, double y0, double y1) {
  const Chart& c = g.chart;
  const double hx = c.hx(), hy = c.hy();
  auto ix = [&](double x) { return (x + c.extent) / hx; };
  auto iy = [&](double y) { return (y + c.extent) / hy; };
  if (ix(x0) < 0 || ix(x1) > c.n - 1 || iy(y0) < 0 || iy(y1) > c.n - 1)
    throw chart_error("integrate: region outside chart");
  // rows needed: those contributing to the y integral (plus interpolation pad)
  std::vector<double> rowint(c.n, 0.0);
  const int j0 = std::max(0, static_cast<int>(std::floor(iy(y0))) - 2);
  const int j1 = std::min(c.n - 1, static_cast<int>(std::ceil(iy(y1))) + 2);
  for (int j = j0; j <= j1; ++j) rowint[j] = integrate_1d_samples(row(g, j), hx, ix(x0), ix(x1));
  return integrate_1d_samples(rowint, hy, iy(y0), iy(y1));
}

// Disk split into a central band (rows) and two polar caps (columns) so
// every 1D limit curve has slope at most 1; each 1D integral is 4th order.
double integrate_disk(const ChartScalar& g, double cx, double cy, double r) {
  const Chart& c = g.chart;
  const double hx = c.hx(), hy = c.hy();
  auto ix = [&](double x) { return (x + c.extent) / hx; };
  auto iy = [&](double y) { return (y + c.extent) / hy; };
  const double pad = 3.0 * std::max(hx, hy);
  if (cx - r < -c.extent + pad || cx + r > c.extent - pad || cy - r < -c.extent + pad ||
      cy + r > c.extent - pad)
    throw chart_error("integrate: disk outside chart");

  const double b = r / std::sqrt(2.0);

  // central band: |y - cy| <= b, x in [cx - w(y), cx + w(y)]
  std::vector<double> rowint(c.n, 0.0);
  {
    const int j0 = std::max(0, static_cast<int>(std::floor(iy(cy - b))) - 2);
    const int j1 = std::min(c.n - 1, static_cast<int>(std::ceil(iy(cy + b))) + 2);
    for (int j = j0; j <= j1; ++j) {
      const double dy = c.y(j) - cy;
      if (std::abs(dy) >= r) continue;
      const double w = std::sqrt(r * r - dy * dy);
      rowint[j] = integrate_1d_samples(row(g, j), hx, ix(cx - w), ix(cx + w));
    }
  }
  double total = integrate_1d_samples(rowint, hy, iy(cy - b), iy(cy + b));

  // caps: |x - cx| <= b, |y - cy| from b to sqrt(r^2 - (x-cx)^2). The pad
  // columns just past |x - cx| = b use the signed smooth continuation
  // (w < b gives a negative contribution) so the end panels of the outer
  // integral interpolate a smooth function, not one clipped to zero.
  std::vector<double> colint_top(c.n, 0.0), colint_bot(c.n, 0.0);
  {
    auto signed_int = [&](const std::vector<double>& f, double a, double b2) {
      return a <= b2 ? integrate_1d_samples(f, hy, a, b2)
                     : -integrate_1d_samples(f, hy, b2, a);
    };
    const int i0 = std::max(0, static_cast<int>(std::floor(ix(cx - b))) - 2);
    const int i1 = std::min(c.n - 1, static_cast<int>(std::ceil(ix(cx + b))) + 2);
    for (int i = i0; i <= i1; ++i) {
      const double dx = c.x(i) - cx;
      if (std::abs(dx) >= r) continue;
      const double w = std::sqrt(r * r - dx * dx);
      auto cv = col(g, i);
      colint_top[i] = signed_int(cv, iy(cy + b), iy(cy + w));
      colint_bot[i] = signed_int(cv, iy(cy - w), iy(cy - b));
    }
  }
  total += integrate_1d_samples(colint_top, hx, ix(cx - b), ix(cx + b));
  total += integrate_1d_samples(colint_bot, hx, ix(cx - b), ix(cx + b));
  return total;
}

}  // namespace

double integrate(const ChartScalar& f, const ChartScalar& lambda, const Region& region) {
  require_same_chart(f.chart, lambda.chart, "integrate");
  ChartScalar g = f;
  for (int k = 0; k < f.chart.size(); ++k) g.v[k] *= std::exp(2.0 * lambda.v[k]);
  return integrate(g, region);
}

double integrate(const ChartScalar& f, const Region& region) {
  switch (region.kind) {
    case Region::Kind::FullDomain:
      return integrate_full(f);
    case Region::Kind::Rectangle:
      return integrate_rect(f, region.x0, region.x1, region.y0, region.y1);
    case Region::Kind::Disk:
      return integrate_disk(f, region.cx, region.cy, region.r);
  }
  return 0.0;
}

}  // namespace willmore

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "willmore/vec3.hpp"

namespace willmore {

// Uniform square grid on [-extent, extent]^2. Axes may be periodic
// (wrap-around stencils, no duplicated endpoint); on a periodic axis the
// spacing is 2*extent/n instead of 2*extent/(n-1).
//
// All derivative stencils are 4th-order central; nodes closer than the
// stencil radius to a non-periodic boundary carry no derivative data and
// are excluded from norms via the interior margin.
struct Chart {
  int n = 0;
  double extent = 0.0;
  bool periodic_x = false;
  bool periodic_y = false;
  int margin = 6;

  static Chart square(int n, double extent, int margin = 6);
  static Chart periodic_both(int n, double extent);
  static Chart periodic_in_x(int n, double extent, int margin = 6);

  double hx() const { return periodic_x ? 2.0 * extent / n : 2.0 * extent / (n - 1); }
  double hy() const { return periodic_y ? 2.0 * extent / n : 2.0 * extent / (n - 1); }

  double x(int i) const { return -extent + i * hx(); }
  double y(int j) const { return -extent + j * hy(); }

  int size() const { return n * n; }
  int idx(int i, int j) const { return j * n + i; }

  int wrap(int i) const {
    i %= n;
    return i < 0 ? i + n : i;
  }

  bool interior(int i, int j, int m) const {
    const bool okx = periodic_x || (i >= m && i < n - m);
    const bool oky = periodic_y || (j >= m && j < n - m);
    return okx && oky;
  }
  bool interior(int i, int j) const { return interior(i, j, margin); }

  bool operator==(const Chart& o) const {
    return n == o.n && extent == o.extent && periodic_x == o.periodic_x &&
           periodic_y == o.periodic_y;
  }
};

struct ChartScalar {
  Chart chart;
  std::vector<double> v;

  ChartScalar() = default;
  explicit ChartScalar(const Chart& c) : chart(c), v(c.size(), 0.0) {}
  ChartScalar(const Chart& c, std::vector<double> data) : chart(c), v(std::move(data)) {}

  double& at(int i, int j) { return v[chart.idx(i, j)]; }
  double at(int i, int j) const { return v[chart.idx(i, j)]; }
};

struct ChartVec3 {
  Chart chart;
  std::vector<Vec3> v;

  ChartVec3() = default;
  explicit ChartVec3(const Chart& c) : chart(c), v(c.size()) {}
  ChartVec3(const Chart& c, std::vector<Vec3> data) : chart(c), v(std::move(data)) {}

  Vec3& at(int i, int j) { return v[chart.idx(i, j)]; }
  const Vec3& at(int i, int j) const { return v[chart.idx(i, j)]; }
};

// Two scalar slots, one per chart direction: gradients of scalars.
struct ChartGrad2 {
  Chart chart;
  std::vector<double> sx, sy;

  ChartGrad2() = default;
  explicit ChartGrad2(const Chart& c) : chart(c), sx(c.size(), 0.0), sy(c.size(), 0.0) {}
};

// Two R^3 slots, one per chart direction: objects like grad Phi, grad n
// and the conserved field T.
struct ChartGrad3 {
  Chart chart;
  std::vector<Vec3> sx, sy;

  ChartGrad3() = default;
  explicit ChartGrad3(const Chart& c) : chart(c), sx(c.size()), sy(c.size()) {}
};

enum class Axis { X, Y };

class chart_error : public std::runtime_error {
 public:
  explicit chart_error(const std::string& what) : std::runtime_error(what) {}
};

void require_same_chart(const Chart& a, const Chart& b, const char* op);

// 4th-order central differences; exact on polynomials of degree <= 4.
ChartScalar derivative(const ChartScalar& f, Axis axis);
ChartVec3 derivative(const ChartVec3& f, Axis axis);

ChartGrad2 grad(const ChartScalar& f);
ChartGrad2 grad_perp(const ChartScalar& f);  // (-d_y f, d_x f)
ChartGrad3 grad(const ChartVec3& f);
ChartGrad3 grad_perp(const ChartVec3& f);

ChartScalar divergence(const ChartGrad2& F);
ChartVec3 divergence(const ChartGrad3& F);

ChartScalar laplacian_flat(const ChartScalar& f);
ChartVec3 laplacian_flat(const ChartVec3& f);

// e^{-2 lambda} * flat Laplacian: the Laplace-Beltrami operator of the
// conformal metric e^{2 lambda} delta.
ChartScalar laplacian_conformal(const ChartScalar& f, const ChartScalar& lambda);
ChartVec3 laplacian_conformal(const ChartVec3& f, const ChartScalar& lambda);

// Slot contractions. For 2-slot fields A, B:
//   dot(A, B)   = sum_slots <A_s, B_s>
//   wedge(A, B) = sum_slots A_s x B_s
ChartScalar dot(const ChartGrad2& a, const ChartGrad2& b);
ChartScalar dot(const ChartGrad3& a, const ChartGrad3& b);
ChartVec3 dot(const ChartGrad2& a, const ChartGrad3& b);
ChartVec3 wedge(const ChartGrad3& a, const ChartGrad3& b);
// Per-slot products against a plain vector field.
ChartGrad3 wedge_slots(const ChartGrad3& a, const ChartVec3& v);
ChartGrad3 scale_slots(const ChartGrad2& a, const ChartVec3& v);  // slot_s = a_s * v
ChartGrad3 scale_slots(const ChartScalar& s, const ChartGrad3& a);

// Pointwise arithmetic helpers used by identity checks.
ChartScalar add(const ChartScalar& a, const ChartScalar& b);
ChartVec3 add(const ChartVec3& a, const ChartVec3& b);
ChartGrad3 add(const ChartGrad3& a, const ChartGrad3& b);
ChartScalar sub(const ChartScalar& a, const ChartScalar& b);
ChartVec3 sub(const ChartVec3& a, const ChartVec3& b);
ChartGrad3 sub(const ChartGrad3& a, const ChartGrad3& b);
ChartScalar scaled(const ChartScalar& a, double s);
ChartVec3 scaled(const ChartVec3& a, double s);
ChartGrad3 scaled(const ChartGrad3& a, double s);
ChartScalar mul(const ChartScalar& a, const ChartScalar& b);
ChartVec3 mul(const ChartScalar& a, const ChartVec3& b);

// Interior norms (margin defaults to the chart's). The L2 norm is the
// lattice RMS over interior nodes, the max norm the interior sup.
struct InteriorNorms {
  double max = 0.0;
  double l2 = 0.0;
};
InteriorNorms interior_norms(const ChartScalar& f, int margin = -1);
InteriorNorms interior_norms(const ChartVec3& f, int margin = -1);
InteriorNorms interior_norms(const ChartGrad2& f, int margin = -1);
InteriorNorms interior_norms(const ChartGrad3& f, int margin = -1);

// Norms over the sub-grid [margin, n-1-margin]^2 with the margin enforced
// on BOTH axes even when they are periodic — for fields (reconstructed
// potentials and their derivatives) that only live on a sub-rectangle of a
// periodic chart.
InteriorNorms subgrid_norms(const ChartScalar& f, int margin);
InteriorNorms subgrid_norms(const ChartVec3& f, int margin);
InteriorNorms subgrid_norms(const ChartGrad3& f, int margin);

// Quadrature regions. Rectangles are in physical coordinates; disks are
// |x - center| < r. Both must sit inside the chart domain.
struct Region {
  enum class Kind { FullDomain, Rectangle, Disk } kind = Kind::FullDomain;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // rectangle bounds
  double cx = 0, cy = 0, r = 0;           // disk

  static Region full() { return {}; }
  static Region rectangle(double x0, double x1, double y0, double y1);
  static Region disk(double cx, double cy, double r);
};

// integral of f * e^{2 lambda} over the region (the induced measure of the
// conformal metric). Full-domain quadrature is composite Simpson on
// non-periodic axes and the periodic trapezoid on periodic ones;
// sub-regions use 4th-order panel quadrature with interpolated endpoints.
double integrate(const ChartScalar& f, const ChartScalar& lambda, const Region& region);
double integrate(const ChartScalar& f, const Region& region);

// 1D building block, exposed for tests: integral of the sampled function
// (nodes t = 0..n-1, spacing h) over t in [a, b] in index coordinates.
double integrate_1d_samples(const std::vector<double>& f, double h, double a, double b);

}  // namespace willmore

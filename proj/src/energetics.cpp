#include "willmore/energetics.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

PointGeometry point_geometry(const SurfaceJet& j, const AmbientMetric& g,
                             const MetricJet& mj) {
  PointGeometry out;
  const Vec3 t[2] = {j.Ft, j.Fp};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.gbar[a][b] = dot(t[a], mat3_apply(mj.g, t[b]));
  const double det = out.gbar[0][0] * out.gbar[1][1] - out.gbar[0][1] * out.gbar[1][0];
  if (det <= 0.0) throw std::runtime_error("point_geometry: degenerate induced metric");
  out.area_el = std::sqrt(det);
  out.gbar_inv[0][0] = out.gbar[1][1] / det;
  out.gbar_inv[1][1] = out.gbar[0][0] / det;
  out.gbar_inv[0][1] = out.gbar_inv[1][0] = -out.gbar[0][1] / det;

  // g-unit normal: ginv applied to the Euclidean cross product is
  // g-orthogonal to both tangents; radial graphs keep it outward.
  const Vec3 w = wedge(j.Ft, j.Fp);
  Vec3 nu = mat3_apply(mj.ginv, w);
  const double nn = dot(nu, mat3_apply(mj.g, nu));
  nu = nu / std::sqrt(nn);
  out.nu = nu;

  const Vec3 snd[2][2] = {{j.Ftt, j.Ftp}, {j.Ftp, j.Fpp}};
  const Vec3 gnu = mat3_apply(mj.g, nu);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Vec3 v = snd[a][b];
      for (int al = 0; al < 3; ++al) {
        double s = 0;
        for (int be = 0; be < 3; ++be)
          for (int ga = 0; ga < 3; ++ga) s += mj.gamma[al][be][ga] * t[a][be] * t[b][ga];
        v[al] += s;
      }
      out.h[a][b] = -dot(v, gnu);
    }

  out.H = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.H += out.gbar_inv[a][b] * out.h[a][b];
  out.A2 = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          out.A2 += out.gbar_inv[a][c] * out.gbar_inv[b][d] * out.h[a][b] * out.h[c][d];
  out.A0sq = out.A2 - 0.5 * out.H * out.H;
  return out;
}

PointGeometry point_geometry(const SurfaceJet& j, const AmbientMetric& g) {
  return point_geometry(j, g, g.jet(j.F));
}

EnergyArea energy_area(const QuadGrid& q, const AmbientMetric& g) {
  EnergyArea ea;
  for (int k = 0; k < q.nt * q.np; ++k) {
    const PointGeometry pg = point_geometry(q.jets[k], g);
    const double dmu = pg.area_el * q.w[k];
    ea.W += 0.5 * pg.H * pg.H * dmu;
    ea.A += dmu;
    ea.A2_integral += pg.A2 * dmu;
  }
  return ea;
}

EnergyArea energy_area(const RadialShape& s, const AmbientMetric& g) {
  return energy_area(sample_shape(s), g);
}

double willmore_energy(const RadialShape& s, const AmbientMetric& g) {
  return energy_area(s, g).W;
}

double area(const RadialShape& s, const AmbientMetric& g) {
  return energy_area(s, g).A;
}

AmbientField constant_field(const Vec3& v) {
  AmbientField f;
  f.X = [v](const Vec3&) { return v; };
  f.dX = [](const Vec3&) { return Mat3{}; };
  f.d2X = [](const Vec3&) { return std::array<Mat3, 3>{}; };
  return f;
}

AmbientField position_field() {
  AmbientField f;
  f.X = [](const Vec3& x) { return x; };
  f.dX = [](const Vec3&) { return mat3_identity(); };
  f.d2X = [](const Vec3&) { return std::array<Mat3, 3>{}; };
  return f;
}

double first_variation(const QuadGrid& q, const AmbientMetric& g, const AmbientField& X) {
  double total = 0.0;
  for (int k = 0; k < q.nt * q.np; ++k) {
    const SurfaceJet& j = q.jets[k];
    const MetricJet mj = g.jet(j.F);
    const PointGeometry pg = point_geometry(j, g, mj);
    const Vec3 t[2] = {j.Ft, j.Fp};

    const Vec3 Xv = X.X(j.F);
    const Mat3 dXv = X.dX(j.F);
    const auto d2Xv = X.d2X(j.F);

    // covariant derivative (nabla X)^a_b = d_b X^a + Gamma^a_{cb} X^c
    Mat3 cov;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = dXv[a][b];
        for (int c = 0; c < 3; ++c) s += mj.gamma[a][c][b] * Xv[c];
        cov[a][b] = s;
      }

    // second covariant derivative (nabla^2 X)^a_{bc}
    double cov2[3][3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = d2Xv[c][a][b];
          for (int d = 0; d < 3; ++d)
            s += mj.dgamma[c][a][d][b] * Xv[d] + mj.gamma[a][d][b] * dXv[d][c] +
                 mj.gamma[a][d][c] * cov[d][b] - mj.gamma[d][b][c] * cov[a][d];
          cov2[a][b][c] = s;
        }

    const Vec3 gnu = mat3_apply(mj.g, pg.nu);

    // -H gbar^{ij} g(nabla^2_{F_i,F_j} X, nu)
    double term1 = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) {
        double s = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
              s += gnu[a] * cov2[a][b][c] * t[i][b] * t[jj][c];
        term1 += pg.gbar_inv[i][jj] * s;
      }
    term1 *= -pg.H;

    // -2 H h^{ij} g(nabla_{F_i} X, F_j)
    double term2 = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) {
        double hij = 0;
        for (int k2 = 0; k2 < 2; ++k2)
          for (int l = 0; l < 2; ++l)
            hij += pg.gbar_inv[i][k2] * pg.gbar_inv[jj][l] * pg.h[k2][l];
        Vec3 covi;
        for (int a = 0; a < 3; ++a) {
          double s = 0;
          for (int b = 0; b < 3; ++b) s += cov[a][b] * t[i][b];
          covi[a] = s;
        }
        term2 += hij * dot(covi, mat3_apply(mj.g, t[jj]));
      }
    term2 *= -2.0 * pg.H;

    // + H^2 g(nabla_nu X, nu)
    Vec3 covnu;
    for (int a = 0; a < 3; ++a) {
      double s = 0;
      for (int b = 0; b < 3; ++b) s += cov[a][b] * pg.nu[b];
      covnu[a] = s;
    }
    const double term3 = pg.H * pg.H * dot(covnu, gnu);

    // - H Ric(X, nu)
    double ric_xn = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) ric_xn += mj.ricci[a][b] * Xv[a] * pg.nu[b];
    const double term4 = -pg.H * ric_xn;

    // + (1/2) H^2 div^T X
    double divt = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) {
        Vec3 covi;
        for (int a = 0; a < 3; ++a) {
          double s = 0;
          for (int b = 0; b < 3; ++b) s += cov[a][b] * t[i][b];
          covi[a] = s;
        }
        divt += pg.gbar_inv[i][jj] * dot(covi, mat3_apply(mj.g, t[jj]));
      }
    const double term5 = 0.5 * pg.H * pg.H * divt;

    total += (term1 + term2 + term3 + term4 + term5) * pg.area_el * q.w[k];
  }
  return total;
}

double first_variation(const RadialShape& s, const AmbientMetric& g,
                       const AmbientField& X) {
  return first_variation(sample_shape(s), g, X);
}

QuadGrid displace_grid(const QuadGrid& q, const AmbientField& X, double t) {
  QuadGrid out = q;
  for (int k = 0; k < q.nt * q.np; ++k) {
    const SurfaceJet& j = q.jets[k];
    SurfaceJet& o = out.jets[k];
    const Mat3 dXv = X.dX(j.F);
    const auto d2Xv = X.d2X(j.F);
    auto push1 = [&](const Vec3& Fi) { return mat3_apply(dXv, Fi); };
    auto push2 = [&](const Vec3& Fi, const Vec3& Fj, const Vec3& Fij) {
      Vec3 v = mat3_apply(dXv, Fij);
      for (int a = 0; a < 3; ++a) {
        double s = 0;
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) s += d2Xv[c][a][b] * Fi[b] * Fj[c];
        v[a] += s;
      }
      return v;
    };
    o.F = j.F + t * X.X(j.F);
    o.Ft = j.Ft + t * push1(j.Ft);
    o.Fp = j.Fp + t * push1(j.Fp);
    o.Ftt = j.Ftt + t * push2(j.Ft, j.Ft, j.Ftt);
    o.Ftp = j.Ftp + t * push2(j.Ft, j.Fp, j.Ftp);
    o.Fpp = j.Fpp + t * push2(j.Fp, j.Fp, j.Fpp);
  }
  return out;
}

}  // namespace willmore

#include "willmore/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

Riemann3 Riemann3::constant_curvature(double kappa) {
  Riemann3 r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          r.c[i][k][j][l] = kappa * ((i == j ? 1.0 : 0.0) * (k == l ? 1.0 : 0.0) -
                                     (i == l ? 1.0 : 0.0) * (k == j ? 1.0 : 0.0));
  return r;
}

Riemann3 Riemann3::scaled(double s) const {
  Riemann3 r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) r.c[i][k][j][l] = s * c[i][k][j][l];
  return r;
}

void Riemann3::validate(double tol) const {
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          if (std::abs(c[i][k][j][l] + c[k][i][j][l]) > tol ||
              std::abs(c[i][k][j][l] + c[i][k][l][j]) > tol)
            throw std::invalid_argument("Riemann3: antisymmetry violated");
          if (std::abs(c[i][k][j][l] - c[j][l][i][k]) > tol)
            throw std::invalid_argument("Riemann3: pair symmetry violated");
          if (std::abs(c[i][k][j][l] + c[i][j][l][k] + c[i][l][k][j]) > tol)
            throw std::invalid_argument("Riemann3: first Bianchi identity violated");
        }
}

Mat3 Riemann3::ricci() const {
  Mat3 ric = {};
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      double s = 0;
      for (int i = 0; i < 3; ++i) s += c[i][k][i][l];
      ric[k][l] = s;
    }
  return ric;
}

double Riemann3::scal() const {
  const Mat3 ric = ricci();
  return ric[0][0] + ric[1][1] + ric[2][2];
}

double Riemann3::max_abs() const {
  double m = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) m = std::max(m, std::abs(c[i][k][j][l]));
  return m;
}

AmbientMetric euclidean_metric() {
  AmbientMetric m;
  m.kind = AmbientMetric::Kind::Euclidean;
  m.validity_radius = 1e9;
  return m;
}

AmbientMetric normal_form_metric(const Riemann3& riem) {
  riem.validate();
  AmbientMetric m;
  m.kind = AmbientMetric::Kind::NormalForm;
  m.riem = riem;
  const double r0 = riem.max_abs();
  // |h| <= R_max |x|^2 in this truncation; keep the perturbation below
  // ~10% of the identity on the validity ball.
  m.validity_radius = r0 > 0 ? std::min(1.0, 0.3 / std::sqrt(r0)) : 1e9;
  return m;
}

AmbientMetric conformal_metric(double eps, const Vec3& q, double beta) {
  if (eps < 0) throw std::invalid_argument("conformal_metric: eps must be >= 0");
  if (beta < 0) throw std::invalid_argument("conformal_metric: beta must be >= 0");
  AmbientMetric m;
  m.kind = AmbientMetric::Kind::Conformal;
  m.conf_eps = eps;
  m.conf_beta = beta;
  m.conf_q = q;
  if (eps == 0)
    m.validity_radius = 1e9;
  else if (beta > 0)
    m.validity_radius = std::pow(0.25 / (eps * beta), 0.25);
  else
    m.validity_radius = 0.5 / std::sqrt(eps);
  return m;
}

namespace {

// phi = -eps (d^2 - beta d^4) with d = x - q, and its derivatives.
struct ConfPhi {
  double phi;
  Vec3 grad;
  Mat3 hess;
};

ConfPhi conf_phi(const AmbientMetric& m, const Vec3& x) {
  const Vec3 d = x - m.conf_q;
  const double d2 = norm2(d);
  ConfPhi out;
  out.phi = -m.conf_eps * (d2 - m.conf_beta * d2 * d2);
  const double c1 = -2.0 * m.conf_eps + 4.0 * m.conf_eps * m.conf_beta * d2;
  out.grad = c1 * d;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      out.hess[a][b] =
          c1 * (a == b ? 1.0 : 0.0) + 8.0 * m.conf_eps * m.conf_beta * d[a] * d[b];
  return out;
}

}  // namespace

Mat3 AmbientMetric::g(const Vec3& x) const {
  switch (kind) {
    case Kind::Euclidean:
      return mat3_identity();
    case Kind::NormalForm: {
      Mat3 m = mat3_identity();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double s = 0;
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) s += riem.c[i][k][j][l] * x[k] * x[l];
          m[i][j] -= s / 3.0;
        }
      return m;
    }
    case Kind::Conformal: {
      const double e2phi = std::exp(2.0 * conf_phi(*this, x).phi);
      Mat3 m = {};
      for (int i = 0; i < 3; ++i) m[i][i] = e2phi;
      return m;
    }
  }
  return mat3_identity();
}

std::array<Mat3, 3> AmbientMetric::dg(const Vec3& x) const {
  std::array<Mat3, 3> out = {};
  switch (kind) {
    case Kind::Euclidean:
      break;
    case Kind::NormalForm:
      for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int l = 0; l < 3; ++l)
              s += riem.c[i][c][j][l] * x[l] + riem.c[i][l][j][c] * x[l];
            out[c][i][j] = -s / 3.0;
          }
      break;
    case Kind::Conformal: {
      const ConfPhi p = conf_phi(*this, x);
      const double e2phi = std::exp(2.0 * p.phi);
      for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 3; ++i) out[c][i][i] = 2.0 * p.grad[c] * e2phi;
      break;
    }
  }
  return out;
}

std::array<std::array<Mat3, 3>, 3> AmbientMetric::d2g(const Vec3& x) const {
  std::array<std::array<Mat3, 3>, 3> out = {};
  switch (kind) {
    case Kind::Euclidean:
      break;
    case Kind::NormalForm:
      for (int d = 0; d < 3; ++d)
        for (int c = 0; c < 3; ++c)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              out[d][c][i][j] = -(riem.c[i][c][j][d] + riem.c[i][d][j][c]) / 3.0;
      break;
    case Kind::Conformal: {
      const ConfPhi p = conf_phi(*this, x);
      const double e2phi = std::exp(2.0 * p.phi);
      for (int d = 0; d < 3; ++d)
        for (int c = 0; c < 3; ++c) {
          const double coef = (2.0 * p.hess[c][d] + 4.0 * p.grad[c] * p.grad[d]) * e2phi;
          for (int i = 0; i < 3; ++i) out[d][c][i][i] = coef;
        }
      break;
    }
  }
  return out;
}

MetricJet AmbientMetric::jet(const Vec3& x) const {
  MetricJet out;
  out.g = g(x);
  out.ginv = inverse3(out.g);
  const auto dgv = dg(x);
  const auto d2gv = d2g(x);

  // Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc})
  double lower[3][3][3];  // Gamma_{d,bc}
  for (int d = 0; d < 3; ++d)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        lower[d][b][c] = 0.5 * (dgv[b][d][c] + dgv[c][d][b] - dgv[d][b][c]);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s = 0;
        for (int d = 0; d < 3; ++d) s += out.ginv[a][d] * lower[d][b][c];
        out.gamma[a][b][c] = s;
      }

  // d_e ginv = -ginv (d_e g) ginv
  Mat3 dginv[3];
  for (int e = 0; e < 3; ++e)
    for (int a = 0; a < 3; ++a)
      for (int d = 0; d < 3; ++d) {
        double s = 0;
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) s += out.ginv[a][p] * dgv[e][p][q] * out.ginv[q][d];
        dginv[e][a][d] = -s;
      }

  for (int e = 0; e < 3; ++e)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0;
          for (int d = 0; d < 3; ++d) {
            const double dlower =
                0.5 * (d2gv[e][b][d][c] + d2gv[e][c][d][b] - d2gv[e][d][b][c]);
            s += dginv[e][a][d] * lower[d][b][c] + out.ginv[a][d] * dlower;
          }
          out.dgamma[e][a][b][c] = s;
        }

  // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
  //           + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb};
  // Ric_{bd} = R^a_{bad}.
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) {
      double s = 0;
      for (int a = 0; a < 3; ++a) {
        s += out.dgamma[a][a][d][b] - out.dgamma[d][a][a][b];
        for (int e = 0; e < 3; ++e)
          s += out.gamma[a][a][e] * out.gamma[e][d][b] -
               out.gamma[a][d][e] * out.gamma[e][a][b];
      }
      out.ricci[b][d] = s;
    }
  out.scal = 0;
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) out.scal += out.ginv[b][d] * out.ricci[b][d];
  return out;
}

double gauss_lemma_defect(const AmbientMetric& m, double r) {
  double worst = 0.0;
  const int nt = 17, np = 32;
  const double pi = std::acos(-1.0);
  for (int i = 0; i < nt; ++i) {
    const double th = pi * (i + 0.5) / nt;
    for (int j = 0; j < np; ++j) {
      const double ph = 2.0 * pi * j / np;
      const Vec3 x = Vec3{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                          std::cos(th)} * r;
      const Vec3 gx = mat3_apply(m.g(x), x);
      worst = std::max(worst, norm(gx - x));
    }
  }
  return worst;
}

}  // namespace willmore

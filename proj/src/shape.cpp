#include "willmore/shape.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

RadialShape RadialShape::sphere(const Vec3& center, double R, int L, int ntheta,
                                int nphi) {
  RadialShape s;
  s.center = center;
  s.R = R;
  s.L = L;
  s.a.assign(sh_count(L), 0.0);
  s.ntheta = ntheta;
  s.nphi = nphi;
  return s;
}

double RadialShape::max_coeff() const {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

RadiusJet radius_jet(const RadialShape& s, double theta, double phi) {
  RadiusJet r{1.0, 0, 0, 0, 0, 0};
  for (int l = 0; l <= s.L; ++l)
    for (int m = -l; m <= l; ++m) {
      const double c = s.a[sh_index(l, m)];
      if (c == 0.0) continue;
      const Sh2 y = sh_eval(l, m, theta, phi);
      r.rho += c * y.v;
      r.dt += c * y.dt;
      r.dp += c * y.dp;
      r.dtt += c * y.dtt;
      r.dtp += c * y.dtp;
      r.dpp += c * y.dpp;
    }
  r.rho *= s.R;
  r.dt *= s.R;
  r.dp *= s.R;
  r.dtt *= s.R;
  r.dtp *= s.R;
  r.dpp *= s.R;
  return r;
}

namespace {

SurfaceJet jet_from_radius(const Vec3& center, const RadiusJet& r, double theta,
                           double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);

  const Vec3 w{st * cp, st * sp, ct};
  const Vec3 wt{ct * cp, ct * sp, -st};
  const Vec3 wp{-st * sp, st * cp, 0.0};
  const Vec3 wtt = -w;
  const Vec3 wtp{-ct * sp, ct * cp, 0.0};
  const Vec3 wpp{-st * cp, -st * sp, 0.0};

  SurfaceJet j;
  j.F = center + r.rho * w;
  j.Ft = r.dt * w + r.rho * wt;
  j.Fp = r.dp * w + r.rho * wp;
  j.Ftt = r.dtt * w + 2.0 * r.dt * wt + r.rho * wtt;
  j.Ftp = r.dtp * w + r.dt * wp + r.dp * wt + r.rho * wtp;
  j.Fpp = r.dpp * w + 2.0 * r.dp * wp + r.rho * wpp;
  return j;
}

}  // namespace

SurfaceJet shape_jet(const RadialShape& s, double theta, double phi) {
  return jet_from_radius(s.center, radius_jet(s, theta, phi), theta, phi);
}

QuadGrid sample_shape(const RadialShape& s) {
  if (s.ntheta < 4 || s.nphi < 8)
    throw std::invalid_argument("sample_shape: quadrature resolution too small");
  if ((int)s.a.size() != sh_count(s.L))
    throw std::invalid_argument("sample_shape: coefficient vector size mismatch");

  const double pi = std::acos(-1.0);
  const GaussLegendre gl = gauss_legendre(s.ntheta);

  QuadGrid q;
  q.nt = s.ntheta;
  q.np = s.nphi;
  q.theta.resize(q.nt);
  q.phi.resize(q.np);
  q.w.resize(q.nt * q.np);
  q.jets.resize(q.nt * q.np);

  const double dphi = 2.0 * pi / q.np;
  for (int j = 0; j < q.np; ++j) q.phi[j] = j * dphi;
  for (int i = 0; i < q.nt; ++i) {
    // Nodes in mu = cos(theta); the dtheta weight is w_mu / sin(theta).
    const double theta = std::acos(gl.x[q.nt - 1 - i]);
    q.theta[i] = theta;
    const double wt = gl.w[q.nt - 1 - i] / std::sin(theta);
    for (int j = 0; j < q.np; ++j) {
      const int k = q.idx(i, j);
      q.w[k] = wt * dphi;
      q.jets[k] = shape_jet(s, theta, q.phi[j]);
      const Vec3 rel = q.jets[k].F - s.center;
      if (norm(rel) < 1e-12 * s.R || dot(rel, rel) <= 0.0)
        throw std::invalid_argument("sample_shape: radius function not positive");
    }
  }
  // Positivity of rho itself (the jet norm test above catches collapse,
  // this catches sign flips).
  for (int i = 0; i < q.nt; ++i)
    for (int j = 0; j < q.np; ++j)
      if (radius_jet(s, q.theta[i], q.phi[j]).rho <= 0.0)
        throw std::invalid_argument("sample_shape: radius function not positive");
  return q;
}

ShapeSampler::ShapeSampler(int L, int ntheta, int nphi)
    : L_(L), nt_(ntheta), np_(nphi) {
  const double pi = std::acos(-1.0);
  const GaussLegendre gl = gauss_legendre(nt_);
  theta_.resize(nt_);
  phi_.resize(np_);
  w_.resize(nt_ * np_);
  const double dphi = 2.0 * pi / np_;
  for (int j = 0; j < np_; ++j) phi_[j] = j * dphi;
  for (int i = 0; i < nt_; ++i) {
    theta_[i] = std::acos(gl.x[nt_ - 1 - i]);
    const double wt = gl.w[nt_ - 1 - i] / std::sin(theta_[i]) * dphi;
    for (int j = 0; j < np_; ++j) w_[i * np_ + j] = wt;
  }
  const int nodes = nt_ * np_;
  basis_.resize(sh_count(L_) * nodes);
  for (int l = 0; l <= L_; ++l)
    for (int m = -l; m <= l; ++m) {
      const int c = sh_index(l, m);
      for (int i = 0; i < nt_; ++i)
        for (int j = 0; j < np_; ++j)
          basis_[c * nodes + i * np_ + j] = sh_eval(l, m, theta_[i], phi_[j]);
    }
}

QuadGrid ShapeSampler::sample(const RadialShape& s) const {
  if (s.L != L_ || s.ntheta != nt_ || s.nphi != np_ ||
      (int)s.a.size() != sh_count(L_))
    throw std::invalid_argument("ShapeSampler: shape dimensions do not match");
  QuadGrid q;
  q.nt = nt_;
  q.np = np_;
  q.theta = theta_;
  q.phi = phi_;
  q.w = w_;
  const int nodes = nt_ * np_;
  q.jets.resize(nodes);
  std::vector<RadiusJet> rj(nodes, RadiusJet{1, 0, 0, 0, 0, 0});
  for (int c = 0; c < sh_count(L_); ++c) {
    const double a = s.a[c];
    if (a == 0.0) continue;
    const Sh2* b = &basis_[c * nodes];
    for (int k = 0; k < nodes; ++k) {
      rj[k].rho += a * b[k].v;
      rj[k].dt += a * b[k].dt;
      rj[k].dp += a * b[k].dp;
      rj[k].dtt += a * b[k].dtt;
      rj[k].dtp += a * b[k].dtp;
      rj[k].dpp += a * b[k].dpp;
    }
  }
  for (int i = 0; i < nt_; ++i)
    for (int j = 0; j < np_; ++j) {
      const int k = i * np_ + j;
      RadiusJet r = rj[k];
      if (r.rho <= 0.0)
        throw std::invalid_argument("ShapeSampler: radius function not positive");
      r.rho *= s.R;
      r.dt *= s.R;
      r.dp *= s.R;
      r.dtt *= s.R;
      r.dtp *= s.R;
      r.dpp *= s.R;
      q.jets[k] = jet_from_radius(s.center, r, theta_[i], phi_[j]);
    }
  return q;
}

}  // namespace willmore

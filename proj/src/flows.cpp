#include "willmore/flows.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

SweepResult sphere_energy_sweep(const AmbientMetric& g, const std::vector<double>& radii,
                                int ntheta, int nphi) {
  if (g.kind == AmbientMetric::Kind::Conformal)
    throw std::invalid_argument(
        "sphere_energy_sweep: conformal metrics are not in normal form; coordinate "
        "spheres are not geodesic spheres");
  SweepResult out;
  const double pi = std::acos(-1.0);
  double num = 0.0, den = 0.0;
  for (double r : radii) {
    if (r <= 0 || r >= g.validity_radius)
      throw std::invalid_argument("sphere_energy_sweep: radius outside validity ball");
    const RadialShape s = RadialShape::sphere({0, 0, 0}, r, 0, ntheta, nphi);
    const double W = willmore_energy(s, g);
    out.table.push_back({r, W});
    num += (W - 8.0 * pi) * r * r;
    den += r * r * r * r;
  }
  out.c2 = den > 0 ? num / den : 0.0;
  double ss = 0.0;
  for (const auto& e : out.table) {
    const double mis = e.W - 8.0 * pi - out.c2 * e.r * e.r;
    ss += mis * mis;
  }
  out.fit_residual = std::sqrt(ss / std::max<size_t>(1, out.table.size()));
  return out;
}

RadialShape scaling_flow(const RadialShape& s, double t) {
  RadialShape out = s;
  const double f = std::exp(t);
  out.center = s.center * f;
  out.R = s.R * f;
  return out;
}

AreaAdjustment adjust_area(const RadialShape& s, double a, const AmbientMetric& g) {
  if (a <= 0) throw std::invalid_argument("adjust_area: target area must be positive");
  AreaAdjustment out;
  out.area_before = area(s, g);
  if (!(out.area_before > a / 2 && out.area_before < 3 * a / 2))
    throw std::invalid_argument("adjust_area: |Sigma| outside the (a/2, 3a/2) band");
  out.bound = 2.0 * std::abs(out.area_before - a) / a;

  auto area_at = [&](double t) {
    const RadialShape st = scaling_flow(s, t);
    if (!g.flat()) {
      const QuadGrid q = sample_shape(st);
      for (const auto& j : q.jets)
        if (!g.contains(j.F))
          throw std::invalid_argument("adjust_area: flow exits the validity ball");
    }
    return area(st, g);
  };
  // start near the flat prediction and widen until the monotone area
  // function is bracketed
  const double t_flat = 0.5 * std::log(a / out.area_before);
  double lo = t_flat - 0.05, hi = t_flat + 0.05;
  for (int it = 0; area_at(lo) >= a; ++it) {
    lo -= 0.1;
    if (it > 10) throw std::runtime_error("adjust_area: bisection bracket failed");
  }
  for (int it = 0; area_at(hi) <= a; ++it) {
    hi += 0.1;
    if (it > 10) throw std::runtime_error("adjust_area: bisection bracket failed");
  }
  double t = 0.0;
  for (int it = 0; it < 80; ++it) {
    t = 0.5 * (lo + hi);
    const double at = area_at(t);
    if (std::abs(at - a) <= 1e-10 * a) break;
    if (at < a)
      lo = t;
    else
      hi = t;
  }
  out.t0 = t;
  out.shape = scaling_flow(s, t);
  if (std::abs(t) > out.bound)
    throw std::runtime_error("adjust_area: |t0| exceeded the area-difference bound");
  return out;
}

double scaling_curvature_delta(const RadialShape& s, const AmbientMetric& g, double dt) {
  const double up = energy_area(scaling_flow(s, dt), g).A2_integral;
  const double dn = energy_area(scaling_flow(s, -dt), g).A2_integral;
  return (up - dn) / (2.0 * dt);
}

double estimate_lambda_scaling(const RadialShape& s, const AmbientMetric& g, double dt) {
  const EnergyArea up = energy_area(scaling_flow(s, dt), g);
  const EnergyArea dn = energy_area(scaling_flow(s, -dt), g);
  const double dA = up.A - dn.A;
  if (std::abs(dA) < 1e-14)
    throw std::runtime_error("estimate_lambda_scaling: vanishing area variation");
  return (up.W - dn.W) / dA;
}

namespace {

struct ProfilePoint {
  double norm_x;     // |F|
  double integrand_area;  // 2 pi area_el
  double integrand_W;     // pi H^2 area_el
  double integrand_flux;  // 2 pi H <x, nu> area_el
  Vec3 F;
};

ProfilePoint profile_at(const RadialShape& s, const AmbientMetric& g, double theta) {
  const SurfaceJet j = shape_jet(s, theta, 0.0);
  const PointGeometry pg = point_geometry(j, g);
  const double two_pi = 2.0 * std::acos(-1.0);
  ProfilePoint p;
  p.F = j.F;
  p.norm_x = norm(j.F);
  p.integrand_area = two_pi * pg.area_el;
  p.integrand_W = 0.5 * two_pi * pg.H * pg.H * pg.area_el;
  p.integrand_flux = two_pi * pg.H * dot(j.F, pg.nu) * pg.area_el;
  return p;
}

// Composite Simpson of the three profile integrands over [lo, hi].
void integrate_profile(const RadialShape& s, const AmbientMetric& g, double lo,
                       double hi, double* A, double* W, double* flux) {
  const int n = 2048;  // panels (even)
  const double h = (hi - lo) / n;
  double sa = 0, sw = 0, sf = 0;
  for (int k = 0; k <= n; ++k) {
    const double coef = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const ProfilePoint p = profile_at(s, g, lo + k * h);
    sa += coef * p.integrand_area;
    sw += coef * p.integrand_W;
    sf += coef * p.integrand_flux;
  }
  *A = sa * h / 3.0;
  *W = sw * h / 3.0;
  *flux = sf * h / 3.0;
}

}  // namespace

SimonReport simon_checks(const RadialShape& s, const std::vector<double>& radii) {
  for (int l = 0; l <= s.L; ++l)
    for (int m = -l; m <= l; ++m)
      if (m != 0 && s.a[sh_index(l, m)] != 0.0)
        throw std::invalid_argument("simon_checks: shape must be axisymmetric");

  const AmbientMetric g = euclidean_metric();
  const double pi = std::acos(-1.0);
  const double pole_eps = 1e-7;

  // Translate so the south pole sits at the origin (the center point of
  // the balls B_r must lie on the surface).
  RadialShape sh = s;
  sh.center = {0, 0, radius_jet(s, pi, 0.0).rho};

  // |x(theta)| must decrease monotonically toward the pole for the cut
  // radius to be a single theta value.
  const int scan = 2000;
  double prev = profile_at(sh, g, pole_eps).norm_x;
  double rmax = prev;
  for (int k = 1; k <= scan; ++k) {
    const double th = pole_eps + (pi - 2 * pole_eps) * k / scan;
    const double cur = profile_at(sh, g, th).norm_x;
    if (cur > prev + 1e-12)
      throw std::invalid_argument("simon_checks: |x| not monotone along the profile");
    prev = cur;
  }

  SimonReport rep;
  double flux_total;
  integrate_profile(sh, g, pole_eps, pi - pole_eps, &rep.total_area, &rep.total_W,
                    &flux_total);

  // Extrinsic diameter of the surface of revolution: the farthest pair
  // sits at antipodal phi, so only the profile is needed.
  {
    const int m = 600;
    std::vector<double> rr(m + 1), zz(m + 1);
    for (int k = 0; k <= m; ++k) {
      const double th = pole_eps + (pi - 2 * pole_eps) * k / m;
      const SurfaceJet j = shape_jet(sh, th, 0.0);
      rr[k] = std::hypot(j.F.x, j.F.y);
      zz[k] = j.F.z;
    }
    for (int k1 = 0; k1 <= m; ++k1)
      for (int k2 = k1; k2 <= m; ++k2) {
        const double d = std::hypot(rr[k1] + rr[k2], zz[k1] - zz[k2]);
        rep.diameter = std::max(rep.diameter, d);
      }
    rep.diameter_ratio =
        rep.diameter /
        (std::sqrt(rep.total_area) * std::sqrt(rep.total_W) + rep.total_area);
  }

  for (double r : radii) {
    if (r <= 0) throw std::invalid_argument("simon_checks: radius must be positive");
    SimonEntry e;
    e.r = r;
    if (r >= rmax) {
      e.contained = true;
      e.area_r = rep.total_area;
      e.W_r = rep.total_W;
      e.flux_r = flux_total;
      e.area_bound_slack = r * r * rep.total_W - rep.total_area;
    } else {
      // theta cut with |x(theta_r)| = r by bisection on the monotone profile.
      double lo = pole_eps, hi = pi - pole_eps;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (profile_at(sh, g, mid).norm_x > r)
          lo = mid;
        else
          hi = mid;
        if (hi - lo < 1e-14) break;
      }
      integrate_profile(sh, g, 0.5 * (lo + hi), pi - pole_eps, &e.area_r, &e.W_r,
                        &e.flux_r);
    }
    e.slack = e.area_r / (r * r) + e.W_r / 8.0 - 0.5 * e.flux_r / (r * r) - pi;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace willmore

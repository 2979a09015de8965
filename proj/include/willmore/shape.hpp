#pragma once

#include <vector>

#include "willmore/spherical.hpp"
#include "willmore/vec3.hpp"

namespace willmore {

// Radial graph over a sphere: F(theta, phi) = center + rho * omega with
// rho = R (1 + sum a_{lm} Y_{lm}) and omega the unit direction. The
// quadrature grid is Gauss-Legendre in cos(theta) times uniform phi.
struct RadialShape {
  Vec3 center;
  double R = 1.0;
  int L = 4;
  std::vector<double> a;  // sh_count(L) coefficients, dense (l, m) order
  int ntheta = 64;
  int nphi = 128;

  static RadialShape sphere(const Vec3& center, double R, int L = 4, int ntheta = 64,
                            int nphi = 128);

  double& coeff(int l, int m) { return a[sh_index(l, m)]; }
  double coeff(int l, int m) const { return a[sh_index(l, m)]; }
  double max_coeff() const;
};

// Position and parameter derivatives at one (theta, phi).
struct SurfaceJet {
  Vec3 F, Ft, Fp, Ftt, Ftp, Fpp;
};

// rho and its angular derivatives at one point.
struct RadiusJet {
  double rho, dt, dp, dtt, dtp, dpp;
};
RadiusJet radius_jet(const RadialShape& s, double theta, double phi);
SurfaceJet shape_jet(const RadialShape& s, double theta, double phi);

struct QuadGrid {
  int nt = 0, np = 0;
  std::vector<double> theta;  // nt Gauss-Legendre colatitudes
  std::vector<double> phi;    // np uniform longitudes
  std::vector<double> w;      // per-node dtheta dphi weight (no area density)
  std::vector<SurfaceJet> jets;

  int idx(int i, int j) const { return i * np + j; }
};

// Throws if the radius function is not positive on all nodes.
QuadGrid sample_shape(const RadialShape& s);

// Precomputed harmonic basis on a fixed quadrature grid; sampling a
// shape through this is a dense matvec instead of per-node recurrences
// (the inner loop of coefficient-space gradients).
class ShapeSampler {
 public:
  ShapeSampler(int L, int ntheta, int nphi);
  QuadGrid sample(const RadialShape& s) const;  // dims must match

 private:
  int L_, nt_, np_;
  std::vector<double> theta_, phi_, w_;
  std::vector<Sh2> basis_;  // [coeff * nodes + node]
};

}  // namespace willmore

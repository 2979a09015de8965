#pragma once

#include <vector>

namespace willmore {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
};
GaussLegendre gauss_legendre(int n);

// Real orthonormal spherical harmonic Y_{l,m}(theta, phi) with angular
// derivatives up to second order. m > 0 are the cosine harmonics, m < 0
// the sine harmonics (with |m|), m = 0 the zonal ones; orthonormal on the
// unit sphere with measure sin(theta) dtheta dphi.
struct Sh2 {
  double v = 0, dt = 0, dp = 0, dtt = 0, dtp = 0, dpp = 0;
};
Sh2 sh_eval(int l, int m, double theta, double phi);

// Dense coefficient indexing for l <= L: (l, m) -> l^2 + l + m.
inline int sh_index(int l, int m) { return l * l + l + m; }
inline int sh_count(int L) { return (L + 1) * (L + 1); }

}  // namespace willmore

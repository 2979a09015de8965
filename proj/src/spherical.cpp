#include "willmore/spherical.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

GaussLegendre gauss_legendre(int n) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: n must be >= 2");
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.x[n - 1 - i] = x;
    gl.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

namespace {

// Associated Legendre P_l^m(cos theta) together with its first theta
// derivative, by the standard upward recurrences in x = cos theta. The
// second theta derivative follows from the Legendre ODE
//   P'' + cot(theta) P' + (l(l+1) - m^2/sin^2 theta) P = 0,
// which keeps everything well conditioned away from the poles (the
// Gauss-Legendre grid never touches them).
struct Plm {
  double p, dp_dtheta, d2p_dtheta;
};

Plm assoc_legendre(int l, int m, double theta) {
  const double x = std::cos(theta);
  const double s = std::sin(theta);

  double pmm = 1.0;
  double fact = 1.0;
  for (int k = 0; k < m; ++k) {
    pmm *= -fact * s;
    fact += 2.0;
  }
  double plm = pmm, plm1 = 0.0;  // P_l^m and P_{l-1}^m
  if (l > m) {
    double pk1 = pmm;                      // P_{m}^m
    double pk = x * (2 * m + 1) * pmm;     // P_{m+1}^m
    for (int k = m + 2; k <= l; ++k) {
      const double pk2 = ((2 * k - 1) * x * pk - (k + m - 1) * pk1) / (k - m);
      pk1 = pk;
      pk = pk2;
    }
    plm = pk;
    plm1 = pk1;
  }

  Plm out;
  out.p = plm;
  // (1 - x^2) dP/dx = -l x P_l^m + (l + m) P_{l-1}^m; dP/dtheta = -s dP/dx.
  out.dp_dtheta = (l * x * plm - (l + m) * plm1) / s;
  const double cot = x / s;
  out.d2p_dtheta = -cot * out.dp_dtheta - (l * (l + 1) - m * m / (s * s)) * plm;
  return out;
}

}  // namespace

Sh2 sh_eval(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("sh_eval: bad (l, m)");
  const int ma = std::abs(m);
  const double pi = std::acos(-1.0);

  double nrm = (2.0 * l + 1.0) / (4.0 * pi);
  for (int k = l - ma + 1; k <= l + ma; ++k) nrm /= k;
  nrm = std::sqrt(nrm);
  if (m != 0) nrm *= std::sqrt(2.0);

  const Plm P = assoc_legendre(l, ma, theta);
  const double A = nrm * P.p;
  const double At = nrm * P.dp_dtheta;
  const double Att = nrm * P.d2p_dtheta;

  double g, gp, gpp;
  if (m > 0) {
    g = std::cos(ma * phi);
    gp = -ma * std::sin(ma * phi);
    gpp = -ma * ma * g;
  } else if (m < 0) {
    g = std::sin(ma * phi);
    gp = ma * std::cos(ma * phi);
    gpp = -ma * ma * g;
  } else {
    g = 1.0;
    gp = 0.0;
    gpp = 0.0;
  }

  Sh2 out;
  out.v = A * g;
  out.dt = At * g;
  out.dp = A * gp;
  out.dtt = Att * g;
  out.dtp = At * gp;
  out.dpp = A * gpp;
  return out;
}

}  // namespace willmore

#pragma once

#include <array>
#include <vector>

#include "willmore/vec3.hpp"

namespace willmore {

// Algebraic curvature tensor at the origin of a normal coordinate
// system, with the index symmetries enforced at validation time.
// Conventions: Ric_{kl} = sum_i R_{ikil}, Scal = sum Ric_{kk}; the
// constant-curvature tensor kappa (d_ij d_kl - d_il d_kj) then has
// Scal = 6 kappa.
struct Riemann3 {
  double c[3][3][3][3] = {};

  static Riemann3 zero() { return {}; }
  static Riemann3 constant_curvature(double kappa);

  Riemann3 scaled(double s) const;

  // Throws on violation of antisymmetry, pair symmetry, or the first
  // Bianchi identity.
  void validate(double tol = 1e-12) const;

  Mat3 ricci() const;
  double scal() const;
  double max_abs() const;
};

// Pointwise metric data: g, its inverse, Christoffels, their first
// derivatives, and the curvature assembled from them.
struct MetricJet {
  Mat3 g, ginv;
  double gamma[3][3][3] = {};       // Gamma^a_{bc}
  double dgamma[3][3][3][3] = {};   // d_d Gamma^a_{bc}
  Mat3 ricci;
  double scal = 0.0;
};

// Ambient metrics with closed-form derivatives:
//   euclidean     g = delta
//   normal_form   g_ij = delta_ij - (1/3) R_ikjl x^k x^l
//   conformal     g = e^{2 phi} delta with phi = -eps (|x-q|^2 - beta |x-q|^4)
// The conformal kind exists only for the minimizer's localization
// experiment; it is not a normal-coordinate form. With beta = 0 the
// scalar curvature of the plain quadratic well is actually MINIMIZED
// at q (the e^{-2 phi} prefactor wins over -4 lap phi); beta > eps/2
// turns q into the strict maximum of Scal, which is the configuration
// the localization experiment needs.
struct AmbientMetric {
  enum class Kind { Euclidean, NormalForm, Conformal } kind = Kind::Euclidean;
  Riemann3 riem;
  double conf_eps = 0.0;
  double conf_beta = 0.0;
  Vec3 conf_q;
  double validity_radius = 0.0;

  Mat3 g(const Vec3& x) const;
  std::array<Mat3, 3> dg(const Vec3& x) const;            // [c] = d_c g
  std::array<std::array<Mat3, 3>, 3> d2g(const Vec3& x) const;  // [d][c] = d_d d_c g
  MetricJet jet(const Vec3& x) const;
  bool flat() const { return kind == Kind::Euclidean; }
  // whether x lies in the validity ball (centered at q for the
  // conformal kind, at the origin otherwise)
  bool contains(const Vec3& x) const {
    const Vec3 c = kind == Kind::Conformal ? conf_q : Vec3{};
    return norm(x - c) < validity_radius;
  }
};

AmbientMetric euclidean_metric();
AmbientMetric normal_form_metric(const Riemann3& riem);
AmbientMetric conformal_metric(double eps, const Vec3& q, double beta = 0.0);

// Max over sample directions on |x| = r of |g(x) x - x| (the Gauss
// lemma; identically zero for euclidean and normal-form kinds).
double gauss_lemma_defect(const AmbientMetric& m, double r);

}  // namespace willmore

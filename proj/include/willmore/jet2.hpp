#pragma once

#include <cmath>

namespace willmore {

// Second-order jet in two variables: value plus first and second partials.
// Surface parametrizations are written once in jet arithmetic and all the
// derivatives needed by the geometry come out consistent.
struct Jet2 {
  double v = 0, dx = 0, dy = 0, dxx = 0, dxy = 0, dyy = 0;

  static Jet2 var_x(double x) { return {x, 1, 0, 0, 0, 0}; }
  static Jet2 var_y(double y) { return {y, 0, 1, 0, 0, 0}; }
  static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxx + b.dxx, a.dxy + b.dxy, a.dyy + b.dyy};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxx - b.dxx, a.dxy - b.dxy, a.dyy - b.dyy};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.dx, -a.dy, -a.dxx, -a.dxy, -a.dyy}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.dx * b.v + a.v * b.dx,
          a.dy * b.v + a.v * b.dy,
          a.dxx * b.v + 2 * a.dx * b.dx + a.v * b.dxx,
          a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy,
          a.dyy * b.v + 2 * a.dy * b.dy + a.v * b.dyy};
}

inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.v, s * a.dx, s * a.dy, s * a.dxx, s * a.dxy, s * a.dyy};
}
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }
inline Jet2 operator+(const Jet2& a, double s) { Jet2 r = a; r.v += s; return r; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { return a + (-s); }
inline Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }

// Chain rule for a scalar function with derivatives f', f''.
inline Jet2 chain(const Jet2& a, double f, double fp, double fpp) {
  return {f,
          fp * a.dx,
          fp * a.dy,
          fpp * a.dx * a.dx + fp * a.dxx,
          fpp * a.dx * a.dy + fp * a.dxy,
          fpp * a.dy * a.dy + fp * a.dyy};
}

inline Jet2 inv(const Jet2& a) { return chain(a, 1.0 / a.v, -1.0 / (a.v * a.v), 2.0 / (a.v * a.v * a.v)); }
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 operator/(double s, const Jet2& a) { return s * inv(a); }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }

inline Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet2 sinh(const Jet2& a) { return chain(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet2 cosh(const Jet2& a) { return chain(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }
inline Jet2 exp(const Jet2& a) { const double e = std::exp(a.v); return chain(a, e, e, e); }
inline Jet2 log(const Jet2& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

}  // namespace willmore

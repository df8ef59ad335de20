#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heis {

template <class T>
using Vec3 = std::array<T, 3>;

using Vec3d = Vec3<double>;

struct HPoint {
  double x1 = 0, x2 = 0, x3 = 0;

  Vec3d coords() const { return {x1, x2, x3}; }
  static HPoint from(const Vec3d& v) { return {v[0], v[1], v[2]}; }
  bool finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }
};

// Coefficients on {X1, X2, X3} (not X3^L) at base.
struct FrameVector {
  double c1 = 0, c2 = 0, c3 = 0;
  HPoint base{};

  double c3L(double L) const { return c3 * std::sqrt(L); }
  static FrameVector fromL(double a1, double a2, double a3L, double L, HPoint base = {}) {
    return {a1, a2, a3L / std::sqrt(L), base};
  }
};

struct HorizontalVector {
  double c1 = 0, c2 = 0;
  HPoint base{};

  double norm() const { return std::hypot(c1, c2); }
};

class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// a*b with a in the role of y and b in the role of x.
template <class T>
Vec3<T> group_mul(const Vec3<T>& a, const Vec3<T>& b) {
  return {b[0] + a[0], b[1] + a[1], b[2] + a[2] - 0.5 * (b[0] * a[1] - b[1] * a[0])};
}

inline HPoint group_mul(const HPoint& a, const HPoint& b) {
  return HPoint::from(group_mul(a.coords(), b.coords()));
}

inline HPoint group_inverse(const HPoint& a) { return {-a.x1, -a.x2, -a.x3}; }

template <class T>
Vec3<T> dilate(double r, const Vec3<T>& p) {
  return {r * p[0], r * p[1], (r * r) * p[2]};
}

inline HPoint dilate(double r, const HPoint& p) {
  if (!(r > 0)) throw std::invalid_argument("dilate: factor must be positive");
  return HPoint::from(dilate(r, p.coords()));
}

// Rotation by theta about the x3-axis.
template <class T>
Vec3<T> rotate_x3(double theta, const Vec3<T>& p) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]};
}

inline HPoint rotate_x3(double theta, const HPoint& p) {
  return HPoint::from(rotate_x3(theta, p.coords()));
}

inline double contact_form(const HPoint& p, const Vec3d& v) {
  return v[2] - 0.5 * (p.x1 * v[1] - p.x2 * v[0]);
}

inline FrameVector frame_from_euclidean(const HPoint& p, const Vec3d& v) {
  return {v[0], v[1], contact_form(p, v), p};
}

inline Vec3d euclidean_from_frame(const FrameVector& f) {
  const HPoint& p = f.base;
  return {f.c1, f.c2, f.c3 - 0.5 * p.x2 * f.c1 + 0.5 * p.x1 * f.c2};
}

inline HorizontalVector J_rotate(const HorizontalVector& h) { return {h.c2, -h.c1, h.base}; }

inline double horizontal_dot(const HorizontalVector& a, const HorizontalVector& b) {
  return a.c1 * b.c1 + a.c2 * b.c2;
}

// Euclidean components of X1, X2, X3 at p.
inline Vec3d X1_at(const HPoint& p) { return {1.0, 0.0, -0.5 * p.x2}; }
inline Vec3d X2_at(const HPoint& p) { return {0.0, 1.0, 0.5 * p.x1}; }
inline Vec3d X3_at(const HPoint&) { return {0.0, 0.0, 1.0}; }

}  // namespace heis

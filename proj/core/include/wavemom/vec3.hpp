#pragma once
#include <cmath>
#include <stdexcept>

namespace wavemom {

//! Cartesian 3-vector in natural units. Components are validated finite on
//! construction; NaN/Inf never propagates past this boundary.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(z)))
      throw std::invalid_argument("Vec3: non-finite component");
  }

  Vec3 &operator+=(const Vec3 &o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Vec3 &operator-=(const Vec3 &o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Vec3 &operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }

  friend Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
  friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
  friend Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }

  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double perp() const { return std::hypot(x, y); }
};

inline double dot(const Vec3 &a, const Vec3 &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double max_abs(const Vec3 &a) {
  return std::max({std::fabs(a.x), std::fabs(a.y), std::fabs(a.z)});
}

} // namespace wavemom

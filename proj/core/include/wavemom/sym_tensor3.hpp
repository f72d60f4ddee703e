#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavemom/vec3.hpp"

namespace wavemom {

//! Symmetric 3x3 tensor stored as its six independent components, so symmetry
//! cannot be broken by construction.
struct SymTensor3 {
  double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;

  constexpr SymTensor3() = default;
  SymTensor3(double xx_, double yy_, double zz_, double xy_, double xz_, double yz_)
      : xx(xx_), yy(yy_), zz(zz_), xy(xy_), xz(xz_), yz(yz_) {
    for (double c : {xx, yy, zz, xy, xz, yz})
      if (!std::isfinite(c))
        throw std::invalid_argument("SymTensor3: non-finite component");
  }

  static SymTensor3 diag(double a, double b, double c) { return {a, b, c, 0, 0, 0}; }
  static SymTensor3 zero() { return {}; }

  //! 3 n_a n_b - n^2 delta_ab for a vector n (the canonical quadrupole shape).
  static SymTensor3 outer_quadrupole(const Vec3 &n) {
    const double n2 = n.norm2();
    return {3 * n.x * n.x - n2, 3 * n.y * n.y - n2, 3 * n.z * n.z - n2,
            3 * n.x * n.y, 3 * n.x * n.z, 3 * n.y * n.z};
  }

  double trace() const { return xx + yy + zz; }

  double max_abs() const {
    return std::max({std::fabs(xx), std::fabs(yy), std::fabs(zz),
                     std::fabs(xy), std::fabs(xz), std::fabs(yz)});
  }

  double frobenius() const {
    return std::sqrt(xx * xx + yy * yy + zz * zz +
                     2 * (xy * xy + xz * xz + yz * yz));
  }

  Vec3 operator*(const Vec3 &v) const {
    return {xx * v.x + xy * v.y + xz * v.z,
            xy * v.x + yy * v.y + yz * v.z,
            xz * v.x + yz * v.y + zz * v.z};
  }

  //! v . T . v
  double quad_form(const Vec3 &v) const { return dot(v, (*this) * v); }

  SymTensor3 &operator+=(const SymTensor3 &o) {
    xx += o.xx; yy += o.yy; zz += o.zz; xy += o.xy; xz += o.xz; yz += o.yz;
    return *this;
  }
  SymTensor3 &operator-=(const SymTensor3 &o) {
    xx -= o.xx; yy -= o.yy; zz -= o.zz; xy -= o.xy; xz -= o.xz; yz -= o.yz;
    return *this;
  }
  SymTensor3 &operator*=(double s) {
    xx *= s; yy *= s; zz *= s; xy *= s; xz *= s; yz *= s;
    return *this;
  }
  friend SymTensor3 operator+(SymTensor3 a, const SymTensor3 &b) { return a += b; }
  friend SymTensor3 operator-(SymTensor3 a, const SymTensor3 &b) { return a -= b; }
  friend SymTensor3 operator*(double s, SymTensor3 a) { return a *= s; }
  friend SymTensor3 operator*(SymTensor3 a, double s) { return a *= s; }
};

//! t - (tr t / 3) I. Idempotent; result trace vanishes to machine precision.
SymTensor3 traceless_part(const SymTensor3 &t);

//! Validating constructor for tensors that must already be traceless:
//! throws InvalidSpec if |tr t| > 1e-12 * max|t| (relative).
SymTensor3 require_traceless(const SymTensor3 &t);

inline double max_abs_diff(const SymTensor3 &a, const SymTensor3 &b) {
  return (a - b).max_abs();
}

} // namespace wavemom

#include "wavemom/fields.hpp"

#include <algorithm>
#include <cmath>

#include "wavemom/errors.hpp"

namespace wavemom {

Vec3 cart_to_cyl(const Vec3 &v, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {v.x * c + v.y * s, -v.x * s + v.y * c, v.z};
}

Vec3 quadrupole_field(const SymTensor3 &q, const Vec3 &r) {
  const double r2 = r.norm2();
  if (r2 <= 0)
    throw OriginSingularity();
  const double rn = std::sqrt(r2);
  const double r5 = r2 * r2 * rn;
  const double r7 = r5 * r2;
  const double rqr = q.quad_form(r);
  const Vec3 qr = q * r;
  return r * (2.5 * rqr / r7) - qr * (1.0 / r5);
}

VortexFieldComponents vortex_field_components(double mean_rho2, double r,
                                              double theta) {
  if (!(r > 0))
    throw OriginSingularity();
  const double c = std::cos(theta), s = std::sin(theta);
  const double a = 0.75 * mean_rho2 / (r * r * r * r);
  return {a * s * (1.0 - 5.0 * c * c), a * c * (3.0 - 5.0 * c * c)};
}

AiryFieldComponents airy_field_components(double sigma, double xi, double eta,
                                          double r, double theta, double phi) {
  if (!(r > 0))
    throw OriginSingularity();
  const double s4 = sigma * sigma * sigma * sigma;
  const double xi6 = std::pow(xi, 6);
  const double a = 0.25 * s4 * xi6 / (r * r * r * r);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double c2t = ct * ct, s2t = st * st;
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double ce2 = std::cos(eta) * std::cos(eta);
  // azimuthal profile of the quadrupole along n
  const double w = 2.0 - 3.0 * ce2 + 3.0 * cp * cp * (2.0 * ce2 - 1.0);
  AiryFieldComponents out;
  out.e_rho = a * st * ((3.0 - 5.0 * c2t) * w - 5.0 * c2t);
  out.e_z = a * ct *
            (5.0 * (3.0 * s2t * ce2 * std::cos(2.0 * phi) +
                    s2t * (2.0 - 3.0 * cp * cp) - c2t) +
             2.0);
  out.e_phi = 6.0 * a * st * cp * sp * std::cos(2.0 * eta);
  return out;
}

Vec3 dipole_field(const Vec3 &mu, const Vec3 &r) {
  const double r2 = r.norm2();
  if (r2 <= 0)
    throw OriginSingularity();
  const double rn = std::sqrt(r2);
  const Vec3 n = r / rn;
  return (n * (3.0 * dot(n, mu)) - mu) * (1.0 / (r2 * rn));
}

namespace {

FieldSample total_field_at(const MomentSet &ms, const Vec3 &pos, double r,
                           double theta, double phi) {
  FieldSample out;
  out.r = r;
  out.theta = theta;
  out.phi = phi;
  out.rho = pos.perp();
  out.z = pos.z;
  const Vec3 n = pos / r;
  const Vec3 e_cart = n * (1.0 / (r * r)) + quadrupole_field(ms.q, pos);
  const Vec3 h_cart = dipole_field(ms.mu, pos);
  out.E = cart_to_cyl(e_cart, phi);
  out.H = cart_to_cyl(h_cart, phi);

  // The azimuthal components reduce symbolically: every term proportional to
  // n drops (phihat.n = 0), leaving -(phihat.Q.n)/r^4 and -(phihat.mu)/r^3.
  // Evaluating these directly keeps the axisymmetric zeros exact.
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double phi_q_n =
      st * (ms.q.xx * (-sp * cp) + ms.q.yy * (cp * sp) +
            ms.q.xy * (cp * cp - sp * sp)) +
      ct * (ms.q.yz * cp - ms.q.xz * sp);
  const double r4 = r * r * r * r;
  out.E.y = -phi_q_n / r4;
  out.H.y = (sp * ms.mu.x - cp * ms.mu.y) / (r * r * r);
  return out;
}

} // namespace

FieldSample total_field(const MomentSet &ms, const Vec3 &r) {
  const double rn = r.norm();
  if (!(rn > 0))
    throw OriginSingularity();
  return total_field_at(ms, r, rn, std::acos(std::clamp(r.z / rn, -1.0, 1.0)),
                        std::atan2(r.y, r.x));
}

FieldSample total_field(const MomentSet &ms, double r, double theta, double phi) {
  if (!(r > 0))
    throw OriginSingularity();
  const Vec3 pos{r * std::sin(theta) * std::cos(phi),
                 r * std::sin(theta) * std::sin(phi), r * std::cos(theta)};
  return total_field_at(ms, pos, r, theta, phi);
}

} // namespace wavemom

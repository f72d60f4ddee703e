#pragma once
#include "wavemom/moment_set.hpp"

namespace wavemom {

//! One far-zone field sample. E and H are given in the cylindrical basis
//! (rho, phi, z) attached to the sample's azimuth; natural units with unit
//! charge. Valid at large distances where higher multipoles are negligible.
struct FieldSample {
  double r = 0, theta = 0, phi = 0; // spherical position
  double rho = 0, z = 0;            // cylindrical view of the same point
  Vec3 E{};                         // (E_rho, E_phi, E_z)
  Vec3 H{};                         // (H_rho, H_phi, H_z)
};

//! Static quadrupole field, Cartesian components:
//! E_a = (5/2) r_a (r.Q.r)/r^7 - (Q r)_a / r^5. Throws OriginSingularity.
Vec3 quadrupole_field(const SymTensor3 &q, const Vec3 &r);

//! Closed-form field of the axially symmetric vortex quadrupole
//! Q = mean_rho2 diag(1/2, 1/2, -1): returns (E_rho, E_z); E_phi vanishes
//! identically.
struct VortexFieldComponents {
  double e_rho = 0, e_z = 0;
};
VortexFieldComponents vortex_field_components(double mean_rho2, double r, double theta);

//! Closed-form field of the Airy quadrupole with skew vector
//! xi^3 (cos eta, sin eta): all three cylindrical components. E_phi and the
//! phi-dependence of the other components vanish at eta = pi/4.
struct AiryFieldComponents {
  double e_rho = 0, e_phi = 0, e_z = 0;
};
AiryFieldComponents airy_field_components(double sigma, double xi, double eta,
                                          double r, double theta, double phi);

//! Static magnetic dipole field, Cartesian: H = (3 n (n.mu) - mu)/r^3.
Vec3 dipole_field(const Vec3 &mu, const Vec3 &r);

//! Unit-charge Coulomb term plus quadrupole for E, dipole for H, resolved
//! into the cylindrical basis at the sample point.
FieldSample total_field(const MomentSet &ms, const Vec3 &r);
FieldSample total_field(const MomentSet &ms, double r, double theta, double phi);

//! Cartesian vector -> cylindrical components (rho, phi, z) at azimuth phi.
Vec3 cart_to_cyl(const Vec3 &v, double phi);

} // namespace wavemom

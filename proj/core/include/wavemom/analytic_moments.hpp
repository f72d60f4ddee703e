#pragma once
#include "wavemom/moment_set.hpp"
#include "wavemom/packet.hpp"

namespace wavemom {

//! Closed-form intrinsic moments of the vortex (LG) packet:
//! mu = (0, 0, ell/2m), Q = (|ell|/sigma^2) diag(1/2, 1/2, -1).
MomentSet vortex_moments(int ell, double sigma, double mass);

//! Closed-form intrinsic moments of the Airy packet: d = mu = 0,
//! Q = (sigma^4/2) diag(2 xx^2 - yy^2, 2 yy^2 - xx^2, -xx^2 - yy^2)
//! with xx = xi_x3, yy = xi_y3 (Q depends only on their squares).
MomentSet airy_moments(double xi_x3, double xi_y3, double sigma);

//! Closed-form intrinsic moments of the cat state: d = mu = 0,
//! Q = (3 r0_a r0_b - r0^2 delta_ab) / (1 +- exp(-sigma^2 r0^2)).
//! Throws DegenerateCat for the odd state with sigma|r0| < 1e-6.
MomentSet cat_moments(const Vec3 &r0, CatParity parity, double sigma);

//! Closed-form moments for any built-in family with one (nullopt for
//! gauss_phase with a nontrivial phase, which has no general closed form).
std::optional<MomentSet> analytic_moments(const PacketSpec &spec);

//! Lab-frame (d, mu) of a packet moving with velocity beta, from rest-frame
//! moments taken at fixed lab time:
//!   d  = d0_par/gamma + d0_perp + beta x mu0
//!   mu = mu0_par/gamma + (1 + 1/gamma^2)/2 mu0_perp - (beta x d0)/2
//! q is left untouched (it stays the rest-frame tensor; no boost law is
//! implemented for it) and the result is flagged dipoles_boosted.
//! Throws SuperluminalBoost for |beta| >= 1.
MomentSet boost_dipoles(const MomentSet &rest, const Vec3 &beta);

} // namespace wavemom

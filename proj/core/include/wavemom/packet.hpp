#pragma once
#include <array>
#include <complex>
#include <optional>
#include <string>

#include "wavemom/phase_expr.hpp"
#include "wavemom/vec3.hpp"

namespace wavemom {

enum class Family { GaussPhase, LgVortex, Airy, Cat };
enum class CatParity { Even, Odd };

//! Declarative description of a packet: family plus parameters. The momentum
//! width is isotropic (sigma on all three axes) and the mean momentum points
//! along z, which separates non-Gaussianity from mere shape asymmetry. All
//! evaluators sample the state at t = 0 and ignore spreading.
struct PacketSpec {
  Family family = Family::GaussPhase;
  double sigma = 1.0;  // momentum width, > 0; sigma_perp = 1/sigma
  Vec3 mean_p{};       // must have zero transverse part
  double mass = 1.0;   // > 0

  // gauss_phase
  PhaseExpr phase{};

  // lg_vortex
  int ell = 0;

  // airy: phase (xi_x3 p_x^3 + xi_y3 p_y^3)/3; parameters are the cubed
  // skew lengths, so negative skews are representable.
  double xi_x3 = 0.0;
  double xi_y3 = 0.0;

  // cat: superposition of two phase-free Gaussians centered at +-r0
  // (transverse plane only).
  Vec3 cat_r0{};
  CatParity parity = CatParity::Even;

  // Optional rigid translation: multiplies psi(p) by exp(-i shift.p),
  // moving the packet to +shift in position space. Used by the origin-shift
  // invariance checks.
  Vec3 shift{};

  double sigma_perp() const { return 1.0 / sigma; }
};

//! Validate invariants; throws InvalidSpec (or DegenerateCat for an odd cat
//! with sigma*|r0| < 1e-6, whose normalization denominator vanishes).
void validate(const PacketSpec &spec);

//! Normalized momentum-space amplitude psi(p), including the family's
//! normalization constant. Integral of |psi|^2 d^3p/(2pi)^3 is 1.
std::complex<double> psi_p(const PacketSpec &spec, const Vec3 &p);

//! Closed-form position-space amplitude where one exists (phase-free
//! Gaussian, LG vortex, cat); nullopt for Airy and general phase packets,
//! which go through the discrete Fourier transform in the grid oracle.
std::optional<std::complex<double>> psi_r_closed(const PacketSpec &spec, const Vec3 &r);

//! Closed-form position-space gradient for the same families; nullopt otherwise.
std::optional<std::array<std::complex<double>, 3>>
grad_psi_r_closed(const PacketSpec &spec, const Vec3 &r);

//! Advisory note when an Airy packet exceeds the physical skew bound
//! |xi| <= sigma_perp (the closed forms stay evaluable regardless).
std::optional<std::string> physical_bound_note(const PacketSpec &spec);

} // namespace wavemom

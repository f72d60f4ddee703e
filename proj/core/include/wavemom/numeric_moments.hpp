#pragma once
#include "wavemom/moment_set.hpp"
#include "wavemom/packet.hpp"
#include "wavemom/quadrature.hpp"

namespace wavemom {

struct ConvergenceInfo {
  bool checked = false;
  double max_shift = 0.0; // largest component move under node doubling
  int nodes_radial = 0, nodes_angular = 0, nodes_z = 0; // counts actually used
  std::int64_t mc_samples = 0;
  double mc_max_stderr = 0.0; // block-estimated, Monte Carlo only
};

//! Result of a momentum-space moment evaluation. `intrinsic` follows the
//! origin-independent definition (its d is identically zero); the raw
//! origin-dependent dipole is reported separately.
struct MomentReport {
  MomentSet intrinsic;
  Vec3 extrinsic_d{};
  Vec3 mean_p{};
  double norm = 1.0;
  double r2_spread = 0.0; // <r^2> - <r>^2, the centered position spread
  ConvergenceInfo convergence{};
};

//! Phase-covariance formulas for pure-phase Gaussian packets:
//!   d_int = 0,
//!   mu_int = (<p x g> - <p> x <g>) / (2m),
//!   Q_int  = 3 Cov(g_a, g_b) - delta_ab tr Cov,   g = dphi/dp,
//! with averages over |psi|^2. Requires family gauss_phase.
//! Throws VortexDivergence when the phase carries an additive integer vortex
//! term (the quadrupole has no finite value on a plain Gaussian envelope).
MomentReport moments_phase_formula(const PacketSpec &spec, const QuadratureConfig &cfg);

//! General path for any packet: position operators realized as momentum
//! derivatives of the full complex psi(p),
//!   <r>        = -Im <u* du> ,
//!   <L>        =  Im <u* (p x du)> ,
//!   <r_a r_b>  =  Re <(d_a psi)* (d_b psi)> ,
//! followed by the intrinsic subtraction. Reduces to the phase-covariance
//! formulas for pure-phase packets. Throws QuadratureNonConvergence when
//! doubling the nodes moves any component by more than cfg.tolerance, and
//! VortexDivergence for gauss_phase packets with a vortex phase.
MomentReport moments_general(const PacketSpec &spec, const QuadratureConfig &cfg);

//! Numerically integrate |psi(p)|^2 d^3p/(2pi)^3; throws NormalizationDrift
//! when |result - 1| exceeds cfg.norm_tolerance.
double norm_check(const PacketSpec &spec, const QuadratureConfig &cfg);

//! Origin-shift diagnostic: recompute moments after multiplying psi(p) by
//! exp(-i r0 . p) and report how far the intrinsic moments moved (they must
//! not) and how far the extrinsic dipole moved relative to the exact r0.
struct ShiftInvarianceReport {
  MomentReport base;
  MomentReport shifted;
  double mu_delta = 0;
  double q_delta = 0;
  Vec3 d_shift_error{}; // (d_ext' - d_ext) - r0
};
ShiftInvarianceReport shift_invariance_check(const PacketSpec &spec, const Vec3 &r0,
                                             const QuadratureConfig &cfg);

//! Scheme actually used for a spec (the config may leave it to the family).
QuadScheme resolve_scheme(const PacketSpec &spec, const QuadratureConfig &cfg);

} // namespace wavemom

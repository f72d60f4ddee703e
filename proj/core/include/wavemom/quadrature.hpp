#pragma once
#include <cstdint>
#include <optional>
#include <vector>

namespace wavemom {

enum class QuadScheme { TensorHermite, PolarLg, MonteCarlo };
enum class DerivativeMode { AnalyticAd, CentralDiff };

//! Discretization of the momentum-space averages. The deterministic schemes
//! make the family's |psi|^2 weight exact, so only the smooth remainder of
//! each integrand has to be resolved:
//!  - tensor_hermite: Gauss-Hermite in (p - <p>)/sigma on each axis
//!    (gauss_phase, airy, cat; the cat axis aligned with r0 is widened to
//!    keep >= 8 nodes per density oscillation period).
//!  - polar_lg: generalized Gauss-Laguerre in p_perp^2, uniform angular grid,
//!    Gauss-Hermite along z (LG packets, any ell).
//!  - monte_carlo: importance sampling from the family envelope with a fixed
//!    seed; results carry block-estimated standard errors.
struct QuadratureConfig {
  int nodes_per_axis = 48;                 // >= 8
  std::optional<QuadScheme> scheme = {};   // default: polar for LG, tensor otherwise
  DerivativeMode derivative_mode = DerivativeMode::AnalyticAd;
  double fd_step = 1e-5;                   // central_diff step, in [1e-8, 1e-3]
  std::int64_t mc_samples = 200000;
  std::uint64_t mc_seed = 12345;
  double tolerance = 1e-6;      // node-doubling convergence tolerance (absolute)
  bool check_convergence = true;
  double norm_tolerance = 1e-8; // NormalizationDrift threshold

  void validate() const;
};

//! One-dimensional Gaussian quadrature rule: nodes x and weights w.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

//! Gauss-Hermite rule for weight exp(-t^2); sum of weights is sqrt(pi).
const Rule1D &gauss_hermite(int n);

//! Generalized Gauss-Laguerre rule for weight s^alpha exp(-s), with the
//! weights normalized to sum to 1 (so large alpha never overflows).
const Rule1D &gauss_laguerre_normalized(int n, int alpha);

} // namespace wavemom

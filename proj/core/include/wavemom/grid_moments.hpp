#pragma once
#include <iosfwd>
#include <vector>

#include "wavemom/moment_set.hpp"
#include "wavemom/packet.hpp"

namespace wavemom {

//! Real-space verification grid. The box half width is given in units of
//! sigma_perp; by default it is 6 plus a family-dependent pad (sqrt|ell| for
//! LG, sigma|r0| for cat, the skew reach for airy, the probed phase-gradient
//! reach for general phases) plus the rigid shift.
struct GridConfig {
  int points_per_axis = 128;                 // power of two, >= 32
  std::optional<double> box_half_width = {}; // units of sigma_perp

  void validate() const;
};

double default_box_half_width(const PacketSpec &spec);

//! Charge and current densities sampled on the grid:
//! j0 = |psi|^2, j = Im[psi* grad psi]/m. Grid is node-centered,
//! r_i = (i - n/2) dr.
struct DensityField {
  int n = 0;
  double box_half = 0; // physical, natural length units
  double dr = 0;
  double norm = 0; // sum j0 dV
  std::vector<double> j0;
  std::array<std::vector<double>, 3> j;

  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
  }
  double coord(int i) const { return (i - n / 2) * dr; }
};

//! Sample psi on the grid (closed form where available, discrete Fourier
//! transform of psi(p) otherwise, with spectral derivatives) and build the
//! densities. Throws BoxTooSmall when the boundary density exceeds 1e-12 of
//! the peak, NormalizationDrift when the captured norm is off by > 1e-6.
DensityField build_densities(const PacketSpec &spec, const GridConfig &cfg);

struct GridMomentReport {
  MomentSet intrinsic; // provenance Grid
  Vec3 extrinsic_d{};
  Vec3 current_integral{}; // integral of j; should equal <p>/m
  double norm = 0;
  double box_half = 0;
  int n = 0;
};

//! Integrate the raw moment definitions over the grid, then apply the
//! intrinsic subtraction (including the d x integral-of-j dipole correction).
GridMomentReport integrate_moments(const DensityField &df);

//! build + integrate; streams slab-by-slab for closed-form families so large
//! grids never materialize the field.
GridMomentReport grid_moments(const PacketSpec &spec, const GridConfig &cfg);

//! sqrt(-Q_zz) from the integrated quadrupole of an LG packet, to compare
//! with sqrt(|ell|)/sigma. Requires ell != 0.
double lg_mean_radius(const PacketSpec &spec, const GridConfig &cfg);

//! CSV dump of one z = const slice (x, y, j0, jx, jy, jz) for external plots.
void dump_density_slice(const DensityField &df, int iz, std::ostream &os);

} // namespace wavemom

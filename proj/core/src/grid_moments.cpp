#include "wavemom/grid_moments.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <ostream>

#include "wavemom/errors.hpp"

namespace wavemom {
namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

struct Kahan {
  double s = 0, c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

bool has_closed_form(const PacketSpec &spec) {
  switch (spec.family) {
  case Family::LgVortex:
  case Family::Cat:
    return true;
  case Family::GaussPhase:
    return spec.phase.empty();
  case Family::Airy:
    return false;
  }
  return false;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

//==============================================================================
// Moment accumulation shared by the streaming and materialized paths.

struct MomentAccumulator {
  Kahan norm, d[3], jint[3], mu[3], m[6];
  double peak_j0 = 0, boundary_j0 = 0;

  void add(const Vec3 &r, double j0v, const Vec3 &jv, bool boundary) {
    peak_j0 = std::max(peak_j0, j0v);
    if (boundary)
      boundary_j0 = std::max(boundary_j0, j0v);
    norm.add(j0v);
    d[0].add(j0v * r.x);
    d[1].add(j0v * r.y);
    d[2].add(j0v * r.z);
    jint[0].add(jv.x);
    jint[1].add(jv.y);
    jint[2].add(jv.z);
    const Vec3 rxj = cross(r, jv);
    mu[0].add(0.5 * rxj.x);
    mu[1].add(0.5 * rxj.y);
    mu[2].add(0.5 * rxj.z);
    m[0].add(j0v * r.x * r.x);
    m[1].add(j0v * r.y * r.y);
    m[2].add(j0v * r.z * r.z);
    m[3].add(j0v * r.x * r.y);
    m[4].add(j0v * r.x * r.z);
    m[5].add(j0v * r.y * r.z);
  }

  GridMomentReport finish(double dV, double box_half, int n) const {
    if (boundary_j0 > 1e-12 * peak_j0)
      throw BoxTooSmall("density at the box boundary is " +
                        std::to_string(boundary_j0 / peak_j0) +
                        " of the peak (budget 1e-12); enlarge the box or refine the grid");
    const double total = norm.s * dV;
    if (std::fabs(total - 1.0) > 1e-6)
      throw NormalizationDrift(total,
                               "grid captured norm " + std::to_string(total) +
                                   "; enlarge the box or refine the grid");
    const double inv = 1.0 / norm.s;
    GridMomentReport rep;
    rep.norm = total;
    rep.box_half = box_half;
    rep.n = n;
    rep.extrinsic_d = Vec3{d[0].s, d[1].s, d[2].s} * inv;
    rep.current_integral = Vec3{jint[0].s, jint[1].s, jint[2].s} * (dV / total);
    const Vec3 mu_raw = Vec3{mu[0].s, mu[1].s, mu[2].s} * inv;
    const Vec3 &dd = rep.extrinsic_d;
    const double mxx = m[0].s * inv, myy = m[1].s * inv, mzz = m[2].s * inv,
                 mxy = m[3].s * inv, mxz = m[4].s * inv, myz = m[5].s * inv;
    const double cxx = mxx - dd.x * dd.x, cyy = myy - dd.y * dd.y,
                 czz = mzz - dd.z * dd.z, cxy = mxy - dd.x * dd.y,
                 cxz = mxz - dd.x * dd.z, cyz = myz - dd.y * dd.z;
    const double tr = cxx + cyy + czz;
    rep.intrinsic.provenance = Provenance::Grid;
    rep.intrinsic.mu = mu_raw - 0.5 * cross(dd, rep.current_integral);
    rep.intrinsic.q = SymTensor3{3 * cxx - tr, 3 * cyy - tr, 3 * czz - tr,
                                 3 * cxy,      3 * cxz,      3 * cyz};
    return rep;
  }
};

//==============================================================================
// Discrete-transform sampler for families without a closed position form.
// psi(r_j) = (dp/2pi)^3 sum_k psi(p_k) e^{i p_k r_j} with node-centered grids
// r_j = (j - n/2) dr, p_k = (k - n/2) dp, dp dr = 2pi/n. The index shift
// becomes (-1)^k pre- and (-1)^j post-twists around an FFT (n % 4 == 0 makes
// the leftover constant phase unity). Gradients by multiplication with
// i p_alpha in momentum space.

struct DftField {
  int n;
  double dr;
  std::vector<cplx> psi_r;
  std::array<std::vector<cplx>, 3> grad_r;
};

void backward_fft(int n, std::vector<cplx> &in, std::vector<cplx> &out) {
  fftw_plan plan = fftw_plan_dft_3d(
      n, n, n, reinterpret_cast<fftw_complex *>(in.data()),
      reinterpret_cast<fftw_complex *>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

DftField dft_sample(const PacketSpec &spec, int n, double box_half) {
  if (n > 128)
    throw InvalidSpec("transform-based grid path supports points_per_axis <= 128; "
                      "closed-form families stream at any size");
  const double dr = 2.0 * box_half / n;
  const double dp = kPi / box_half;
  const std::size_t total = static_cast<std::size_t>(n) * n * n;

  DftField field;
  field.n = n;
  field.dr = dr;

  // Twisted psi(p) samples.
  std::vector<cplx> psip(total);
  {
    std::size_t idx = 0;
    for (int kx = 0; kx < n; ++kx)
      for (int ky = 0; ky < n; ++ky)
        for (int kz = 0; kz < n; ++kz, ++idx) {
          const Vec3 p{(kx - n / 2) * dp, (ky - n / 2) * dp, (kz - n / 2) * dp};
          const double twist = ((kx + ky + kz) & 1) ? -1.0 : 1.0;
          psip[idx] = twist * psi_p(spec, p);
        }
  }

  const double scale = std::pow(dp / (2.0 * kPi), 3);
  std::vector<cplx> work(total), out(total);

  const auto untwist_into = [&](std::vector<cplx> &dst) {
    dst.resize(total);
    std::size_t idx = 0;
    for (int jx = 0; jx < n; ++jx)
      for (int jy = 0; jy < n; ++jy)
        for (int jz = 0; jz < n; ++jz, ++idx) {
          const double twist = ((jx + jy + jz) & 1) ? -scale : scale;
          dst[idx] = twist * out[idx];
        }
  };

  work = psip;
  backward_fft(n, work, out);
  untwist_into(field.psi_r);

  for (int axis = 0; axis < 3; ++axis) {
    std::size_t idx = 0;
    for (int kx = 0; kx < n; ++kx)
      for (int ky = 0; ky < n; ++ky)
        for (int kz = 0; kz < n; ++kz, ++idx) {
          const int k = axis == 0 ? kx : axis == 1 ? ky : kz;
          work[idx] = cplx(0, (k - n / 2) * dp) * psip[idx];
        }
    backward_fft(n, work, out);
    untwist_into(field.grad_r[axis]);
  }
  return field;
}

double resolve_box_half(const PacketSpec &spec, const GridConfig &cfg) {
  const double bhw = cfg.box_half_width ? *cfg.box_half_width
                                        : default_box_half_width(spec);
  if (!(bhw > 0))
    throw InvalidSpec("grid box half width must be positive");
  return bhw * spec.sigma_perp();
}

template <class Sampler>
GridMomentReport accumulate_grid(int n, double box_half, double mass,
                                 Sampler &&sample) {
  const double dr = 2.0 * box_half / n;
  const double dV = dr * dr * dr;
  MomentAccumulator acc;
  cplx psi, gx, gy, gz;
  for (int ix = 0; ix < n; ++ix) {
    const double x = (ix - n / 2) * dr;
    for (int iy = 0; iy < n; ++iy) {
      const double y = (iy - n / 2) * dr;
      const bool edge_xy = ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1;
      for (int iz = 0; iz < n; ++iz) {
        const double z = (iz - n / 2) * dr;
        sample(ix, iy, iz, x, y, z, psi, gx, gy, gz);
        const double j0v = std::norm(psi);
        const cplx pc = std::conj(psi);
        const Vec3 jv = Vec3{std::imag(pc * gx), std::imag(pc * gy),
                             std::imag(pc * gz)} *
                        (1.0 / mass);
        acc.add(Vec3{x, y, z}, j0v, jv, edge_xy || iz == 0 || iz == n - 1);
      }
    }
  }
  return acc.finish(dV, box_half, n);
}

} // namespace

void GridConfig::validate() const {
  if (points_per_axis < 32 || !is_power_of_two(points_per_axis))
    throw InvalidSpec("grid points_per_axis must be a power of two >= 32");
  if (box_half_width && !(*box_half_width > 0))
    throw InvalidSpec("grid box_half_width must be positive");
}

double default_box_half_width(const PacketSpec &spec) {
  // The stationary-phase point of a momentum-space phase puts probability at
  // position dphi/dp; the box must reach as far as the gradient at the last
  // momenta whose density clears the 1e-12 boundary budget (|p| ~ 5.5 sigma).
  constexpr double kReachSigmas = 5.5;
  double pad = 0;
  switch (spec.family) {
  case Family::LgVortex:
    pad = std::sqrt(static_cast<double>(std::abs(spec.ell)));
    break;
  case Family::Cat:
    pad = spec.sigma * spec.cat_r0.norm();
    break;
  case Family::Airy: {
    const double s3 = spec.sigma * spec.sigma * spec.sigma;
    pad = kReachSigmas * kReachSigmas *
          std::max(std::fabs(spec.xi_x3), std::fabs(spec.xi_y3)) * s3;
    break;
  }
  case Family::GaussPhase: {
    if (!spec.phase.empty()) {
      double reach = 0;
      const double step = kReachSigmas / 10.0;
      for (int ix = -10; ix <= 10; ++ix)
        for (int iy = -10; iy <= 10; ++iy)
          for (int iz = -10; iz <= 10; ++iz) {
            const Vec3 p = spec.mean_p + spec.sigma * Vec3{step * ix, step * iy,
                                                           step * iz};
            try {
              reach = std::max(reach, max_abs(spec.phase.eval_grad(p).grad));
            } catch (const SingularPoint &) {
            }
          }
      pad = spec.sigma * reach + 1.0;
    }
    break;
  }
  }
  return 6.0 + pad + spec.sigma * spec.shift.norm();
}

DensityField build_densities(const PacketSpec &spec, const GridConfig &cfg) {
  validate(spec);
  cfg.validate();
  const int n = cfg.points_per_axis;
  const double box_half = resolve_box_half(spec, cfg);

  DensityField df;
  df.n = n;
  df.box_half = box_half;
  df.dr = 2.0 * box_half / n;
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  df.j0.resize(total);
  for (auto &component : df.j)
    component.resize(total);

  const double inv_mass = 1.0 / spec.mass;
  Kahan norm;
  double peak = 0, boundary = 0;

  const auto store = [&](std::size_t idx, bool edge, const cplx &psi,
                         const cplx &gx, const cplx &gy, const cplx &gz) {
    const double j0v = std::norm(psi);
    const cplx pc = std::conj(psi);
    df.j0[idx] = j0v;
    df.j[0][idx] = std::imag(pc * gx) * inv_mass;
    df.j[1][idx] = std::imag(pc * gy) * inv_mass;
    df.j[2][idx] = std::imag(pc * gz) * inv_mass;
    norm.add(j0v);
    peak = std::max(peak, j0v);
    if (edge)
      boundary = std::max(boundary, j0v);
  };

  if (has_closed_form(spec)) {
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz, ++idx) {
          const Vec3 r{df.coord(ix), df.coord(iy), df.coord(iz)};
          const bool edge = ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1 ||
                            iz == 0 || iz == n - 1;
          const cplx psi = *psi_r_closed(spec, r);
          const auto grad = *grad_psi_r_closed(spec, r);
          store(idx, edge, psi, grad[0], grad[1], grad[2]);
        }
  } else {
    const DftField field = dft_sample(spec, n, box_half);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz, ++idx) {
          const bool edge = ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1 ||
                            iz == 0 || iz == n - 1;
          store(idx, edge, field.psi_r[idx], field.grad_r[0][idx],
                field.grad_r[1][idx], field.grad_r[2][idx]);
        }
  }

  const double dV = df.dr * df.dr * df.dr;
  df.norm = norm.s * dV;
  if (boundary > 1e-12 * peak)
    throw BoxTooSmall("density at the box boundary is " +
                      std::to_string(boundary / peak) +
                      " of the peak (budget 1e-12); enlarge the box or refine the grid");
  if (std::fabs(df.norm - 1.0) > 1e-6)
    throw NormalizationDrift(df.norm, "grid captured norm " +
                                          std::to_string(df.norm) +
                                          "; enlarge the box or refine the grid");
  return df;
}

GridMomentReport integrate_moments(const DensityField &df) {
  MomentAccumulator acc;
  std::size_t idx = 0;
  const int n = df.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz, ++idx) {
        const bool edge = ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1 ||
                          iz == 0 || iz == n - 1;
        acc.add(Vec3{df.coord(ix), df.coord(iy), df.coord(iz)}, df.j0[idx],
                Vec3{df.j[0][idx], df.j[1][idx], df.j[2][idx]}, edge);
      }
  return acc.finish(df.dr * df.dr * df.dr, df.box_half, n);
}

GridMomentReport grid_moments(const PacketSpec &spec, const GridConfig &cfg) {
  validate(spec);
  cfg.validate();
  const int n = cfg.points_per_axis;
  const double box_half = resolve_box_half(spec, cfg);

  if (has_closed_form(spec)) {
    // Streaming: nothing is materialized, so 256^3 refinement runs are cheap.
    return accumulate_grid(n, box_half, spec.mass,
                           [&](int, int, int, double x, double y, double z,
                               cplx &psi, cplx &gx, cplx &gy, cplx &gz) {
                             const Vec3 r{x, y, z};
                             psi = *psi_r_closed(spec, r);
                             const auto grad = *grad_psi_r_closed(spec, r);
                             gx = grad[0];
                             gy = grad[1];
                             gz = grad[2];
                           });
  }
  const DensityField df = build_densities(spec, cfg);
  return integrate_moments(df);
}

double lg_mean_radius(const PacketSpec &spec, const GridConfig &cfg) {
  if (spec.family != Family::LgVortex || spec.ell == 0)
    throw InvalidSpec("lg_mean_radius requires an lg_vortex packet with ell != 0");
  const GridMomentReport rep = grid_moments(spec, cfg);
  return std::sqrt(std::max(0.0, -rep.intrinsic.q.zz));
}

void dump_density_slice(const DensityField &df, int iz, std::ostream &os) {
  if (iz < 0 || iz >= df.n)
    throw InvalidSpec("slice index out of range");
  os << "x,y,j0,jx,jy,jz\n";
  char line[256];
  for (int ix = 0; ix < df.n; ++ix)
    for (int iy = 0; iy < df.n; ++iy) {
      const std::size_t idx = df.index(ix, iy, iz);
      std::snprintf(line, sizeof line,
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", df.coord(ix),
                    df.coord(iy), df.j0[idx], df.j[0][idx], df.j[1][idx],
                    df.j[2][idx]);
      os << line;
    }
}

} // namespace wavemom

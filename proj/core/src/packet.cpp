#include "wavemom/packet.hpp"

#include <cmath>

#include "wavemom/errors.hpp"

namespace wavemom {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

// (2 sqrt(pi) / sigma)^{3/2}
double momentum_norm_const(double sigma) {
  return std::pow(2.0 * std::sqrt(kPi) / sigma, 1.5);
}

// sigma^{3/2} / pi^{3/4}
double position_norm_const(double sigma) {
  return std::pow(sigma, 1.5) / std::pow(kPi, 0.75);
}

// Phase-free Gaussian in position space, mean momentum pz along z.
cplx gauss_psi_r(double sigma, double pz, const Vec3 &r) {
  const double mag = position_norm_const(sigma) * std::exp(-0.5 * sigma * sigma * r.norm2());
  return mag * std::polar(1.0, pz * r.z);
}

Vec3 gauss_grad_factor(double sigma, const Vec3 &r) {
  return -sigma * sigma * r; // real part of grad log psi; + i pz zhat handled by caller
}

} // namespace

void validate(const PacketSpec &spec) {
  if (!(spec.sigma > 0) || !std::isfinite(spec.sigma))
    throw InvalidSpec("sigma must be positive and finite");
  if (!(spec.mass > 0) || !std::isfinite(spec.mass))
    throw InvalidSpec("mass must be positive and finite");
  if (spec.mean_p.x != 0.0 || spec.mean_p.y != 0.0)
    throw InvalidSpec("mean momentum must point along z (zero transverse part)");
  switch (spec.family) {
  case Family::GaussPhase:
    break;
  case Family::LgVortex:
    if (std::abs(spec.ell) > 100000)
      throw InvalidSpec("|ell| too large");
    break;
  case Family::Airy:
    if (!std::isfinite(spec.xi_x3) || !std::isfinite(spec.xi_y3))
      throw InvalidSpec("airy skew parameters must be finite");
    break;
  case Family::Cat:
    if (spec.cat_r0.z != 0.0)
      throw InvalidSpec("cat separation r0 must lie in the transverse plane");
    if (spec.parity == CatParity::Odd && spec.sigma * spec.cat_r0.norm() < 1e-6)
      throw DegenerateCat("odd cat state with sigma*|r0| < 1e-6: the "
                          "normalization denominator 1 - exp(-sigma^2 r0^2) vanishes");
    break;
  }
}

std::complex<double> psi_p(const PacketSpec &spec, const Vec3 &p) {
  const double sigma = spec.sigma;
  const Vec3 q = p - spec.mean_p;
  const double gauss_exponent = -0.5 * q.norm2() / (sigma * sigma);
  const double shift_phase = -dot(spec.shift, p);
  const double norm = momentum_norm_const(sigma);

  switch (spec.family) {
  case Family::GaussPhase: {
    const double phi = spec.phase.empty() ? 0.0 : spec.phase.eval(p);
    return norm * std::exp(gauss_exponent) * std::polar(1.0, phi + shift_phase);
  }
  case Family::Airy: {
    const double phi = (spec.xi_x3 * p.x * p.x * p.x + spec.xi_y3 * p.y * p.y * p.y) / 3.0;
    return norm * std::exp(gauss_exponent) * std::polar(1.0, phi + shift_phase);
  }
  case Family::LgVortex: {
    const int la = std::abs(spec.ell);
    if (la == 0)
      return norm * std::exp(gauss_exponent) * std::polar(1.0, shift_phase);
    const double pperp = p.perp();
    if (pperp == 0.0)
      return 0.0;
    // log-space magnitude keeps ell up to ~10^3 overflow-free
    const double logmag =
        la * std::log(pperp / sigma) - 0.5 * std::lgamma(la + 1.0) + gauss_exponent;
    const double angle = spec.ell * std::atan2(p.y, p.x) + shift_phase;
    return norm * std::exp(logmag) * std::polar(1.0, angle);
  }
  case Family::Cat: {
    const double r0p = dot(spec.cat_r0, p);
    const double overlap = std::exp(-spec.sigma * spec.sigma * spec.cat_r0.norm2());
    const cplx envelope = norm * std::exp(gauss_exponent) * std::polar(1.0, shift_phase);
    if (spec.parity == CatParity::Even)
      return envelope * (std::sqrt(2.0) * std::cos(r0p) / std::sqrt(1.0 + overlap));
    return envelope *
           (cplx(0.0, -1.0) * std::sqrt(2.0) * std::sin(r0p) / std::sqrt(1.0 - overlap));
  }
  }
  throw Error("unreachable family");
}

std::optional<std::complex<double>> psi_r_closed(const PacketSpec &spec, const Vec3 &r) {
  const double sigma = spec.sigma;
  const double pz = spec.mean_p.z;
  const Vec3 rr = r - spec.shift;

  switch (spec.family) {
  case Family::GaussPhase:
    if (!spec.phase.empty())
      return std::nullopt;
    return gauss_psi_r(sigma, pz, rr);
  case Family::Airy:
    return std::nullopt;
  case Family::LgVortex: {
    const int la = std::abs(spec.ell);
    if (la == 0)
      return gauss_psi_r(sigma, pz, rr);
    const double rho = rr.perp();
    if (rho == 0.0)
      return cplx(0.0, 0.0);
    const double logmag = la * std::log(sigma * rho) - 0.5 * std::lgamma(la + 1.0) -
                          0.5 * sigma * sigma * rr.norm2();
    // (i rho)^{|l|} carries the constant phase |l| pi/2 on top of l phi_r
    const double angle =
        pz * rr.z + spec.ell * std::atan2(rr.y, rr.x) + la * (kPi / 2.0);
    return position_norm_const(sigma) * std::exp(logmag) * std::polar(1.0, angle);
  }
  case Family::Cat: {
    const double overlap = std::exp(-sigma * sigma * spec.cat_r0.norm2());
    const double sgn = spec.parity == CatParity::Even ? 1.0 : -1.0;
    const double denom = std::sqrt(2.0 * (1.0 + sgn * overlap));
    return (gauss_psi_r(sigma, pz, rr - spec.cat_r0) +
            sgn * gauss_psi_r(sigma, pz, rr + spec.cat_r0)) /
           denom;
  }
  }
  throw Error("unreachable family");
}

std::optional<std::array<std::complex<double>, 3>>
grad_psi_r_closed(const PacketSpec &spec, const Vec3 &r) {
  const double sigma = spec.sigma;
  const double pz = spec.mean_p.z;
  const Vec3 rr = r - spec.shift;
  const cplx ipz(0.0, pz);

  switch (spec.family) {
  case Family::GaussPhase: {
    if (!spec.phase.empty())
      return std::nullopt;
    const cplx psi = gauss_psi_r(sigma, pz, rr);
    const Vec3 g = gauss_grad_factor(sigma, rr);
    return std::array<cplx, 3>{psi * g.x, psi * g.y, psi * (g.z + ipz)};
  }
  case Family::Airy:
    return std::nullopt;
  case Family::LgVortex: {
    const auto psi_opt = psi_r_closed(spec, r);
    const cplx psi = *psi_opt;
    const int la = std::abs(spec.ell);
    if (la == 0) {
      const Vec3 g = gauss_grad_factor(sigma, rr);
      return std::array<cplx, 3>{psi * g.x, psi * g.y, psi * (g.z + ipz)};
    }
    const double rho2 = rr.x * rr.x + rr.y * rr.y;
    if (rho2 == 0.0) {
      // psi vanishes on the axis; every density integrand built from
      // psi* grad psi vanishes there too, so 0 is exact for the oracle.
      return std::array<cplx, 3>{0.0, 0.0, 0.0};
    }
    const cplx il(0.0, static_cast<double>(spec.ell));
    const cplx gx = (la * rr.x + il * (-rr.y)) / rho2 - sigma * sigma * rr.x;
    const cplx gy = (la * rr.y + il * (rr.x)) / rho2 - sigma * sigma * rr.y;
    const cplx gz = -sigma * sigma * rr.z + ipz;
    return std::array<cplx, 3>{psi * gx, psi * gy, psi * gz};
  }
  case Family::Cat: {
    const double overlap = std::exp(-sigma * sigma * spec.cat_r0.norm2());
    const double sgn = spec.parity == CatParity::Even ? 1.0 : -1.0;
    const double denom = std::sqrt(2.0 * (1.0 + sgn * overlap));
    const Vec3 rm = rr - spec.cat_r0;
    const Vec3 rp = rr + spec.cat_r0;
    const cplx pm = gauss_psi_r(sigma, pz, rm);
    const cplx pp = gauss_psi_r(sigma, pz, rp);
    const Vec3 gm = gauss_grad_factor(sigma, rm);
    const Vec3 gp = gauss_grad_factor(sigma, rp);
    return std::array<cplx, 3>{(pm * gm.x + sgn * pp * gp.x) / denom,
                               (pm * gm.y + sgn * pp * gp.y) / denom,
                               (pm * (gm.z + ipz) + sgn * pp * (gp.z + ipz)) / denom};
  }
  }
  throw Error("unreachable family");
}

std::optional<std::string> physical_bound_note(const PacketSpec &spec) {
  if (spec.family != Family::Airy)
    return std::nullopt;
  const double bound = std::pow(spec.sigma_perp(), 3);
  const double worst = std::max(std::fabs(spec.xi_x3), std::fabs(spec.xi_y3));
  if (worst <= bound)
    return std::nullopt;
  return "airy skew |xi|^3 = " + std::to_string(worst) +
         " exceeds sigma_perp^3 = " + std::to_string(bound) +
         "; the packet is wider than its own skew scale and the closed forms "
         "are extrapolations";
}

} // namespace wavemom

#include "wavemom/analytic_moments.hpp"

#include <cmath>

#include "wavemom/errors.hpp"

namespace wavemom {

std::string to_string(Provenance p) {
  switch (p) {
  case Provenance::Analytic: return "analytic";
  case Provenance::Quadrature: return "quadrature";
  case Provenance::Grid: return "grid";
  }
  return "?";
}

double max_abs_delta(const MomentSet &a, const MomentSet &b) {
  return std::max({max_abs(a.d - b.d), max_abs(a.mu - b.mu), max_abs_diff(a.q, b.q)});
}

double max_rel_delta(const MomentSet &a, const MomentSet &b) {
  const double scale = std::max(
      {max_abs(a.d), max_abs(b.d), max_abs(a.mu), max_abs(b.mu),
       a.q.max_abs(), b.q.max_abs(), 1e-30});
  return max_abs_delta(a, b) / scale;
}

MomentSet vortex_moments(int ell, double sigma, double mass) {
  if (!(sigma > 0) || !(mass > 0))
    throw InvalidSpec("vortex_moments: sigma and mass must be positive");
  MomentSet ms;
  ms.provenance = Provenance::Analytic;
  ms.mu = Vec3{0, 0, ell / (2.0 * mass)};
  const double rho2 = std::abs(ell) / (sigma * sigma); // squared mean radius
  ms.q = SymTensor3::diag(0.5 * rho2, 0.5 * rho2, -rho2);
  return ms;
}

MomentSet airy_moments(double xi_x3, double xi_y3, double sigma) {
  if (!(sigma > 0))
    throw InvalidSpec("airy_moments: sigma must be positive");
  const double x6 = xi_x3 * xi_x3;
  const double y6 = xi_y3 * xi_y3;
  const double s4 = sigma * sigma * sigma * sigma;
  MomentSet ms;
  ms.provenance = Provenance::Analytic;
  ms.q = SymTensor3::diag(0.5 * s4 * (2 * x6 - y6), 0.5 * s4 * (2 * y6 - x6),
                          -0.5 * s4 * (x6 + y6));
  return ms;
}

MomentSet cat_moments(const Vec3 &r0, CatParity parity, double sigma) {
  if (!(sigma > 0))
    throw InvalidSpec("cat_moments: sigma must be positive");
  if (r0.z != 0.0)
    throw InvalidSpec("cat_moments: r0 must be transverse");
  if (parity == CatParity::Odd && sigma * r0.norm() < 1e-6)
    throw DegenerateCat("odd cat state with sigma*|r0| < 1e-6");
  const double overlap = std::exp(-sigma * sigma * r0.norm2());
  const double sgn = parity == CatParity::Even ? 1.0 : -1.0;
  MomentSet ms;
  ms.provenance = Provenance::Analytic;
  ms.q = SymTensor3::outer_quadrupole(r0) * (1.0 / (1.0 + sgn * overlap));
  return ms;
}

std::optional<MomentSet> analytic_moments(const PacketSpec &spec) {
  switch (spec.family) {
  case Family::LgVortex:
    return vortex_moments(spec.ell, spec.sigma, spec.mass);
  case Family::Airy:
    return airy_moments(spec.xi_x3, spec.xi_y3, spec.sigma);
  case Family::Cat:
    return cat_moments(spec.cat_r0, spec.parity, spec.sigma);
  case Family::GaussPhase:
    if (spec.phase.empty())
      return MomentSet{}; // plain Gaussian: everything vanishes
    return std::nullopt;
  }
  return std::nullopt;
}

MomentSet boost_dipoles(const MomentSet &rest, const Vec3 &beta) {
  const double b2 = beta.norm2();
  if (b2 >= 1.0)
    throw SuperluminalBoost("|beta| must be < 1");
  MomentSet out = rest;
  out.dipoles_boosted = true;
  if (b2 == 0.0)
    return out;

  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  const Vec3 bhat = beta / std::sqrt(b2);

  const auto split = [&](const Vec3 &v, Vec3 &par, Vec3 &perp) {
    par = dot(v, bhat) * bhat;
    perp = v - par;
  };
  Vec3 d_par, d_perp, mu_par, mu_perp;
  split(rest.d, d_par, d_perp);
  split(rest.mu, mu_par, mu_perp);

  out.d = d_par * (1.0 / gamma) + d_perp + cross(beta, rest.mu);
  out.mu = mu_par * (1.0 / gamma) +
           mu_perp * (0.5 * (1.0 + 1.0 / (gamma * gamma))) -
           0.5 * cross(beta, rest.d);
  return out;
}

} // namespace wavemom

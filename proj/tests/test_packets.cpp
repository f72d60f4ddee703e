#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wavemom/errors.hpp"
#include "wavemom/packet.hpp"

using namespace wavemom;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

PacketSpec lg_spec(int ell, double sigma = 1.0, double pz = 0.0) {
  PacketSpec s;
  s.family = Family::LgVortex;
  s.ell = ell;
  s.sigma = sigma;
  s.mean_p = Vec3{0, 0, pz};
  return s;
}

PacketSpec cat_spec(const Vec3 &r0, CatParity parity, double sigma = 1.0,
                    double pz = 0.0) {
  PacketSpec s;
  s.family = Family::Cat;
  s.cat_r0 = r0;
  s.parity = parity;
  s.sigma = sigma;
  s.mean_p = Vec3{0, 0, pz};
  return s;
}

// Independent Simpson rule (odd number of samples).
template <class F>
double simpson(F &&f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i)
    acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Oracle: norm of an azimuthally symmetric |psi_p|^2 by 2-D Simpson over
// (p_perp, p_z); independent of the production quadrature engine.
double norm_oracle_axisym(const PacketSpec &spec) {
  const double s = spec.sigma;
  const double pmax = 14.0 * s;
  const auto inner = [&](double pperp) {
    return simpson(
        [&](double pz) {
          return std::norm(psi_p(spec, Vec3{pperp, 0.0, pz}));
        },
        spec.mean_p.z - pmax, spec.mean_p.z + pmax, 400);
  };
  // fine radial resolution: the p_perp = 0 endpoint limits Simpson to h^4
  const double integral =
      simpson([&](double pp) { return pp * inner(pp); }, 0.0, pmax, 3000);
  return integral * 2.0 * kPi / std::pow(2.0 * kPi, 3);
}

} // namespace

TEST_SUITE("packets") {

TEST_CASE("psi_p anchors") {
  PacketSpec g;
  g.family = Family::GaussPhase;
  g.sigma = 0.8;
  g.mean_p = Vec3{0, 0, 2.0};
  // Gaussian peak value is the bare normalization constant
  const cplx peak = psi_p(g, g.mean_p);
  CHECK(peak.real() ==
        doctest::Approx(std::pow(2.0 * std::sqrt(kPi) / g.sigma, 1.5)));
  CHECK(peak.imag() == doctest::Approx(0.0));

  // vortex amplitude vanishes on the axis
  CHECK(std::abs(psi_p(lg_spec(1), Vec3{0, 0, 0.3})) == 0.0);
  CHECK(std::abs(psi_p(lg_spec(-7), Vec3{0, 0, -2})) == 0.0);

  // even cat at p = 0 with <p> = 0: cos(r0.p) = 1
  const Vec3 r0{0.9, 0.2, 0.0};
  const PacketSpec cat = cat_spec(r0, CatParity::Even);
  const double overlap = std::exp(-r0.norm2());
  const cplx value = psi_p(cat, Vec3{});
  const double expected = std::sqrt(2.0 / (1.0 + overlap)) *
                          std::pow(2.0 * std::sqrt(kPi), 1.5);
  CHECK(value.real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(value.imag() == doctest::Approx(0.0));
}

TEST_CASE("|psi_p| ignores a constant phase offset") {
  PacketSpec a;
  a.family = Family::GaussPhase;
  a.phase = PhaseExpr::parse("0.3*p_x^3");
  PacketSpec b = a;
  b.phase = PhaseExpr::parse("0.3*p_x^3 + 17.2");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    CHECK(std::abs(psi_p(a, p)) ==
          doctest::Approx(std::abs(psi_p(b, p))).epsilon(1e-14));
  }
}

TEST_CASE("normalization against independent 1-D integration") {
  // pure phase cannot change the norm
  PacketSpec g;
  g.family = Family::GaussPhase;
  g.sigma = 1.3;
  g.phase = PhaseExpr::parse("0.2*p_x^3 - 0.4*p_y^3 + p_z");
  // |psi|^2 is azimuthally symmetric after the phase drops out
  PacketSpec g_nophase = g;
  g_nophase.phase = PhaseExpr{};
  CHECK(norm_oracle_axisym(g_nophase) == doctest::Approx(1.0).epsilon(1e-8));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    CHECK(std::abs(psi_p(g, p)) ==
          doctest::Approx(std::abs(psi_p(g_nophase, p))).epsilon(1e-13));
  }

  // LG: the Gamma-function radial integral reproduces the factorial constant
  CHECK(norm_oracle_axisym(lg_spec(5, 0.7, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-8));

  // odd cat: the overlap integral of the shifted Gaussians gives the
  // (1 - exp(-sigma^2 r0^2)) denominator. r0 along x keeps the density
  // separable; integrate the x factor explicitly.
  const double r0 = 0.5;
  const PacketSpec cat = cat_spec(Vec3{r0, 0, 0}, CatParity::Odd);
  const double gauss_1d = std::sqrt(kPi); // int e^{-t^2}
  const double xint = simpson(
      [&](double px) {
        return 2.0 * std::sin(r0 * px) * std::sin(r0 * px) *
               std::exp(-px * px);
      },
      -12.0, 12.0, 4000);
  const double onorm = xint / (1.0 - std::exp(-r0 * r0)) / gauss_1d;
  CHECK(onorm == doctest::Approx(1.0).epsilon(1e-8));
  // and psi_p's own prefactor reproduces the same density
  const double sample =
      std::norm(psi_p(cat, Vec3{0.4, 0, 0})) /
      std::norm(psi_p(cat_spec(Vec3{r0, 0, 0}, CatParity::Even), Vec3{0.4, 0, 0}));
  const double expected = std::sin(0.4 * r0) * std::sin(0.4 * r0) /
                          (1.0 - std::exp(-r0 * r0)) /
                          (std::cos(0.4 * r0) * std::cos(0.4 * r0) /
                           (1.0 + std::exp(-r0 * r0)));
  CHECK(sample == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("psi_r_closed anchors") {
  // vortex node on the axis
  CHECK(std::abs(*psi_r_closed(lg_spec(1), Vec3{0, 0, 0.7})) == 0.0);

  // Gaussian at the origin
  PacketSpec g;
  g.family = Family::GaussPhase;
  g.sigma = 1.7;
  const cplx v = *psi_r_closed(g, Vec3{});
  CHECK(v.real() ==
        doctest::Approx(std::pow(g.sigma, 1.5) / std::pow(kPi, 0.75)));
  CHECK(v.imag() == doctest::Approx(0.0));

  // azimuthal symmetry of the vortex modulus
  const PacketSpec l2 = lg_spec(2, 0.9, 1.5);
  const double rho = 1.3, z = -0.4;
  const double ref = std::abs(*psi_r_closed(l2, Vec3{rho, 0, z}));
  for (double phi : {0.3, 1.2, 2.9, 4.4, 6.0}) {
    const Vec3 r{rho * std::cos(phi), rho * std::sin(phi), z};
    CHECK(std::abs(*psi_r_closed(l2, r)) == doctest::Approx(ref).epsilon(1e-12));
  }

  // airy and phase-bearing packets have no closed form
  PacketSpec airy;
  airy.family = Family::Airy;
  airy.xi_x3 = 1.0;
  CHECK(!psi_r_closed(airy, Vec3{}).has_value());
  PacketSpec phased;
  phased.family = Family::GaussPhase;
  phased.phase = PhaseExpr::parse("p_x^3");
  CHECK(!psi_r_closed(phased, Vec3{}).has_value());
}

TEST_CASE("LG radial density peaks at sqrt(|ell|) sigma_perp") {
  // fine 1-D scan of |psi(rho, z=0)|^2; the reported mean radius
  // sqrt(|ell|)/sigma coincides with the density maximum
  for (const int ell : {4, 7, 12}) {
    const double sigma = 1.4;
    const PacketSpec spec = lg_spec(ell, sigma);
    double best_rho = 0, best = -1;
    const double hi = 3.0 * std::sqrt(static_cast<double>(ell)) / sigma;
    for (int i = 1; i < 4000; ++i) {
      const double rho = hi * i / 4000;
      const double val = std::norm(*psi_r_closed(spec, Vec3{rho, 0, 0}));
      if (val > best) {
        best = val;
        best_rho = rho;
      }
    }
    const double mean_radius = std::sqrt(static_cast<double>(ell)) / sigma;
    CHECK(std::fabs(best_rho - mean_radius) / mean_radius <= 0.01);
  }
}

TEST_CASE("cat position form agrees with a direct transform of psi_p") {
  // brute-force sum over a momentum lattice (independent of the grid oracle)
  const PacketSpec cat = cat_spec(Vec3{0.8, 0.5, 0}, CatParity::Even, 1.0, 1.2);
  const int n = 48;
  const double pmax = 7.0;
  const double dp = 2.0 * pmax / n;
  const auto direct = [&](const Vec3 &r) {
    cplx acc = 0;
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz) {
          const Vec3 p{-pmax + (ix + 0.5) * dp, -pmax + (iy + 0.5) * dp,
                       cat.mean_p.z - pmax + (iz + 0.5) * dp};
          acc += psi_p(cat, p) * std::polar(1.0, dot(p, r));
        }
    return acc * std::pow(dp / (2.0 * kPi), 3);
  };
  for (const Vec3 &r : {Vec3{0, 0, 0}, Vec3{0.8, 0.5, 0}, Vec3{-1.1, 0.4, 0.9},
                        Vec3{2.0, -1.0, -0.5}}) {
    const cplx closed = *psi_r_closed(cat, r);
    const cplx numeric = direct(r);
    CHECK(std::abs(closed - numeric) <= 1e-6);
  }
}

TEST_CASE("spec validation") {
  PacketSpec bad;
  bad.sigma = -1;
  CHECK_THROWS_AS(validate(bad), InvalidSpec);

  PacketSpec tilted;
  tilted.mean_p = Vec3{0.1, 0, 1.0};
  CHECK_THROWS_AS(validate(tilted), InvalidSpec);

  PacketSpec cat3d = cat_spec(Vec3{1, 0, 0}, CatParity::Even);
  cat3d.cat_r0 = Vec3{1, 0, 0.5};
  CHECK_THROWS_AS(validate(cat3d), InvalidSpec);

  CHECK_THROWS_AS(validate(cat_spec(Vec3{1e-9, 0, 0}, CatParity::Odd)),
                  DegenerateCat);
  CHECK_NOTHROW(validate(cat_spec(Vec3{1e-9, 0, 0}, CatParity::Even)));
}

TEST_CASE("airy physical bound note") {
  PacketSpec airy;
  airy.family = Family::Airy;
  airy.sigma = 1.0;
  airy.xi_x3 = 0.5;
  CHECK(!physical_bound_note(airy).has_value());
  airy.xi_x3 = 1.5; // exceeds sigma_perp^3 = 1
  CHECK(physical_bound_note(airy).has_value());
}

} // TEST_SUITE

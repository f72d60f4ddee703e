#include <doctest.h>

#include <cmath>
#include <random>

#include "wavemom/analytic_moments.hpp"
#include "wavemom/errors.hpp"
#include "wavemom/numeric_moments.hpp"

using namespace wavemom;

namespace {

QuadratureConfig fast_quad(int nodes = 24) {
  QuadratureConfig q;
  q.nodes_per_axis = nodes;
  q.check_convergence = false;
  return q;
}

PacketSpec make_lg(int ell, double sigma, double mass, double pz = 1.0) {
  PacketSpec s;
  s.family = Family::LgVortex;
  s.ell = ell;
  s.sigma = sigma;
  s.mass = mass;
  s.mean_p = Vec3{0, 0, pz};
  return s;
}

PacketSpec make_airy(double x3, double y3, double sigma, double pz = 1.0) {
  PacketSpec s;
  s.family = Family::Airy;
  s.xi_x3 = x3;
  s.xi_y3 = y3;
  s.sigma = sigma;
  s.mean_p = Vec3{0, 0, pz};
  return s;
}

PacketSpec make_cat(const Vec3 &r0, CatParity parity, double sigma,
                    double pz = 1.0) {
  PacketSpec s;
  s.family = Family::Cat;
  s.cat_r0 = r0;
  s.parity = parity;
  s.sigma = sigma;
  s.mean_p = Vec3{0, 0, pz};
  return s;
}

PacketSpec make_phase(const std::string &src,
                      const std::map<std::string, double> &params = {},
                      double sigma = 1.0, double pz = 1.0) {
  PacketSpec s;
  s.family = Family::GaussPhase;
  s.phase = PhaseExpr::parse(src, params);
  s.sigma = sigma;
  s.mean_p = Vec3{0, 0, pz};
  return s;
}

// Independent Simpson oracle for the centered position spread of the plain
// Gaussian: integrates |psi(r)|^2 r^2 radially.
double gauss_r2_oracle(double sigma) {
  const int n = 4000;
  const double rmax = 12.0 / sigma, h = rmax / n;
  double num = 0, den = 0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double rho = std::exp(-sigma * sigma * r * r) * r * r;
    num += w * rho * r * r;
    den += w * rho;
  }
  return num / den;
}

} // namespace

TEST_SUITE("numeric_moments") {

TEST_CASE("phase formula reproduces the airy closed form") {
  const PacketSpec spec = make_phase("(xx*p_x^3 + yy*p_y^3)/3",
                                     {{"xx", 1.0}, {"yy", 0.5}});
  const MomentSet oracle = airy_moments(1.0, 0.5, 1.0);
  const MomentReport rep = moments_phase_formula(spec, fast_quad());
  CHECK(max_abs_delta(rep.intrinsic, oracle) <= 1e-8);
}

TEST_CASE("linear phase has zero intrinsic moments and d_ext = r0") {
  const PacketSpec spec =
      make_phase("-(x0*p_x + y0*p_y)", {{"x0", 2.5}, {"y0", -1.0}});
  const MomentReport rep = moments_phase_formula(spec, fast_quad());
  CHECK(max_abs(rep.intrinsic.mu) <= 1e-12);
  CHECK(rep.intrinsic.q.max_abs() <= 1e-12);
  CHECK(max_abs(rep.extrinsic_d - Vec3{2.5, -1.0, 0.0}) <= 1e-12);
}

TEST_CASE("vortex phase on a plain Gaussian is refused, never evaluated") {
  const PacketSpec spec = make_phase("3*phi_p");
  CHECK_THROWS_AS(moments_phase_formula(spec, fast_quad()), VortexDivergence);
  CHECK_THROWS_AS(moments_general(spec, fast_quad()), VortexDivergence);
  // the ell value is carried in the error
  try {
    moments_phase_formula(make_phase("p_z - 2*phi_p"), fast_quad());
    FAIL("expected VortexDivergence");
  } catch (const VortexDivergence &e) {
    CHECK(e.ell == -2);
  }
}

TEST_CASE("moments_general anchors") {
  // LG ell=2 on the polar scheme
  const MomentReport lg = moments_general(make_lg(2, 1.0, 1.0), fast_quad());
  CHECK(std::fabs(lg.intrinsic.mu.z - 1.0) <= 1e-8);
  CHECK(max_abs_diff(lg.intrinsic.q, SymTensor3::diag(1, 1, -2)) <= 1e-8);

  // even cat
  const MomentReport cat =
      moments_general(make_cat(Vec3{1, 0, 0}, CatParity::Even, 1.0), fast_quad());
  const MomentSet oracle = cat_moments(Vec3{1, 0, 0}, CatParity::Even, 1.0);
  CHECK(max_abs_delta(cat.intrinsic, oracle) <= 1e-8);

  // plain Gaussian: everything vanishes; spread is 3/(2 sigma^2)
  const double sigma = 1.4;
  PacketSpec plain;
  plain.family = Family::GaussPhase;
  plain.sigma = sigma;
  plain.mean_p = Vec3{0, 0, 2.0};
  const MomentReport g = moments_general(plain, fast_quad());
  CHECK(max_abs(g.intrinsic.mu) <= 1e-12);
  CHECK(g.intrinsic.q.max_abs() <= 1e-12);
  CHECK(max_abs(g.extrinsic_d) <= 1e-12);
  CHECK(g.r2_spread == doctest::Approx(1.5 / (sigma * sigma)).epsilon(1e-10));
  CHECK(g.r2_spread == doctest::Approx(gauss_r2_oracle(sigma)).epsilon(1e-8));
}

TEST_CASE("polar scheme stays exact at very large ell") {
  // log-Gamma normalization keeps the amplitude finite and the radial rule
  // needs no extra nodes: the angular integrands are ell-free
  const PacketSpec spec = make_lg(1000, 0.5, 2.0);
  const MomentReport rep = moments_general(spec, fast_quad());
  const MomentSet exact = vortex_moments(1000, 0.5, 2.0);
  CHECK(max_abs_delta(rep.intrinsic, exact) / exact.q.max_abs() <= 1e-12);
  CHECK(norm_check(spec, fast_quad()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shift invariance") {
  const auto quad = fast_quad();
  // vortex
  auto rep = shift_invariance_check(make_lg(1, 1.0, 1.0), Vec3{5, -3, 0}, quad);
  CHECK(rep.mu_delta <= 1e-8);
  CHECK(rep.q_delta <= 1e-8);
  CHECK(max_abs(rep.d_shift_error) <= 1e-8);
  // airy, shifted along z
  rep = shift_invariance_check(make_airy(0.8, -0.4, 1.0), Vec3{0, 0, 7}, quad);
  CHECK(rep.mu_delta <= 1e-8);
  CHECK(rep.q_delta <= 1e-8);
  CHECK(max_abs(rep.d_shift_error) <= 1e-8);
}

TEST_CASE("path agreement over random parameter draws") {
  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> usigma(0.2, 5.0);
  std::uniform_real_distribution<double> uu(-1.0, 1.0);
  std::uniform_real_distribution<double> usr0(0.1, 6.0);
  std::uniform_int_distribution<int> uell(-20, 20);
  std::uniform_int_distribution<int> ufam(0, 2);

  const QuadratureConfig quad = fast_quad(20);
  for (int draw = 0; draw < 50; ++draw) {
    const double sigma = usigma(rng);
    PacketSpec spec;
    MomentSet oracle;
    switch (ufam(rng)) {
    case 0: {
      spec = make_lg(uell(rng), sigma, usigma(rng));
      oracle = vortex_moments(spec.ell, spec.sigma, spec.mass);
      break;
    }
    case 1: {
      const double bound = std::pow(1.0 / sigma, 3);
      spec = make_airy(bound * uu(rng), bound * uu(rng), sigma);
      oracle = airy_moments(spec.xi_x3, spec.xi_y3, sigma);
      break;
    }
    default: {
      const double phi = 3.1 * uu(rng);
      const Vec3 r0 = (usr0(rng) / sigma) * Vec3{std::cos(phi), std::sin(phi), 0};
      const CatParity parity = uu(rng) > 0 ? CatParity::Even : CatParity::Odd;
      spec = make_cat(r0, parity, sigma);
      oracle = cat_moments(r0, parity, sigma);
      break;
    }
    }
    const MomentReport rep = moments_general(spec, quad);
    CHECK(max_abs_delta(rep.intrinsic, oracle) <= 1e-6);
  }
}

TEST_CASE("monte carlo agrees with the deterministic scheme within 5 SE") {
  QuadratureConfig mc = fast_quad();
  mc.scheme = QuadScheme::MonteCarlo;
  mc.mc_samples = 200000;
  mc.mc_seed = 777;

  const PacketSpec specs[] = {
      make_lg(3, 1.2, 1.0), make_airy(0.7, -0.3, 1.1),
      make_cat(Vec3{1.2, 0.4, 0}, CatParity::Even, 1.0),
      make_phase("0.4*p_x^3 - 0.2*p_y^3 + 0.1*p_x*p_y", {}, 1.0)};
  for (const PacketSpec &spec : specs) {
    const MomentReport det = moments_general(spec, fast_quad());
    const MomentReport stoch = moments_general(spec, mc);
    const double se = stoch.convergence.mc_max_stderr;
    CHECK(se > 0);
    CHECK(stoch.convergence.mc_samples == 200000);
    CHECK(max_abs_delta(det.intrinsic, stoch.intrinsic) <= 5.0 * se);
  }
}

TEST_CASE("monte carlo is deterministic for a fixed seed") {
  QuadratureConfig mc = fast_quad();
  mc.scheme = QuadScheme::MonteCarlo;
  mc.mc_samples = 20000;
  const PacketSpec spec = make_airy(0.5, 0.2, 1.0);
  const MomentReport a = moments_general(spec, mc);
  const MomentReport b = moments_general(spec, mc);
  CHECK(max_abs_delta(a.intrinsic, b.intrinsic) == 0.0);
  CHECK(a.convergence.mc_max_stderr == b.convergence.mc_max_stderr);
  mc.mc_seed += 1;
  const MomentReport c = moments_general(spec, mc);
  CHECK(max_abs_delta(a.intrinsic, c.intrinsic) > 0.0);
}

TEST_CASE("quadrature Q is symmetric by construction and traceless") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uu(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const PacketSpec spec = make_phase(
        "a*p_x^3 + b*p_y^3 + c*p_x*p_y + d*p_z^2",
        {{"a", uu(rng)}, {"b", uu(rng)}, {"c", uu(rng)}, {"d", uu(rng)}});
    const MomentReport rep = moments_general(spec, fast_quad());
    CHECK(std::fabs(rep.intrinsic.q.trace()) <=
          1e-10 * std::max(1.0, rep.intrinsic.q.max_abs()));
  }
}

TEST_CASE("general path equals the phase formula for pure-phase packets") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uu(-0.8, 0.8);
  for (int i = 0; i < 10; ++i) {
    const PacketSpec spec = make_phase(
        "a*p_x^3 + b*p_y^3 + c*p_x*p_z", {{"a", uu(rng)}, {"b", uu(rng)}, {"c", uu(rng)}},
        0.7 + 0.5 * std::fabs(uu(rng)));
    const MomentReport general = moments_general(spec, fast_quad());
    const MomentReport phase = moments_phase_formula(spec, fast_quad());
    CHECK(max_abs_delta(general.intrinsic, phase.intrinsic) <= 1e-8);
    CHECK(max_abs(general.extrinsic_d - phase.extrinsic_d) <= 1e-8);
  }
}

TEST_CASE("central-difference mode cross-checks the analytic derivatives") {
  QuadratureConfig fd = fast_quad();
  fd.derivative_mode = DerivativeMode::CentralDiff;
  fd.fd_step = 1e-5;
  for (const PacketSpec &spec :
       {make_airy(0.6, -0.2, 1.0), make_lg(2, 1.0, 1.0),
        make_cat(Vec3{0.8, 0, 0}, CatParity::Odd, 1.0)}) {
    const MomentReport a = moments_general(spec, fast_quad());
    const MomentReport b = moments_general(spec, fd);
    CHECK(max_abs_delta(a.intrinsic, b.intrinsic) <= 1e-6);
  }
  fd.fd_step = 1e-2; // outside [1e-8, 1e-3]
  CHECK_THROWS_AS(moments_general(make_airy(0.6, -0.2, 1.0), fd), InvalidSpec);
}

TEST_CASE("norm_check") {
  QuadratureConfig quad = fast_quad();
  CHECK(norm_check(make_phase("0.3*p_x^3 - p_y^3"), quad) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm_check(make_lg(5, 1.0, 1.0), quad) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(norm_check(make_cat(Vec3{0.5, 0, 0}, CatParity::Odd, 1.0), quad) ==
        doctest::Approx(1.0).epsilon(1e-8));

  // an under-resolved configuration must surface as NormalizationDrift:
  // tensor nodes cannot integrate the ell = 30 ring polynomial with 16 nodes
  QuadratureConfig weak = fast_quad(16);
  weak.scheme = QuadScheme::TensorHermite;
  CHECK_THROWS_AS(norm_check(make_lg(30, 1.0, 1.0), weak), NormalizationDrift);
}

TEST_CASE("non-converging integrands raise QuadratureNonConvergence") {
  // classified `unknown`: gradient blows up as 1/p_perp near the axis, the
  // covariance integral diverges logarithmically, doubling nodes keeps moving
  QuadratureConfig quad;
  quad.nodes_per_axis = 16;
  quad.check_convergence = true;
  CHECK_THROWS_AS(moments_general(make_phase("sin(phi_p)"), quad),
                  QuadratureNonConvergence);
}

TEST_CASE("convergence info is populated when the check runs") {
  QuadratureConfig quad;
  quad.nodes_per_axis = 16;
  quad.check_convergence = true;
  const MomentReport rep = moments_general(make_airy(0.5, 0.3, 1.0), quad);
  CHECK(rep.convergence.checked);
  CHECK(rep.convergence.max_shift <= quad.tolerance);
  CHECK(rep.convergence.nodes_radial == 32);
}

TEST_CASE("scheme resolution and validation") {
  QuadratureConfig quad = fast_quad();
  CHECK(resolve_scheme(make_lg(3, 1, 1), quad) == QuadScheme::PolarLg);
  CHECK(resolve_scheme(make_airy(1, 0, 1), quad) == QuadScheme::TensorHermite);
  quad.scheme = QuadScheme::PolarLg;
  CHECK_THROWS_AS(resolve_scheme(make_airy(1, 0, 1), quad), InvalidSpec);
  quad.scheme = QuadScheme::TensorHermite;
  CHECK_THROWS_AS(resolve_scheme(make_lg(100, 1, 1), quad), InvalidSpec);
  quad.scheme = {};
  quad.nodes_per_axis = 4;
  CHECK_THROWS_AS(moments_general(make_airy(1, 0, 1), quad), InvalidSpec);
}

} // TEST_SUITE

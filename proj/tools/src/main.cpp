// wavemom: intrinsic multipole moments of structured charged wave packets,
// and the far-zone fields they source. Subcommands: moments, fieldmap, fig1,
// estimate, selfcheck.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavemom/analytic_moments.hpp"
#include "wavemom/config.hpp"
#include "wavemom/errors.hpp"
#include "wavemom/fields.hpp"
#include "wavemom/grid_moments.hpp"
#include "wavemom/numeric_moments.hpp"
#include "wavemom/report.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitVortexDivergence = 3;
constexpr int kExitDisagreement = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

//==============================================================================
// moments

struct MomentsOptions {
  std::string config_path;
  std::string paths = "";
  std::string format = "json";
  bool si = false;
  bool timing = false;
  double atol = 1e-9;
  double rtol = 1e-3;
  // scalar overrides (negative = keep config value)
  int nodes = -1;
  int grid_n = -1;
  double box_half_width = -1;
  std::string scheme;
  std::int64_t samples = -1;
  std::int64_t seed = -1;
  bool no_convergence_check = false;
  std::string dump_slice; // write the central z slice of j0/j as CSV here
};

std::vector<std::string> available_paths(const wavemom::PacketSpec &p) {
  using wavemom::Family;
  switch (p.family) {
  case Family::GaussPhase:
    if (p.phase.empty())
      return {"analytic", "phase", "quadrature", "grid"};
    return {"phase", "quadrature", "grid"};
  case Family::Airy:
    return {"analytic", "phase", "quadrature", "grid"};
  case Family::LgVortex:
  case Family::Cat:
    return {"analytic", "quadrature", "grid"};
  }
  return {};
}

// Equivalent pure-phase spec for an Airy packet, so the phase-covariance path
// can run on it.
wavemom::PacketSpec airy_as_phase(const wavemom::PacketSpec &p) {
  wavemom::PacketSpec out = p;
  out.family = wavemom::Family::GaussPhase;
  out.phase = wavemom::PhaseExpr::parse(
      "(xx*p_x^3 + yy*p_y^3)/3", {{"xx", p.xi_x3}, {"yy", p.xi_y3}});
  return out;
}

wavemom::Vec3 analytic_extrinsic_d(const wavemom::PacketSpec &p) {
  using wavemom::Family;
  if (p.family == Family::Airy) {
    const double s2 = p.sigma * p.sigma;
    return p.shift - 0.5 * s2 * wavemom::Vec3{p.xi_x3, p.xi_y3, 0.0};
  }
  return p.shift;
}

int run_moments(const MomentsOptions &opt) {
  wavemom::RunConfig cfg = wavemom::load_run_config(opt.config_path);
  if (opt.nodes > 0) cfg.quadrature.nodes_per_axis = opt.nodes;
  if (opt.grid_n > 0) cfg.grid.points_per_axis = opt.grid_n;
  if (opt.box_half_width > 0) cfg.grid.box_half_width = opt.box_half_width;
  if (opt.samples > 0) cfg.quadrature.mc_samples = opt.samples;
  if (opt.seed >= 0) cfg.quadrature.mc_seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.no_convergence_check) cfg.quadrature.check_convergence = false;
  if (!opt.scheme.empty()) {
    if (opt.scheme == "tensor_hermite") cfg.quadrature.scheme = wavemom::QuadScheme::TensorHermite;
    else if (opt.scheme == "polar_lg") cfg.quadrature.scheme = wavemom::QuadScheme::PolarLg;
    else if (opt.scheme == "monte_carlo") cfg.quadrature.scheme = wavemom::QuadScheme::MonteCarlo;
    else throw wavemom::InvalidSpec("--scheme must be tensor_hermite, polar_lg or monte_carlo");
  }
  cfg.quadrature.validate();
  cfg.grid.validate();

  const auto avail = available_paths(cfg.packet);
  std::vector<std::string> wanted;
  if (opt.paths.empty()) {
    wanted = avail;
  } else {
    std::stringstream ss(opt.paths);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (std::find(avail.begin(), avail.end(), item) == avail.end())
        throw wavemom::InvalidSpec("path '" + item + "' is not available for this packet (choices: analytic, phase, quadrature, grid)");
      wanted.push_back(item);
    }
    if (wanted.empty())
      throw wavemom::InvalidSpec("--paths resolved to an empty set");
  }

  if (const auto note = wavemom::physical_bound_note(cfg.packet))
    std::cerr << "note: " << *note << "\n";

  const double t0 = now_ms();
  wavemom::RunReport report;
  report.config_echo = wavemom::echo_config(cfg);
  report.atol = opt.atol;
  report.rtol = opt.rtol;
  report.include_timing = opt.timing;

  for (const std::string &name : wanted) {
    wavemom::PathResult pr;
    pr.name = name;
    if (name == "analytic") {
      const auto ms = wavemom::analytic_moments(cfg.packet);
      if (!ms)
        throw wavemom::InvalidSpec("no closed form for this packet");
      pr.moments = *ms;
      pr.extrinsic_d = analytic_extrinsic_d(cfg.packet);
      pr.norm = 1.0;
    } else if (name == "phase") {
      const auto spec = cfg.packet.family == wavemom::Family::Airy
                            ? airy_as_phase(cfg.packet)
                            : cfg.packet;
      const auto rep = wavemom::moments_phase_formula(spec, cfg.quadrature);
      pr.moments = rep.intrinsic;
      pr.extrinsic_d = rep.extrinsic_d;
      pr.norm = rep.norm;
      pr.convergence = rep.convergence;
    } else if (name == "quadrature") {
      const auto rep = wavemom::moments_general(cfg.packet, cfg.quadrature);
      pr.moments = rep.intrinsic;
      pr.extrinsic_d = rep.extrinsic_d;
      pr.norm = rep.norm;
      pr.convergence = rep.convergence;
    } else { // grid
      const auto rep = wavemom::grid_moments(cfg.packet, cfg.grid);
      pr.moments = rep.intrinsic;
      pr.extrinsic_d = rep.extrinsic_d;
      pr.norm = rep.norm;
      if (!opt.dump_slice.empty()) {
        const auto df = wavemom::build_densities(cfg.packet, cfg.grid);
        std::ofstream slice(opt.dump_slice);
        if (!slice)
          throw wavemom::InvalidSpec("cannot open '" + opt.dump_slice + "'");
        wavemom::dump_density_slice(df, df.n / 2, slice);
      }
    }
    report.paths.push_back(std::move(pr));
  }
  wavemom::finalize_deltas(report);

  if (opt.si) {
    if (!cfg.units.sigma_perp_m)
      throw wavemom::MissingScale("--si needs sigma_perp in the config");
    // convert to sigma_perp = 1 units, then to e*cm^2
    const double s2 = cfg.packet.sigma * cfg.packet.sigma;
    report.q_si = wavemom::q_to_si(report.paths.front().moments.q * s2, cfg.units);
    report.mu_bohr = report.paths.front().moments.mu.z * 2.0 * cfg.packet.mass;
  }
  report.wall_ms = now_ms() - t0;
  std::cerr << "moments: " << report.wall_ms << " ms\n";

  if (opt.format == "csv")
    std::cout << wavemom::report_to_csv(report);
  else if (opt.format == "json")
    std::cout << wavemom::report_to_json(report);
  else
    throw wavemom::InvalidSpec("--format must be json or csv");
  return report.within_tolerance ? kExitOk : kExitDisagreement;
}

//==============================================================================
// fieldmap

struct FieldmapOptions {
  std::string config_path;
  std::string r_list = "10";
  int ntheta = 9;
  int nphi = 16;
  double theta_min = 0.0;
  double theta_max = kPi;
  double phi_min = 0.0;
  double phi_max = 2.0 * kPi;
  std::string format = "csv";
  std::string source = "auto"; // auto | analytic | quadrature
  bool quadrupole_only = false;
};

wavemom::MomentSet fieldmap_moments(const wavemom::RunConfig &cfg,
                                    const std::string &source) {
  if (source == "analytic" || source == "auto") {
    const auto ms = wavemom::analytic_moments(cfg.packet);
    if (ms)
      return *ms;
    if (source == "analytic")
      throw wavemom::InvalidSpec("no closed form for this packet; use --source quadrature");
  }
  return wavemom::moments_general(cfg.packet, cfg.quadrature).intrinsic;
}

int run_fieldmap(const FieldmapOptions &opt) {
  wavemom::RunConfig cfg = wavemom::load_run_config(opt.config_path);

  std::vector<double> radii;
  std::stringstream ss(opt.r_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double r = std::strtod(item.c_str(), nullptr);
    if (!(r > 0))
      throw wavemom::InvalidSpec("fieldmap radii must be positive");
    radii.push_back(r);
  }
  if (radii.empty() || opt.ntheta < 1 || opt.nphi < 1)
    throw wavemom::InvalidSpec("fieldmap grid is empty");

  const wavemom::MomentSet ms = fieldmap_moments(cfg, opt.source);

  std::vector<wavemom::FieldSample> samples;
  samples.reserve(radii.size() * opt.ntheta * opt.nphi);
  for (const double r : radii)
    for (int it = 0; it < opt.ntheta; ++it) {
      const double theta =
          opt.ntheta == 1 ? opt.theta_min
                          : opt.theta_min + (opt.theta_max - opt.theta_min) * it /
                                                (opt.ntheta - 1);
      for (int ip = 0; ip < opt.nphi; ++ip) {
        const double phi = opt.phi_min + (opt.phi_max - opt.phi_min) * ip / opt.nphi;
        wavemom::FieldSample fs = wavemom::total_field(ms, r, theta, phi);
        if (opt.quadrupole_only) {
          const double st = std::sin(theta), ct = std::cos(theta);
          // remove the unit-charge Coulomb term n/r^2
          fs.E -= wavemom::Vec3{st, 0.0, ct} * (1.0 / (r * r));
        }
        samples.push_back(fs);
      }
    }

  if (opt.format == "csv") {
    std::cout << "r,theta,phi,E_rho,E_phi,E_z,H_rho,H_phi,H_z\r\n";
    for (const auto &s : samples) {
      std::cout << fmt17(s.r) << ',' << fmt17(s.theta) << ',' << fmt17(s.phi)
                << ',' << fmt17(s.E.x) << ',' << fmt17(s.E.y) << ','
                << fmt17(s.E.z) << ',' << fmt17(s.H.x) << ',' << fmt17(s.H.y)
                << ',' << fmt17(s.H.z) << "\r\n";
    }
  } else if (opt.format == "json") {
    std::cout << "[\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto &s = samples[i];
      std::cout << "  {\"r\": " << fmt17(s.r) << ", \"theta\": " << fmt17(s.theta)
                << ", \"phi\": " << fmt17(s.phi) << ", \"E_rho\": " << fmt17(s.E.x)
                << ", \"E_phi\": " << fmt17(s.E.y) << ", \"E_z\": " << fmt17(s.E.z)
                << ", \"H_rho\": " << fmt17(s.H.x) << ", \"H_phi\": " << fmt17(s.H.y)
                << ", \"H_z\": " << fmt17(s.H.z) << "}"
                << (i + 1 < samples.size() ? ",\n" : "\n");
    }
    std::cout << "]\n";
  } else {
    throw wavemom::InvalidSpec("--format must be json or csv");
  }
  return kExitOk;
}

//==============================================================================
// fig1: azimuthal profile of the Airy quadrupole's radial field on the
// equatorial ring (eta = 0, theta = pi/2).

int run_fig1(double xi, double sigma, double r, int samples) {
  if (!(r > 0))
    throw wavemom::InvalidSpec("fig1: r must be positive");
  if (samples < 16)
    throw wavemom::InvalidSpec("fig1: samples must be >= 16");
  if (!(xi != 0.0) || !(sigma > 0))
    throw wavemom::InvalidSpec("fig1: xi must be nonzero and sigma positive");
  const double norm = std::pow(r, 4) / (std::pow(sigma, 4) * std::pow(xi, 6));
  std::cout << "phi,E_rho,E_rho_normalized\r\n";
  for (int i = 0; i < samples; ++i) {
    const double phi = 2.0 * kPi * i / samples;
    const auto f = wavemom::airy_field_components(sigma, xi, 0.0, r, kPi / 2, phi);
    std::cout << fmt17(phi) << ',' << fmt17(f.e_rho) << ','
              << fmt17(f.e_rho * norm) << "\r\n";
  }
  return kExitOk;
}

//==============================================================================
// estimate: order-of-magnitude quadrupole and magnetic moment for a packet of
// a given physical width.

int run_estimate(const std::string &sigma_perp, int ell, const std::string &format) {
  const double sp_m = wavemom::parse_length_m(sigma_perp);
  const double sp_cm = sp_m * wavemom::kCmPerMeter;
  const double q_scale = sp_cm * sp_cm * std::max(1, std::abs(ell));
  const double mu_bohr = static_cast<double>(ell);
  if (format == "json") {
    std::cout << "{\"sigma_perp_cm\": " << fmt17(sp_cm)
              << ", \"ell\": " << ell
              << ", \"q_scale_e_cm2\": " << fmt17(q_scale)
              << ", \"mu_bohr_magnetons\": " << fmt17(mu_bohr) << "}\n";
  } else {
    std::cout << "sigma_perp = " << fmt17(sp_cm) << " cm\n"
              << "|Q| ~ " << fmt17(q_scale) << " e*cm^2\n"
              << "mu = " << fmt17(mu_bohr) << " Bohr magnetons\n";
  }
  return kExitOk;
}

//==============================================================================
// selfcheck: fast end-to-end battery over the main invariants.

int run_selfcheck() {
  int failures = 0;
  const auto check = [&failures](const std::string &name, bool ok,
                                 const std::string &detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name
              << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    if (!ok)
      ++failures;
  };
  using namespace wavemom;

  QuadratureConfig quad;
  quad.nodes_per_axis = 24;
  quad.check_convergence = false;

  try {
    // vortex closed form vs quadrature
    PacketSpec lg;
    lg.family = Family::LgVortex;
    lg.ell = 5;
    lg.sigma = 1.3;
    lg.mass = 1.7;
    const auto a = *analytic_moments(lg);
    const auto q = moments_general(lg, quad);
    check("vortex quadrature vs closed form", max_abs_delta(a, q.intrinsic) < 1e-8,
          fmt17(max_abs_delta(a, q.intrinsic)));

    // airy phase-covariance vs closed form
    PacketSpec airy;
    airy.family = Family::Airy;
    airy.xi_x3 = 0.7;
    airy.xi_y3 = -0.4;
    const auto aa = *analytic_moments(airy);
    const auto qp = moments_general(airy, quad);
    check("airy quadrature vs closed form", max_abs_delta(aa, qp.intrinsic) < 1e-8,
          fmt17(max_abs_delta(aa, qp.intrinsic)));

    // cat states
    PacketSpec cat;
    cat.family = Family::Cat;
    cat.cat_r0 = Vec3{0.8, 0.3, 0.0};
    cat.parity = CatParity::Odd;
    const auto ca = *analytic_moments(cat);
    const auto cq = moments_general(cat, quad);
    check("cat quadrature vs closed form", max_abs_delta(ca, cq.intrinsic) < 1e-8,
          fmt17(max_abs_delta(ca, cq.intrinsic)));

    // shift invariance
    const auto shift_rep = shift_invariance_check(lg, Vec3{3, -2, 1}, quad);
    check("origin-shift invariance",
          shift_rep.mu_delta < 1e-8 && shift_rep.q_delta < 1e-8 &&
              max_abs(shift_rep.d_shift_error) < 1e-8);

    // divergence guard
    PacketSpec bad;
    bad.family = Family::GaussPhase;
    bad.phase = PhaseExpr::parse("2*phi_p");
    bool refused = false;
    try {
      moments_general(bad, quad);
    } catch (const VortexDivergence &) {
      refused = true;
    }
    check("vortex-phase divergence guard", refused);

    // field identity: generic quadrupole vs printed vortex components
    double worst = 0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.5, 20.0), ut(0.05, kPi - 0.05);
    for (int i = 0; i < 2000; ++i) {
      const double r = ur(rng), theta = ut(rng);
      const double rho2 = 3.7;
      const auto v = vortex_field_components(rho2, r, theta);
      const SymTensor3 Q = SymTensor3::diag(rho2 / 2, rho2 / 2, -rho2);
      const Vec3 pos{r * std::sin(theta), 0, r * std::cos(theta)};
      const Vec3 e = quadrupole_field(Q, pos);
      const double scale = std::max({std::fabs(v.e_rho), std::fabs(v.e_z), 1e-30});
      worst = std::max(worst, std::max(std::fabs(e.x - v.e_rho),
                                       std::fabs(e.z - v.e_z)) /
                                  scale);
    }
    check("vortex field identity", worst < 1e-12, fmt17(worst));

    // DSL gradients vs central differences
    const auto expr = PhaseExpr::parse("a*p_x^3 + sin(p_y*p_z) + sqrt(1 + p_perp^2)",
                                       {{"a", 0.37}});
    double worst_g = 0;
    std::uniform_real_distribution<double> up(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
      const Vec3 p{up(rng), up(rng), up(rng) + 2.5};
      const auto ad = expr.eval_grad(p);
      const double h = 1e-5;
      const Vec3 fd{
          (expr.eval(p + Vec3{h, 0, 0}) - expr.eval(p - Vec3{h, 0, 0})) / (2 * h),
          (expr.eval(p + Vec3{0, h, 0}) - expr.eval(p - Vec3{0, h, 0})) / (2 * h),
          (expr.eval(p + Vec3{0, 0, h}) - expr.eval(p - Vec3{0, 0, h})) / (2 * h)};
      worst_g = std::max(worst_g,
                         max_abs(ad.grad - fd) / (1.0 + max_abs(ad.grad)));
    }
    check("phase gradients vs finite differences", worst_g < 1e-6, fmt17(worst_g));

    // SI endpoints
    const double lo = std::pow(parse_length_m("0.1 nm") * kCmPerMeter, 2);
    const double hi = std::pow(parse_length_m("10 um") * kCmPerMeter, 2);
    check("SI scale endpoints",
          std::fabs(lo / 1e-16 - 1) < 1e-9 && std::fabs(hi / 1e-6 - 1) < 1e-9);
  } catch (const std::exception &e) {
    std::cout << "[FAIL] selfcheck aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (failures == 0 ? "selfcheck: all checks passed\n"
                              : "selfcheck: FAILURES\n");
  return failures == 0 ? kExitOk : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"intrinsic multipole moments of structured charged wave packets"};
  app.require_subcommand(1);

  MomentsOptions mopt;
  auto *moments = app.add_subcommand(
      "moments", "compute intrinsic moments along the requested paths");
  moments->add_option("--config", mopt.config_path, "packet config file (JSON)")
      ->required();
  moments->add_option("--paths", mopt.paths,
                      "comma list of analytic,phase,quadrature,grid (default: all available)");
  moments->add_option("--format", mopt.format, "json or csv");
  moments->add_flag("--si", mopt.si, "report Q in e*cm^2 (needs sigma_perp)");
  moments->add_flag("--timing", mopt.timing, "include wall time in the payload");
  moments->add_option("--atol", mopt.atol, "absolute cross-path tolerance");
  moments->add_option("--rtol", mopt.rtol, "relative cross-path tolerance");
  moments->add_option("--nodes", mopt.nodes, "override quadrature nodes per axis");
  moments->add_option("--scheme", mopt.scheme,
                      "override scheme: tensor_hermite|polar_lg|monte_carlo");
  moments->add_option("--samples", mopt.samples, "override Monte Carlo samples");
  moments->add_option("--seed", mopt.seed, "override Monte Carlo seed");
  moments->add_option("--grid-n", mopt.grid_n, "override grid points per axis");
  moments->add_option("--box-half-width", mopt.box_half_width,
                      "override grid box half width (units of sigma_perp)");
  moments->add_flag("--no-convergence-check", mopt.no_convergence_check,
                    "skip the node-doubling convergence check");
  moments->add_option("--dump-slice", mopt.dump_slice,
                      "write the central z slice of the grid densities to this CSV file");

  FieldmapOptions fopt;
  auto *fieldmap =
      app.add_subcommand("fieldmap", "emit far-zone E and H over a sample grid");
  fieldmap->add_option("--config", fopt.config_path, "packet config file (JSON)")
      ->required();
  fieldmap->add_option("--r", fopt.r_list, "comma list of radii");
  fieldmap->add_option("--ntheta", fopt.ntheta, "polar sample count");
  fieldmap->add_option("--nphi", fopt.nphi, "azimuthal sample count");
  fieldmap->add_option("--theta-min", fopt.theta_min, "");
  fieldmap->add_option("--theta-max", fopt.theta_max, "");
  fieldmap->add_option("--phi-min", fopt.phi_min, "");
  fieldmap->add_option("--phi-max", fopt.phi_max, "(endpoint excluded)");
  fieldmap->add_option("--format", fopt.format, "csv or json");
  fieldmap->add_option("--source", fopt.source,
                       "moments source: auto|analytic|quadrature");
  fieldmap->add_flag("--quadrupole-only", fopt.quadrupole_only,
                     "drop the monopole Coulomb term");

  double f1_xi = 1.0, f1_sigma = 1.0, f1_r = 10.0;
  int f1_samples = 256;
  auto *fig1 = app.add_subcommand(
      "fig1", "azimuthal profile of the airy radial field at theta = pi/2, eta = 0");
  fig1->add_option("--xi", f1_xi, "skew scale xi (xi_x = xi, xi_y = 0)");
  fig1->add_option("--sigma", f1_sigma, "momentum width");
  fig1->add_option("--r", f1_r, "sample radius");
  fig1->add_option("--samples", f1_samples, "number of phi samples (>= 16)");

  std::string est_sigma_perp;
  int est_ell = 0;
  std::string est_format = "json";
  auto *estimate = app.add_subcommand(
      "estimate", "order-of-magnitude moments for a physical packet width");
  estimate->add_option("--sigma-perp", est_sigma_perp, "width with unit, e.g. '0.1 nm'")
      ->required();
  estimate->add_option("--ell", est_ell, "orbital angular momentum (optional)");
  estimate->add_option("--format", est_format, "json or text");

  auto *selfcheck =
      app.add_subcommand("selfcheck", "run the built-in invariant battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (moments->parsed())
      return run_moments(mopt);
    if (fieldmap->parsed())
      return run_fieldmap(fopt);
    if (fig1->parsed())
      return run_fig1(f1_xi, f1_sigma, f1_r, f1_samples);
    if (estimate->parsed())
      return run_estimate(est_sigma_perp, est_ell, est_format);
    if (selfcheck->parsed())
      return run_selfcheck();
  } catch (const wavemom::VortexDivergence &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVortexDivergence;
  } catch (const wavemom::InvalidSpec &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wavemom::SyntaxError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wavemom::UnboundParameter &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wavemom::MissingScale &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wavemom::DegenerateCat &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wavemom::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}

#include "wavemom/numeric_moments.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "wavemom/errors.hpp"

namespace wavemom {
namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

//==============================================================================
// Compensated accumulation: node evaluations are independent, the sums are
// deterministic for a fixed configuration.

struct Kahan {
  double s = 0, c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// Per-node data after factoring psi = N * envelope(p) * u(p): the scheme
// weight carries N^2 envelope^2 d^3p/(2pi)^3, the kernel supplies u, du and
// the (real) gradient of log envelope.
struct NodeEval {
  cplx u;
  std::array<cplx, 3> du;
  std::array<double, 3> dlogE;
};

struct Sums {
  Kahan norm;
  Kahan mp[3];
  Kahan d[3]; // <r> integrand
  Kahan L[3];
  Kahan m[6]; // <r_a r_b>: xx yy zz xy xz yz

  void add(const Vec3 &p, double w, const NodeEval &e) {
    const double u2 = std::norm(e.u);
    norm.add(w * u2);
    mp[0].add(w * u2 * p.x);
    mp[1].add(w * u2 * p.y);
    mp[2].add(w * u2 * p.z);

    const cplx uc = std::conj(e.u);
    d[0].add(-w * std::imag(uc * e.du[0]));
    d[1].add(-w * std::imag(uc * e.du[1]));
    d[2].add(-w * std::imag(uc * e.du[2]));

    const cplx lx = p.y * e.du[2] - p.z * e.du[1];
    const cplx ly = p.z * e.du[0] - p.x * e.du[2];
    const cplx lz = p.x * e.du[1] - p.y * e.du[0];
    L[0].add(w * std::imag(uc * lx));
    L[1].add(w * std::imag(uc * ly));
    L[2].add(w * std::imag(uc * lz));

    const cplx fx = e.du[0] + e.u * e.dlogE[0];
    const cplx fy = e.du[1] + e.u * e.dlogE[1];
    const cplx fz = e.du[2] + e.u * e.dlogE[2];
    m[0].add(w * std::norm(fx));
    m[1].add(w * std::norm(fy));
    m[2].add(w * std::norm(fz));
    m[3].add(w * std::real(std::conj(fx) * fy));
    m[4].add(w * std::real(std::conj(fx) * fz));
    m[5].add(w * std::real(std::conj(fy) * fz));
  }

  void merge(const Sums &o) {
    norm.add(o.norm.s);
    for (int i = 0; i < 3; ++i) {
      mp[i].add(o.mp[i].s);
      d[i].add(o.d[i].s);
      L[i].add(o.L[i].s);
    }
    for (int i = 0; i < 6; ++i)
      m[i].add(o.m[i].s);
  }
};

//==============================================================================
// Kernels: u, du/dp and grad log(envelope) per family and scheme.

class Kernel {
public:
  virtual ~Kernel() = default;
  virtual void eval(const Vec3 &p, NodeEval &out) const = 0;
};

// gauss_phase and airy share the plain Gaussian envelope; only u differs.
class GaussPhaseKernel final : public Kernel {
public:
  explicit GaussPhaseKernel(const PacketSpec &spec) : spec_(spec) {}
  void eval(const Vec3 &p, NodeEval &out) const override {
    double angle = -dot(spec_.shift, p);
    Vec3 g = -spec_.shift;
    if (spec_.family == Family::Airy) {
      angle += (spec_.xi_x3 * p.x * p.x * p.x + spec_.xi_y3 * p.y * p.y * p.y) / 3.0;
      g += Vec3{spec_.xi_x3 * p.x * p.x, spec_.xi_y3 * p.y * p.y, 0.0};
    } else if (!spec_.phase.empty()) {
      const PhaseGradient pg = spec_.phase.eval_grad(p);
      angle += pg.value;
      g += pg.grad;
    }
    out.u = std::polar(1.0, angle);
    const cplx iu = cplx(0, 1) * out.u;
    out.du = {iu * g.x, iu * g.y, iu * g.z};
    const double inv_s2 = 1.0 / (spec_.sigma * spec_.sigma);
    out.dlogE = {-(p.x - spec_.mean_p.x) * inv_s2, -(p.y - spec_.mean_p.y) * inv_s2,
                 -(p.z - spec_.mean_p.z) * inv_s2};
  }

private:
  PacketSpec spec_;
};

class CatKernel final : public Kernel {
public:
  explicit CatKernel(const PacketSpec &spec) : spec_(spec) {
    const double overlap =
        std::exp(-spec.sigma * spec.sigma * spec.cat_r0.norm2());
    const double sgn = spec.parity == CatParity::Even ? 1.0 : -1.0;
    amp_ = std::sqrt(2.0 / (1.0 + sgn * overlap));
  }
  void eval(const Vec3 &p, NodeEval &out) const override {
    const double r0p = dot(spec_.cat_r0, p);
    double a, da; // amplitude and its derivative w.r.t. (r0 . p)
    if (spec_.parity == CatParity::Even) {
      a = amp_ * std::cos(r0p);
      da = -amp_ * std::sin(r0p);
    } else {
      a = amp_ * std::sin(r0p);
      da = amp_ * std::cos(r0p);
    }
    const cplx phase = std::polar(1.0, -dot(spec_.shift, p));
    out.u = a * phase;
    const cplx mish = cplx(0, -1) * a;
    out.du = {(da * spec_.cat_r0.x + mish * spec_.shift.x) * phase,
              (da * spec_.cat_r0.y + mish * spec_.shift.y) * phase,
              (da * spec_.cat_r0.z + mish * spec_.shift.z) * phase};
    const double inv_s2 = 1.0 / (spec_.sigma * spec_.sigma);
    out.dlogE = {-(p.x - spec_.mean_p.x) * inv_s2, -(p.y - spec_.mean_p.y) * inv_s2,
                 -(p.z - spec_.mean_p.z) * inv_s2};
  }

private:
  PacketSpec spec_;
  double amp_;
};

// LG on the tensor scheme: the p_perp^|l| e^{i l phi} factor is the entire
// polynomial (p_x +- i p_y)^|l|, smooth everywhere.
class LgTensorKernel final : public Kernel {
public:
  explicit LgTensorKernel(const PacketSpec &spec) : spec_(spec) {
    la_ = std::abs(spec.ell);
    // 1 / (sigma^|l| sqrt(|l|!))
    scale_ = std::exp(-la_ * std::log(spec.sigma) - 0.5 * std::lgamma(la_ + 1.0));
  }
  void eval(const Vec3 &p, NodeEval &out) const override {
    const cplx phase = std::polar(1.0, -dot(spec_.shift, p));
    const double inv_s2 = 1.0 / (spec_.sigma * spec_.sigma);
    out.dlogE = {-(p.x - spec_.mean_p.x) * inv_s2, -(p.y - spec_.mean_p.y) * inv_s2,
                 -(p.z - spec_.mean_p.z) * inv_s2};
    if (la_ == 0) {
      out.u = phase;
      const cplx mish = cplx(0, -1);
      out.du = {mish * spec_.shift.x * phase, mish * spec_.shift.y * phase,
                mish * spec_.shift.z * phase};
      return;
    }
    const double sgn = spec_.ell > 0 ? 1.0 : -1.0;
    const cplx base(p.x, sgn * p.y);
    if (std::norm(base) < 1e-280) {
      out.u = 0.0;
      out.du = {0.0, 0.0, 0.0};
      if (la_ == 1)
        out.du = {scale_ * phase, cplx(0, sgn) * scale_ * phase, 0.0};
      return;
    }
    cplx w = scale_;
    for (int k = 0; k < la_; ++k)
      w *= base;
    const cplx dw = static_cast<double>(la_) * w / base;
    out.u = w * phase;
    const cplx mishw = cplx(0, -1) * w;
    out.du = {(dw + mishw * spec_.shift.x) * phase,
              (cplx(0, sgn) * dw + mishw * spec_.shift.y) * phase,
              (mishw * spec_.shift.z) * phase};
  }

private:
  PacketSpec spec_;
  int la_;
  double scale_;
};

// LG on the polar scheme: p_perp^|l| lives in the radial weight, so u is the
// pure vortex phase and the amplitude enters through grad log envelope.
class LgPolarKernel final : public Kernel {
public:
  explicit LgPolarKernel(const PacketSpec &spec)
      : spec_(spec), la_(std::abs(spec.ell)) {}
  void eval(const Vec3 &p, NodeEval &out) const override {
    const double rho2 = p.x * p.x + p.y * p.y;
    const double angle =
        spec_.ell * std::atan2(p.y, p.x) - dot(spec_.shift, p);
    out.u = std::polar(1.0, angle);
    const Vec3 g{-spec_.ell * p.y / rho2 - spec_.shift.x,
                 spec_.ell * p.x / rho2 - spec_.shift.y, -spec_.shift.z};
    const cplx iu = cplx(0, 1) * out.u;
    out.du = {iu * g.x, iu * g.y, iu * g.z};
    const double inv_s2 = 1.0 / (spec_.sigma * spec_.sigma);
    out.dlogE = {la_ * p.x / rho2 - (p.x - spec_.mean_p.x) * inv_s2,
                 la_ * p.y / rho2 - (p.y - spec_.mean_p.y) * inv_s2,
                 -(p.z - spec_.mean_p.z) * inv_s2};
  }

private:
  PacketSpec spec_;
  int la_;
};

// Cross-check mode: du by central differences of u, envelope gradient kept
// analytic (the envelope is known exactly; what this mode validates is the
// AD/closed-form u derivative).
class CentralDiffKernel final : public Kernel {
public:
  CentralDiffKernel(std::unique_ptr<Kernel> base, double h)
      : base_(std::move(base)), h_(h) {}
  void eval(const Vec3 &p, NodeEval &out) const override {
    base_->eval(p, out);
    NodeEval plus, minus;
    const Vec3 steps[3] = {{h_, 0, 0}, {0, h_, 0}, {0, 0, h_}};
    for (int k = 0; k < 3; ++k) {
      base_->eval(p + steps[k], plus);
      base_->eval(p - steps[k], minus);
      out.du[k] = (plus.u - minus.u) / (2.0 * h_);
    }
  }

private:
  std::unique_ptr<Kernel> base_;
  double h_;
};

std::unique_ptr<Kernel> make_kernel(const PacketSpec &spec, QuadScheme scheme,
                                    const QuadratureConfig &cfg) {
  std::unique_ptr<Kernel> k;
  switch (spec.family) {
  case Family::GaussPhase:
  case Family::Airy:
    k = std::make_unique<GaussPhaseKernel>(spec);
    break;
  case Family::Cat:
    k = std::make_unique<CatKernel>(spec);
    break;
  case Family::LgVortex:
    if (scheme == QuadScheme::TensorHermite)
      k = std::make_unique<LgTensorKernel>(spec);
    else
      k = std::make_unique<LgPolarKernel>(spec);
    break;
  }
  if (cfg.derivative_mode == DerivativeMode::CentralDiff)
    k = std::make_unique<CentralDiffKernel>(std::move(k), cfg.fd_step);
  return k;
}

//==============================================================================
// Node generation. Each scheme produces (p, w) with w carrying the envelope
// measure, so that sum w |u|^2 integrates |psi|^2 d^3p/(2pi)^3.

int round_up_even(int n) { return n % 2 ? n + 1 : n; }

// >= 8 nodes per period of the cat density oscillation cos(2 r0.p): central
// Gauss-Hermite spacing is ~ pi/sqrt(2n), the period in t is pi/(sigma r0).
int cat_axis_nodes(double sigma_r0, int n) {
  const int need = static_cast<int>(std::ceil(32.0 * sigma_r0 * sigma_r0));
  return std::min(round_up_even(std::max(n, need)), 4096);
}

struct SchemeCounts {
  int n1 = 0, n2 = 0, n3 = 0; // tensor axes or (radial, angular, z)
};

SchemeCounts tensor_counts(const PacketSpec &spec, int n) {
  SchemeCounts c;
  c.n1 = c.n2 = c.n3 = round_up_even(n);
  if (spec.family == Family::Cat && spec.cat_r0.norm2() > 0)
    c.n1 = cat_axis_nodes(spec.sigma * spec.cat_r0.norm(), c.n1);
  return c;
}

SchemeCounts polar_counts(const PacketSpec &spec, int n) {
  (void)spec;
  SchemeCounts c;
  c.n1 = std::max(n, 8);                  // radial
  c.n2 = round_up_even(std::max(16, n)); // angular: trig degree is ell-free
  c.n3 = round_up_even(std::max(n, 8));  // z
  return c;
}

template <class Fn>
void for_each_tensor_node(const PacketSpec &spec, const SchemeCounts &c, Fn &&fn) {
  // For cat packets the first axis is aligned with r0 so only it needs the
  // oscillation-resolving node count.
  Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  if (spec.family == Family::Cat && spec.cat_r0.norm2() > 0) {
    e1 = spec.cat_r0 / spec.cat_r0.norm();
    e2 = cross(e3, e1);
  }
  const Rule1D &r1 = gauss_hermite(c.n1);
  const Rule1D &r2 = gauss_hermite(c.n2);
  const Rule1D &r3 = gauss_hermite(c.n3);
  const double s = spec.sigma;
  const double wnorm = 1.0 / std::pow(kPi, 1.5);
  for (int i = 0; i < c.n1; ++i)
    for (int j = 0; j < c.n2; ++j) {
      const Vec3 base = spec.mean_p + s * r1.x[i] * e1 + s * r2.x[j] * e2;
      const double wij = wnorm * r1.w[i] * r2.w[j];
      for (int k = 0; k < c.n3; ++k)
        fn(base + s * r3.x[k] * e3, wij * r3.w[k]);
    }
}

template <class Fn>
void for_each_polar_node(const PacketSpec &spec, const SchemeCounts &c, Fn &&fn) {
  const int la = std::abs(spec.ell);
  const int alpha = std::max(la - 1, 0);
  const Rule1D &rad = gauss_laguerre_normalized(c.n1, alpha);
  const Rule1D &axial = gauss_hermite(c.n3);
  const double s = spec.sigma;
  const double sqrt_pi = std::sqrt(kPi);
  for (int a = 0; a < c.n1; ++a) {
    const double sa = rad.x[a];
    const double pperp = s * std::sqrt(sa);
    // weight measure: (1/Gamma(|l|+1)) s^|l| e^{-s} ds dphi/(2pi) dt e^{-t^2}/sqrt(pi)
    // realized as normalized alpha = |l|-1 nodes times the extra factor s/|l|.
    const double wr = rad.w[a] * (la >= 1 ? sa / la : 1.0);
    for (int b = 0; b < c.n2; ++b) {
      const double phi = 2.0 * kPi * (b + 0.5) / c.n2;
      const Vec3 base{pperp * std::cos(phi), pperp * std::sin(phi), 0.0};
      const double wrb = wr / c.n2;
      for (int k = 0; k < c.n3; ++k) {
        const Vec3 p{base.x, base.y, spec.mean_p.z + s * axial.x[k]};
        fn(p, wrb * axial.w[k] / sqrt_pi);
      }
    }
  }
}

template <class Fn>
void for_each_mc_node(const PacketSpec &spec, std::int64_t samples,
                      std::uint64_t seed, Fn &&fn) {
  std::mt19937_64 rng(seed);
  const double s = spec.sigma;
  const double winv = 1.0 / static_cast<double>(samples);
  if (spec.family == Family::LgVortex) {
    const int la = std::abs(spec.ell);
    std::gamma_distribution<double> gamma_s(la >= 1 ? la : 1.0, 1.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    std::normal_distribution<double> gz(0.0, 1.0 / std::sqrt(2.0));
    for (std::int64_t i = 0; i < samples; ++i) {
      const double sa = gamma_s(rng);
      const double phi = uphi(rng);
      const double tz = gz(rng);
      const double pperp = s * std::sqrt(sa);
      const Vec3 p{pperp * std::cos(phi), pperp * std::sin(phi),
                   spec.mean_p.z + s * tz};
      fn(p, winv * (la >= 1 ? sa / la : 1.0));
    }
    return;
  }
  std::normal_distribution<double> g(0.0, s / std::sqrt(2.0));
  for (std::int64_t i = 0; i < samples; ++i) {
    const double gx = g(rng), gy = g(rng), gz = g(rng);
    fn(spec.mean_p + Vec3{gx, gy, gz}, winv);
  }
}

//==============================================================================
// Assembly: averages -> intrinsic moments (origin-shift subtraction).

MomentReport assemble(const PacketSpec &spec, const Sums &sums) {
  const double norm = sums.norm.s;
  if (!(norm > 0) || !std::isfinite(norm))
    throw Error("quadrature produced a non-positive norm");
  const double inv = 1.0 / norm;

  MomentReport rep;
  rep.norm = norm;
  rep.mean_p = Vec3{sums.mp[0].s, sums.mp[1].s, sums.mp[2].s} * inv;
  rep.extrinsic_d = Vec3{sums.d[0].s, sums.d[1].s, sums.d[2].s} * inv;
  const Vec3 L = Vec3{sums.L[0].s, sums.L[1].s, sums.L[2].s} * inv;

  const double mxx = sums.m[0].s * inv, myy = sums.m[1].s * inv,
               mzz = sums.m[2].s * inv, mxy = sums.m[3].s * inv,
               mxz = sums.m[4].s * inv, myz = sums.m[5].s * inv;
  const Vec3 &d = rep.extrinsic_d;
  const double cxx = mxx - d.x * d.x, cyy = myy - d.y * d.y,
               czz = mzz - d.z * d.z, cxy = mxy - d.x * d.y,
               cxz = mxz - d.x * d.z, cyz = myz - d.y * d.z;
  const double tr = cxx + cyy + czz;
  rep.r2_spread = tr;

  MomentSet ms;
  ms.provenance = Provenance::Quadrature;
  ms.mu = L * (0.5 / spec.mass) -
          cross(d, rep.mean_p) * (0.5 / spec.mass); // mu - d x <u> / 2
  ms.q = SymTensor3{3 * cxx - tr, 3 * cyy - tr, 3 * czz - tr,
                    3 * cxy,      3 * cxz,      3 * cyz};
  rep.intrinsic = ms;
  return rep;
}

double report_delta(const MomentReport &a, const MomentReport &b) {
  return std::max(max_abs_delta(a.intrinsic, b.intrinsic),
                  max_abs(a.extrinsic_d - b.extrinsic_d));
}

void refuse_vortex_phase(const PacketSpec &spec) {
  if (spec.family != Family::GaussPhase || spec.phase.empty())
    return;
  const SingularityClass cls = spec.phase.classify();
  if (cls.kind == SingularityClass::Kind::Vortex && cls.ell != 0)
    throw VortexDivergence(cls.ell);
}

template <class NodeLoop>
Sums run_nodes(const Kernel &kernel, NodeLoop &&loop) {
  Sums sums;
  NodeEval ne;
  loop([&](const Vec3 &p, double w) {
    kernel.eval(p, ne);
    sums.add(p, w, ne);
  });
  return sums;
}

Sums run_deterministic(const PacketSpec &spec, QuadScheme scheme,
                       const Kernel &kernel, const SchemeCounts &counts) {
  if (scheme == QuadScheme::PolarLg)
    return run_nodes(kernel, [&](auto &&fn) { for_each_polar_node(spec, counts, fn); });
  return run_nodes(kernel, [&](auto &&fn) { for_each_tensor_node(spec, counts, fn); });
}

MomentReport run_monte_carlo(const PacketSpec &spec, const Kernel &kernel,
                             const QuadratureConfig &cfg) {
  constexpr int kBlocks = 64;
  std::vector<Sums> blocks(kBlocks);
  NodeEval ne;
  std::int64_t index = 0;
  const std::int64_t n = cfg.mc_samples;
  for_each_mc_node(spec, n, cfg.mc_seed, [&](const Vec3 &p, double w) {
    kernel.eval(p, ne);
    blocks[static_cast<int>(index * kBlocks / n)].add(p, w, ne);
    ++index;
  });

  Sums total;
  for (const Sums &b : blocks)
    total.merge(b);
  MomentReport rep = assemble(spec, total);

  // Block estimates -> standard error of the full-sample mean.
  std::vector<double> comp[12];
  for (auto &v : comp)
    v.reserve(kBlocks);
  for (const Sums &b : blocks) {
    if (!(b.norm.s > 0))
      continue;
    const MomentReport r = assemble(spec, b);
    const double vals[12] = {r.extrinsic_d.x, r.extrinsic_d.y, r.extrinsic_d.z,
                             r.intrinsic.mu.x, r.intrinsic.mu.y, r.intrinsic.mu.z,
                             r.intrinsic.q.xx, r.intrinsic.q.yy, r.intrinsic.q.zz,
                             r.intrinsic.q.xy, r.intrinsic.q.xz, r.intrinsic.q.yz};
    for (int i = 0; i < 12; ++i)
      comp[i].push_back(vals[i]);
  }
  double max_se = 0;
  for (const auto &v : comp) {
    if (v.size() < 2)
      continue;
    double mean = 0;
    for (double x : v)
      mean += x;
    mean /= v.size();
    double var = 0;
    for (double x : v)
      var += (x - mean) * (x - mean);
    var /= (v.size() - 1);
    max_se = std::max(max_se, std::sqrt(var / v.size()));
  }
  rep.convergence.mc_samples = n;
  rep.convergence.mc_max_stderr = max_se;
  return rep;
}

} // namespace

QuadScheme resolve_scheme(const PacketSpec &spec, const QuadratureConfig &cfg) {
  if (cfg.scheme) {
    if (*cfg.scheme == QuadScheme::PolarLg && spec.family != Family::LgVortex)
      throw InvalidSpec("polar_lg scheme applies to lg_vortex packets only");
    if (*cfg.scheme == QuadScheme::TensorHermite &&
        spec.family == Family::LgVortex && std::abs(spec.ell) > 64)
      throw InvalidSpec("tensor_hermite cannot resolve |ell| > 64; use polar_lg");
    return *cfg.scheme;
  }
  return spec.family == Family::LgVortex ? QuadScheme::PolarLg
                                         : QuadScheme::TensorHermite;
}

MomentReport moments_general(const PacketSpec &spec, const QuadratureConfig &cfg) {
  validate(spec);
  cfg.validate();
  refuse_vortex_phase(spec);
  const QuadScheme scheme = resolve_scheme(spec, cfg);
  const auto kernel = make_kernel(spec, scheme, cfg);

  if (scheme == QuadScheme::MonteCarlo)
    return run_monte_carlo(spec, *kernel, cfg);

  const auto counts_for = [&](int n) {
    return scheme == QuadScheme::PolarLg ? polar_counts(spec, n)
                                         : tensor_counts(spec, n);
  };
  const SchemeCounts base = counts_for(cfg.nodes_per_axis);
  MomentReport rep = assemble(spec, run_deterministic(spec, scheme, *kernel, base));
  rep.convergence.nodes_radial = base.n1;
  rep.convergence.nodes_angular = base.n2;
  rep.convergence.nodes_z = base.n3;
  if (!cfg.check_convergence)
    return rep;

  const SchemeCounts fine = counts_for(2 * cfg.nodes_per_axis);
  MomentReport refined =
      assemble(spec, run_deterministic(spec, scheme, *kernel, fine));
  const double shift = report_delta(rep, refined);
  refined.convergence.checked = true;
  refined.convergence.max_shift = shift;
  refined.convergence.nodes_radial = fine.n1;
  refined.convergence.nodes_angular = fine.n2;
  refined.convergence.nodes_z = fine.n3;
  if (shift > cfg.tolerance)
    throw QuadratureNonConvergence(
        shift, "doubling quadrature nodes moved a moment component by " +
                   std::to_string(shift) + " (> tolerance " +
                   std::to_string(cfg.tolerance) +
                   "); the integrand is not converging");
  return refined;
}

MomentReport moments_phase_formula(const PacketSpec &spec,
                                   const QuadratureConfig &cfg) {
  if (spec.family != Family::GaussPhase)
    throw InvalidSpec("moments_phase_formula applies to gauss_phase packets");
  validate(spec);
  cfg.validate();
  refuse_vortex_phase(spec);

  // Centered covariances of the phase gradient, averaged over the exact
  // Gaussian weight.
  const auto run = [&](const SchemeCounts &counts) {
    Kahan norm, sg[3], sp[3], spxg[3], sgg[6];
    for_each_tensor_node(spec, counts, [&](const Vec3 &p, double w) {
      Vec3 g = -spec.shift;
      if (!spec.phase.empty()) {
        const PhaseGradient pg = spec.phase.eval_grad(p);
        g += pg.grad;
      }
      norm.add(w);
      sg[0].add(w * g.x); sg[1].add(w * g.y); sg[2].add(w * g.z);
      sp[0].add(w * p.x); sp[1].add(w * p.y); sp[2].add(w * p.z);
      const Vec3 pxg = cross(p, g);
      spxg[0].add(w * pxg.x); spxg[1].add(w * pxg.y); spxg[2].add(w * pxg.z);
      sgg[0].add(w * g.x * g.x); sgg[1].add(w * g.y * g.y); sgg[2].add(w * g.z * g.z);
      sgg[3].add(w * g.x * g.y); sgg[4].add(w * g.x * g.z); sgg[5].add(w * g.y * g.z);
    });
    const double inv = 1.0 / norm.s;
    MomentReport rep;
    rep.norm = norm.s;
    const Vec3 gbar = Vec3{sg[0].s, sg[1].s, sg[2].s} * inv;
    rep.mean_p = Vec3{sp[0].s, sp[1].s, sp[2].s} * inv;
    rep.extrinsic_d = -gbar;
    const Vec3 pxg = Vec3{spxg[0].s, spxg[1].s, spxg[2].s} * inv;
    const double cxx = sgg[0].s * inv - gbar.x * gbar.x;
    const double cyy = sgg[1].s * inv - gbar.y * gbar.y;
    const double czz = sgg[2].s * inv - gbar.z * gbar.z;
    const double cxy = sgg[3].s * inv - gbar.x * gbar.y;
    const double cxz = sgg[4].s * inv - gbar.x * gbar.z;
    const double cyz = sgg[5].s * inv - gbar.y * gbar.z;
    const double tr = cxx + cyy + czz;
    rep.intrinsic.provenance = Provenance::Quadrature;
    rep.intrinsic.mu =
        (pxg - cross(rep.mean_p, gbar)) * (0.5 / spec.mass);
    rep.intrinsic.q = SymTensor3{3 * cxx - tr, 3 * cyy - tr, 3 * czz - tr,
                                 3 * cxy,      3 * cxz,      3 * cyz};
    return rep;
  };

  const SchemeCounts base = tensor_counts(spec, cfg.nodes_per_axis);
  MomentReport rep = run(base);
  rep.convergence.nodes_radial = base.n1;
  rep.convergence.nodes_angular = base.n2;
  rep.convergence.nodes_z = base.n3;
  if (!cfg.check_convergence)
    return rep;
  const SchemeCounts fine = tensor_counts(spec, 2 * cfg.nodes_per_axis);
  MomentReport refined = run(fine);
  const double shift = report_delta(rep, refined);
  refined.convergence.checked = true;
  refined.convergence.max_shift = shift;
  refined.convergence.nodes_radial = fine.n1;
  refined.convergence.nodes_angular = fine.n2;
  refined.convergence.nodes_z = fine.n3;
  if (shift > cfg.tolerance)
    throw QuadratureNonConvergence(
        shift, "doubling quadrature nodes moved a phase-covariance component by " +
                   std::to_string(shift) + " (> tolerance " +
                   std::to_string(cfg.tolerance) + ")");
  return refined;
}

double norm_check(const PacketSpec &spec, const QuadratureConfig &cfg) {
  validate(spec);
  cfg.validate();
  const QuadScheme scheme = resolve_scheme(spec, cfg);
  const auto kernel = make_kernel(spec, scheme, cfg);

  Kahan norm;
  NodeEval ne;
  const auto add = [&](const Vec3 &p, double w) {
    kernel->eval(p, ne);
    norm.add(w * std::norm(ne.u));
  };
  if (scheme == QuadScheme::MonteCarlo)
    for_each_mc_node(spec, cfg.mc_samples, cfg.mc_seed, add);
  else if (scheme == QuadScheme::PolarLg)
    for_each_polar_node(spec, polar_counts(spec, cfg.nodes_per_axis), add);
  else
    for_each_tensor_node(spec, tensor_counts(spec, cfg.nodes_per_axis), add);

  const double tol = scheme == QuadScheme::MonteCarlo
                         ? std::max(cfg.norm_tolerance, 0.05)
                         : cfg.norm_tolerance;
  if (std::fabs(norm.s - 1.0) > tol)
    throw NormalizationDrift(norm.s, "integrated norm " + std::to_string(norm.s) +
                                         " drifted from 1 by more than " +
                                         std::to_string(tol));
  return norm.s;
}

ShiftInvarianceReport shift_invariance_check(const PacketSpec &spec, const Vec3 &r0,
                                             const QuadratureConfig &cfg) {
  ShiftInvarianceReport out;
  out.base = moments_general(spec, cfg);
  PacketSpec shifted = spec;
  shifted.shift += r0;
  out.shifted = moments_general(shifted, cfg);
  out.mu_delta = max_abs(out.shifted.intrinsic.mu - out.base.intrinsic.mu);
  out.q_delta = max_abs_diff(out.shifted.intrinsic.q, out.base.intrinsic.q);
  out.d_shift_error = (out.shifted.extrinsic_d - out.base.extrinsic_d) - r0;
  return out;
}

} // namespace wavemom

#include "wavemom/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace wavemom {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json vec_json(const Vec3 &v) { return {v.x, v.y, v.z}; }

ordered_json tensor_json(const SymTensor3 &t) {
  ordered_json j;
  j["xx"] = t.xx;
  j["yy"] = t.yy;
  j["zz"] = t.zz;
  j["xy"] = t.xy;
  j["xz"] = t.xz;
  j["yz"] = t.yz;
  return j;
}

double pair_scale(const PathResult &a, const PathResult &b) {
  return std::max({max_abs(a.moments.mu), max_abs(b.moments.mu),
                   a.moments.q.max_abs(), b.moments.q.max_abs(),
                   max_abs(a.extrinsic_d), max_abs(b.extrinsic_d), 1e-30});
}

} // namespace

void finalize_deltas(RunReport &report) {
  report.deltas.clear();
  report.within_tolerance = true;
  for (std::size_t i = 0; i < report.paths.size(); ++i)
    for (std::size_t k = i + 1; k < report.paths.size(); ++k) {
      const PathResult &a = report.paths[i];
      const PathResult &b = report.paths[k];
      PathDelta d;
      d.a = a.name;
      d.b = b.name;
      d.abs = std::max(max_abs_delta(a.moments, b.moments),
                       max_abs(a.extrinsic_d - b.extrinsic_d));
      d.rel = d.abs / pair_scale(a, b);
      if (d.abs > report.atol + report.rtol * pair_scale(a, b))
        report.within_tolerance = false;
      report.deltas.push_back(d);
    }
}

std::string report_to_json(const RunReport &report) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["config"] = ordered_json::parse(report.config_echo);
  ordered_json paths = ordered_json::object();
  for (const PathResult &p : report.paths) {
    ordered_json pj;
    pj["d"] = vec_json(p.moments.d);
    pj["mu"] = vec_json(p.moments.mu);
    pj["q"] = tensor_json(p.moments.q);
    pj["extrinsic_d"] = vec_json(p.extrinsic_d);
    pj["norm"] = p.norm;
    pj["provenance"] = to_string(p.moments.provenance);
    if (p.convergence) {
      ordered_json cj;
      cj["checked"] = p.convergence->checked;
      cj["max_shift"] = p.convergence->max_shift;
      cj["nodes"] = {p.convergence->nodes_radial, p.convergence->nodes_angular,
                     p.convergence->nodes_z};
      if (p.convergence->mc_samples > 0) {
        cj["mc_samples"] = p.convergence->mc_samples;
        cj["mc_max_stderr"] = p.convergence->mc_max_stderr;
      }
      pj["convergence"] = cj;
    }
    paths[p.name] = pj;
  }
  j["paths"] = paths;
  ordered_json deltas = ordered_json::array();
  for (const PathDelta &d : report.deltas) {
    ordered_json dj;
    dj["paths"] = d.a + "_vs_" + d.b;
    dj["abs"] = d.abs;
    dj["rel"] = d.rel;
    deltas.push_back(dj);
  }
  j["deltas"] = deltas;
  j["atol"] = report.atol;
  j["rtol"] = report.rtol;
  j["within_tolerance"] = report.within_tolerance;
  if (report.q_si) {
    j["q_si_e_cm2"] = tensor_json(*report.q_si);
    j["q_frame"] = "rest";
  }
  if (report.mu_bohr)
    j["mu_bohr_magnetons"] = *report.mu_bohr;
  if (report.include_timing)
    j["wall_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const RunReport &report) {
  std::string out = "section,name,component,value\r\n";
  const auto row = [&out](const std::string &section, const std::string &name,
                          const std::string &component, double value) {
    out += section + "," + name + "," + component + "," + fmt17(value) + "\r\n";
  };
  for (const PathResult &p : report.paths) {
    row("path", p.name, "d_x", p.moments.d.x);
    row("path", p.name, "d_y", p.moments.d.y);
    row("path", p.name, "d_z", p.moments.d.z);
    row("path", p.name, "mu_x", p.moments.mu.x);
    row("path", p.name, "mu_y", p.moments.mu.y);
    row("path", p.name, "mu_z", p.moments.mu.z);
    row("path", p.name, "q_xx", p.moments.q.xx);
    row("path", p.name, "q_yy", p.moments.q.yy);
    row("path", p.name, "q_zz", p.moments.q.zz);
    row("path", p.name, "q_xy", p.moments.q.xy);
    row("path", p.name, "q_xz", p.moments.q.xz);
    row("path", p.name, "q_yz", p.moments.q.yz);
    row("path", p.name, "extrinsic_d_x", p.extrinsic_d.x);
    row("path", p.name, "extrinsic_d_y", p.extrinsic_d.y);
    row("path", p.name, "extrinsic_d_z", p.extrinsic_d.z);
    row("path", p.name, "norm", p.norm);
    if (p.convergence) {
      row("convergence", p.name, "max_shift", p.convergence->max_shift);
      if (p.convergence->mc_samples > 0)
        row("convergence", p.name, "mc_max_stderr", p.convergence->mc_max_stderr);
    }
  }
  for (const PathDelta &d : report.deltas) {
    row("delta", d.a + "_vs_" + d.b, "abs", d.abs);
    row("delta", d.a + "_vs_" + d.b, "rel", d.rel);
  }
  row("tolerance", "atol", "", report.atol);
  row("tolerance", "rtol", "", report.rtol);
  row("tolerance", "within", "", report.within_tolerance ? 1.0 : 0.0);
  if (report.q_si) {
    row("q_si_e_cm2", "q", "xx", report.q_si->xx);
    row("q_si_e_cm2", "q", "yy", report.q_si->yy);
    row("q_si_e_cm2", "q", "zz", report.q_si->zz);
    row("q_si_e_cm2", "q", "xy", report.q_si->xy);
    row("q_si_e_cm2", "q", "xz", report.q_si->xz);
    row("q_si_e_cm2", "q", "yz", report.q_si->yz);
  }
  if (report.mu_bohr)
    row("mu_bohr_magnetons", "mu_z", "", *report.mu_bohr);
  if (report.include_timing)
    row("timing", "wall_ms", "", report.wall_ms);
  return out;
}

} // namespace wavemom

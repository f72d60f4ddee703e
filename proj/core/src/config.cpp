#include "wavemom/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wavemom/errors.hpp"

namespace wavemom {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string &field, const std::string &why) {
  throw InvalidSpec("config field '" + field + "': " + why);
}

double get_number(const ordered_json &j, const std::string &key, double fallback) {
  if (!j.contains(key))
    return fallback;
  if (!j.at(key).is_number())
    bad(key, "expected a number");
  return j.at(key).get<double>();
}

Family parse_family(const std::string &s) {
  if (s == "gauss_phase") return Family::GaussPhase;
  if (s == "lg_vortex") return Family::LgVortex;
  if (s == "airy") return Family::Airy;
  if (s == "cat") return Family::Cat;
  bad("family", "must be gauss_phase, lg_vortex, airy or cat (got '" + s + "')");
}

Vec3 parse_vec(const ordered_json &j, const std::string &key, bool allow2) {
  const auto &v = j.at(key);
  if (!v.is_array() || (v.size() != 3 && !(allow2 && v.size() == 2)))
    bad(key, allow2 ? "expected [x, y] or [x, y, z]" : "expected [x, y, z]");
  for (const auto &c : v)
    if (!c.is_number())
      bad(key, "components must be numbers");
  return {v[0].get<double>(), v[1].get<double>(),
          v.size() == 3 ? v[2].get<double>() : 0.0};
}

void parse_quadrature(const ordered_json &q, QuadratureConfig &cfg) {
  cfg.nodes_per_axis = static_cast<int>(get_number(q, "nodes_per_axis", cfg.nodes_per_axis));
  if (q.contains("scheme")) {
    const std::string s = q.at("scheme").get<std::string>();
    if (s == "tensor_hermite") cfg.scheme = QuadScheme::TensorHermite;
    else if (s == "polar_lg") cfg.scheme = QuadScheme::PolarLg;
    else if (s == "monte_carlo") cfg.scheme = QuadScheme::MonteCarlo;
    else bad("quadrature.scheme", "must be tensor_hermite, polar_lg or monte_carlo");
  }
  if (q.contains("derivative_mode")) {
    const std::string s = q.at("derivative_mode").get<std::string>();
    if (s == "analytic") cfg.derivative_mode = DerivativeMode::AnalyticAd;
    else if (s == "central_diff") cfg.derivative_mode = DerivativeMode::CentralDiff;
    else bad("quadrature.derivative_mode", "must be analytic or central_diff");
  }
  cfg.fd_step = get_number(q, "fd_step", cfg.fd_step);
  cfg.mc_samples = static_cast<std::int64_t>(get_number(q, "samples", double(cfg.mc_samples)));
  cfg.mc_seed = static_cast<std::uint64_t>(get_number(q, "seed", double(cfg.mc_seed)));
  cfg.tolerance = get_number(q, "tolerance", cfg.tolerance);
  if (q.contains("check_convergence")) {
    if (!q.at("check_convergence").is_boolean())
      bad("quadrature.check_convergence", "expected a boolean");
    cfg.check_convergence = q.at("check_convergence").get<bool>();
  }
  cfg.norm_tolerance = get_number(q, "norm_tolerance", cfg.norm_tolerance);
}

} // namespace

RunConfig parse_run_config(const std::string &json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception &e) {
    throw InvalidSpec(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw InvalidSpec("config root must be a JSON object");
  if (!j.contains("family"))
    bad("family", "required");

  RunConfig run;
  PacketSpec &p = run.packet;
  p.family = parse_family(j.at("family").get<std::string>());
  p.sigma = get_number(j, "sigma", 1.0);
  if (j.contains("mean_p")) {
    if (j.at("mean_p").is_number())
      p.mean_p = Vec3{0, 0, j.at("mean_p").get<double>()};
    else
      p.mean_p = parse_vec(j, "mean_p", false);
  }
  p.mass = get_number(j, "mass", 1.0);

  switch (p.family) {
  case Family::GaussPhase: {
    if (j.contains("phase") && !j.at("phase").get<std::string>().empty()) {
      std::map<std::string, double> params;
      if (j.contains("phase_params")) {
        if (!j.at("phase_params").is_object())
          bad("phase_params", "expected an object of name -> number");
        for (const auto &[k, v] : j.at("phase_params").items()) {
          if (!v.is_number())
            bad("phase_params." + k, "expected a number");
          params[k] = v.get<double>();
        }
      }
      p.phase = PhaseExpr::parse(j.at("phase").get<std::string>(), params);
    }
    break;
  }
  case Family::LgVortex: {
    const double l = get_number(j, "ell", 0.0);
    if (l != std::floor(l))
      bad("ell", "must be an integer");
    p.ell = static_cast<int>(l);
    break;
  }
  case Family::Airy:
    p.xi_x3 = get_number(j, "xi_x3", 0.0);
    p.xi_y3 = get_number(j, "xi_y3", 0.0);
    break;
  case Family::Cat: {
    if (!j.contains("r0"))
      bad("r0", "required for cat packets");
    p.cat_r0 = parse_vec(j, "r0", true);
    const std::string parity =
        j.contains("parity") ? j.at("parity").get<std::string>() : "even";
    if (parity == "even") p.parity = CatParity::Even;
    else if (parity == "odd") p.parity = CatParity::Odd;
    else bad("parity", "must be even or odd");
    break;
  }
  }

  if (j.contains("shift"))
    p.shift = parse_vec(j, "shift", false);

  run.units.mass = p.mass;
  if (j.contains("sigma_perp")) {
    const auto &sp = j.at("sigma_perp");
    if (sp.is_string()) {
      run.units.sigma_perp_m = parse_length_m(sp.get<std::string>());
    } else if (sp.is_object() && sp.contains("value") && sp.contains("unit")) {
      std::ostringstream os;
      os << sp.at("value").get<double>() << sp.at("unit").get<std::string>();
      run.units.sigma_perp_m = parse_length_m(os.str());
    } else {
      bad("sigma_perp", "expected \"<value> <unit>\" or {value, unit}");
    }
  }

  if (j.contains("quadrature")) {
    if (!j.at("quadrature").is_object())
      bad("quadrature", "expected an object");
    parse_quadrature(j.at("quadrature"), run.quadrature);
  }
  if (j.contains("grid")) {
    const auto &g = j.at("grid");
    if (!g.is_object())
      bad("grid", "expected an object");
    run.grid.points_per_axis =
        static_cast<int>(get_number(g, "points_per_axis", run.grid.points_per_axis));
    if (g.contains("box_half_width"))
      run.grid.box_half_width = get_number(g, "box_half_width", 0.0);
  }

  try {
    validate(p);
    run.quadrature.validate();
    run.grid.validate();
    run.units.validate();
  } catch (const DegenerateCat &) {
    throw; // keep the dedicated type visible to callers
  }
  return run;
}

RunConfig load_run_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidSpec("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string echo_config(const RunConfig &cfg) {
  ordered_json j;
  const PacketSpec &p = cfg.packet;
  switch (p.family) {
  case Family::GaussPhase:
    j["family"] = "gauss_phase";
    if (!p.phase.empty())
      j["phase"] = p.phase.print();
    break;
  case Family::LgVortex:
    j["family"] = "lg_vortex";
    j["ell"] = p.ell;
    break;
  case Family::Airy:
    j["family"] = "airy";
    j["xi_x3"] = p.xi_x3;
    j["xi_y3"] = p.xi_y3;
    break;
  case Family::Cat:
    j["family"] = "cat";
    j["r0"] = {p.cat_r0.x, p.cat_r0.y, p.cat_r0.z};
    j["parity"] = p.parity == CatParity::Even ? "even" : "odd";
    break;
  }
  j["sigma"] = p.sigma;
  j["mean_p"] = {p.mean_p.x, p.mean_p.y, p.mean_p.z};
  j["mass"] = p.mass;
  if (p.shift.norm2() > 0)
    j["shift"] = {p.shift.x, p.shift.y, p.shift.z};
  if (cfg.units.sigma_perp_m)
    j["sigma_perp_m"] = *cfg.units.sigma_perp_m;

  ordered_json q;
  q["nodes_per_axis"] = cfg.quadrature.nodes_per_axis;
  if (cfg.quadrature.scheme) {
    q["scheme"] = *cfg.quadrature.scheme == QuadScheme::TensorHermite ? "tensor_hermite"
                  : *cfg.quadrature.scheme == QuadScheme::PolarLg     ? "polar_lg"
                                                                      : "monte_carlo";
  }
  q["derivative_mode"] =
      cfg.quadrature.derivative_mode == DerivativeMode::AnalyticAd ? "analytic"
                                                                   : "central_diff";
  q["samples"] = cfg.quadrature.mc_samples;
  q["seed"] = cfg.quadrature.mc_seed;
  q["tolerance"] = cfg.quadrature.tolerance;
  q["check_convergence"] = cfg.quadrature.check_convergence;
  j["quadrature"] = q;

  ordered_json g;
  g["points_per_axis"] = cfg.grid.points_per_axis;
  if (cfg.grid.box_half_width)
    g["box_half_width"] = *cfg.grid.box_half_width;
  j["grid"] = g;
  return j.dump();
}

} // namespace wavemom

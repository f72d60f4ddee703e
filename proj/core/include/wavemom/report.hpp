#pragma once
#include <optional>
#include <string>
#include <vector>

#include "wavemom/config.hpp"
#include "wavemom/numeric_moments.hpp"

namespace wavemom {

//! One computation path inside a moments run.
struct PathResult {
  std::string name; // analytic | phase | quadrature | grid
  MomentSet moments;
  Vec3 extrinsic_d{};
  double norm = 1.0;
  std::optional<ConvergenceInfo> convergence = {};
};

//! Cross-path comparison entry.
struct PathDelta {
  std::string a, b;
  double abs = 0; // max componentwise |difference|
  double rel = 0; // abs / largest component magnitude
};

//! Everything the moments command reports. The wall time is kept out of the
//! serialized payload unless include_timing is set, so identical runs stay
//! byte-identical.
struct RunReport {
  int schema_version = 1;
  std::string config_echo; // canonical JSON of the run configuration
  std::vector<PathResult> paths;
  std::vector<PathDelta> deltas;
  double atol = 1e-9;
  double rtol = 1e-3;
  bool within_tolerance = true;
  std::optional<SymTensor3> q_si = {};  // e*cm^2, when a physical width is known
  std::optional<double> mu_bohr = {};   // mu_z in units of 1/(2m)
  double wall_ms = 0;
  bool include_timing = false;
};

//! Fill `deltas`/`within_tolerance` from the collected paths (pairwise, in
//! deterministic path order; pass iff |a-b| <= atol + rtol*scale per pair).
void finalize_deltas(RunReport &report);

//! Stable-key JSON / RFC-4180 CSV serializations. Both carry the same
//! numeric values at full precision (17 significant digits).
std::string report_to_json(const RunReport &report);
std::string report_to_csv(const RunReport &report);

} // namespace wavemom

#pragma once
#include <string>

#include "wavemom/grid_moments.hpp"
#include "wavemom/packet.hpp"
#include "wavemom/quadrature.hpp"
#include "wavemom/units.hpp"

namespace wavemom {

//! A fully resolved run: packet + both numeric-path configurations + the
//! reporting context. Loaded from the JSON packet config file (schema in the
//! README); every scalar can be overridden by a CLI flag.
struct RunConfig {
  PacketSpec packet;
  QuadratureConfig quadrature;
  GridConfig grid;
  UnitContext units;
};

//! Parse a JSON config document. Throws InvalidSpec with a field-level
//! message on any schema violation.
RunConfig parse_run_config(const std::string &json_text);

//! Load and parse a config file.
RunConfig load_run_config(const std::string &path);

//! Canonical, key-stable JSON echo of a run configuration (embedded in
//! reports so a run is reproducible from its own output).
std::string echo_config(const RunConfig &cfg);

} // namespace wavemom

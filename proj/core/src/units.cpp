#include "wavemom/units.hpp"

#include <cctype>
#include <cstdlib>

#include "wavemom/errors.hpp"

namespace wavemom {

void UnitContext::validate() const {
  if (!(mass > 0))
    throw InvalidSpec("UnitContext: mass must be positive");
  if (sigma_perp_m && !(*sigma_perp_m > 0))
    throw InvalidSpec("UnitContext: sigma_perp must be positive");
}

SymTensor3 traceless_part(const SymTensor3 &t) {
  const double s = t.trace() / 3.0;
  const double xx = t.xx - s;
  const double yy = t.yy - s;
  // closing the trace identity exactly makes repeated application a no-op
  return {xx, yy, -(xx + yy), t.xy, t.xz, t.yz};
}

SymTensor3 require_traceless(const SymTensor3 &t) {
  const double scale = t.max_abs();
  if (std::fabs(t.trace()) > 1e-12 * std::max(scale, 1e-300))
    throw InvalidSpec("tensor is not traceless within 1e-12 relative");
  return t;
}

SymTensor3 q_to_si(const SymTensor3 &q, const UnitContext &ctx) {
  if (!ctx.sigma_perp_m)
    throw MissingScale("q_to_si: no physical sigma_perp in the unit context");
  const double cm = *ctx.sigma_perp_m * kCmPerMeter;
  return q * (cm * cm);
}

double parse_length_m(const std::string &text) {
  const char *begin = text.c_str();
  char *end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin)
    throw InvalidSpec("length '" + text + "': no numeric value");
  std::string unit;
  for (const char *c = end; *c; ++c)
    if (!std::isspace(static_cast<unsigned char>(*c)))
      unit.push_back(*c);
  double scale = 0;
  if (unit == "nm")
    scale = 1e-9;
  else if (unit == "um")
    scale = 1e-6;
  else if (unit == "m")
    scale = 1.0;
  else
    throw InvalidSpec("length '" + text + "': unit must be nm, um or m");
  if (!(value > 0))
    throw InvalidSpec("length '" + text + "': must be positive");
  return value * scale;
}

} // namespace wavemom

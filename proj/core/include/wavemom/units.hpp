#pragma once
#include <optional>
#include <string>

#include "wavemom/sym_tensor3.hpp"

namespace wavemom {

// Everything internal runs in natural units (hbar = c = e = 1) with the
// momentum width sigma as the scale; lengths come out in units of the
// transverse width sigma_perp = 1/sigma. SI conversion happens only at the
// reporting boundary.

//! Reporting context: particle mass (natural units) and, optionally, the
//! physical transverse width used to convert quadrupoles to e*cm^2.
struct UnitContext {
  double mass = 1.0;                          // > 0
  std::optional<double> sigma_perp_m = {};    // physical width, meters, > 0

  void validate() const;
};

//! Convert a quadrupole tensor expressed in units of sigma_perp^2 (natural
//! units rescaled so sigma_perp = 1) into e*cm^2.
//! Throws MissingScale when the context has no physical width.
SymTensor3 q_to_si(const SymTensor3 &q, const UnitContext &ctx);

//! Parse a length like "0.1nm", "10 um", "2e-6 m" into meters.
//! Accepted units: nm, um, m. Throws InvalidSpec on failure.
double parse_length_m(const std::string &text);

constexpr double kCmPerMeter = 100.0;

} // namespace wavemom

#pragma once
#include <string>

#include "wavemom/sym_tensor3.hpp"
#include "wavemom/vec3.hpp"

namespace wavemom {

enum class Provenance { Analytic, Quadrature, Grid };

std::string to_string(Provenance p);

//! Intrinsic multipole moments: electric dipole d (always 0 for the intrinsic
//! values of the built-in families), magnetic dipole mu (units e/(2m)), and
//! the symmetric traceless electric quadrupole q (units e*sigma_perp^2).
//! q is always the rest-frame tensor; boost_dipoles transforms (d, mu) only
//! and sets dipoles_boosted.
struct MomentSet {
  Vec3 d{};
  Vec3 mu{};
  SymTensor3 q{};
  Provenance provenance = Provenance::Analytic;
  bool dipoles_boosted = false;
};

//! Largest componentwise |a - b| over d, mu and q.
double max_abs_delta(const MomentSet &a, const MomentSet &b);

//! Same, divided by the largest component magnitude of the pair (floor 1e-30).
double max_rel_delta(const MomentSet &a, const MomentSet &b);

} // namespace wavemom

#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace wavemom {

//! Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Invalid packet/quadrature/grid configuration (bad parameters, schema, units).
struct InvalidSpec : Error {
  using Error::Error;
};

//! Phase expression could not be parsed.
struct SyntaxError : Error {
  std::size_t offset;   // byte offset of the first offending token
  std::string expected; // what the parser was looking for
  SyntaxError(std::size_t off, std::string exp, const std::string &msg)
      : Error(msg), offset(off), expected(std::move(exp)) {}
};

//! Phase expression references a parameter that was not supplied.
struct UnboundParameter : Error {
  std::string name;
  explicit UnboundParameter(std::string n)
      : Error("unbound parameter '" + n + "'"), name(std::move(n)) {}
};

//! Phase evaluation hit a singular locus (vortex axis, sqrt'(0), atan2(0,0), ...).
struct SingularPoint : Error {
  using Error::Error;
};

//! SI conversion requested without a physical transverse scale.
struct MissingScale : Error {
  using Error::Error;
};

//! Numerically integrated norm drifted outside the configured tolerance.
struct NormalizationDrift : Error {
  double norm;
  NormalizationDrift(double n, const std::string &msg) : Error(msg), norm(n) {}
};

//! Vortex phase on a plain Gaussian envelope: the second moment diverges
//! logarithmically, so the engine refuses to produce a cutoff-dependent number.
struct VortexDivergence : Error {
  int ell;
  explicit VortexDivergence(int l)
      : Error("phase carries an additive vortex term " + std::to_string(l) +
              "*phi_p on a plain Gaussian envelope; the quadrupole integral "
              "diverges logarithmically and has no finite value"),
        ell(l) {}
};

//! Doubling the node count moved a component by more than the tolerance.
struct QuadratureNonConvergence : Error {
  double max_shift;
  QuadratureNonConvergence(double shift, const std::string &msg)
      : Error(msg), max_shift(shift) {}
};

//! Odd cat state with vanishing separation: the normalization degenerates.
struct DegenerateCat : Error {
  using Error::Error;
};

//! Grid box leaks probability above the documented budget.
struct BoxTooSmall : Error {
  using Error::Error;
};

//! Field evaluation requested at r = 0.
struct OriginSingularity : Error {
  OriginSingularity() : Error("field evaluation at the origin") {}
};

//! |beta| >= 1 passed to the dipole boost.
struct SuperluminalBoost : Error {
  using Error::Error;
};

} // namespace wavemom

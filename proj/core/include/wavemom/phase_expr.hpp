#pragma once
#include <map>
#include <memory>
#include <string>

#include "wavemom/vec3.hpp"

namespace wavemom {

//! Value and exact momentum-gradient of a phase at one point.
struct PhaseGradient {
  double value = 0.0;
  Vec3 grad{};
};

//! Result of the syntactic singularity scan of a phase expression.
struct SingularityClass {
  enum class Kind { Smooth, Vortex, Unknown };
  Kind kind = Kind::Smooth;
  int ell = 0; // integer coefficient of the additive phi_p term (Vortex only)
};

namespace detail {
struct Node;
}

//! Parsed momentum-space phase phi(p).
//!
//! Grammar (documented in the README): variables p_x, p_y, p_z, p_perp,
//! phi_p; named parameters bound at parse time; + - * / ^ (integer powers);
//! sin, cos, atan2, sqrt. Immutable after parse; evaluation is pure and
//! reentrant, so expressions can be shared across quadrature nodes freely.
class PhaseExpr {
public:
  PhaseExpr() = default; // empty expression, evaluates to 0

  //! Parse `source`, binding parameter names to values.
  //! Throws SyntaxError (with byte offset) or UnboundParameter.
  static PhaseExpr parse(const std::string &source,
                         const std::map<std::string, double> &params = {});

  //! Value and gradient by forward-mode differentiation over a fixed
  //! 3-dimensional tangent. Throws SingularPoint on singular loci.
  PhaseGradient eval_grad(const Vec3 &p) const;

  //! Value only.
  double eval(const Vec3 &p) const;

  //! Pattern-match for an additive integer vortex term c*phi_p.
  //! Unknown is the safe fallback for anything the scan cannot prove.
  SingularityClass classify() const;

  //! Render back to parseable text. parse(print()) reproduces the same AST.
  std::string print() const;

  bool empty() const { return root_ == nullptr; }

  //! Structural equality (used by the round-trip property tests).
  friend bool equal(const PhaseExpr &a, const PhaseExpr &b);

private:
  explicit PhaseExpr(std::shared_ptr<const detail::Node> root)
      : root_(std::move(root)) {}
  std::shared_ptr<const detail::Node> root_;
};

} // namespace wavemom

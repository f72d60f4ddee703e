#include <doctest.h>

#include <cmath>
#include <random>

#include "expr_gen.hpp"
#include "wavemom/errors.hpp"
#include "wavemom/phase_expr.hpp"

using namespace wavemom;

namespace {

Vec3 fd_gradient(const PhaseExpr &e, const Vec3 &p, double h) {
  return {(e.eval(p + Vec3{h, 0, 0}) - e.eval(p - Vec3{h, 0, 0})) / (2 * h),
          (e.eval(p + Vec3{0, h, 0}) - e.eval(p - Vec3{0, h, 0})) / (2 * h),
          (e.eval(p + Vec3{0, 0, h}) - e.eval(p - Vec3{0, 0, h})) / (2 * h)};
}

} // namespace

TEST_SUITE("phase_dsl") {

TEST_CASE("parse maps the vortex and airy phases") {
  const PhaseExpr vortex = PhaseExpr::parse("l*phi_p", {{"l", 3.0}});
  const Vec3 p{1.0, 0.0, 5.0};
  CHECK(vortex.eval(p) == doctest::Approx(3.0 * std::atan2(0.0, 1.0)));
  const auto cls = vortex.classify();
  CHECK(cls.kind == SingularityClass::Kind::Vortex);
  CHECK(cls.ell == 3);

  const PhaseExpr airy =
      PhaseExpr::parse("(1/3)*(xx*p_x^3 + xy*p_y^3)", {{"xx", 1.0}, {"xy", 0.5}});
  CHECK(airy.eval(Vec3{2, 1, 0}) ==
        doctest::Approx((1.0 / 3.0) * (8.0 + 0.5)));
  CHECK(airy.classify().kind == SingularityClass::Kind::Smooth);
}

TEST_CASE("syntax errors carry the byte offset") {
  try {
    PhaseExpr::parse("p_x +");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError &e) {
    CHECK(e.offset == 5);
  }
  CHECK_THROWS_AS(PhaseExpr::parse(""), SyntaxError);
  CHECK_THROWS_AS(PhaseExpr::parse("sin(p_x"), SyntaxError);
  CHECK_THROWS_AS(PhaseExpr::parse("p_x ^ p_y"), SyntaxError); // non-integer power
  CHECK_THROWS_AS(PhaseExpr::parse("foo*p_x"), UnboundParameter);
}

TEST_CASE("eval_grad spec anchors") {
  // vortex gradient (-l p_y, l p_x, 0)/p_perp^2 at (1, 0, 5)
  const PhaseExpr vortex = PhaseExpr::parse("2*phi_p");
  const PhaseGradient g = vortex.eval_grad(Vec3{1, 0, 5});
  CHECK(g.grad.x == doctest::Approx(0.0));
  CHECK(g.grad.y == doctest::Approx(2.0));
  CHECK(g.grad.z == doctest::Approx(0.0));
  // checked independently against central differences
  const Vec3 fd = fd_gradient(vortex, Vec3{1, 0, 5}, 1e-6);
  CHECK(max_abs(g.grad - fd) <= 1e-6 * (1 + max_abs(g.grad)));

  const PhaseExpr cubic = PhaseExpr::parse("(1/3)*(p_x^3 + p_y^3)");
  const PhaseGradient gc = cubic.eval_grad(Vec3{2, 1, 0});
  CHECK(gc.grad.x == doctest::Approx(4.0));
  CHECK(gc.grad.y == doctest::Approx(1.0));
  CHECK(gc.grad.z == doctest::Approx(0.0));

  const PhaseExpr linear =
      PhaseExpr::parse("-(x0*p_x + y0*p_y)", {{"x0", 1.5}, {"y0", -0.25}});
  for (const Vec3 &p : {Vec3{1, 2, 3}, Vec3{-4, 0.5, 0}, Vec3{0, 0, 9}}) {
    const PhaseGradient gl = linear.eval_grad(p);
    CHECK(gl.grad.x == doctest::Approx(-1.5));
    CHECK(gl.grad.y == doctest::Approx(0.25));
    CHECK(gl.grad.z == doctest::Approx(0.0));
  }
}

TEST_CASE("singular loci raise SingularPoint") {
  const PhaseExpr vortex = PhaseExpr::parse("phi_p");
  CHECK_THROWS_AS(vortex.eval_grad(Vec3{0, 0, 1}), SingularPoint);
  const PhaseExpr perp = PhaseExpr::parse("p_perp");
  CHECK_THROWS_AS(perp.eval_grad(Vec3{0, 0, 1}), SingularPoint);
  const PhaseExpr root = PhaseExpr::parse("sqrt(p_z)");
  CHECK_THROWS_AS(root.eval_grad(Vec3{1, 1, 0}), SingularPoint);  // sqrt'(0)
  CHECK_THROWS_AS(root.eval_grad(Vec3{1, 1, -1}), SingularPoint); // negative arg
  const PhaseExpr div = PhaseExpr::parse("1/p_z");
  CHECK_THROWS_AS(div.eval_grad(Vec3{1, 1, 0}), SingularPoint);
}

TEST_CASE("classify_singularity") {
  CHECK(PhaseExpr::parse("3*phi_p + p_z").classify().kind ==
        SingularityClass::Kind::Vortex);
  CHECK(PhaseExpr::parse("3*phi_p + p_z").classify().ell == 3);
  CHECK(PhaseExpr::parse("phi_p - 4*phi_p").classify().ell == -3);
  CHECK(PhaseExpr::parse("(1/3)*(p_x^3 + p_y^3)").classify().kind ==
        SingularityClass::Kind::Smooth);
  CHECK(PhaseExpr::parse("sin(phi_p)").classify().kind ==
        SingularityClass::Kind::Unknown);
  CHECK(PhaseExpr::parse("1/p_perp").classify().kind ==
        SingularityClass::Kind::Unknown);
  CHECK(PhaseExpr::parse("p_perp^-2").classify().kind ==
        SingularityClass::Kind::Unknown);
  CHECK(PhaseExpr::parse("c*phi_p", {{"c", 1.5}}).classify().kind ==
        SingularityClass::Kind::Unknown); // non-integer vortex coefficient
  CHECK(PhaseExpr::parse("p_perp^2 * p_z").classify().kind ==
        SingularityClass::Kind::Smooth); // p_perp in a numerator is fine
}

TEST_CASE("AD gradients match central differences on random expressions") {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> coord(-2.5, 2.5);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    std::map<std::string, double> params;
    const std::string source = testgen::random_expr(rng, params, 4);
    PhaseExpr expr;
    try {
      expr = PhaseExpr::parse(source, params);
    } catch (const SyntaxError &) {
      FAIL_CHECK("generator produced unparseable text: ", source);
      continue;
    }
    for (int attempt = 0; attempt < 20; ++attempt) {
      const Vec3 p{coord(rng), coord(rng), coord(rng)};
      try {
        const PhaseGradient ad = expr.eval_grad(p);
        if (std::fabs(ad.value) > 100 || max_abs(ad.grad) > 100)
          continue; // keep the finite-difference noise floor meaningful
        const Vec3 fd = fd_gradient(expr, p, 1e-5);
        const double err = max_abs(ad.grad - fd);
        CHECK(err <= 1e-6 * (1.0 + max_abs(ad.grad)));
        ++checked;
        break;
      } catch (const SingularPoint &) {
        continue; // non-singular points only
      }
    }
  }
  // the generator must actually exercise the property
  CHECK(checked > 900);
}

TEST_CASE("print round-trips to an equal AST") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    std::map<std::string, double> params;
    const std::string source = testgen::random_expr(rng, params, 4);
    const PhaseExpr a = PhaseExpr::parse(source, params);
    const PhaseExpr b = PhaseExpr::parse(a.print()); // constants already folded
    CHECK(equal(a, b));
  }
}

TEST_CASE("gradient is invariant under adding a constant") {
  std::mt19937_64 rng(512);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> cdist(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    std::map<std::string, double> params;
    const std::string source = testgen::random_expr(rng, params, 3);
    const double c = cdist(rng);
    params["extra"] = c;
    const PhaseExpr base = PhaseExpr::parse(source, params);
    const PhaseExpr plus = PhaseExpr::parse("(" + source + ") + extra", params);
    for (int attempt = 0; attempt < 10; ++attempt) {
      const Vec3 p{coord(rng), coord(rng), coord(rng)};
      try {
        const Vec3 ga = base.eval_grad(p).grad;
        const Vec3 gb = plus.eval_grad(p).grad;
        CHECK(max_abs(ga - gb) <= 1e-12 * (1.0 + max_abs(ga)));
        break;
      } catch (const SingularPoint &) {
        continue;
      }
    }
  }
}

TEST_CASE("parser is total on a fuzz corpus") {
  std::mt19937_64 rng(0xf022);
  const std::string charset = "pxyz_perhi0123456789.+-*/^(), abcsqrtinoat2";
  std::uniform_int_distribution<int> len(0, 64);
  std::uniform_int_distribution<std::size_t> pickc(0, charset.size() - 1);
  std::map<std::string, double> params{{"a", 1.0}, {"b", -2.0}, {"c", 0.5}};

  int parsed = 0, rejected = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    if (i % 3 == 0) {
      // mutate a valid expression; unknown parameter names that survive the
      // mutation are themselves a valid (UnboundParameter) outcome
      std::map<std::string, double> ps = params;
      s = testgen::random_expr(rng, ps, 3);
      if (!s.empty()) {
        std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
        s[pos(rng)] = charset[pickc(rng)];
      }
    } else {
      const int n = len(rng);
      for (int k = 0; k < n; ++k)
        s.push_back(charset[pickc(rng)]);
    }
    try {
      (void)PhaseExpr::parse(s, params);
      ++parsed;
    } catch (const SyntaxError &) {
      ++rejected;
    } catch (const UnboundParameter &) {
      ++rejected;
    }
    // anything else escaping (or a crash) fails the test run
  }
  CHECK(parsed + rejected == 100000);
  CHECK(parsed > 0);
  CHECK(rejected > 0);
}

} // TEST_SUITE

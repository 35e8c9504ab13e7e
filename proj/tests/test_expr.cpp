#include <doctest.h>

#include <cmath>

#include "otk/catalog.hpp"
#include "otk/error.hpp"
#include "otk/expr.hpp"

using namespace otk;

TEST_SUITE("expr") {
  TEST_CASE("tree shape") {
    const Expr e = parse("t1^2 + t2^2");
    REQUIRE(e.kind() == Expr::Kind::Add);
    CHECK(e.lhs().kind() == Expr::Kind::Pow);
    CHECK(e.lhs().lhs().kind() == Expr::Kind::Coordinate);
    CHECK(e.lhs().lhs().coordinate_index() == 0);
    CHECK(e.rhs().lhs().coordinate_index() == 1);
    CHECK(e.rhs().rhs().number_value() == 2.0);
  }

  TEST_CASE("parameters are collected") {
    const Expr e = parse("-(M*t1)/(t1^2+t2^2)");
    CHECK(e.parameters() == std::set<std::string>{"M"});
    CHECK(e.depends_on_coordinates());
    CHECK_FALSE(parse("2*M + 1").depends_on_coordinates());
  }

  TEST_CASE("syntax error position") {
    try {
      parse("2*^t1");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 3);
      CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse("foo(t1)"), ParseError);
    CHECK_THROWS_AS(parse("(t1 + 1"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
  }

  TEST_CASE("precedence: power binds tighter than unary minus and is right associative") {
    CHECK(eval(parse("-2^2"), {0, 0}, {}) == -4.0);
    CHECK(eval(parse("2^3^2"), {0, 0}, {}) == 512.0);
    CHECK(eval(parse("1 - 2 - 3"), {0, 0}, {}) == -4.0);
    CHECK(eval(parse("8 / 4 / 2"), {0, 0}, {}) == 1.0);
  }

  TEST_CASE("round trip through canonical text") {
    for (const char* s : {"t1^2 + t2^2", "-(M*t1)/(t1^2+t2^2)", "sin(t1)*exp(-t2) - ln(abs(t1))",
                          "(t1 - t2)^-2", "2^-t1", "-(-t1)", "1e-3*t1"}) {
      const Expr e = parse(s);
      CHECK(parse(e.to_string()) == e);
    }
  }

  TEST_CASE("jet evaluation of simple expressions") {
    const Jet a = eval_jet(parse("t1*t2"), {2, 3}, {}, 2);
    CHECK(a.value() == 6.0);
    CHECK(a(1, 0) == 3.0);
    CHECK(a(0, 1) == 2.0);
    CHECK(a(1, 1) == 1.0);
    CHECK(a(2, 0) == 0.0);
    const Jet b = eval_jet(parse("t1^2+t2^2"), {1, 1}, {}, 2);
    CHECK(b.value() == 2.0);
    CHECK(b(2, 0) == 2.0);
    CHECK(b(0, 2) == 2.0);
    CHECK(b(1, 1) == 0.0);
  }

  TEST_CASE("jet of -M t1/(t1^2+t2^2)^3 against finite differences") {
    const Expr e = parse("-M*t1/(t1^2+t2^2)^3");
    const ParamBindings p{{"M", 1.0}};
    const Jet j = eval_jet(e, {1, 1}, p, 1);
    CHECK(j.value() == doctest::Approx(-0.125));
    CHECK(j(1, 0) == doctest::Approx(0.25));
    CHECK(j(0, 1) == doctest::Approx(0.375));
    const double h = 1e-6;
    CHECK(j(1, 0) == doctest::Approx((eval(e, {1 + h, 1}, p) - eval(e, {1 - h, 1}, p)) / (2 * h)).epsilon(1e-8));
  }

  TEST_CASE("Hessian of -M t1(3t2^2-t1^2)/(t1^2+t2^2)^3 against finite differences") {
    const Expr e = parse("-M*t1*(3*t2^2-t1^2)/(t1^2+t2^2)^3");
    const ParamBindings p{{"M", 1.0}};
    const auto H = hessian(eval_jet(e, {1, 1}, p, 2));
    auto f = [&](double a, double b) { return eval(e, {a, b}, p); };
    const double h = 1e-4;
    CHECK(H.a11 == doctest::Approx((f(1 + h, 1) - 2 * f(1, 1) + f(1 - h, 1)) / (h * h)).epsilon(1e-6));
    CHECK(H.a22 == doctest::Approx((f(1, 1 + h) - 2 * f(1, 1) + f(1, 1 - h)) / (h * h)).epsilon(1e-6));
    CHECK(H.a12 == doctest::Approx((f(1 + h, 1 + h) - f(1 + h, 1 - h) - f(1 - h, 1 + h) +
                                    f(1 - h, 1 - h)) / (4 * h * h)).epsilon(1e-6));
  }

  TEST_CASE("unbound parameter and domain errors") {
    CHECK_THROWS_AS(eval(parse("M*t1"), {1, 1}, {}), UnboundParameter);
    CHECK_THROWS_AS(eval(parse("ln(t1 - 1)"), {1, 1}, {}), DomainError);
    CHECK_THROWS_AS(eval(parse("1/(t1 - t2)"), {1, 1}, {}), DomainError);
  }

  TEST_CASE("substitution") {
    CHECK(eval(substitute(parse("t1+t2"), parse("t1^3"), parse("t2")), {2, 1}, {}) == 9.0);
    const Expr s = substitute(parse("t1"), parse("t1+t2"), parse("t2"));
    CHECK(s == parse("t1+t2"));
    const auto kn = kerr_nut_desitter(1, 0, 2, 0).metric;
    const Expr g = substitute(kn.g11, parse("t1^3"), parse("t2"));
    CHECK(eval(g, {1.1, 0.7}, kn.parameters) ==
          doctest::Approx(eval(kn.g11, {1.331, 0.7}, kn.parameters)).epsilon(1e-14));
    const Expr q = substitute_parameter(parse("M*t1 + M"), "M", parse("t2^2"));
    CHECK(eval(q, {2, 3}, {}) == 27.0);
  }

  TEST_CASE("custom coordinate names") {
    ParseOptions o;
    o.coordinate_names = {"x", "y"};
    const Expr e = parse("x*y + t1", o);
    CHECK(e.parameters() == std::set<std::string>{"t1"});
    CHECK(eval(e, {2, 3}, {{"t1", 1.0}}) == 7.0);
  }
}

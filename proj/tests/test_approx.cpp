#include <cmath>

#include "doctest.h"
#include "unitaylor/approx/approx.hpp"
#include "unitaylor/errors.hpp"

using namespace unitaylor;
using namespace unitaylor::approx;
using namespace unitaylor::geometry;

TEST_CASE("expression grammar") {
  auto e = Expression::parse("2*z^2 - exp(i*pi) + 1/(z-5)", 1);
  Complex z(0.3, -0.2);
  std::vector<Complex> zs{z};
  Complex want = 2.0 * z * z + 1.0 + 1.0 / (z - 5.0);
  CHECK(std::abs(e.evaluate(zs) - want) < 1e-14);
  auto two = Expression::parse("z1*z2 + sin(z2)", 2);
  std::vector<Complex> p{Complex(1, 1), Complex(0.5, 0)};
  CHECK(std::abs(two.evaluate(p) - (p[0] * p[1] + std::sin(p[1]))) < 1e-14);
  CHECK(Expression::parse("conj(z)", 1).uses_conjugate());
  CHECK_THROWS_AS(Expression::parse("z +", 1), ConfigError);
  CHECK_THROWS_AS(Expression::parse("z3", 2), ConfigError);
  CHECK_THROWS_AS(Expression::parse("foo(z)", 1), ConfigError);
}

TEST_CASE("expression derivatives match closed forms") {
  auto t = TargetFunction::expression(Expression::parse("exp(2*z)", 1));
  std::vector<Point> pts = {{Complex(2.5, 0.1)}, {Complex(-0.5, 3)}};
  auto d1 = t.derivative_values(pts, MultiIndex{1});
  auto d2 = t.derivative_values(pts, MultiIndex{2});
  for (std::size_t k = 0; k < pts.size(); ++k) {
    Complex e = std::exp(2.0 * pts[k][0]);
    CHECK(std::abs(to_double(d1[k]) - 2.0 * e) < 1e-9 * std::abs(e));
    CHECK(std::abs(to_double(d2[k]) - 4.0 * e) < 1e-8 * std::abs(e));
  }
}

TEST_CASE("polynomial targets differentiate symbolically") {
  Poly p = Poly::power({0}, 0, 3);
  auto t = TargetFunction::polynomial(p).minus(Poly::power({0}, 0, 1));
  std::vector<Point> pts = {{Complex(2, 0)}};
  CHECK(std::abs(to_double(t.values(pts)[0]) - Complex(6, 0)) < 1e-14);
  CHECK(std::abs(to_double(t.derivative_values(pts, MultiIndex{1})[0]) - Complex(11, 0)) < 1e-14);
}

TEST_CASE("least squares against the geometric-series oracle") {
  auto k = make_product({Descriptor(Ball{0, 1})}, Sampling{}, 0.5);
  auto target = TargetFunction::expression(Expression::parse("1/(z-5)", 1));
  for (int n : {5, 10, 20}) {
    auto fit = ls_fit_at_degree(k, target, n, DerivativeFamily::values_only(1));
    double oracle = 0;
    for (auto z : k.factors[0].validation_points)
      oracle = std::max(oracle, std::pow(std::abs(z) / 5, n + 1) / std::abs(5.0 - z));
    double err = fit.report.max_error("K");
    INFO("degree " << n << " error " << err << " oracle " << oracle);
    // Least squares on the disk is near best; the truncated series is within a small factor of it.
    CHECK(err < 1.2 * oracle);
    CHECK(err > 0.5 * oracle);
  }
}

TEST_CASE("least squares reaches eps with escalation") {
  auto k = make_product({Descriptor(Polyline{{{2, 0}, {3, 0}}})}, Sampling{}, 0.5);
  auto target = TargetFunction::expression(Expression::parse("exp(z)", 1));
  auto fit = ls_fit(k, target, 30, DerivativeFamily::values_only(1), 1e-8);
  CHECK(fit.report.success);
  CHECK(fit.report.max_error("K") < 1e-8);
  CHECK_FALSE(fit.report.trace.empty());
}

TEST_CASE("singleton compacts fit with a constant") {
  auto k = make_product({Descriptor(Singleton{Complex(2, 1)})}, Sampling{}, 0.5);
  auto target = TargetFunction::expression(Expression::parse("z^2", 1));
  auto fit = ls_fit(k, target, 20, DerivativeFamily::values_only(1), 1e-10);
  CHECK(fit.report.success);
  CHECK(fit.poly.degree() == 0);
  CHECK(std::abs(fit.poly({Complex(2, 1)}) - Complex(2, 1) * Complex(2, 1)) < 1e-10);
}

TEST_CASE("bump is near 1 on one set and near 0 on the other") {
  Sampling s;
  auto a = sample(Descriptor(Polyline{{{2, 0}, {3, 0}}}), s);
  auto b = sample(Descriptor(Ball{0, 0.5}), s);
  BumpOptions o;
  o.orders_a = {0, 1};
  o.vanish_order = 5;
  o.vanish_center = 0;
  auto q = bump(a, b, {0, 1}, 1e-3, 120, o);
  REQUIRE(q.report.success);
  // Independent re-measurement on the validation grids.
  auto dq = derivative(q.poly, MultiIndex{1});
  for (auto z : a.validation_points) {
    CHECK(std::abs(q.poly({z}) - 1.0) < 1e-3);
    CHECK(std::abs(dq({z})) < 1e-3);
  }
  for (auto z : b.validation_points) CHECK(std::abs(q.poly({z})) < 1e-3);
  // Vanishing to order 5 at 0.
  auto c = recenter(q.poly, {0});
  for (int k = 0; k < 5; ++k) CHECK(is_exact_zero(c.coefficient(MultiIndex{k})));
}

TEST_CASE("bump preconditions") {
  Sampling s;
  auto a = sample(Descriptor(Ball{0, 1}), s);
  auto b = sample(Descriptor(Ball{0.5, 1}), s);
  CHECK_THROWS_AS(bump(a, b, {0}, 1e-2, 40), PreconditionError);
  // Sets whose union encloses a hole.
  auto ring = sample(Descriptor(Annulus{0, 1, 1.5}), s);
  auto inner = sample(Descriptor(Ball{0, 0.3}), s);
  CHECK_THROWS_AS(bump(ring, inner, {0}, 1e-2, 40), PreconditionError);
  // Empty a: q = 0.
  auto none = sample(Descriptor(EmptySet{}), s);
  auto zero = bump(none, inner, {0}, 1e-2, 40);
  CHECK(zero.poly.is_zero());
}

TEST_CASE("glue keeps g on K and kills it on L") {
  auto k = make_product({Descriptor(Polyline{{{2, 0}, {3, 0}}})}, Sampling{}, 0.5);
  auto l = make_product({Descriptor(Ball{0, 0.5})}, Sampling{}, 0.5);
  Poly g = Poly::power({0}, 0, 2) + Poly::constant({0}, HiComplex(1));
  auto fam = DerivativeFamily::values_only(1);
  auto glued = glue(g, k, l, 0, fam, 1e-3, 120);
  REQUIRE(glued.report.success);
  double on_k = 0, on_l = 0;
  for (auto z : k.factors[0].validation_points) on_k = std::max(on_k, std::abs(glued.poly({z}) - g({z})));
  for (auto z : l.factors[0].validation_points) on_l = std::max(on_l, std::abs(glued.poly({z})));
  CHECK(on_k < 1e-3);
  CHECK(on_l < 1e-3);
  CHECK(glue(Poly({0}), k, l, 0, fam, 1e-3, 120).poly.is_zero());
}

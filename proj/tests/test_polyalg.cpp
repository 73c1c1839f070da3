#include <cmath>

#include "doctest.h"
#include "properties.hpp"
#include "unitaylor/errors.hpp"
#include "unitaylor/polyalg/poly.hpp"

using namespace unitaylor;

TEST_CASE("graded lexicographic enumeration") {
  MultiIndexEnum e2(2);
  // Degree blocks: 1, 2, 3 entries; descending in the first variable.
  CHECK(e2.at(0) == MultiIndex{0, 0});
  CHECK(e2.at(1) == MultiIndex{1, 0});
  CHECK(e2.at(2) == MultiIndex{0, 1});
  CHECK(e2.at(3) == MultiIndex{2, 0});
  CHECK(e2.at(4) == MultiIndex{1, 1});
  CHECK(e2.at(5) == MultiIndex{0, 2});
  CHECK(e2.count_up_to(3) == 10);
  CHECK(e2.block_end(2) == 5);
  for (std::int64_t j = 0; j < 200; ++j) CHECK(e2.index_of(e2.at(j)) == j);
  MultiIndexEnum e1(1);
  CHECK(e1.index_of(MultiIndex{7}) == 7);
  MultiIndexEnum e3(3);
  CHECK(e3.count_up_to(2) == 10);
  for (std::int64_t j = 1; j < 100; ++j) CHECK(GradedLexLess{}(e3.at(j - 1), e3.at(j)));
}

TEST_CASE("derivative families and the gapless closure") {
  DerivativeFamily f({MultiIndex{2, 1}});
  CHECK_FALSE(f.is_gapless());
  auto g = f.gapless_closure();
  CHECK(g.is_gapless());
  CHECK(g.members().size() == 6);
  CHECK(g.max_order_in(0) == 2);
  CHECK(g.max_order_in(1) == 1);
  CHECK(DerivativeFamily::values_only(2).is_gapless());
}

TEST_CASE("recentering a one-variable polynomial") {
  // z^2 about 0 is 1 + 2(z - 1) + (z - 1)^2 about 1.
  Poly f = Poly::power({0}, 0, 2);
  Poly g = recenter(f, {1});
  CHECK(to_double(g.coefficient(MultiIndex{0})) == Complex(1, 0));
  CHECK(to_double(g.coefficient(MultiIndex{1})) == Complex(2, 0));
  CHECK(to_double(g.coefficient(MultiIndex{2})) == Complex(1, 0));
  CHECK(g.terms().size() == 3);
}

TEST_CASE("partial sums and truncation") {
  Poly f({0, 0});
  f.set(MultiIndex{0, 0}, HiComplex(1));
  f.set(MultiIndex{0, 1}, HiComplex(2));
  f.set(MultiIndex{1, 1}, HiComplex(3));
  CHECK(f.max_enum_index() == 4);
  CHECK(f.truncated(2).terms().size() == 2);
  CHECK(f.tail(2).terms().size() == 1);
  CHECK(partial_sum(f, {0, 0}, -1).is_zero());
  CHECK(Poly({0}).max_enum_index() == -1);
}

TEST_CASE("products and evaluation") {
  Poly a = Poly::power({0}, 0, 1) + Poly::constant({0}, HiComplex(1));
  Poly b = Poly::power({0}, 0, 1) - Poly::constant({0}, HiComplex(1));
  Poly p = a * b;  // z^2 - 1
  CHECK(std::abs(p({Complex(2, 1)}) - (Complex(2, 1) * Complex(2, 1) - 1.0)) < 1e-14);
  CHECK(p.degree() == 2);
  auto d = derivative(p, MultiIndex{1});
  CHECK(std::abs(d({Complex(0.5, 0)}) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("high-degree cancellation is resolved in 256-bit arithmetic") {
  // (z - 0)^60 recentered at 3 and evaluated at 3.5 carries terms near 3^60.
  Poly f = Poly::power({0}, 0, 60);
  Poly g = recenter(f, {3});
  double exact = std::pow(3.5, 60);
  CHECK(std::abs(g({Complex(3.5, 0)}).real() / exact - 1) < 1e-14);
}

TEST_CASE("seminorm on a product grid") {
  Poly f = Poly::power({0, 0}, 0, 1) * Poly::power({0, 0}, 1, 1);  // z1 z2
  std::vector<std::vector<Complex>> grids = {{1, 2}, {Complex(0, 3)}};
  CHECK(seminorm_on(f, grids, DerivativeFamily::values_only(2)) == doctest::Approx(6));
  DerivativeFamily fam({MultiIndex{1, 0}});
  CHECK(seminorm_on(f, grids, fam) == doctest::Approx(3));
  CHECK(product_points(grids).size() == 2);
}

TEST_CASE("Cauchy bound rejects bad radii") {
  CHECK_THROWS_AS(cauchy_bound(1.0, 0.0, MultiIndex{1}), DomainError);
  CHECK(cauchy_bound(8.0, 2.0, MultiIndex{1, 2}) == doctest::Approx(1.0));
}

TEST_CASE("randomized polynomial algebra properties") {
  for (const auto& r : {testing::recentering_exactness(200, 101), testing::recentering_round_trip(200, 102),
                        testing::truncation_identity(200, 103), testing::derivative_order(200, 104),
                        testing::cauchy_soundness(200, 105)}) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.cases == 200);
    CHECK(r.failures == 0);
  }
}

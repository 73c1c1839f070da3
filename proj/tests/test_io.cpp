#include <cmath>
#include <numbers>

#include "doctest.h"
#include "unitaylor/errors.hpp"
#include "unitaylor/io/json_io.hpp"

using namespace unitaylor;
using namespace unitaylor::geometry;
using io::Json;

TEST_CASE("FNV-1a reference values") {
  // Published 64-bit FNV-1a test vectors.
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(io::fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(io::hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("reals and complex values") {
  CHECK(io::real_to_json(kInf) == "inf");
  CHECK(std::isinf(io::real_from_json(Json("-inf"), "x")));
  CHECK(io::complex_to_json({1.5, -2}) == Json::array({1.5, -2}));
  CHECK(io::complex_from_json(Json(3), "x") == Complex(3, 0));
  CHECK_THROWS_AS(io::complex_from_json(Json::array({1, 2, 3}), "x"), ConfigError);
  CHECK_THROWS_AS(io::real_from_json(Json("abc"), "x"), ConfigError);
}

TEST_CASE("polynomial coefficients round-trip at full precision") {
  Poly f({Complex(0.25, 0), Complex(0, 1)});
  HiComplex third = HiComplex(1) / HiComplex(3);
  f.set(MultiIndex{0, 0}, third);
  f.set(MultiIndex{3, 1}, HiComplex(HiReal(-2), HiReal(1) / HiReal(7)));
  Poly g = io::poly_from_json(Json::parse(io::poly_to_json(f).dump()));
  CHECK(g == f);
  CHECK(g.coefficient(MultiIndex{0, 0}) == third);
}

TEST_CASE("domains, portions and descriptors round-trip") {
  std::vector<DomainSpec> doms = {DomainSpec(Disk{{1, 2}, 3}), DomainSpec(HalfPlane{std::numbers::pi / 2, 0.5}),
                                  DomainSpec(Strip{0.3, 1.2, {0, 1}}),
                                  DomainSpec(Polygon{{{0, 0}, {2, 0}, {2, 1}, {0, 1}}})};
  for (const auto& d : doms) {
    Json j = io::domain_to_json(d);
    CHECK(io::domain_to_json(io::domain_from_json(j)) == j);
  }
  BoundaryPortion p;
  p.arcs.push_back(Arc{1, -kInf, 2, false, false, true});
  p.isolated.push_back(IsolatedPoint{0, 0.5});
  Json pj = io::portion_to_json(p);
  CHECK(io::portion_to_json(io::portion_from_json(pj)) == pj);

  std::vector<Descriptor> ds = {Descriptor(EmptySet{}), Descriptor(Singleton{{1, 1}}), Descriptor(Ball{{0, 0}, 2}),
                                Descriptor(Annulus{{0, 0}, 1, 2}), Descriptor(Polyline{{{0, 0}, {1, 0}, {1, 1}}}),
                                Descriptor(ExhaustionCell{doms[0], {}, 3}),
                                Descriptor(Union{{Descriptor(Ball{{5, 0}, 1}), Descriptor(Singleton{{7, 0}})}})};
  for (const auto& d : ds) {
    Json j = io::descriptor_to_json(d);
    CHECK(io::descriptor_to_json(io::descriptor_from_json(j)) == j);
  }
}

TEST_CASE("unknown keys and kinds are rejected") {
  CHECK_THROWS_AS(io::domain_from_json(Json::parse(R"({"kind":"disk","radius":1,"colour":2})")), ConfigError);
  CHECK_THROWS_AS(io::domain_from_json(Json::parse(R"({"kind":"ellipse"})")), ConfigError);
  CHECK_THROWS_AS(io::descriptor_from_json(Json::parse(R"({"kind":"ball","center":[0,0],"radius":-1})")),
                  ConfigError);
  CHECK_THROWS_AS(io::cutset_from_json(Json::parse(R"({"kind":"residues","modulus":0,"residues":[0]})")),
                  ConfigError);
}

TEST_CASE("cut sets and families round-trip") {
  auto mu = CutSet::residues(3, {0, 2});
  auto back = io::cutset_from_json(io::cutset_to_json(mu));
  for (int n = 0; n < 12; ++n) CHECK(back.contains(n) == mu.contains(n));
  DerivativeFamily f({MultiIndex{0, 0}, MultiIndex{1, 0}});
  CHECK(io::family_from_json(io::family_to_json(f), 2).members() == f.members());
  CHECK(io::multi_index_from_json(Json(4), 1) == MultiIndex{4});
  CHECK_THROWS_AS(io::multi_index_from_json(Json::array({1}), 2), ConfigError);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "properties.hpp"
#include "unitaylor/errors.hpp"
#include "unitaylor/geometry/compact.hpp"
#include "unitaylor/geometry/feasibility.hpp"
#include "unitaylor/geometry/scene.hpp"

using namespace unitaylor;
using namespace unitaylor::geometry;

TEST_CASE("disk boundary distance and closure") {
  DomainSpec d(Disk{{1, 0}, 2});
  CHECK(d.contains({0.5, 0.5}));
  CHECK_FALSE(d.contains({3.5, 0}));
  CHECK(d.distance_to_boundary({1, 0}) == doctest::Approx(2));
  CHECK(d.distance_to_closure({4, 0}) == doctest::Approx(1));
  CHECK(d.distance_to_closure({1, 1}) == 0);
  CHECK(d.in_closure({3, 0}, 1e-12));
  CHECK(d.bounding_radius().value() == doctest::Approx(3));
}

TEST_CASE("half-plane and strip membership") {
  DomainSpec upper(HalfPlane{std::numbers::pi / 2, 0});
  CHECK(upper.contains({0, 1}));
  CHECK_FALSE(upper.contains({0, -1}));
  CHECK(upper.distance_to_boundary({5, 2}) == doctest::Approx(2));
  CHECK_FALSE(upper.bounding_radius());

  DomainSpec s(Strip{0, 1, {0, 0}});
  CHECK(s.boundary_components() == 2);
  CHECK(s.contains({10, 0.5}));
  CHECK_FALSE(s.contains({0, 1.5}));
  CHECK(std::abs(s.boundary_point(1, 0.0).imag() - 1.0) < 1e-12);
}

TEST_CASE("degenerate domains are rejected") {
  CHECK_THROWS_AS(DomainSpec(Disk{{0, 0}, 0}).validate(), ConfigError);
  CHECK_THROWS_AS(DomainSpec(Strip{0, -1, {0, 0}}).validate(), ConfigError);
  // Self-intersecting bow tie.
  CHECK_THROWS_AS(DomainSpec(Polygon{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}).validate(), ConfigError);
}

TEST_CASE("unmarked boundary distance ignores the marked line") {
  DomainSpec s(Strip{0, 1, {0, 0}});
  BoundaryPortion upper;
  upper.arcs.push_back(Arc{1, 0, 0, true});
  validate_portion(s, upper);
  CHECK(distance_to_unmarked_boundary(s, upper, {0, 0.9}) == doctest::Approx(1.9));
  CHECK(distance_to_portion_closure(s, upper, {0, 0.9}) == doctest::Approx(0.1));
  CHECK(std::isinf(distance_to_portion_closure(s, BoundaryPortion{}, {0, 0})));
}

TEST_CASE("exhaustion of the unit disk") {
  DomainSpec d(Disk{{0, 0}, 1});
  auto l1 = exhaustion_set(d, {}, 1, Sampling{});
  // dist(z, circle) >= 1 leaves only the center.
  REQUIRE(l1.validation_points.size() == 1);
  CHECK(std::abs(l1.validation_points[0]) < 1e-12);
  auto l2 = exhaustion_set(d, {}, 2, Sampling{});
  double rmax = 0;
  for (auto z : l2.validation_points) rmax = std::max(rmax, std::abs(z));
  CHECK(rmax <= 0.5 + 1e-12);
  CHECK(rmax > 0.45);
}

TEST_CASE("exhaustion of a half-plane with a marked arc is a grid region") {
  DomainSpec upper(HalfPlane{std::numbers::pi / 2, 0});
  BoundaryPortion s;
  s.arcs.push_back(Arc{0, -1, 1});
  auto l4 = exhaustion_set(upper, s, 4, Sampling{});
  REQUIRE_FALSE(l4.empty());
  // Predicate oracle: closed half-plane, |z| <= 4, dist to the unmarked rays >= 1/4.
  for (auto z : l4.validation_points) {
    CHECK(z.imag() >= -1e-12);
    CHECK(std::abs(z) <= 4 + 1e-12);
    double to_rays = z.real() >= -1 && z.real() <= 1 ? std::min(std::abs(z - Complex(-1, 0)), std::abs(z - Complex(1, 0)))
                                                      : std::abs(z.imag());
    CHECK(to_rays >= 0.25 - 1e-12);
  }
  // Points of the open arc itself are absorbed.
  bool has_marked = false;
  for (auto z : l4.validation_points) has_marked = has_marked || (std::abs(z.imag()) < 1e-12 && std::abs(z.real()) < 0.7);
  CHECK(has_marked);
}

TEST_CASE("flood-fill certifier") {
  Sampling s;
  auto ball = sample(Descriptor(Ball{0, 1}), s);
  CHECK(complement_connected(ball, 0.5, 0.05).verdict == Verdict::Connected);
  auto ring = sample(Descriptor(Annulus{0, 0.5, 1}), s);
  auto cc = complement_connected(ring, 0.5, 0.05);
  CHECK(cc.verdict == Verdict::Disconnected);
  REQUIRE(cc.witness);
  CHECK(std::abs(*cc.witness) < 0.5);
  auto seg = sample(Descriptor(Polyline{{{2, 0}, {3, 0}}}), s);
  CHECK(complement_connected(seg, 0.5, 0.05).verdict == Verdict::Connected);
}

TEST_CASE("absorbing-family feasibility") {
  DomainSpec disk(Disk{{0, 0}, 1});
  auto none = absorbing_family_check(disk, {});
  CHECK(none.feasible);
  CHECK(none.clopen);

  BoundaryPortion arc;
  arc.arcs.push_back(Arc{0, 0, 1.5});
  auto a = absorbing_family_check(disk, arc);
  CHECK(a.feasible);
  CHECK_FALSE(a.clopen);

  BoundaryPortion closed_end = arc;
  closed_end.arcs[0].closed_to = true;
  auto c = absorbing_family_check(disk, closed_end);
  CHECK_FALSE(c.feasible);
  REQUIRE(c.witness_parameter);
  CHECK(*c.witness_parameter == doctest::Approx(1.5));

  DomainSpec upper(HalfPlane{std::numbers::pi / 2, 0});
  BoundaryPortion rationals;
  rationals.dense.push_back(DenseMarks{0});
  CHECK_FALSE(absorbing_family_check(upper, rationals).feasible);

  BoundaryPortion isolated;
  isolated.isolated.push_back(IsolatedPoint{0, 0.3});
  CHECK_FALSE(absorbing_family_check(disk, isolated).feasible);
}

TEST_CASE("cut sets") {
  auto even = CutSet::residues(2, {0});
  CHECK(even.contains(4));
  CHECK_FALSE(even.contains(5));
  CHECK(even.next_at_least(5).value() == 6);
  auto lst = CutSet::list({3, 7, 20});
  CHECK(lst.next_at_least(8).value() == 20);
  CHECK_FALSE(lst.next_at_least(21));
  CHECK(CutSet::all().next_at_least(0).value() == 0);
}

namespace {
DomainScene disk_scene() {
  DomainScene s;
  s.domains = {DomainSpec(Disk{{0, 0}, 1})};
  s.portions = {BoundaryPortion{}};
  s.center = {0};
  s.base_outside = {default_outside_compacts(s.domains[0], 8)};
  return s;
}
}  // namespace

TEST_CASE("default outside compacts avoid the closed domain") {
  auto s = disk_scene();
  REQUIRE(s.base_outside[0].size() == 8);
  for (const auto& d : s.base_outside[0]) {
    auto k = sample(d, Sampling{});
    for (auto z : k.validation_points) CHECK(s.domains[0].distance_to_closure(z) > 0);
  }
  validate_scene(s, 0.025);
}

TEST_CASE("scene invariants name the violation") {
  auto s = disk_scene();
  s.center = {Complex(2, 0)};
  CHECK_THROWS_AS(validate_scene(s, 0.025), ConfigError);
  s = disk_scene();
  s.base_outside[0].push_back(Descriptor(Ball{0, 0.5}));
  CHECK_THROWS_AS(validate_scene(s, 0.025), ConfigError);
}

TEST_CASE("tau enumeration is ordered and replayable") {
  auto s = disk_scene();
  auto pairs = tau_pairing(s);
  REQUIRE(pairs.size() > 4);
  auto weight = [](const TauEntry& t) {
    int w = static_cast<int>(t.i0 + 1 + t.j + 1) + t.m;
    for (std::size_t i = 0; i < t.radii.size(); ++i)
      if (i != t.i0) w += t.radii[i];
    return w;
  };
  for (std::size_t k = 1; k < pairs.size(); ++k) CHECK(weight(pairs[k - 1]) <= weight(pairs[k]));
  auto a = enumerate_K_tau(s, 1, Sampling{}, 0.5);
  auto b = enumerate_K_tau(s, 1, Sampling{}, 0.5);
  CHECK(a.factors[0].validation_points == b.factors[0].validation_points);
  CHECK_THROWS_AS(enumerate_K_tau_descriptors(s, 1000000), HorizonExceeded);
}

TEST_CASE("shrinking away from the marked portion is monotone") {
  DomainSpec s(Strip{0, 1, {0, 0}});
  BoundaryPortion upper;
  upper.arcs.push_back(Arc{1, 0, 0, true});
  auto k = exhaustion_set(s, upper, 2, Sampling{});
  auto s2 = shrink_from_portion(k, s, upper, 2);
  auto s3 = shrink_from_portion(k, s, upper, 3);
  Descriptor k_desc(ExhaustionCell{s, upper, 2});
  for (auto z : s2.validation_points) {
    CHECK(k_desc.contains(z));
    CHECK(1.0 - z.imag() >= 0.5 - 1e-9);
  }
  CHECK(s2.validation_points.size() <= s3.validation_points.size());
}

TEST_CASE("randomized exhaustions are monotone, absorbing and complement-connected") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto a = testing::exhaustion_audit(6, 3, seed);
    INFO("seed " << seed);
    for (const auto& n : a.notes) INFO(n);
    CHECK(a.monotone_failures == 0);
    CHECK(a.membership_failures == 0);
    CHECK(a.absorbing_failures == 0);
    CHECK(a.disconnected == 0);
  }
}

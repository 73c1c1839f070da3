#include <cmath>

#include "doctest.h"
#include "unitaylor/engine/engine.hpp"
#include "unitaylor/errors.hpp"

using namespace unitaylor;
using namespace unitaylor::geometry;
using namespace unitaylor::engine;

namespace {

Config disk_config() {
  Config cfg;
  cfg.scene.domains = {DomainSpec(Disk{{0, 0}, 1})};
  cfg.scene.portions = {BoundaryPortion{}};
  cfg.scene.center = {0};
  cfg.scene.base_outside = {default_outside_compacts(cfg.scene.domains[0], 8)};
  return cfg;
}

Requirement on_segment(const std::string& id, const std::string& expr) {
  Requirement r;
  r.id = id;
  r.factors = {Descriptor(Polyline{{{2, 0}, {3, 0}}})};
  r.target.expression = expr;
  r.epsilon = 1e-2;
  r.level = 2;
  return r;
}

// Shared across test cases: the two-requirement disk run.
const Certificate& two_stage() {
  static const Certificate cert = construct(disk_config(), {on_segment("one", "1"), on_segment("minus", "-1")});
  return cert;
}

}  // namespace

TEST_CASE("scene hash depends on the scene only") {
  auto a = disk_config(), b = disk_config();
  CHECK(scene_hash(a.scene) == scene_hash(b.scene));
  CHECK(scene_hash(a.scene).size() == 16);
  b.scene.mu = CutSet::residues(2, {0});
  CHECK(scene_hash(a.scene) != scene_hash(b.scene));
}

TEST_CASE("requirement validation") {
  auto cfg = disk_config();
  auto ok = validate_requirement(cfg, on_segment("h", "1"));
  CHECK(ok.i0 == 0);
  CHECK(ok.separation == doctest::Approx(1.0));
  auto inside = on_segment("bad", "1");
  inside.factors = {Descriptor(Polyline{{{0.5, 0}, {2, 0}}})};
  CHECK_THROWS_AS(validate_requirement(cfg, inside), ConfigError);
  auto neg = on_segment("neg", "1");
  neg.epsilon = -1;
  CHECK_THROWS_AS(resolve(cfg.scene, neg), ConfigError);
  auto conj = on_segment("conj", "conj(z)");
  conj.mode = Mode::O;
  CHECK_THROWS_AS(resolve(cfg.scene, conj), ConfigError);
}

TEST_CASE("tau and point sources resolve to compacts") {
  auto cfg = disk_config();
  Requirement r = on_segment("tau", "1");
  r.source = Requirement::Source::Tau;
  r.factors.clear();
  r.tau = 1;
  auto res = resolve(cfg.scene, r);
  REQUIRE(res.factors.size() == 1);
  CHECK(res.factors[0].kind() == enumerate_K_tau_descriptors(cfg.scene, 1)[0].kind());
  CHECK(res.fam.is_gapless());
}

TEST_CASE("schedule plan halves the reservations") {
  std::vector<Requirement> reqs = {on_segment("a", "1"), on_segment("b", "-1"), on_segment("c", "z")};
  auto plan = plan_schedule(reqs, CutSet::all());
  REQUIRE(plan.size() == 3);
  REQUIRE(plan[2].reservations.size() == 2);
  CHECK(plan[2].reservations[0].second == doctest::Approx(1e-2 / 8));
  CHECK(plan[2].reservations[1].second == doctest::Approx(1e-2 / 4));
}

TEST_CASE("empty schedule yields f = 0") {
  auto cert = construct(disk_config(), {});
  CHECK(cert.success());
  CHECK(cert.f.is_zero());
  CHECK(cert.cuts.empty());
  CHECK(verify(cert, disk_config(), {}, 2.0).pass);
}

TEST_CASE("two-stage construction certifies both requirements") {
  const auto& cert = two_stage();
  REQUIRE(cert.success());
  REQUIRE(cert.cuts.size() == 2);
  CHECK(cert.cuts[0] < cert.cuts[1]);
  // Independent check of the first partial sum on [2, 3].
  Poly s = partial_sum(cert.f, {0}, cert.cuts[0]);
  for (double x = 2; x <= 3; x += 0.01) CHECK(std::abs(s({Complex(x, 0)}) - 1.0) < 1e-2);
  Poly s2 = partial_sum(cert.f, {0}, cert.cuts[1]);
  for (double x = 2; x <= 3; x += 0.01) CHECK(std::abs(s2({Complex(x, 0)}) + 1.0) < 1e-2);
  REQUIRE(cert.ledger.size() == 1);
  CHECK(cert.ledger[0].measured_k <= cert.ledger[0].allocated);
  auto rep = verify(cert, disk_config(), {on_segment("one", "1"), on_segment("minus", "-1")}, 2.0);
  CHECK(rep.pass);
}

TEST_CASE("verify detects tampering and foreign scenes") {
  auto cert = two_stage();
  auto reqs = std::vector<Requirement>{on_segment("one", "1"), on_segment("minus", "-1")};
  auto bad_cut = cert;
  bad_cut.cuts[1] -= 1;
  CHECK_FALSE(verify(bad_cut, disk_config(), reqs, 2.0).pass);
  auto other = disk_config();
  other.scene.mu = CutSet::residues(2, {0});
  CHECK_THROWS_AS(verify(cert, other, reqs, 2.0), ConfigError);
  auto renamed = reqs;
  renamed[0].id = "other";
  CHECK_FALSE(verify(cert, disk_config(), renamed, 2.0).pass);
}

TEST_CASE("certificate JSON round-trip is exact") {
  const auto& cert = two_stage();
  auto j = certificate_to_json(cert);
  auto back = certificate_from_json(io::Json::parse(j.dump()));
  CHECK(back.f == cert.f);
  CHECK(certificate_to_json(back).dump() == j.dump());
}

TEST_CASE("universal point scan") {
  Poly zero({0});
  auto r0 = universal_point_scan(zero, {0}, {Complex(2.5, 0)}, 0, ValueGrid{});
  CHECK(r0.visited.size() == 1);
  CHECK(r0.cells_hit == 1);
  const auto& cert = two_stage();
  auto r = universal_point_scan(cert.f, {0}, {Complex(2.5, 0)}, cert.f.max_enum_index(), ValueGrid{});
  CHECK(r.visited.size() == static_cast<std::size_t>(cert.f.max_enum_index() + 1));
  // Near 1 and near -1 along the way.
  CHECK(r.cells_hit >= 2);
  CHECK(std::abs(r.visited[cert.cuts[0]] - 1.0) < 1e-2);
  CHECK_THROWS_AS(universal_point_scan(cert.f, {0}, {Complex(2.5, 0)}, cert.f.max_enum_index() + 5, ValueGrid{}),
                  PreconditionError);
}

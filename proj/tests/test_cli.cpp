#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "unitaylor/cli/commands.hpp"
#include "unitaylor/cli/config.hpp"
#include "unitaylor/errors.hpp"

using namespace unitaylor;
using namespace unitaylor::cli;
using io::Json;

namespace {

const std::string kScenarios = UNITAYLOR_SCENARIO_DIR;

std::string scenario(const std::string& name) { return kScenarios + "/" + name; }

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "unitaylor_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = temp_path(name);
  write_text_file(p, text);
  return p;
}

// Every line on the diagnostic stream must be a JSON object.
void check_json_lines(const std::string& err) {
  std::istringstream in(err);
  std::string line;
  while (std::getline(in, line)) {
    auto j = Json::parse(line);
    CHECK(j.is_object());
    CHECK(j.contains("message"));
  }
}

}  // namespace

TEST_CASE("points parse per variable") {
  auto p = parse_point("1.5,-2;0,1", 2);
  CHECK(p[0] == Complex(1.5, -2));
  CHECK(p[1] == Complex(0, 1));
  CHECK(parse_point("3", 1)[0] == Complex(3, 0));
  CHECK_THROWS_AS(parse_point("1,2,3", 1), ConfigError);
  CHECK_THROWS_AS(parse_point("1,x", 1), ConfigError);
  CHECK_THROWS_AS(parse_point("1,0", 2), ConfigError);
}

TEST_CASE("scene config parsing") {
  auto cfg = parse_scene_config(read_json_file(scenario("disk.scene.json")));
  CHECK(cfg.scene.dimension() == 1);
  CHECK(cfg.scene.base_outside[0].size() == 8);
  auto j = read_json_file(scenario("disk.scene.json"));
  j["grid"] = {{"fit_density", 10}, {"validation_density", 20}};
  auto g = parse_scene_config(j);
  CHECK(g.grid.fit_spacing == doctest::Approx(0.1));
  CHECK(g.grid.validation_spacing == doctest::Approx(0.05));
  j["extra"] = 1;
  CHECK_THROWS_AS(parse_scene_config(j), ConfigError);
  CHECK_THROWS_AS(read_json_file(write_temp("broken.json", "{")), ConfigError);
}

TEST_CASE("schedule parsing") {
  auto s = parse_schedule(read_json_file(scenario("strip_O.schedule.json")), 1);
  REQUIRE(s.requirements.size() == 1);
  CHECK(s.requirements[0].mode == engine::Mode::O);
  CHECK(s.requirements[0].fam.members().size() == 2);
  auto bad = Json::parse(R"({"requirements":[{"id":"x","compact":{"tau":1},"target":{"expr":"1"},"epsilon":0.1,"mode":"B"}]})");
  CHECK_THROWS_AS(parse_schedule(bad, 1), ConfigError);
  auto both = Json::parse(R"({"requirements":[{"id":"x","compact":{"tau":1,"point":[[3,0]]},"target":{"expr":"1"},"epsilon":0.1}]})");
  CHECK_THROWS_AS(parse_schedule(both, 1), ConfigError);
}

TEST_CASE("construct and verify exit codes") {
  std::ostringstream out, err;
  auto cert = temp_path("empty.cert.json");
  CHECK(cmd_construct(scenario("disk.scene.json"), scenario("empty.schedule.json"), cert, out, err) == kExitOk);
  CHECK(engine::certificate_from_json(read_json_file(cert)).f.is_zero());

  std::ostringstream e2;
  CHECK(cmd_construct(scenario("disk.scene.json"), scenario("bad_overlap.schedule.json"), temp_path("o.json"), out,
                      e2) == kExitConfig);
  CHECK(e2.str().find("disjoint") != std::string::npos);
  check_json_lines(e2.str());

  std::ostringstream e3;
  CHECK(cmd_verify(cert, scenario("strip.scene.json"), scenario("empty.schedule.json"), 2.0, std::nullopt, out, e3) ==
        kExitConfig);
  check_json_lines(e3.str());

  CHECK(cmd_verify(cert, scenario("disk.scene.json"), scenario("empty.schedule.json"), 2.0, std::nullopt, out, err) ==
        kExitOk);
  CHECK(read_json_file(cert + ".report.json")["pass"] == true);
}

TEST_CASE("check exit codes") {
  std::ostringstream out, err;
  CHECK(cmd_check(scenario("strip.scene.json"), out, err) == kExitOk);
  CHECK(cmd_check(scenario("disk.scene.json"), out, err) == kExitOk);
  CHECK(cmd_check(scenario("halfplane_rationals.scene.json"), out, err) == kExitFail);
  CHECK(cmd_check(scenario("missing.json"), out, err) == kExitConfig);
}

TEST_CASE("scan of the zero certificate") {
  std::ostringstream out, err;
  auto cert = temp_path("zero.cert.json");
  REQUIRE(cmd_construct(scenario("disk.scene.json"), scenario("empty.schedule.json"), cert, out, err) == kExitOk);
  ScanOptions o;
  o.z = "2.5,0";
  std::ostringstream sout, serr;
  CHECK(cmd_scan(cert, o, sout, serr) == kExitOk);
  CHECK(sout.str() == "k,re,im\n0,0,0\n");
  CHECK(Json::parse(serr.str())["cells_hit"] == 1);
  o.z = "nope";
  CHECK(cmd_scan(cert, o, sout, serr) == kExitConfig);
}

TEST_CASE("exhaustion CSV") {
  std::ostringstream out, err;
  CHECK(cmd_exhaustion(scenario("disk.scene.json"), 1, 0, std::nullopt, out, err) == kExitOk);
  CHECK(out.str() == "re,im,factor_index,role\n0,0,0,fit\n0,0,0,validation\n");
  CHECK(Json::parse(err.str())["certificate"]["verdict"] == "connected");
  std::ostringstream o2, e2;
  CHECK(cmd_exhaustion(scenario("disk.scene.json"), 2, 3, std::nullopt, o2, e2) == kExitConfig);
}

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "unitaylor/cli/commands.hpp"

using namespace unitaylor::cli;

int main(int argc, char** argv) {
  CLI::App app{"unitaylor: build and verify finite universal Taylor series certificates"};
  app.require_subcommand(1);

  std::string scene, schedule, out, cert;
  std::optional<std::string> report, csv;
  double resolution = 2.0;
  ScanOptions scan;
  int n = 1;
  std::size_t factor = 0;

  auto* construct = app.add_subcommand("construct", "build a certificate from a scene and a schedule");
  construct->add_option("scene", scene, "scene config JSON")->required();
  construct->add_option("schedule", schedule, "schedule JSON")->required();
  construct->add_option("out", out, "certificate output path")->required();

  auto* verify = app.add_subcommand("verify", "re-check a certificate on a finer grid");
  verify->add_option("cert", cert, "certificate JSON")->required();
  verify->add_option("scene", scene, "scene config JSON")->required();
  verify->add_option("schedule", schedule, "schedule JSON")->required();
  verify->add_option("--resolution", resolution, "grid density multiplier")->capture_default_str();
  verify->add_option("--report", report, "JSON report path (default <cert>.report.json)");

  auto* check = app.add_subcommand("check", "feasibility of the marked boundary and scene invariants");
  check->add_option("scene", scene, "scene config JSON")->required();

  auto* scn = app.add_subcommand("scan", "partial sums of a certificate at a point outside the domain");
  scn->add_option("cert", cert, "certificate JSON")->required();
  scn->add_option("--zeta", scan.zeta, "expansion center, re,im per variable separated by ';'");
  scn->add_option("--z", scan.z, "evaluation point, re,im per variable separated by ';'")->required();
  scn->add_option("--grid", scan.grid, "value grid x0,x1,y0,y1,cell")->capture_default_str();
  scn->add_option("--horizon", scan.horizon, "last enumeration index (default: all of f)");
  scn->add_option("--out", scan.csv_path, "CSV output path (default stdout)");

  auto* exh = app.add_subcommand("exhaustion", "sample an exhaustion compact L_{i,n}");
  exh->add_option("scene", scene, "scene config JSON")->required();
  exh->add_option("--n", n, "level")->capture_default_str();
  exh->add_option("--factor", factor, "factor index")->capture_default_str();
  exh->add_option("--out", csv, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*construct) return cmd_construct(scene, schedule, out, std::cout, std::cerr);
  if (*verify) return cmd_verify(cert, scene, schedule, resolution, report, std::cout, std::cerr);
  if (*check) return cmd_check(scene, std::cout, std::cerr);
  if (*scn) return cmd_scan(cert, scan, std::cout, std::cerr);
  return cmd_exhaustion(scene, n, factor, csv, std::cout, std::cerr);
}

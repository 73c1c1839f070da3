#include "unitaylor/cli/commands.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "unitaylor/cli/config.hpp"
#include "unitaylor/errors.hpp"
#include "unitaylor/geometry/feasibility.hpp"

namespace unitaylor::cli {

using io::Json;
using namespace geometry;

namespace {

void diag(std::ostream& err, const std::string& command, const std::string& level, const std::string& message,
          Json extra = Json::object()) {
  extra["command"] = command;
  extra["level"] = level;
  extra["message"] = message;
  err << extra.dump() << "\n";
}

// Runs body, mapping exceptions to exit codes.
template <class F>
int guarded(const std::string& command, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    diag(err, command, "error", e.what(), {{"kind", "config"}});
    return kExitConfig;
  } catch (const HorizonExceeded& e) {
    diag(err, command, "error", e.what(), {{"kind", "config"}});
    return kExitConfig;
  } catch (const PreconditionError& e) {
    diag(err, command, "error", e.what(), {{"kind", "precondition"}});
    return kExitConfig;
  } catch (const DomainError& e) {
    diag(err, command, "error", e.what(), {{"kind", "domain"}});
    return kExitConfig;
  } catch (const std::exception& e) {
    diag(err, command, "error", e.what(), {{"kind", "internal"}});
    return kExitFail;
  }
}

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

}  // namespace

int cmd_construct(const std::string& scene_path, const std::string& schedule_path, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  return guarded("construct", err, [&] {
    auto cfg = parse_scene_config(read_json_file(scene_path));
    auto sched = parse_schedule(read_json_file(schedule_path), cfg.scene.dimension());
    cfg.seed = sched.seed;
    auto cert = engine::construct(cfg, sched.requirements);
    write_text_file(out_path, engine::certificate_to_json(cert).dump(1) + "\n");
    if (!cert.success()) {
      diag(err, "construct", "error", cert.failure->message,
           {{"kind", "construction"},
            {"requirement", cert.failure->requirement},
            {"stage", cert.failure->stage},
            {"binding_budget", cert.failure->binding_budget}});
      return kExitFail;
    }
    out << "constructed " << cert.cuts.size() << " stage(s); cuts";
    for (auto c : cert.cuts) out << " " << c;
    out << "; certificate written to " << out_path << "\n";
    return kExitOk;
  });
}

int cmd_verify(const std::string& cert_path, const std::string& scene_path, const std::string& schedule_path,
               double resolution, const std::optional<std::string>& report_path, std::ostream& out,
               std::ostream& err) {
  return guarded("verify", err, [&] {
    auto cfg = parse_scene_config(read_json_file(scene_path));
    auto sched = parse_schedule(read_json_file(schedule_path), cfg.scene.dimension());
    auto cert = engine::certificate_from_json(read_json_file(cert_path));
    auto rep = engine::verify(cert, cfg, sched.requirements, resolution);
    Json j = engine::report_to_json(rep);
    std::string text = engine::report_to_text(rep);
    bool pass = rep.pass;
    Json uniform = Json::array();
    for (std::size_t r = 0; r < sched.requirements.size(); ++r) {
      const auto& req = sched.requirements[r];
      if (!req.uniform_center) continue;
      auto u = engine::verify_uniform_center(cert, cfg, sched.requirements, r, *req.uniform_center, resolution);
      uniform.push_back(engine::report_to_json(u));
      text += engine::report_to_text(u);
      pass = pass && u.pass;
    }
    if (!uniform.empty()) {
      j["uniform_center"] = uniform;
      j["pass"] = pass;
    }
    write_text_file(report_path.value_or(cert_path + ".report.json"), j.dump(1) + "\n");
    out << text;
    if (!pass) diag(err, "verify", "error", "certificate failed verification", {{"kind", "verification"}});
    return pass ? kExitOk : kExitFail;
  });
}

int cmd_check(const std::string& scene_path, std::ostream& out, std::ostream& err) {
  return guarded("check", err, [&] {
    auto cfg = parse_scene_config(read_json_file(scene_path));
    const auto& s = cfg.scene;
    bool feasible = true;
    Json factors = Json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      auto fr = absorbing_family_check(s.domains[i], s.portions[i]);
      Json f = {{"factor", i}, {"feasible", fr.feasible}, {"clopen", fr.clopen}, {"reason", fr.reason}};
      f["witness_component"] = fr.witness_component ? Json(*fr.witness_component) : Json(nullptr);
      f["witness_parameter"] = fr.witness_parameter ? io::real_to_json(*fr.witness_parameter) : Json(nullptr);
      factors.push_back(f);
      feasible = feasible && fr.feasible;
    }
    Json report = {{"feasible", feasible}, {"factors", factors}};
    if (feasible) {
      validate_scene(s, cfg.grid.validation_spacing);
      report["scene_invariants"] = "ok";
      report["scene_hash"] = engine::scene_hash(s);
    }
    out << (feasible ? "feasible" : "infeasible") << "\n" << report.dump(1) << "\n";
    return feasible ? kExitOk : kExitFail;
  });
}

int cmd_scan(const std::string& cert_path, const ScanOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded("scan", err, [&] {
    auto cert = engine::certificate_from_json(read_json_file(cert_path));
    std::size_t d = cert.f.dimension();
    Point zeta = opt.zeta.empty() ? cert.f.center() : parse_point(opt.zeta, d);
    Point z = parse_point(opt.z, d);
    engine::ValueGrid grid;
    {
      std::stringstream ss(opt.grid);
      std::string tok;
      std::vector<double> v;
      while (std::getline(ss, tok, ',')) {
        try {
          v.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw ConfigError("bad --grid '" + opt.grid + "': expected x0,x1,y0,y1,cell");
        }
      }
      if (v.size() != 5 || !(v[4] > 0) || v[1] <= v[0] || v[3] <= v[2])
        throw ConfigError("bad --grid '" + opt.grid + "': expected x0,x1,y0,y1,cell");
      grid.box = Box{v[0], v[1], v[2], v[3]};
      grid.cell = v[4];
    }
    Poly g = recenter(cert.f, zeta);
    std::int64_t horizon = opt.horizon.value_or(std::max<std::int64_t>(0, g.max_enum_index()));
    auto res = engine::universal_point_scan(cert.f, zeta, z, horizon, grid);
    std::ostringstream csv;
    csv << "k,re,im\n";
    for (std::size_t k = 0; k < res.visited.size(); ++k)
      csv << k << "," << csv_number(res.visited[k].real()) << "," << csv_number(res.visited[k].imag()) << "\n";
    if (opt.csv_path)
      write_text_file(*opt.csv_path, csv.str());
    else
      out << csv.str();
    Json summary = {{"horizon", horizon},
                    {"cells_hit", res.cells_hit},
                    {"cells_total", res.cells_total},
                    {"coverage", res.coverage}};
    (opt.csv_path ? out : err) << summary.dump() << "\n";
    return kExitOk;
  });
}

int cmd_exhaustion(const std::string& scene_path, int n, std::size_t factor,
                   const std::optional<std::string>& csv_path, std::ostream& out, std::ostream& err) {
  return guarded("exhaustion", err, [&] {
    auto cfg = parse_scene_config(read_json_file(scene_path));
    const auto& s = cfg.scene;
    if (n < 1) throw ConfigError("--n must be >= 1");
    if (factor >= s.dimension()) throw ConfigError("--factor is out of range");
    s.domains[factor].validate();
    auto k = exhaustion_set(s.domains[factor], s.portions[factor], n,
                            Sampling{cfg.grid.fit_spacing, cfg.grid.validation_spacing});
    Box b = k.empty() ? Box{0, 0, 0, 0} : k.point_bounds();
    double extent = std::max(b.x1 - b.x0, b.y1 - b.y0);
    auto cc = complement_connected(k, cfg.grid.box_margin, std::max(2 * k.h_grid, extent / 300.0));
    std::ostringstream csv;
    csv << "re,im,factor_index,role\n";
    for (auto p : k.fit_points)
      csv << csv_number(p.real()) << "," << csv_number(p.imag()) << "," << factor << ",fit\n";
    for (auto p : k.validation_points)
      csv << csv_number(p.real()) << "," << csv_number(p.imag()) << "," << factor << ",validation\n";
    if (csv_path)
      write_text_file(*csv_path, csv.str());
    else
      out << csv.str();
    Json summary = {{"level", n},
                    {"factor", factor},
                    {"fit_points", k.fit_points.size()},
                    {"validation_points", k.validation_points.size()},
                    {"certificate", io::verdict_to_json(cc)}};
    (csv_path ? out : err) << summary.dump() << "\n";
    return kExitOk;
  });
}

}  // namespace unitaylor::cli

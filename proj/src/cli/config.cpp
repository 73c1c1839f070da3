#include "unitaylor/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "unitaylor/errors.hpp"

namespace unitaylor::cli {

using io::Json;
using namespace geometry;

io::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

namespace {

double positive(const Json& j, const std::string& where) {
  double v = io::real_from_json(j, where);
  if (!(v > 0) || !std::isfinite(v)) throw ConfigError(where + " must be a positive number");
  return v;
}

int positive_int(const Json& j, const std::string& where, int min = 1) {
  if (!j.is_number_integer() || j.get<long long>() < min)
    throw ConfigError(where + " must be an integer >= " + std::to_string(min));
  return j.get<int>();
}

}  // namespace

engine::Config parse_scene_config(const Json& j) {
  const std::string w = "scene";
  io::check_keys(j, {"dimension", "domains", "portions", "center", "mu", "base_outside_compacts", "grid", "caps",
                     "enumeration"},
                 w);
  engine::Config cfg;
  auto& s = cfg.scene;
  std::size_t d = static_cast<std::size_t>(positive_int(io::need(j, "dimension", w), w + ".dimension"));
  const Json& doms = io::need(j, "domains", w);
  if (!doms.is_array() || doms.size() != d) throw ConfigError(w + ".domains: need one domain per dimension");
  for (const auto& x : doms) s.domains.push_back(io::domain_from_json(x));
  if (j.contains("portions")) {
    const Json& ps = j["portions"];
    if (!ps.is_array() || ps.size() != d) throw ConfigError(w + ".portions: need one portion per dimension");
    for (const auto& x : ps) s.portions.push_back(io::portion_from_json(x));
  } else {
    s.portions.assign(d, BoundaryPortion{});
  }
  const Json& c = io::need(j, "center", w);
  if (!c.is_array() || c.size() != d) throw ConfigError(w + ".center: need one coordinate per dimension");
  for (const auto& z : c) s.center.push_back(io::complex_from_json(z, w + ".center"));
  if (j.contains("mu")) s.mu = io::cutset_from_json(j["mu"]);
  if (j.contains("enumeration")) {
    const Json& e = j["enumeration"];
    io::check_keys(e, {"max_level", "max_radius"}, w + ".enumeration");
    if (e.contains("max_level")) s.horizon.max_level = positive_int(e["max_level"], w + ".enumeration.max_level");
    if (e.contains("max_radius")) s.horizon.max_radius = positive_int(e["max_radius"], w + ".enumeration.max_radius");
  }
  if (j.contains("base_outside_compacts")) {
    const Json& b = j["base_outside_compacts"];
    if (!b.is_array() || b.size() != d) throw ConfigError(w + ".base_outside_compacts: need one list per dimension");
    for (const auto& lst : b) {
      if (!lst.is_array()) throw ConfigError(w + ".base_outside_compacts: each entry must be a list");
      std::vector<Descriptor> f;
      for (const auto& x : lst) f.push_back(io::descriptor_from_json(x));
      s.base_outside.push_back(std::move(f));
    }
  } else {
    for (const auto& dom : s.domains) s.base_outside.push_back(default_outside_compacts(dom, 8));
  }
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    io::check_keys(g, {"fit_density", "validation_density", "box_margin"}, w + ".grid");
    if (g.contains("fit_density")) cfg.grid.fit_spacing = 1.0 / positive(g["fit_density"], w + ".grid.fit_density");
    if (g.contains("validation_density"))
      cfg.grid.validation_spacing = 1.0 / positive(g["validation_density"], w + ".grid.validation_density");
    if (g.contains("box_margin")) cfg.grid.box_margin = positive(g["box_margin"], w + ".grid.box_margin");
  }
  if (j.contains("caps")) {
    const Json& cp = j["caps"];
    io::check_keys(cp, {"degree", "fit_degree", "retries"}, w + ".caps");
    if (cp.contains("degree")) cfg.caps.degree = positive_int(cp["degree"], w + ".caps.degree");
    if (cp.contains("fit_degree")) cfg.caps.fit_degree = positive_int(cp["fit_degree"], w + ".caps.fit_degree", 0);
    if (cp.contains("retries")) cfg.caps.retries = positive_int(cp["retries"], w + ".caps.retries", 0);
  }
  return cfg;
}

Schedule parse_schedule(const Json& j, std::size_t d) {
  const std::string w = "schedule";
  io::check_keys(j, {"requirements", "seed"}, w);
  Schedule out;
  if (j.contains("seed") && !j["seed"].is_null()) out.seed = io::poly_from_json(j["seed"]);
  const Json& reqs = io::need(j, "requirements", w);
  if (!reqs.is_array()) throw ConfigError(w + ".requirements must be a list");
  for (std::size_t n = 0; n < reqs.size(); ++n) {
    const Json& r = reqs[n];
    std::string rw = w + ".requirements[" + std::to_string(n) + "]";
    io::check_keys(r, {"id", "compact", "target", "epsilon", "family", "level", "mode", "uniform_center"}, rw);
    engine::Requirement req;
    const Json& id = io::need(r, "id", rw);
    if (!id.is_string() || id.get<std::string>().empty()) throw ConfigError(rw + ".id must be a nonempty string");
    req.id = id.get<std::string>();
    const Json& k = io::need(r, "compact", rw);
    io::check_keys(k, {"factors", "tau", "point"}, rw + ".compact");
    if (k.size() != 1) throw ConfigError(rw + ".compact: give exactly one of factors, tau, point");
    if (k.contains("factors")) {
      req.source = engine::Requirement::Source::Factors;
      for (const auto& x : k["factors"]) req.factors.push_back(io::descriptor_from_json(x));
    } else if (k.contains("tau")) {
      req.source = engine::Requirement::Source::Tau;
      if (!k["tau"].is_number_integer()) throw ConfigError(rw + ".compact.tau must be an integer");
      req.tau = k["tau"].get<std::int64_t>();
    } else {
      req.source = engine::Requirement::Source::Point;
      const Json& p = k["point"];
      if (!p.is_array() || p.size() != d) throw ConfigError(rw + ".compact.point needs one coordinate per dimension");
      for (const auto& z : p) req.factors.emplace_back(Singleton{io::complex_from_json(z, rw + ".compact.point")});
    }
    const Json& t = io::need(r, "target", rw);
    io::check_keys(t, {"expr", "poly"}, rw + ".target");
    if (t.size() != 1) throw ConfigError(rw + ".target: give exactly one of expr, poly");
    if (t.contains("expr")) {
      if (!t["expr"].is_string()) throw ConfigError(rw + ".target.expr must be a string");
      req.target.expression = t["expr"].get<std::string>();
    } else {
      req.target.poly = io::poly_from_json(t["poly"]);
    }
    req.epsilon = positive(io::need(r, "epsilon", rw), rw + ".epsilon");
    if (r.contains("family")) req.fam = io::family_from_json(r["family"], d);
    if (r.contains("level")) req.level = positive_int(r["level"], rw + ".level");
    if (r.contains("mode")) {
      std::string m = r["mode"].is_string() ? r["mode"].get<std::string>() : "";
      if (m == "A_D")
        req.mode = engine::Mode::AD;
      else if (m == "O")
        req.mode = engine::Mode::O;
      else
        throw ConfigError(rw + ".mode must be \"A_D\" or \"O\"");
    }
    if (r.contains("uniform_center")) {
      std::vector<Descriptor> lt;
      for (const auto& x : r["uniform_center"]) lt.push_back(io::descriptor_from_json(x));
      req.uniform_center = std::move(lt);
    }
    out.requirements.push_back(std::move(req));
  }
  return out;
}

Point parse_point(const std::string& text, std::size_t d) {
  Point out;
  std::stringstream vars(text);
  std::string part;
  while (std::getline(vars, part, ';')) {
    std::stringstream nums(part);
    std::string a, b;
    std::getline(nums, a, ',');
    std::getline(nums, b, ',');
    std::string rest;
    if (std::getline(nums, rest, ',')) throw ConfigError("bad point '" + text + "'");
    try {
      std::size_t used = 0;
      double re = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      double im = 0.0;
      if (!b.empty()) {
        im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
      }
      out.emplace_back(re, im);
    } catch (const std::exception&) {
      throw ConfigError("bad point '" + text + "': expected re,im per variable");
    }
  }
  if (out.size() != d) throw ConfigError("point '" + text + "' needs " + std::to_string(d) + " coordinates");
  return out;
}

}  // namespace unitaylor::cli

#include "unitaylor/io/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "unitaylor/errors.hpp"

namespace unitaylor::io {

using namespace geometry;

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  return j.at(key);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected a complex number [re, im]");
}

Json real_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

double real_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError(where + ": expected a real number");
}

namespace {

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

std::size_t index_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ConfigError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<Complex> points_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected a list of points");
  std::vector<Complex> out;
  for (const auto& p : j) out.push_back(complex_from_json(p, where));
  return out;
}

Json points_to_json(const std::vector<Complex>& pts) {
  Json a = Json::array();
  for (auto z : pts) a.push_back(complex_to_json(z));
  return a;
}

}  // namespace

Json domain_to_json(const DomainSpec& d) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>)
          return {{"kind", "disk"}, {"center", complex_to_json(s.center)}, {"radius", s.radius}};
        else if constexpr (std::is_same_v<T, HalfPlane>)
          return {{"kind", "half_plane"}, {"normal_angle", s.normal_angle}, {"offset", s.offset}};
        else if constexpr (std::is_same_v<T, Strip>)
          return {{"kind", "strip"},
                  {"axis_angle", s.axis_angle},
                  {"half_width", s.half_width},
                  {"center", complex_to_json(s.center)}};
        else
          return {{"kind", "polygon"}, {"vertices", points_to_json(s.vertices)}};
      },
      d.shape());
}

DomainSpec domain_from_json(const Json& j) {
  const std::string w = "domain";
  auto kind = need(j, "kind", w);
  if (!kind.is_string()) throw ConfigError(w + ": kind must be a string");
  std::string k = kind.get<std::string>();
  if (k == "disk") {
    check_keys(j, {"kind", "center", "radius"}, w);
    Disk d;
    if (j.contains("center")) d.center = complex_from_json(j["center"], w + ".center");
    d.radius = real_from_json(need(j, "radius", w), w + ".radius");
    return DomainSpec(d);
  }
  if (k == "half_plane") {
    check_keys(j, {"kind", "normal_angle", "offset"}, w);
    HalfPlane h;
    h.normal_angle = real_from_json(need(j, "normal_angle", w), w + ".normal_angle");
    if (j.contains("offset")) h.offset = real_from_json(j["offset"], w + ".offset");
    return DomainSpec(h);
  }
  if (k == "strip") {
    check_keys(j, {"kind", "axis_angle", "half_width", "center"}, w);
    Strip s;
    if (j.contains("axis_angle")) s.axis_angle = real_from_json(j["axis_angle"], w + ".axis_angle");
    s.half_width = real_from_json(need(j, "half_width", w), w + ".half_width");
    if (j.contains("center")) s.center = complex_from_json(j["center"], w + ".center");
    return DomainSpec(s);
  }
  if (k == "polygon") {
    check_keys(j, {"kind", "vertices"}, w);
    return DomainSpec(Polygon{points_from_json(need(j, "vertices", w), w + ".vertices")});
  }
  throw ConfigError(w + ": unknown kind '" + k + "'");
}

Json portion_to_json(const BoundaryPortion& p) {
  Json arcs = Json::array(), iso = Json::array(), dense = Json::array();
  for (const auto& a : p.arcs)
    arcs.push_back({{"component", a.component},
                    {"from", real_to_json(a.from)},
                    {"to", real_to_json(a.to)},
                    {"full", a.full},
                    {"closed_from", a.closed_from},
                    {"closed_to", a.closed_to}});
  for (const auto& q : p.isolated) iso.push_back({{"component", q.component}, {"at", q.at}});
  for (const auto& m : p.dense)
    dense.push_back({{"component", m.component}, {"from", real_to_json(m.from)}, {"to", real_to_json(m.to)}});
  return {{"arcs", arcs}, {"isolated", iso}, {"dense", dense}};
}

BoundaryPortion portion_from_json(const Json& j) {
  const std::string w = "portion";
  check_keys(j, {"arcs", "isolated", "dense"}, w);
  BoundaryPortion p;
  if (j.contains("arcs")) {
    if (!j["arcs"].is_array()) throw ConfigError(w + ".arcs: expected a list");
    for (const auto& a : j["arcs"]) {
      check_keys(a, {"component", "from", "to", "full", "closed_from", "closed_to"}, w + ".arcs[]");
      Arc arc;
      if (a.contains("component")) arc.component = index_from_json(a["component"], w + ".arcs[].component");
      arc.full = a.value("full", false);
      if (!arc.full) {
        arc.from = real_from_json(need(a, "from", w + ".arcs[]"), w + ".arcs[].from");
        arc.to = real_from_json(need(a, "to", w + ".arcs[]"), w + ".arcs[].to");
      } else {
        if (a.contains("from")) arc.from = real_from_json(a["from"], w + ".arcs[].from");
        if (a.contains("to")) arc.to = real_from_json(a["to"], w + ".arcs[].to");
      }
      arc.closed_from = a.value("closed_from", false);
      arc.closed_to = a.value("closed_to", false);
      p.arcs.push_back(arc);
    }
  }
  if (j.contains("isolated")) {
    for (const auto& q : j["isolated"]) {
      check_keys(q, {"component", "at"}, w + ".isolated[]");
      IsolatedPoint ip;
      if (q.contains("component")) ip.component = index_from_json(q["component"], w + ".isolated[].component");
      ip.at = real_from_json(need(q, "at", w + ".isolated[]"), w + ".isolated[].at");
      p.isolated.push_back(ip);
    }
  }
  if (j.contains("dense")) {
    for (const auto& m : j["dense"]) {
      check_keys(m, {"component", "from", "to"}, w + ".dense[]");
      DenseMarks dm;
      if (m.contains("component")) dm.component = index_from_json(m["component"], w + ".dense[].component");
      if (m.contains("from")) dm.from = real_from_json(m["from"], w + ".dense[].from");
      if (m.contains("to")) dm.to = real_from_json(m["to"], w + ".dense[].to");
      p.dense.push_back(dm);
    }
  }
  return p;
}

Json descriptor_to_json(const Descriptor& d) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, EmptySet>)
          return {{"kind", "empty"}};
        else if constexpr (std::is_same_v<T, Singleton>)
          return {{"kind", "point"}, {"at", complex_to_json(n.at)}};
        else if constexpr (std::is_same_v<T, Ball>)
          return {{"kind", "ball"}, {"center", complex_to_json(n.center)}, {"radius", n.radius}};
        else if constexpr (std::is_same_v<T, Annulus>)
          return {{"kind", "annulus"}, {"center", complex_to_json(n.center)}, {"inner", n.inner}, {"outer", n.outer}};
        else if constexpr (std::is_same_v<T, Polyline>) {
          if (n.vertices.size() == 2)
            return {{"kind", "segment"}, {"from", complex_to_json(n.vertices[0])}, {"to", complex_to_json(n.vertices[1])}};
          return {{"kind", "polyline"}, {"vertices", points_to_json(n.vertices)}};
        } else if constexpr (std::is_same_v<T, ExhaustionCell>)
          return {{"kind", "exhaustion"},
                  {"domain", domain_to_json(n.domain)},
                  {"portion", portion_to_json(n.portion)},
                  {"level", n.level}};
        else if constexpr (std::is_same_v<T, Shrink>)
          return {{"kind", "shrink"},
                  {"base", descriptor_to_json(*n.base)},
                  {"domain", domain_to_json(n.domain)},
                  {"portion", portion_to_json(n.portion)},
                  {"level", n.level}};
        else {
          Json parts = Json::array();
          for (const auto& p : n.parts) parts.push_back(descriptor_to_json(p));
          return {{"kind", "union"}, {"parts", parts}};
        }
      },
      d.node());
}

Descriptor descriptor_from_json(const Json& j) {
  const std::string w = "compact";
  std::string k = need(j, "kind", w).is_string() ? j["kind"].get<std::string>() : "";
  if (k == "empty") {
    check_keys(j, {"kind"}, w);
    return Descriptor(EmptySet{});
  }
  if (k == "point") {
    check_keys(j, {"kind", "at"}, w);
    return Descriptor(Singleton{complex_from_json(need(j, "at", w), w + ".at")});
  }
  if (k == "ball") {
    check_keys(j, {"kind", "center", "radius"}, w);
    double r = real_from_json(need(j, "radius", w), w + ".radius");
    if (!(r >= 0)) throw ConfigError(w + ": ball radius must be >= 0");
    return Descriptor(Ball{complex_from_json(need(j, "center", w), w + ".center"), r});
  }
  if (k == "annulus") {
    check_keys(j, {"kind", "center", "inner", "outer"}, w);
    Annulus a{complex_from_json(need(j, "center", w), w + ".center"),
              real_from_json(need(j, "inner", w), w + ".inner"), real_from_json(need(j, "outer", w), w + ".outer")};
    if (!(a.inner >= 0 && a.outer >= a.inner)) throw ConfigError(w + ": annulus needs 0 <= inner <= outer");
    return Descriptor(a);
  }
  if (k == "segment") {
    check_keys(j, {"kind", "from", "to"}, w);
    return Descriptor(Polyline{{complex_from_json(need(j, "from", w), w + ".from"),
                                complex_from_json(need(j, "to", w), w + ".to")}});
  }
  if (k == "polyline") {
    check_keys(j, {"kind", "vertices"}, w);
    auto v = points_from_json(need(j, "vertices", w), w + ".vertices");
    if (v.size() < 2) throw ConfigError(w + ": polyline needs at least two vertices");
    return Descriptor(Polyline{v});
  }
  if (k == "exhaustion") {
    check_keys(j, {"kind", "domain", "portion", "level"}, w);
    ExhaustionCell c{domain_from_json(need(j, "domain", w)),
                     j.contains("portion") ? portion_from_json(j["portion"]) : BoundaryPortion{},
                     int_from_json(need(j, "level", w), w + ".level")};
    return Descriptor(c);
  }
  if (k == "shrink") {
    check_keys(j, {"kind", "base", "domain", "portion", "level"}, w);
    Shrink s{std::make_shared<const Descriptor>(descriptor_from_json(need(j, "base", w))),
             domain_from_json(need(j, "domain", w)),
             j.contains("portion") ? portion_from_json(j["portion"]) : BoundaryPortion{},
             int_from_json(need(j, "level", w), w + ".level")};
    return Descriptor(s);
  }
  if (k == "union") {
    check_keys(j, {"kind", "parts"}, w);
    Union u;
    for (const auto& p : need(j, "parts", w)) u.parts.push_back(descriptor_from_json(p));
    return Descriptor(u);
  }
  throw ConfigError(w + ": unknown kind '" + k + "'");
}

Json cutset_to_json(const CutSet& mu) {
  switch (mu.kind()) {
    case CutSet::Kind::All:
      return {{"kind", "all"}};
    case CutSet::Kind::Residues:
      return {{"kind", "residues"}, {"modulus", mu.modulus()}, {"residues", mu.values()}};
    case CutSet::Kind::List:
      break;
  }
  return {{"kind", "list"}, {"values", mu.values()}};
}

CutSet cutset_from_json(const Json& j) {
  const std::string w = "mu";
  std::string k = need(j, "kind", w).is_string() ? j["kind"].get<std::string>() : "";
  auto ints = [&](const Json& a, const std::string& where) {
    if (!a.is_array()) throw ConfigError(where + ": expected a list of integers");
    std::vector<std::int64_t> v;
    for (const auto& x : a) {
      if (!x.is_number_integer()) throw ConfigError(where + ": expected integers");
      v.push_back(x.get<std::int64_t>());
    }
    return v;
  };
  if (k == "all") {
    check_keys(j, {"kind"}, w);
    return CutSet::all();
  }
  if (k == "residues") {
    check_keys(j, {"kind", "modulus", "residues"}, w);
    auto m = need(j, "modulus", w);
    if (!m.is_number_integer() || m.get<std::int64_t>() < 1) throw ConfigError(w + ": modulus must be >= 1");
    return CutSet::residues(m.get<std::int64_t>(), ints(need(j, "residues", w), w + ".residues"));
  }
  if (k == "list") {
    check_keys(j, {"kind", "values"}, w);
    return CutSet::list(ints(need(j, "values", w), w + ".values"));
  }
  throw ConfigError(w + ": unknown kind '" + k + "'");
}

Json multi_index_to_json(const MultiIndex& a) { return a.parts(); }

MultiIndex multi_index_from_json(const Json& j, std::size_t dim) {
  if (j.is_number_integer() && dim == 1) {
    int k = j.get<int>();
    if (k < 0) throw ConfigError("multi-index entries must be >= 0");
    return MultiIndex{k};
  }
  if (!j.is_array() || j.size() != dim) throw ConfigError("multi-index must have one entry per variable");
  std::vector<int> parts;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0) throw ConfigError("multi-index entries must be integers >= 0");
    parts.push_back(x.get<int>());
  }
  return MultiIndex(parts);
}

Json family_to_json(const DerivativeFamily& f) {
  Json a = Json::array();
  for (const auto& m : f.members()) a.push_back(multi_index_to_json(m));
  return a;
}

DerivativeFamily family_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ConfigError("family: expected a list of multi-indices");
  std::vector<MultiIndex> members;
  for (const auto& x : j) members.push_back(multi_index_from_json(x, dim));
  return DerivativeFamily(members);
}

Json poly_to_json(const Poly& p) {
  Json center = Json::array();
  for (auto c : p.center()) center.push_back(complex_to_json(c));
  Json entries = Json::array();
  for (const auto& [a, c] : p.terms())
    entries.push_back({{"alpha", multi_index_to_json(a)}, {"re", to_decimal(c.real())}, {"im", to_decimal(c.imag())}});
  return {{"center", center}, {"entries", entries}};
}

Poly poly_from_json(const Json& j) {
  const std::string w = "poly";
  check_keys(j, {"center", "entries"}, w);
  const Json& c = need(j, "center", w);
  if (!c.is_array() || c.empty()) throw ConfigError(w + ".center: expected a nonempty list");
  Point center;
  for (const auto& z : c) center.push_back(complex_from_json(z, w + ".center"));
  Poly p(center);
  for (const auto& e : need(j, "entries", w)) {
    check_keys(e, {"alpha", "re", "im"}, w + ".entries[]");
    MultiIndex a = multi_index_from_json(need(e, "alpha", w), center.size());
    auto part = [&](const char* key) -> HiReal {
      const Json& v = need(e, key, w + ".entries[]");
      if (v.is_string()) {
        try {
          return from_decimal(v.get<std::string>());
        } catch (const std::exception&) {
          throw ConfigError(w + ": bad coefficient text");
        }
      }
      if (v.is_number()) return HiReal(v.get<double>());
      throw ConfigError(w + ": coefficient parts must be decimal strings or numbers");
    };
    p.add(a, HiComplex(part("re"), part("im")));
  }
  return p;
}

Json fit_report_to_json(const approx::FitReport& r) {
  Json achieved = Json::array();
  for (const auto& e : r.achieved)
    achieved.push_back({{"set", e.set}, {"alpha", multi_index_to_json(e.alpha)}, {"error", real_to_json(e.error)}});
  Json trace = Json::array();
  for (const auto& t : r.trace) trace.push_back(Json::array({t.degree, real_to_json(t.error)}));
  return {{"success", r.success},
          {"message", r.message},
          {"degree_used", r.degree_used},
          {"achieved", achieved},
          {"conditioning",
           {{"rank", r.conditioning.rank},
            {"unknowns", r.conditioning.unknowns},
            {"rows", r.conditioning.rows},
            {"condition_estimate", real_to_json(r.conditioning.condition_estimate)},
            {"refinement_residual", real_to_json(r.conditioning.refinement_residual)}}},
          {"trace", trace}};
}

Json verdict_to_json(const ConnectivityCertificate& c) {
  Json j = {{"verdict", to_string(c.verdict)}, {"resolution", c.resolution}};
  j["witness"] = c.witness ? complex_to_json(*c.witness) : Json(nullptr);
  return j;
}

Json scene_to_json(const DomainScene& s) {
  Json domains = Json::array(), portions = Json::array(), center = Json::array(), outside = Json::array();
  for (const auto& d : s.domains) domains.push_back(domain_to_json(d));
  for (const auto& p : s.portions) portions.push_back(portion_to_json(p));
  for (auto c : s.center) center.push_back(complex_to_json(c));
  for (const auto& f : s.base_outside) {
    Json a = Json::array();
    for (const auto& d : f) a.push_back(descriptor_to_json(d));
    outside.push_back(a);
  }
  return {{"dimension", s.dimension()},
          {"domains", domains},
          {"portions", portions},
          {"center", center},
          {"mu", cutset_to_json(s.mu)},
          {"base_outside_compacts", outside},
          {"enumeration", {{"max_level", s.horizon.max_level}, {"max_radius", s.horizon.max_radius}}}};
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace unitaylor::io

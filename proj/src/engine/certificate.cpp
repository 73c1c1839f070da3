#include <sstream>

#include "unitaylor/engine/engine.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::engine {

using io::Json;

namespace {

Json set_errors_to_json(const std::vector<approx::SetError>& errs) {
  Json a = Json::array();
  for (const auto& e : errs)
    a.push_back({{"set", e.set}, {"alpha", io::multi_index_to_json(e.alpha)}, {"error", io::real_to_json(e.error)}});
  return a;
}

std::vector<approx::SetError> set_errors_from_json(const Json& j) {
  std::vector<approx::SetError> out;
  if (!j.is_array()) throw ConfigError("certificate: errors must be a list");
  for (const auto& e : j) {
    io::check_keys(e, {"set", "alpha", "error"}, "certificate.errors[]");
    const Json& a = io::need(e, "alpha", "certificate.errors[]");
    out.push_back({io::need(e, "set", "certificate.errors[]").get<std::string>(),
                   io::multi_index_from_json(a, a.is_array() ? a.size() : 1),
                   io::real_from_json(io::need(e, "error", "certificate.errors[]"), "certificate.errors[].error")});
  }
  return out;
}

approx::FitReport fit_report_from_json(const Json& j) {
  const std::string w = "certificate.fit_report";
  io::check_keys(j, {"success", "message", "degree_used", "achieved", "conditioning", "trace"}, w);
  approx::FitReport r;
  r.success = io::need(j, "success", w).get<bool>();
  r.message = io::need(j, "message", w).get<std::string>();
  r.degree_used = io::need(j, "degree_used", w).get<int>();
  r.achieved = set_errors_from_json(io::need(j, "achieved", w));
  const Json& c = io::need(j, "conditioning", w);
  io::check_keys(c, {"rank", "unknowns", "rows", "condition_estimate", "refinement_residual"}, w + ".conditioning");
  r.conditioning.rank = c.at("rank").get<int>();
  r.conditioning.unknowns = c.at("unknowns").get<int>();
  r.conditioning.rows = c.at("rows").get<int>();
  r.conditioning.condition_estimate = io::real_from_json(c.at("condition_estimate"), w);
  r.conditioning.refinement_residual = io::real_from_json(c.at("refinement_residual"), w);
  for (const auto& t : io::need(j, "trace", w)) r.trace.push_back({t.at(0).get<int>(), io::real_from_json(t.at(1), w)});
  return r;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
  Json reqs = Json::array();
  for (const auto& r : c.results)
    reqs.push_back({{"id", r.id},
                    {"epsilon", r.epsilon},
                    {"cut", r.cut},
                    {"separating_factor", r.i0},
                    {"vanish_order", r.vanish_order},
                    {"smallness", r.smallness},
                    {"attempts", r.attempts},
                    {"error_K", io::real_to_json(r.error_k)},
                    {"error_L", io::real_to_json(r.error_l)},
                    {"errors", set_errors_to_json(r.errors)},
                    {"fit_report", io::fit_report_to_json(r.fit_report)},
                    {"glue_report", io::fit_report_to_json(r.glue_report)}});
  Json ledger = Json::array();
  for (const auto& l : c.ledger)
    ledger.push_back({{"requirement", l.requirement},
                      {"stage", l.stage},
                      {"allocated", l.allocated},
                      {"consumed_bound", io::real_to_json(l.consumed_bound)},
                      {"measured_K", io::real_to_json(l.measured_k)},
                      {"measured_L", io::real_to_json(l.measured_l)}});
  Json snaps = Json::array();
  for (const auto& s : c.snapshots) {
    Json ek = Json::array(), el = Json::array();
    for (double v : s.error_k) ek.push_back(io::real_to_json(v));
    for (double v : s.error_l) el.push_back(io::real_to_json(v));
    snaps.push_back({{"stage", s.stage}, {"error_K", ek}, {"error_L", el}});
  }
  Json failure = nullptr;
  if (c.failure)
    failure = {{"requirement", c.failure->requirement},
               {"stage", c.failure->stage},
               {"binding_budget", c.failure->binding_budget},
               {"message", c.failure->message}};
  return {{"schema", c.schema},
          {"scene_hash", c.scene_hash},
          {"enumeration_rule", c.enumeration_rule},
          {"center_mode", c.center_mode},
          {"success", c.success()},
          {"failure", failure},
          {"f", io::poly_to_json(c.f)},
          {"cuts", c.cuts},
          {"requirements", reqs},
          {"ledger", ledger},
          {"snapshots", snaps},
          {"surrogate",
           {{"fit_spacing", c.grid.fit_spacing},
            {"validation_spacing", c.grid.validation_spacing},
            {"box_margin", c.grid.box_margin},
            {"degree_cap", c.caps.degree},
            {"fit_degree_cap", c.caps.fit_degree},
            {"retries", c.caps.retries},
            {"budget_level", c.budget_level},
            {"budget_radius", c.budget_radius}}}};
}

Certificate certificate_from_json(const Json& j) {
  const std::string w = "certificate";
  io::check_keys(j, {"schema", "scene_hash", "enumeration_rule", "center_mode", "success", "failure", "f", "cuts",
                     "requirements", "ledger", "snapshots", "surrogate"},
                 w);
  Certificate c;
  try {
    c.schema = io::need(j, "schema", w).get<std::string>();
    if (c.schema != kCertificateSchema) throw ConfigError("unsupported certificate schema '" + c.schema + "'");
    c.scene_hash = io::need(j, "scene_hash", w).get<std::string>();
    c.enumeration_rule = io::need(j, "enumeration_rule", w).get<std::string>();
    if (j.contains("center_mode")) c.center_mode = j["center_mode"].get<std::string>();
    c.f = io::poly_from_json(io::need(j, "f", w));
    for (const auto& x : io::need(j, "cuts", w)) c.cuts.push_back(x.get<std::int64_t>());
    if (j.contains("failure") && !j["failure"].is_null()) {
      const Json& f = j["failure"];
      c.failure = Failure{f.at("requirement").get<std::string>(), f.at("stage").get<std::size_t>(),
                          f.at("binding_budget").get<std::string>(), f.at("message").get<std::string>()};
    }
    if (j.contains("requirements"))
      for (const auto& r : j["requirements"]) {
        RequirementResult rr;
        rr.id = r.at("id").get<std::string>();
        rr.epsilon = r.at("epsilon").get<double>();
        rr.cut = r.at("cut").get<std::int64_t>();
        rr.i0 = r.at("separating_factor").get<std::size_t>();
        rr.vanish_order = r.at("vanish_order").get<int>();
        rr.smallness = r.at("smallness").get<double>();
        rr.attempts = r.at("attempts").get<int>();
        rr.error_k = io::real_from_json(r.at("error_K"), w);
        rr.error_l = io::real_from_json(r.at("error_L"), w);
        rr.errors = set_errors_from_json(r.at("errors"));
        rr.fit_report = fit_report_from_json(r.at("fit_report"));
        rr.glue_report = fit_report_from_json(r.at("glue_report"));
        c.results.push_back(std::move(rr));
      }
    if (j.contains("ledger"))
      for (const auto& l : j["ledger"])
        c.ledger.push_back({l.at("requirement").get<std::string>(), l.at("stage").get<std::size_t>(),
                            l.at("allocated").get<double>(), io::real_from_json(l.at("consumed_bound"), w),
                            io::real_from_json(l.at("measured_K"), w), io::real_from_json(l.at("measured_L"), w)});
    if (j.contains("snapshots"))
      for (const auto& s : j["snapshots"]) {
        StageSnapshot snap;
        snap.stage = s.at("stage").get<std::size_t>();
        for (const auto& v : s.at("error_K")) snap.error_k.push_back(io::real_from_json(v, w));
        for (const auto& v : s.at("error_L")) snap.error_l.push_back(io::real_from_json(v, w));
        c.snapshots.push_back(std::move(snap));
      }
    if (j.contains("surrogate")) {
      const Json& s = j["surrogate"];
      c.grid.fit_spacing = s.at("fit_spacing").get<double>();
      c.grid.validation_spacing = s.at("validation_spacing").get<double>();
      c.grid.box_margin = s.at("box_margin").get<double>();
      c.caps.degree = s.at("degree_cap").get<int>();
      c.caps.fit_degree = s.at("fit_degree_cap").get<int>();
      c.caps.retries = s.at("retries").get<int>();
      c.budget_level = s.at("budget_level").get<int>();
      c.budget_radius = s.at("budget_radius").get<double>();
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

Json report_to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"epsilon", c.epsilon},
                      {"cut", c.cut},
                      {"error_K", io::real_to_json(c.error_k)},
                      {"error_L", io::real_to_json(c.error_l)},
                      {"errors", set_errors_to_json(c.errors)},
                      {"pass", c.pass}});
  return {{"schema", kReportSchema},
          {"kind", r.kind},
          {"resolution", r.resolution},
          {"pass", r.pass},
          {"problems", r.problems},
          {"requirements", checks}};
}

std::string report_to_text(const VerifyReport& r) {
  std::ostringstream s;
  s << r.kind << " at resolution x" << r.resolution << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& p : r.problems) s << "  problem: " << p << "\n";
  for (const auto& c : r.checks)
    s << "  " << c.id << "  cut " << c.cut << "  E_K " << c.error_k << "  E_L " << c.error_l << "  eps " << c.epsilon
      << "  " << (c.pass ? "pass" : "FAIL") << "\n";
  return s.str();
}

}  // namespace unitaylor::engine

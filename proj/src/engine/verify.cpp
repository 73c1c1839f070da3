#include <algorithm>
#include <sstream>

#include "internal.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::engine {

using namespace geometry;

namespace {

void check_identity(const Certificate& cert, const Config& cfg) {
  if (cert.scene_hash != scene_hash(cfg.scene))
    throw ConfigError("scene hash mismatch: certificate " + cert.scene_hash + ", scene " + scene_hash(cfg.scene));
  if (cert.enumeration_rule != kEnumerationRule)
    throw ConfigError("enumeration rule mismatch: certificate uses '" + cert.enumeration_rule + "'");
  if (cert.f.dimension() != cfg.scene.dimension())
    throw ConfigError("certificate polynomial has the wrong number of variables");
  if (cert.f.center() != cfg.scene.center) throw ConfigError("certificate polynomial is not centered at the scene center");
}

std::vector<std::string> structural_problems(const Certificate& cert, const Config& cfg,
                                             const std::vector<Requirement>& reqs) {
  std::vector<std::string> out;
  if (cert.failure) out.push_back("certificate records a construction failure: " + cert.failure->message);
  if (cert.cuts.size() != reqs.size()) {
    std::ostringstream m;
    m << "certificate has " << cert.cuts.size() << " cuts for " << reqs.size() << " requirements";
    out.push_back(m.str());
  }
  for (std::size_t r = 0; r < cert.cuts.size(); ++r) {
    if (!cfg.scene.mu.contains(cert.cuts[r])) out.push_back("cut " + std::to_string(cert.cuts[r]) + " is not in mu");
    if (r > 0 && cert.cuts[r] <= cert.cuts[r - 1]) out.push_back("cuts are not strictly increasing");
  }
  for (std::size_t r = 0; r < std::min(cert.results.size(), reqs.size()); ++r)
    if (cert.results[r].id != reqs[r].id)
      out.push_back("requirement " + std::to_string(r + 1) + " id differs: '" + cert.results[r].id + "' vs '" +
                    reqs[r].id + "'");
  return out;
}

}  // namespace

VerifyReport verify(const Certificate& cert, const Config& cfg, const std::vector<Requirement>& reqs_in,
                    double resolution) {
  if (!(resolution > 0)) throw ConfigError("resolution multiplier must be positive");
  check_identity(cert, cfg);
  VerifyReport rep;
  rep.resolution = resolution;
  rep.problems = structural_problems(cert, cfg, reqs_in);
  std::size_t d = cfg.scene.dimension();
  detail::ExhaustionCache lsets(cfg.scene, detail::sampling(cfg.grid, resolution));
  std::size_t n = std::min(cert.cuts.size(), reqs_in.size());
  rep.checks.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto rr = validate_requirement(cfg, resolve(cfg.scene, reqs_in[r]), resolution);
    auto& c = rep.checks[r];
    c.id = rr.req.id;
    c.epsilon = rr.req.epsilon;
    c.cut = cert.cuts[r];
    c.errors = detail::k_errors(cert.f.truncated(c.cut), rr.req.target.function(d), rr.k, rr.req.fam_k(d));
    c.error_k = detail::max_error(c.errors);
    c.error_l = detail::l_seminorm(cert.f.tail(c.cut), lsets.at(rr.req.level), rr.req.fam);
    c.pass = c.error_k < c.epsilon && c.error_l < c.epsilon;
  }
  rep.pass = rep.problems.empty() && std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
  return rep;
}

VerifyReport verify_uniform_center(const Certificate& cert, const Config& cfg, const std::vector<Requirement>& reqs,
                                   std::size_t index, const std::vector<Descriptor>& l_tilde, double resolution) {
  if (!(resolution > 0)) throw ConfigError("resolution multiplier must be positive");
  check_identity(cert, cfg);
  if (index >= reqs.size()) throw ConfigError("requirement index out of range");
  std::size_t d = cfg.scene.dimension();
  if (l_tilde.size() != d) throw ConfigError("l_tilde needs one factor per variable");
  VerifyReport rep;
  rep.kind = "verify_uniform_center";
  rep.resolution = resolution;
  rep.problems = structural_problems(cert, cfg, reqs);
  if (index >= cert.cuts.size()) {
    rep.problems.push_back("certificate has no cut for requirement " + std::to_string(index + 1));
    return rep;
  }
  Sampling s = detail::sampling(cfg.grid, resolution);
  auto lt = make_product(l_tilde, s, cfg.grid.box_margin);
  for (std::size_t i = 0; i < d; ++i)
    for (auto z : lt.factors[i].validation_points)
      if (!in_domain_or_portion(cfg.scene.domains[i], cfg.scene.portions[i], z, 1e-9))
        throw ConfigError("l_tilde is not inside prod(Omega_i u S_i)");
  auto rr = validate_requirement(cfg, resolve(cfg.scene, reqs[index]), resolution);
  detail::ExhaustionCache lsets(cfg.scene, s);
  const auto& l = lsets.at(rr.req.level);
  auto target = rr.req.target.function(d);
  DerivativeFamily fam_k = rr.req.fam_k(d);
  RequirementCheck c;
  c.id = rr.req.id;
  c.epsilon = rr.req.epsilon;
  c.cut = cert.cuts[index];
  auto zetas = product_points(validation_grids(lt));
  std::vector<std::vector<approx::SetError>> per(zetas.size());
  std::vector<double> el(zetas.size());
  // Deterministic regardless of thread count: each zeta writes its own slot.
  for (std::size_t q = 0; q < zetas.size(); ++q) {
    Poly g = recenter(cert.f, zetas[q]);
    per[q] = detail::k_errors(g.truncated(c.cut), target, rr.k, fam_k);
    el[q] = detail::l_seminorm(g.tail(c.cut), l, rr.req.fam);
  }
  for (std::size_t q = 0; q < zetas.size(); ++q) {
    if (c.errors.empty()) c.errors = per[q];
    for (std::size_t a = 0; a < per[q].size(); ++a) c.errors[a].error = std::max(c.errors[a].error, per[q][a].error);
    c.error_l = std::max(c.error_l, el[q]);
  }
  c.error_k = detail::max_error(c.errors);
  c.pass = c.error_k < c.epsilon && c.error_l < c.epsilon;
  rep.checks.push_back(c);
  rep.pass = rep.problems.empty() && c.pass;
  return rep;
}

}  // namespace unitaylor::engine

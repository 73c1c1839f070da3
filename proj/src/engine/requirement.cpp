#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "unitaylor/engine/engine.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::engine {

using namespace geometry;

approx::TargetFunction TargetSpec::function(std::size_t dim) const {
  if (poly) {
    if (poly->dimension() != dim) throw ConfigError("target polynomial has the wrong number of variables");
    return approx::TargetFunction::polynomial(*poly);
  }
  try {
    return approx::TargetFunction::expression(approx::Expression::parse(expression, dim));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("target expression: ") + e.what());
  }
}

std::string TargetSpec::describe() const {
  if (poly) return "polynomial of degree " + std::to_string(poly->degree());
  return expression;
}

DerivativeFamily Requirement::fam_k(std::size_t dim) const {
  return mode == Mode::O ? fam : DerivativeFamily::values_only(dim);
}

std::string scene_hash(const DomainScene& scene) {
  return io::hex64(io::fnv1a(io::scene_to_json(scene).dump()));
}

Requirement resolve(const DomainScene& scene, Requirement r) {
  std::size_t d = scene.dimension();
  std::string who = "requirement '" + r.id + "'";
  if (r.source == Requirement::Source::Tau) {
    try {
      r.factors = enumerate_K_tau_descriptors(scene, r.tau);
    } catch (const HorizonExceeded& e) {
      throw ConfigError(who + ": " + e.what());
    }
  }
  if (r.factors.size() != d) throw ConfigError(who + ": compact needs one factor per variable");
  if (!(r.epsilon > 0) || !std::isfinite(r.epsilon)) throw ConfigError(who + ": epsilon must be positive");
  if (r.level < 1) throw ConfigError(who + ": exhaustion level must be >= 1");
  if (r.fam.empty()) r.fam = DerivativeFamily::values_only(d);
  if (r.fam.dimension() != d) throw ConfigError(who + ": family multi-indices need one entry per variable");
  r.fam = r.fam.gapless_closure();
  auto target = r.target.function(d);
  if (r.mode == Mode::O && !target.holomorphic())
    throw ConfigError(who + ": O-mode targets must be holomorphic (no conj)");
  if (r.uniform_center && r.uniform_center->size() != d)
    throw ConfigError(who + ": uniform_center needs one factor per variable");
  return r;
}

ResolvedRequirement validate_requirement(const Config& cfg, const Requirement& r, double divisor) {
  const DomainScene& scene = cfg.scene;
  std::string who = "requirement '" + r.id + "'";
  Sampling s{cfg.grid.fit_spacing / divisor, cfg.grid.validation_spacing / divisor};
  ResolvedRequirement out;
  out.req = r;
  out.k = make_product(r.factors, s, cfg.grid.box_margin);
  for (std::size_t i = 0; i < out.k.factors.size(); ++i)
    if (out.k.factors[i].empty()) throw ConfigError(who + ": factor " + std::to_string(i) + " of K is empty");
  double best = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < scene.dimension(); ++i) {
    double sep = INFINITY;
    for (auto z : out.k.factors[i].validation_points) sep = std::min(sep, scene.domains[i].distance_to_closure(z));
    if (sep > 0 && (!found || sep > best)) {
      best = sep;
      out.i0 = i;
      found = true;
    }
  }
  if (!found)
    throw ConfigError(who + ": invariant violated: compact is not disjoint from prod(Omega_i u closure(S_i))");
  out.separation = best;
  for (std::size_t i = 0; i < out.k.certificates.size(); ++i) {
    const auto& c = out.k.certificates[i];
    if (c.verdict != Verdict::Connected) {
      std::ostringstream msg;
      msg << who << ": invariant violated: complement of factor " << i << " is not certified connected ("
          << to_string(c.verdict) << ")";
      throw ConfigError(msg.str());
    }
  }
  return out;
}

std::vector<PlannedStage> plan_schedule(const std::vector<Requirement>& reqs, const CutSet& mu) {
  std::set<std::string> seen;
  std::vector<PlannedStage> out;
  std::string rule;
  switch (mu.kind()) {
    case CutSet::Kind::All:
      rule = "min{lambda >= max_enum_index(f_r), lambda > lambda_(r-1)}";
      break;
    case CutSet::Kind::Residues:
      rule = "min{lambda in mu (residues mod " + std::to_string(mu.modulus()) +
             ") : lambda >= max_enum_index(f_r), lambda > lambda_(r-1)}";
      break;
    case CutSet::Kind::List:
      rule = "min{lambda in listed mu : lambda >= max_enum_index(f_r), lambda > lambda_(r-1)}";
      break;
  }
  for (std::size_t r = 0; r < reqs.size(); ++r) {
    if (!seen.insert(reqs[r].id).second) throw ConfigError("duplicate requirement id '" + reqs[r].id + "'");
    PlannedStage st;
    st.index = r + 1;
    st.requirement = reqs[r].id;
    st.cut_rule = rule;
    for (std::size_t i = 0; i < r; ++i)
      st.reservations.emplace_back(reqs[i].id, std::ldexp(reqs[i].epsilon, -static_cast<int>(r - i + 1)));
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace unitaylor::engine

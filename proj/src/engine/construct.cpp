#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::engine {

using namespace geometry;

namespace detail {

const ProductCompact& ExhaustionCache::at(int m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  ProductCompact pc;
  for (std::size_t i = 0; i < scene_.dimension(); ++i)
    pc.factors.push_back(exhaustion_set(scene_.domains[i], scene_.portions[i], m, s_));
  return cache_.emplace(m, std::move(pc)).first->second;
}

std::vector<double> budget_radii(const DomainScene& scene, int m) {
  std::vector<double> out;
  for (std::size_t i = 0; i < scene.dimension(); ++i) {
    const auto& dom = scene.domains[i];
    Complex c = scene.center[i];
    double r = 0.0;
    if (dom.contains(c)) {
      r = std::min({m - std::abs(c), distance_to_unmarked_boundary(dom, scene.portions[i], c) - 1.0 / m,
                    dom.distance_to_boundary(c)});
    }
    out.push_back(std::max(0.0, r));
  }
  return out;
}

std::vector<approx::SetError> k_errors(const Poly& s, const approx::TargetFunction& target, const ProductCompact& k,
                                       const DerivativeFamily& fam) {
  return approx::measure_errors(s, target, validation_grids(k), fam, "K");
}

double max_error(const std::vector<approx::SetError>& errs) {
  double m = 0.0;
  for (const auto& e : errs) m = std::max(m, e.error);
  return m;
}

double l_seminorm(const Poly& g, const ProductCompact& l, const DerivativeFamily& fam) {
  if (l.empty() || g.is_zero()) return 0.0;
  return seminorm_on(g, validation_grids(l), fam);
}

Sampling sampling(const GridConfig& g, double divisor) {
  return Sampling{g.fit_spacing / divisor, g.validation_spacing / divisor};
}

}  // namespace detail

namespace {

using detail::max_error;

// sum over indices j <= lambda of prod_k j_k!/(j_k - a_k)! dist_k^(j_k - a_k) / rho_k^(j_k), maximized over a.
double uniform_factor(std::int64_t lambda, const DerivativeFamily& fam, const std::vector<double>& dist,
                      const std::vector<double>& rho) {
  MultiIndexEnum en(dist.size());
  double worst = 0.0;
  for (const auto& a : fam.members()) {
    double total = 0.0;
    for (std::int64_t idx = 0; idx <= lambda; ++idx) {
      MultiIndex j = en.at(idx);
      if (!a.dominated_by(j)) continue;
      double term = 1.0;
      for (std::size_t k = 0; k < dist.size(); ++k) {
        for (int q = 0; q < a[k]; ++q) term *= (j[k] - q);
        term *= std::pow(dist[k], j[k] - a[k]) / std::pow(rho[k], j[k]);
      }
      total += term;
    }
    worst = std::max(worst, total);
  }
  return worst;
}

// |coefficient changes| at indices <= lambda, weighted by their sup on K.
double coefficient_bound(const Poly& p, std::int64_t lambda, const ProductCompact& k, const DerivativeFamily& fam,
                         const Point& center) {
  std::vector<double> reach(center.size(), 0.0);
  for (std::size_t i = 0; i < center.size(); ++i)
    for (auto z : k.factors[i].validation_points) reach[i] = std::max(reach[i], std::abs(z - center[i]));
  MultiIndexEnum en(center.size());
  double worst = 0.0;
  for (const auto& a : fam.members()) {
    double total = 0.0;
    for (const auto& [j, c] : p.terms()) {
      if (en.index_of(j) > lambda) continue;
      if (!a.dominated_by(j)) continue;
      double term = magnitude(c);
      for (std::size_t q = 0; q < center.size(); ++q) {
        for (int s = 0; s < a[q]; ++s) term *= (j[q] - s);
        term *= std::pow(reach[q], j[q] - a[q]);
      }
      total += term;
    }
    worst = std::max(worst, total);
  }
  return worst;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

Certificate construct(const Config& cfg, const std::vector<Requirement>& reqs_in) {
  const DomainScene& scene = cfg.scene;
  std::size_t d = scene.dimension();
  validate_scene(scene, cfg.grid.validation_spacing);
  auto plan = plan_schedule(reqs_in, scene.mu);

  Certificate cert;
  cert.scene_hash = scene_hash(scene);
  cert.enumeration_rule = kEnumerationRule;
  cert.grid = cfg.grid;
  cert.caps = cfg.caps;

  std::vector<ResolvedRequirement> reqs;
  for (const auto& r : reqs_in) reqs.push_back(validate_requirement(cfg, resolve(scene, r)));
  bool uniform = std::any_of(reqs.begin(), reqs.end(), [](const auto& r) { return r.req.uniform_center.has_value(); });
  if (uniform) cert.center_mode = "uniform-center";

  int m_star = 1;
  for (const auto& r : reqs) m_star = std::max(m_star, r.req.level);
  cert.budget_level = m_star;
  auto radii = detail::budget_radii(scene, m_star);
  cert.budget_radius = radii.empty() ? 0.0 : *std::min_element(radii.begin(), radii.end());

  Poly f(scene.center);
  if (cfg.seed) {
    if (cfg.seed->dimension() != d) throw ConfigError("seed polynomial has the wrong number of variables");
    f = recenter(*cfg.seed, scene.center);
  }
  cert.f = f;
  Sampling samp = detail::sampling(cfg.grid);
  detail::ExhaustionCache lsets(scene, samp);

  // Uniform-center geometry: zeta offsets and reaches, per requirement.
  struct UniformData {
    std::vector<double> rho, dist;
  };
  std::vector<std::optional<UniformData>> udata(reqs.size());
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    if (!reqs[i].req.uniform_center) continue;
    auto lt = make_product(*reqs[i].req.uniform_center, samp, cfg.grid.box_margin);
    UniformData u;
    const auto& li = lsets.at(reqs[i].req.level);
    for (std::size_t k = 0; k < d; ++k) {
      double off = 0.0, reach = 0.0;
      for (auto z : lt.factors[k].validation_points) {
        if (!in_domain_or_portion(scene.domains[k], scene.portions[k], z, 1e-9))
          throw ConfigError("requirement '" + reqs[i].req.id + "': uniform_center is not inside Omega u S");
        off = std::max(off, std::abs(z - scene.center[k]));
        for (auto w : reqs[i].k.factors[k].validation_points) reach = std::max(reach, std::abs(w - z));
        for (auto w : li.factors[k].validation_points) reach = std::max(reach, std::abs(w - z));
      }
      double rho = radii[k] - off;
      if (!(rho > 0))
        throw ConfigError("requirement '" + reqs[i].req.id +
                          "': uniform_center does not fit inside the budget polydisk");
      u.rho.push_back(rho);
      u.dist.push_back(reach);
    }
    udata[i] = u;
  }

  std::vector<double> err_k, err_l;  // current measured errors of accepted stages
  for (std::size_t r = 0; r < reqs.size(); ++r) {
    const auto& rr = reqs[r];
    const Requirement& req = rr.req;
    auto target = req.target.function(d);
    DerivativeFamily fam_k = req.fam_k(d);
    int m_r = 0;
    DerivativeFamily fam_l = req.fam;
    for (std::size_t i = 0; i <= r; ++i) {
      m_r = std::max(m_r, reqs[i].req.level);
      fam_l = fam_l.united(reqs[i].req.fam);
    }
    if (uniform) m_r = m_star;
    fam_l = fam_l.gapless_closure();
    const ProductCompact& l_set = lsets.at(m_r);

    // Smallness on L: own half, then the geometric reservations of earlier requirements.
    double delta = req.epsilon / 2;
    std::string binding = "own tolerance eps_" + std::to_string(r + 1) + "/2 = " + fmt(delta);
    for (std::size_t i = 0; i < r; ++i) {
      double res = std::ldexp(reqs[i].req.epsilon, -static_cast<int>(r - i + 1));
      double cap = res;
      if (udata[i]) {
        DerivativeFamily fu = reqs[i].req.fam.united(reqs[i].req.fam_k(d));
        double c = uniform_factor(cert.cuts[i], fu, udata[i]->dist, udata[i]->rho);
        cap = res / (c + 1.0);
      }
      if (cap < delta) {
        delta = cap;
        binding = "reservation of requirement '" + reqs[i].req.id + "' for stage " + std::to_string(r + 1) + " = " +
                  fmt(res) + (udata[i] ? " (uniform-center Cauchy factor applied)" : "");
      }
    }

    int t = 0;
    if (r > 0) {
      MultiIndexEnum en(d);
      t = en.at(cert.cuts[r - 1]).order() + 1;
    }
    std::int64_t prev_cut = r > 0 ? cert.cuts[r - 1] : -1;
    auto residual = target.minus(f);

    double scale = 1.0;
    int cap = cfg.caps.degree;
    int fit_cap = cfg.caps.fit_degree;
    std::optional<Failure> fail;
    bool accepted = false;
    RequirementResult result;
    result.id = req.id;
    result.epsilon = req.epsilon;
    result.i0 = rr.i0;
    result.vanish_order = t;
    for (int attempt = 0; attempt <= cfg.caps.retries && !accepted; ++attempt) {
      double eps_l = delta * scale;
      double eps_k = req.epsilon / 4 * scale;
      result.attempts = attempt + 1;
      result.smallness = eps_l;
      auto advance = [&](const std::string& why) {
        fail = Failure{req.id, r + 1, binding, why};
        scale *= 0.5;
        cap = static_cast<int>(std::ceil(cap * 1.5));
        fit_cap = static_cast<int>(std::ceil(fit_cap * 1.5));
      };
      if (eps_l < kSmallnessFloor) {
        fail = Failure{req.id, r + 1, binding,
                       "infeasible budget: required smallness " + fmt(eps_l) + " is below " + fmt(kSmallnessFloor) +
                           "; consider moving requirements with large epsilon earlier"};
        break;
      }
      auto fit = approx::ls_fit(rr.k, residual, fit_cap, fam_k, eps_k);
      result.fit_report = fit.report;
      if (!fit.report.success) {
        advance("least-squares fit failed: " + fit.report.message);
        continue;
      }
      Poly g = recenter(fit.poly, scene.center);
      approx::GlueOptions go;
      go.fam_l = fam_l;
      go.eps_l = eps_l;
      go.vanish_order = t;
      auto glued = approx::glue(g, rr.k, l_set, rr.i0, fam_k, eps_k, cap, go);
      result.glue_report = glued.report;
      if (!glued.report.success) {
        advance(glued.report.message);
        continue;
      }
      Poly f_new = f + glued.poly;
      auto cut = scene.mu.next_at_least(std::max(f_new.max_enum_index(), prev_cut + 1));
      if (!cut) {
        fail = Failure{req.id, r + 1, binding, "mu has no admissible cut beyond index " +
                                                   std::to_string(std::max(f_new.max_enum_index(), prev_cut + 1))};
        break;
      }
      // Re-verify requirements 1..r on construction grids.
      std::vector<double> nk(r + 1), nl(r + 1);
      std::vector<approx::SetError> own;
      bool ok = true;
      std::string why;
      for (std::size_t i = 0; i <= r; ++i) {
        std::int64_t lam = i < r ? cert.cuts[i] : *cut;
        const auto& ri = reqs[i];
        Poly s = f_new.truncated(lam);
        auto ek = detail::k_errors(s, ri.req.target.function(d), ri.k, ri.req.fam_k(d));
        nk[i] = max_error(ek);
        nl[i] = detail::l_seminorm(f_new.tail(lam), lsets.at(ri.req.level), ri.req.fam);
        if (i == r) own = ek;
        if (!(nk[i] < ri.req.epsilon / 2) || !(nl[i] < ri.req.epsilon / 2)) {
          ok = false;
          why = "re-verification of requirement '" + ri.req.id + "' failed (E_K " + fmt(nk[i]) + ", E_L " +
                fmt(nl[i]) + ", eps/2 " + fmt(ri.req.epsilon / 2) + ")";
        }
      }
      if (!ok) {
        advance(why);
        continue;
      }
      // Ledger for earlier requirements.
      for (std::size_t i = 0; i < r; ++i) {
        LedgerEntry le;
        le.requirement = reqs[i].req.id;
        le.stage = r + 1;
        le.allocated = std::ldexp(reqs[i].req.epsilon, -static_cast<int>(r - i + 1));
        le.consumed_bound =
            coefficient_bound(glued.poly, cert.cuts[i], reqs[i].k, reqs[i].req.fam_k(d), scene.center);
        le.measured_k = std::abs(nk[i] - err_k[i]);
        le.measured_l = detail::l_seminorm(glued.poly, lsets.at(reqs[i].req.level), reqs[i].req.fam);
        cert.ledger.push_back(le);
      }
      err_k = nk;
      err_l = nl;
      f = std::move(f_new);
      cert.cuts.push_back(*cut);
      result.cut = *cut;
      result.errors = own;
      result.error_k = nk[r];
      result.error_l = nl[r];
      accepted = true;
      fail.reset();
    }
    if (!accepted) {
      cert.f = f;
      cert.results.push_back(result);
      cert.failure = fail ? *fail : Failure{req.id, r + 1, binding, "stage failed"};
      return cert;
    }
    // Earlier results keep their stage values; the latest measurements go in the snapshot.
    for (std::size_t i = 0; i < r; ++i) {
      cert.results[i].error_k = err_k[i];
      cert.results[i].error_l = err_l[i];
    }
    cert.results.push_back(result);
    cert.snapshots.push_back(StageSnapshot{r + 1, err_k, err_l});
  }
  cert.f = f;
  return cert;
}

}  // namespace unitaylor::engine

#pragma once

#include <map>

#include "unitaylor/engine/engine.hpp"

namespace unitaylor::engine::detail {

// L_m as a product of per-factor exhaustion sets.
class ExhaustionCache {
 public:
  ExhaustionCache(const geometry::DomainScene& scene, geometry::Sampling s) : scene_(scene), s_(s) {}
  const geometry::ProductCompact& at(int m);

 private:
  const geometry::DomainScene& scene_;
  geometry::Sampling s_;
  std::map<int, geometry::ProductCompact> cache_;
};

// Radius of the largest closed disk about center_i inside L_{i,m}, per factor.
std::vector<double> budget_radii(const geometry::DomainScene& scene, int m);

// E_K entries for S against the target on K.
std::vector<approx::SetError> k_errors(const Poly& s, const approx::TargetFunction& target,
                                       const geometry::ProductCompact& k, const DerivativeFamily& fam);
double max_error(const std::vector<approx::SetError>& errs);

// seminorm(g, L, fam) on validation grids; 0 for an empty L.
double l_seminorm(const Poly& g, const geometry::ProductCompact& l, const DerivativeFamily& fam);

geometry::Sampling sampling(const GridConfig& g, double divisor = 1.0);

}  // namespace unitaylor::engine::detail

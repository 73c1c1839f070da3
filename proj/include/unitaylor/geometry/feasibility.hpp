#pragma once

#include <optional>
#include <string>

#include "unitaylor/geometry/domain.hpp"

namespace unitaylor::geometry {

struct FeasibilityResult {
  bool feasible = true;
  // S is both open and closed in the boundary.
  bool clopen = true;
  // Boundary location where openness fails.
  std::optional<std::size_t> witness_component;
  std::optional<double> witness_parameter;
  std::string reason;
};

// Decides whether an absorbing exhaustion of M = Omega u S by compacts with
// connected complement can exist: S must be open in the boundary. Arc
// endpoints marked closed, isolated points, and dense mark sets are the
// ways openness fails.
FeasibilityResult absorbing_family_check(const DomainSpec& region, const BoundaryPortion& portion);

}  // namespace unitaylor::geometry

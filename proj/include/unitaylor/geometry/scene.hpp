#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "unitaylor/geometry/compact.hpp"
#include "unitaylor/geometry/domain.hpp"

namespace unitaylor::geometry {

// Admissible cut indices mu, a subset of N.
class CutSet {
 public:
  enum class Kind { All, Residues, List };

  static CutSet all();
  static CutSet residues(std::int64_t modulus, std::vector<std::int64_t> residues);
  // Explicit increasing prefix of mu; indices beyond the last are not admissible.
  static CutSet list(std::vector<std::int64_t> values);

  Kind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& values() const { return values_; }

  bool contains(std::int64_t n) const;
  // Smallest admissible index >= n, if any.
  std::optional<std::int64_t> next_at_least(std::int64_t n) const;

 private:
  Kind kind_ = Kind::All;
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> values_;
};

struct EnumerationHorizon {
  int max_level = 4;
  int max_radius = 2;
};

struct DomainScene {
  std::vector<DomainSpec> domains;
  std::vector<BoundaryPortion> portions;
  Point center;
  CutSet mu = CutSet::all();
  // Outside compacts K_{i,j} per factor.
  std::vector<std::vector<Descriptor>> base_outside;
  EnumerationHorizon horizon;

  std::size_t dimension() const { return domains.size(); }
};

// Throws ConfigError naming the violated invariant.
void validate_scene(const DomainScene& scene, double resolution);

// Tuple (i0, j, m, s) behind an enumeration index tau (1-based, 0-based
// factor i0 and base index j stored as given in the configuration).
struct TauEntry {
  std::size_t i0 = 0;
  std::size_t j = 0;
  int m = 1;
  std::vector<int> radii;  // one per factor; the i0 entry is unused (0)
};

// All tuples in pairing order: sorted by i0 + j + m + sum(s) (1-based
// counts), ties broken lexicographically.
std::vector<TauEntry> tau_pairing(const DomainScene& scene);

// Descriptors of the product K_tau; throws HorizonExceeded when tau is
// beyond the configured horizon.
std::vector<Descriptor> enumerate_K_tau_descriptors(const DomainScene& scene, std::int64_t tau);

ProductCompact enumerate_K_tau(const DomainScene& scene, std::int64_t tau, const Sampling& s,
                               double box_margin);

// Dyadic balls and segments outside closure(Omega), deterministic order.
std::vector<Descriptor> default_outside_compacts(const DomainSpec& domain, std::size_t count);

}  // namespace unitaylor::geometry

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unitaylor/geometry/domain.hpp"

namespace unitaylor::geometry {

struct Box {
  double x0 = 0, x1 = -1, y0 = 0, y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  Box expanded(double margin) const { return {x0 - margin, x1 + margin, y0 - margin, y1 + margin}; }
  Box united(const Box& o) const;
  Box intersected(const Box& o) const;
};

class Descriptor;

struct EmptySet {};
struct Singleton {
  Complex at;
};
struct Ball {
  Complex center;
  double radius = 0.0;
};
struct Annulus {
  Complex center;
  double inner = 0.0;
  double outer = 0.0;
};
// Two vertices make a segment.
struct Polyline {
  std::vector<Complex> vertices;
};
// L_n = closure(Omega) n closed-ball(0, n) n {dist(z, boundary \ S) >= 1/n}.
struct ExhaustionCell {
  DomainSpec domain;
  BoundaryPortion portion;
  int level = 1;
};
// base n {dist(z, closure(S)) >= 1/level}.
struct Shrink {
  std::shared_ptr<const Descriptor> base;
  DomainSpec domain;
  BoundaryPortion portion;
  int level = 1;
};
struct Union {
  std::vector<Descriptor> parts;
};

// Constructive description of a planar compact; membership can be
// re-evaluated for any point.
class Descriptor {
 public:
  using Node = std::variant<EmptySet, Singleton, Ball, Annulus, Polyline, ExhaustionCell, Shrink,
                            Union>;

  Descriptor() : node_(EmptySet{}) {}
  Descriptor(Node node) : node_(std::move(node)) {}  // NOLINT

  const Node& node() const { return node_; }
  std::string kind() const;

  bool contains(Complex z, double tol = 1e-9) const;
  // Bounding box of the set (empty box for an empty set). May overestimate.
  Box bounds() const;
  // True when the set is at most one-dimensional (points and polylines).
  bool is_thin() const;

 private:
  Node node_;
};

struct Sampling {
  double fit_spacing = 0.05;
  double validation_spacing = 0.025;
};

enum class Verdict { Connected, Disconnected, Inconclusive };

struct ConnectivityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Complex> witness;
  double resolution = 0.0;
};

const char* to_string(Verdict v);

struct PlanarCompact {
  Descriptor descriptor;
  std::vector<Complex> fit_points;
  std::vector<Complex> validation_points;
  double h_grid = 0.0;
  double fit_spacing = 0.0;

  bool empty() const { return validation_points.empty(); }
  Complex centroid() const;
  double radius_about(Complex c) const;
  Box point_bounds() const;
};

struct ProductCompact {
  std::vector<PlanarCompact> factors;
  std::vector<ConnectivityCertificate> certificates;

  std::size_t dimension() const { return factors.size(); }
  bool empty() const;
};

PlanarCompact sample(const Descriptor& d, const Sampling& s);

// Resamples every factor at the given sampling and certifies complements.
ProductCompact make_product(const std::vector<Descriptor>& factors, const Sampling& s,
                            double box_margin);

PlanarCompact exhaustion_set(const DomainSpec& domain, const BoundaryPortion& portion, int n,
                             const Sampling& s);

PlanarCompact shrink_from_portion(const PlanarCompact& k, const DomainSpec& domain,
                                  const BoundaryPortion& portion, int m);

ConnectivityCertificate complement_connected(const PlanarCompact& k, double box_margin,
                                             double resolution);

// Certifies that C \ (Omega u S) is connected inside `box`; components
// meeting the box edge count as connected through infinity.
ConnectivityCertificate domain_complement_connected(const DomainSpec& domain,
                                                    const BoundaryPortion& portion, Box box,
                                                    double resolution);

}  // namespace unitaylor::geometry

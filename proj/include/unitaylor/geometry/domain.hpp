#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "unitaylor/numeric.hpp"

namespace unitaylor::geometry {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Disk {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

// {z : Re(z * conj(n)) > offset} with n = exp(i * normal_angle).
struct HalfPlane {
  double normal_angle = 0.0;
  double offset = 0.0;
};

// {z : |Im((z - center) * exp(-i * axis_angle))| < half_width}.
// Boundary component 0 is the lower line, 1 the upper line.
struct Strip {
  double axis_angle = 0.0;
  double half_width = 1.0;
  Complex center{0.0, 0.0};
};

// Interior of a simple polygon; boundary parametrized by arclength from vertex 0.
struct Polygon {
  std::vector<Complex> vertices;
};

// Parameter interval on one boundary component. Lines use t in R (from/to
// may be infinite); loops use a periodic parameter (angle for the disk,
// arclength for polygons). `full` marks the whole component.
struct Arc {
  std::size_t component = 0;
  double from = 0.0;
  double to = 0.0;
  bool full = false;
  bool closed_from = false;
  bool closed_to = false;
};

// A dense, codense mark set on a parameter interval (e.g. rational points).
struct DenseMarks {
  std::size_t component = 0;
  double from = -kInf;
  double to = kInf;
};

struct IsolatedPoint {
  std::size_t component = 0;
  double at = 0.0;
};

struct BoundaryPortion {
  std::vector<Arc> arcs;
  std::vector<IsolatedPoint> isolated;
  std::vector<DenseMarks> dense;

  bool empty() const { return arcs.empty() && isolated.empty() && dense.empty(); }
};

class DomainSpec {
 public:
  using Shape = std::variant<Disk, HalfPlane, Strip, Polygon>;

  explicit DomainSpec(Shape shape);

  const Shape& shape() const { return shape_; }
  const char* kind() const;

  // Throws ConfigError when the shape is degenerate (radius <= 0,
  // non-simple polygon, ...).
  void validate() const;

  bool contains(Complex z) const;
  bool in_closure(Complex z, double tol = 0.0) const;
  double distance_to_boundary(Complex z) const;
  // Distance to the closure of the domain (0 inside).
  double distance_to_closure(Complex z) const;

  std::size_t boundary_components() const;
  bool component_is_loop(std::size_t c) const;
  double component_period(std::size_t c) const;
  Complex boundary_point(std::size_t c, double t) const;

  // Distance from z to the closed arc [from, to] (or full component).
  double distance_to_arc(Complex z, const Arc& arc) const;

  // Bounding radius about the origin for bounded domains.
  std::optional<double> bounding_radius() const;
  // Some point of the domain (used to seed boxes).
  Complex reference_point() const;

 private:
  Shape shape_;
  std::vector<double> edge_start_;  // polygons: cumulative arclength
  double perimeter_ = 0.0;
};

// Throws ConfigError unless every arc is on the boundary, arcs are pairwise
// disjoint, open, and there are no isolated or dense marks.
void validate_portion(const DomainSpec& domain, const BoundaryPortion& portion);

// dist(z, closure(S)); +inf when S is empty.
double distance_to_portion_closure(const DomainSpec& domain, const BoundaryPortion& portion,
                                   Complex z);

// Closed arcs covering boundary(Omega) \ S.
std::vector<Arc> unmarked_boundary(const DomainSpec& domain, const BoundaryPortion& portion);

// dist(z, boundary(Omega) \ S); +inf when S is the whole boundary.
double distance_to_unmarked_boundary(const DomainSpec& domain, const BoundaryPortion& portion,
                                     Complex z);

// z in Omega u S (S taken as open arcs).
bool in_domain_or_portion(const DomainSpec& domain, const BoundaryPortion& portion, Complex z,
                          double tol);

}  // namespace unitaylor::geometry

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "unitaylor/approx/expression.hpp"
#include "unitaylor/polyalg/poly.hpp"

namespace unitaylor::approx {

// A target h for approximation. Expressions are differentiated with the
// Cauchy integral formula (trapezoid rule on a small circle), polynomials
// symbolically.
class TargetFunction {
 public:
  static TargetFunction polynomial(Poly p);
  static TargetFunction expression(Expression e, double cauchy_radius = 0.05, int cauchy_nodes = 32);
  // Nearest-neighbour lookup in a table; values only.
  static TargetFunction sampled(std::vector<Point> points, std::vector<Complex> values);

  // h - p.
  TargetFunction minus(const Poly& p) const;

  std::size_t dimension() const;
  std::string describe() const;
  bool holomorphic() const;

  std::vector<HiComplex> values(const std::vector<Point>& points) const;
  std::vector<HiComplex> derivative_values(const std::vector<Point>& points,
                                           const MultiIndex& alpha) const;

  struct Impl;

 private:
  explicit TargetFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace unitaylor::approx

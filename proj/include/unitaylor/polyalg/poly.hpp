#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "unitaylor/geometry/compact.hpp"
#include "unitaylor/numeric.hpp"
#include "unitaylor/polyalg/multi_index.hpp"

namespace unitaylor {

// Sparse polynomial sum_alpha a_alpha (z - center)^alpha. Only exact zeros
// are dropped; tiny high-degree coefficients are meaningful.
class Poly {
 public:
  using Terms = std::map<MultiIndex, HiComplex, GradedLexLess>;

  Poly() = default;
  explicit Poly(Point center);

  static Poly constant(Point center, const HiComplex& value);
  static Poly monomial(Point center, const MultiIndex& alpha, const HiComplex& coeff = HiComplex(1));
  // (z_var - center_var)^k.
  static Poly power(Point center, std::size_t var, int k);

  std::size_t dimension() const { return center_.size(); }
  const Point& center() const { return center_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  HiComplex coefficient(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, const HiComplex& value);
  void add(const MultiIndex& alpha, const HiComplex& value);

  // Largest enumeration index with a nonzero coefficient; -1 for zero.
  std::int64_t max_enum_index() const;
  int degree() const;
  int degree_in(std::size_t var) const;

  HiComplex evaluate_hi(std::span<const HiComplex> z) const;
  Complex operator()(const Point& z) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const HiComplex& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  // Keeps the terms with enumeration index <= n (same center).
  Poly truncated(std::int64_t n) const;
  // Keeps the terms with enumeration index > n.
  Poly tail(std::int64_t n) const;

  bool operator==(const Poly& o) const;

 private:
  Point center_;
  Terms terms_;
};

Complex eval(const Poly& f, const Point& z);
Poly derivative(const Poly& f, const MultiIndex& alpha);
Poly recenter(const Poly& f, const Point& zeta_new);
Poly partial_sum(const Poly& f, const Point& zeta, std::int64_t n);
double cauchy_bound(double sup_value, double rho, const MultiIndex& alpha);

// Values of f on the product grid factor_points[0] x ... x factor_points[d-1],
// first factor slowest.
std::vector<HiComplex> evaluate_on_product(const Poly& f,
                                           const std::vector<std::vector<Complex>>& factor_points);

// max over D_alpha in fam of max over validation points of |D_alpha f|.
double seminorm(const Poly& f, const geometry::ProductCompact& k, const DerivativeFamily& fam);

// Same, over an explicit point grid per factor.
double seminorm_on(const Poly& f, const std::vector<std::vector<Complex>>& factor_points,
                   const DerivativeFamily& fam);

std::vector<std::vector<Complex>> validation_grids(const geometry::ProductCompact& k);
std::vector<std::vector<Complex>> fit_grids(const geometry::ProductCompact& k);

// Cartesian product points in the order used by evaluate_on_product.
std::vector<Point> product_points(const std::vector<std::vector<Complex>>& factor_points);

}  // namespace unitaylor

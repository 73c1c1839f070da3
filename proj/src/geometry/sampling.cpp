#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "unitaylor/errors.hpp"
#include "unitaylor/geometry/compact.hpp"

namespace unitaylor::geometry {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using Predicate = std::function<bool(Complex)>;

// Keeps insertion order, drops exact duplicates.
class PointSet {
 public:
  void add(Complex z) {
    if (seen_.insert({z.real(), z.imag()}).second) points_.push_back(z);
  }
  void add_all(const std::vector<Complex>& zs) {
    for (auto z : zs) add(z);
  }
  std::vector<Complex> take() { return std::move(points_); }

 private:
  std::set<std::pair<double, double>> seen_;
  std::vector<Complex> points_;
};

Complex bisect(const Predicate& inside, Complex in, Complex out) {
  for (int it = 0; it < 40; ++it) {
    Complex mid = 0.5 * (in + out);
    if (inside(mid))
      in = mid;
    else
      out = mid;
  }
  return in;
}

// Lattice h*Z^2 over the box (one extra node each side), plus boundary
// points found by bisection along lattice edges where membership flips.
void sample_region(const Predicate& inside, Box box, double h, PointSet& out) {
  if (box.empty() || !(h > 0)) return;
  long i0 = static_cast<long>(std::floor(box.x0 / h)) - 1;
  long i1 = static_cast<long>(std::ceil(box.x1 / h)) + 1;
  long j0 = static_cast<long>(std::floor(box.y0 / h)) - 1;
  long j1 = static_cast<long>(std::ceil(box.y1 / h)) + 1;
  long nx = i1 - i0 + 1;
  long ny = j1 - j0 + 1;
  if (nx * ny > 40'000'000L) throw PreconditionError("sampling grid too large; raise the spacing");
  std::vector<char> flag(static_cast<std::size_t>(nx * ny));
  auto node = [&](long i, long j) { return Complex(static_cast<double>(i) * h, static_cast<double>(j) * h); };
  for (long j = j0; j <= j1; ++j)
    for (long i = i0; i <= i1; ++i)
      flag[static_cast<std::size_t>((j - j0) * nx + (i - i0))] = inside(node(i, j)) ? 1 : 0;
  auto at = [&](long i, long j) { return flag[static_cast<std::size_t>((j - j0) * nx + (i - i0))]; };
  for (long j = j0; j <= j1; ++j)
    for (long i = i0; i <= i1; ++i)
      if (at(i, j)) out.add(node(i, j));
  for (long j = j0; j <= j1; ++j) {
    for (long i = i0; i <= i1; ++i) {
      if (i < i1 && at(i, j) != at(i + 1, j)) {
        Complex a = node(i, j), b = node(i + 1, j);
        out.add(at(i, j) ? bisect(inside, a, b) : bisect(inside, b, a));
      }
      if (j < j1 && at(i, j) != at(i, j + 1)) {
        Complex a = node(i, j), b = node(i, j + 1);
        out.add(at(i, j) ? bisect(inside, a, b) : bisect(inside, b, a));
      }
    }
  }
}

void sample_circle(Complex c, double r, double h, PointSet& out) {
  if (r <= 0) {
    out.add(c);
    return;
  }
  std::size_t n = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(2 * std::numbers::pi * r / (0.5 * h))));
  for (std::size_t k = 0; k < n; ++k)
    out.add(c + std::polar(r, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
}

std::vector<Complex> sample_polyline(const std::vector<Complex>& v, double h) {
  std::vector<Complex> pts;
  if (v.empty()) return pts;
  pts.push_back(v[0]);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double len = std::abs(v[i + 1] - v[i]);
    std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / h)));
    for (std::size_t k = 1; k <= n; ++k)
      pts.push_back(v[i] + (v[i + 1] - v[i]) * (static_cast<double>(k) / static_cast<double>(n)));
  }
  return pts;
}

std::vector<Complex> sample_points(const Descriptor& d, double h);

std::vector<Complex> sample_shrink(const Shrink& s, double h) {
  Predicate keep = [&](Complex z) {
    return distance_to_portion_closure(s.domain, s.portion, z) >= 1.0 / s.level;
  };
  Predicate inside = [&](Complex z) { return s.base->contains(z, 0.0) && keep(z); };
  PointSet out;
  std::vector<Complex> base = sample_points(*s.base, h);
  if (s.base->is_thin()) {
    // Walk consecutive base samples and bisect where the filter flips.
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (keep(base[i])) out.add(base[i]);
      if (i + 1 < base.size() && std::abs(base[i + 1] - base[i]) <= 1.5 * h &&
          keep(base[i]) != keep(base[i + 1])) {
        Predicate seg_keep = keep;
        out.add(keep(base[i]) ? bisect(seg_keep, base[i], base[i + 1])
                              : bisect(seg_keep, base[i + 1], base[i]));
      }
    }
  } else {
    sample_region(inside, s.base->bounds(), h, out);
    for (auto z : base)
      if (keep(z)) out.add(z);
  }
  return out.take();
}

std::vector<Complex> sample_points(const Descriptor& d, double h) {
  return std::visit(
      Overloaded{
          [](const EmptySet&) { return std::vector<Complex>{}; },
          [](const Singleton& s) { return std::vector<Complex>{s.at}; },
          [&](const Ball& b) {
            PointSet out;
            if (b.radius > 0) {
              sample_region([&](Complex z) { return std::abs(z - b.center) <= b.radius; },
                            d.bounds(), h, out);
            }
            sample_circle(b.center, b.radius, h, out);
            return out.take();
          },
          [&](const Annulus& a) {
            PointSet out;
            sample_region(
                [&](Complex z) {
                  double r = std::abs(z - a.center);
                  return r >= a.inner && r <= a.outer;
                },
                d.bounds(), h, out);
            sample_circle(a.center, a.outer, h, out);
            sample_circle(a.center, a.inner, h, out);
            return out.take();
          },
          [&](const Polyline& p) { return sample_polyline(p.vertices, h); },
          [&](const ExhaustionCell&) {
            PointSet out;
            sample_region([&](Complex z) { return d.contains(z, 0.0); }, d.bounds(), h, out);
            return out.take();
          },
          [&](const Shrink& s) { return sample_shrink(s, h); },
          [&](const Union& u) {
            PointSet out;
            for (const auto& part : u.parts) out.add_all(sample_points(part, h));
            return out.take();
          }},
      d.node());
}

}  // namespace

PlanarCompact sample(const Descriptor& d, const Sampling& s) {
  if (!(s.fit_spacing > 0) || !(s.validation_spacing > 0))
    throw PreconditionError("sampling spacings must be positive");
  PlanarCompact k;
  k.descriptor = d;
  k.h_grid = s.validation_spacing;
  k.fit_spacing = s.fit_spacing;
  k.validation_points = sample_points(d, s.validation_spacing);
  if (!k.validation_points.empty()) {
    k.fit_points = sample_points(d, s.fit_spacing);
    if (k.fit_points.empty()) k.fit_points = k.validation_points;
  }
  return k;
}

double certificate_resolution(const PlanarCompact& k) {
  Box b = k.point_bounds();
  double extent = b.empty() ? 0.0 : std::max(b.x1 - b.x0, b.y1 - b.y0);
  return std::max(2.0 * k.h_grid, extent / 300.0);
}

ProductCompact make_product(const std::vector<Descriptor>& factors, const Sampling& s,
                            double box_margin) {
  ProductCompact out;
  for (const auto& d : factors) {
    PlanarCompact k = sample(d, s);
    out.certificates.push_back(complement_connected(k, box_margin, certificate_resolution(k)));
    out.factors.push_back(std::move(k));
  }
  return out;
}

PlanarCompact exhaustion_set(const DomainSpec& domain, const BoundaryPortion& portion, int n,
                             const Sampling& s) {
  if (n < 1) throw PreconditionError("exhaustion level must be >= 1");
  return sample(Descriptor(ExhaustionCell{domain, portion, n}), s);
}

PlanarCompact shrink_from_portion(const PlanarCompact& k, const DomainSpec& domain,
                                  const BoundaryPortion& portion, int m) {
  if (m < 1) throw PreconditionError("shrink level must be >= 1");
  auto base = std::make_shared<const Descriptor>(k.descriptor);
  Descriptor d(Shrink{base, domain, portion, m});
  return sample(d, Sampling{k.fit_spacing > 0 ? k.fit_spacing : k.h_grid, k.h_grid});
}

}  // namespace unitaylor::geometry

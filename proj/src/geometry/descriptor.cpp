#include <algorithm>
#include <cmath>

#include "unitaylor/geometry/compact.hpp"

namespace unitaylor::geometry {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double segment_distance(Complex z, Complex a, Complex b) {
  Complex d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

Box domain_box(const DomainSpec& domain) {
  if (auto d = std::get_if<Disk>(&domain.shape())) {
    return {d->center.real() - d->radius, d->center.real() + d->radius,
            d->center.imag() - d->radius, d->center.imag() + d->radius};
  }
  if (auto p = std::get_if<Polygon>(&domain.shape())) {
    Box b{kInf, -kInf, kInf, -kInf};
    for (auto v : p->vertices) {
      b.x0 = std::min(b.x0, v.real());
      b.x1 = std::max(b.x1, v.real());
      b.y0 = std::min(b.y0, v.imag());
      b.y1 = std::max(b.y1, v.imag());
    }
    return b;
  }
  return {-kInf, kInf, -kInf, kInf};
}

}  // namespace

Box Box::united(const Box& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  return {std::min(x0, o.x0), std::max(x1, o.x1), std::min(y0, o.y0), std::max(y1, o.y1)};
}

Box Box::intersected(const Box& o) const {
  return {std::max(x0, o.x0), std::min(x1, o.x1), std::max(y0, o.y0), std::min(y1, o.y1)};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Connected:
      return "connected";
    case Verdict::Disconnected:
      return "disconnected";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string Descriptor::kind() const {
  return std::visit(Overloaded{[](const EmptySet&) { return "empty"; },
                               [](const Singleton&) { return "point"; },
                               [](const Ball&) { return "ball"; },
                               [](const Annulus&) { return "annulus"; },
                               [](const Polyline& p) {
                                 return p.vertices.size() == 2 ? "segment" : "polyline";
                               },
                               [](const ExhaustionCell&) { return "exhaustion"; },
                               [](const Shrink&) { return "shrink"; },
                               [](const Union&) { return "union"; }},
                    node_);
}

bool Descriptor::contains(Complex z, double tol) const {
  return std::visit(
      Overloaded{
          [](const EmptySet&) { return false; },
          [&](const Singleton& s) { return std::abs(z - s.at) <= tol; },
          [&](const Ball& b) { return std::abs(z - b.center) <= b.radius + tol; },
          [&](const Annulus& a) {
            double r = std::abs(z - a.center);
            return r >= a.inner - tol && r <= a.outer + tol;
          },
          [&](const Polyline& p) {
            if (p.vertices.size() == 1) return std::abs(z - p.vertices[0]) <= tol;
            for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
              if (segment_distance(z, p.vertices[i], p.vertices[i + 1]) <= tol) return true;
            return false;
          },
          [&](const ExhaustionCell& e) {
            double n = e.level;
            return e.domain.distance_to_closure(z) <= tol && std::abs(z) <= n + tol &&
                   distance_to_unmarked_boundary(e.domain, e.portion, z) >= 1.0 / n - tol;
          },
          [&](const Shrink& s) {
            return s.base->contains(z, tol) &&
                   distance_to_portion_closure(s.domain, s.portion, z) >= 1.0 / s.level - tol;
          },
          [&](const Union& u) {
            return std::any_of(u.parts.begin(), u.parts.end(),
                               [&](const Descriptor& d) { return d.contains(z, tol); });
          }},
      node_);
}

Box Descriptor::bounds() const {
  return std::visit(
      Overloaded{[](const EmptySet&) { return Box{}; },
                 [](const Singleton& s) {
                   return Box{s.at.real(), s.at.real(), s.at.imag(), s.at.imag()};
                 },
                 [](const Ball& b) {
                   return Box{b.center.real() - b.radius, b.center.real() + b.radius,
                              b.center.imag() - b.radius, b.center.imag() + b.radius};
                 },
                 [](const Annulus& a) {
                   return Box{a.center.real() - a.outer, a.center.real() + a.outer,
                              a.center.imag() - a.outer, a.center.imag() + a.outer};
                 },
                 [](const Polyline& p) {
                   Box b{kInf, -kInf, kInf, -kInf};
                   for (auto v : p.vertices) {
                     b.x0 = std::min(b.x0, v.real());
                     b.x1 = std::max(b.x1, v.real());
                     b.y0 = std::min(b.y0, v.imag());
                     b.y1 = std::max(b.y1, v.imag());
                   }
                   return b;
                 },
                 [](const ExhaustionCell& e) {
                   double n = e.level;
                   return domain_box(e.domain).intersected(Box{-n, n, -n, n});
                 },
                 [](const Shrink& s) { return s.base->bounds(); },
                 [](const Union& u) {
                   Box b;
                   for (const auto& d : u.parts) b = b.united(d.bounds());
                   return b;
                 }},
      node_);
}

bool Descriptor::is_thin() const {
  return std::visit(Overloaded{[](const EmptySet&) { return true; },
                               [](const Singleton&) { return true; },
                               [](const Ball& b) { return b.radius == 0.0; },
                               [](const Annulus&) { return false; },
                               [](const Polyline&) { return true; },
                               [](const ExhaustionCell&) { return false; },
                               [](const Shrink& s) { return s.base->is_thin(); },
                               [](const Union& u) {
                                 return std::all_of(u.parts.begin(), u.parts.end(),
                                                    [](const Descriptor& d) { return d.is_thin(); });
                               }},
                    node_);
}

Complex PlanarCompact::centroid() const {
  const auto& pts = fit_points.empty() ? validation_points : fit_points;
  if (pts.empty()) return {};
  Complex s{};
  for (auto p : pts) s += p;
  return s / static_cast<double>(pts.size());
}

double PlanarCompact::radius_about(Complex c) const {
  double r = 0.0;
  for (auto p : validation_points) r = std::max(r, std::abs(p - c));
  for (auto p : fit_points) r = std::max(r, std::abs(p - c));
  return r;
}

Box PlanarCompact::point_bounds() const {
  Box b;
  for (auto p : validation_points) b = b.united(Box{p.real(), p.real(), p.imag(), p.imag()});
  return b;
}

bool ProductCompact::empty() const {
  if (factors.empty()) return true;
  return std::any_of(factors.begin(), factors.end(),
                     [](const PlanarCompact& k) { return k.empty(); });
}

}  // namespace unitaylor::geometry

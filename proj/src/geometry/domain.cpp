#include "unitaylor/geometry/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "unitaylor/errors.hpp"

namespace unitaylor::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

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

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  double d1 = cross(p2 - p1, q1 - p1);
  double d2 = cross(p2 - p1, q2 - p1);
  double d3 = cross(q2 - q1, p1 - q1);
  double d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_seg = [](Complex a, Complex b, Complex p) {
    return std::abs(cross(b - a, p - a)) <= 1e-14 * (1 + std::abs(b - a)) &&
           std::min(a.real(), b.real()) - 1e-14 <= p.real() &&
           p.real() <= std::max(a.real(), b.real()) + 1e-14 &&
           std::min(a.imag(), b.imag()) - 1e-14 <= p.imag() &&
           p.imag() <= std::max(a.imag(), b.imag()) + 1e-14;
  };
  return on_seg(p1, p2, q1) || on_seg(p1, p2, q2) || on_seg(q1, q2, p1) || on_seg(q1, q2, p2);
}

Complex half_plane_normal(const HalfPlane& h) { return std::polar(1.0, h.normal_angle); }
Complex half_plane_tangent(const HalfPlane& h) { return Complex(0, -1) * half_plane_normal(h); }

Complex strip_local(const Strip& s, Complex z) {
  return (z - s.center) * std::polar(1.0, -s.axis_angle);
}

bool arc_is_full(const DomainSpec& d, const Arc& a) {
  if (a.full) return true;
  if (d.component_is_loop(a.component)) return a.to - a.from >= d.component_period(a.component);
  return std::isinf(a.from) && std::isinf(a.to);
}

double wrap(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0) r += period;
  return r;
}

double line_parameter(const DomainSpec::Shape& shape, std::size_t c, Complex z) {
  if (auto h = std::get_if<HalfPlane>(&shape)) {
    return (z * std::conj(half_plane_tangent(*h))).real();
  }
  const auto& s = std::get<Strip>(shape);
  (void)c;
  return strip_local(s, z).real();
}

}  // namespace

DomainSpec::DomainSpec(Shape shape) : shape_(std::move(shape)) {
  if (auto p = std::get_if<Polygon>(&shape_)) {
    double acc = 0.0;
    const auto& v = p->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      edge_start_.push_back(acc);
      acc += std::abs(v[(i + 1) % v.size()] - v[i]);
    }
    perimeter_ = acc;
  }
}

const char* DomainSpec::kind() const {
  return std::visit(Overloaded{[](const Disk&) { return "disk"; },
                               [](const HalfPlane&) { return "half_plane"; },
                               [](const Strip&) { return "strip"; },
                               [](const Polygon&) { return "polygon"; }},
                    shape_);
}

void DomainSpec::validate() const {
  std::visit(
      Overloaded{
          [](const Disk& d) {
            if (!(d.radius > 0) || !std::isfinite(d.radius))
              throw ConfigError("disk radius must be positive and finite");
          },
          [](const HalfPlane& h) {
            if (!std::isfinite(h.normal_angle) || !std::isfinite(h.offset))
              throw ConfigError("half-plane parameters must be finite");
          },
          [](const Strip& s) {
            if (!(s.half_width > 0) || !std::isfinite(s.half_width))
              throw ConfigError("strip half-width must be positive and finite");
          },
          [](const Polygon& p) {
            const auto& v = p.vertices;
            std::size_t n = v.size();
            if (n < 3) throw ConfigError("polygon needs at least 3 vertices");
            double area2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) area2 += cross(v[i], v[(i + 1) % n]);
            if (std::abs(area2) < 1e-12) throw ConfigError("polygon has zero area");
            for (std::size_t i = 0; i < n; ++i) {
              if (std::abs(v[(i + 1) % n] - v[i]) == 0.0)
                throw ConfigError("polygon has repeated vertices");
              for (std::size_t j = i + 1; j < n; ++j) {
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent) continue;
                if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                  throw ConfigError("polygon is not simple");
              }
            }
          }},
      shape_);
}

bool DomainSpec::contains(Complex z) const {
  return std::visit(
      Overloaded{[&](const Disk& d) { return std::abs(z - d.center) < d.radius; },
                 [&](const HalfPlane& h) {
                   return (z * std::conj(half_plane_normal(h))).real() > h.offset;
                 },
                 [&](const Strip& s) { return std::abs(strip_local(s, z).imag()) < s.half_width; },
                 [&](const Polygon& p) {
                   const auto& v = p.vertices;
                   bool inside = false;
                   for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
                     if ((v[i].imag() > z.imag()) != (v[j].imag() > z.imag())) {
                       double x = (v[j].real() - v[i].real()) * (z.imag() - v[i].imag()) /
                                      (v[j].imag() - v[i].imag()) +
                                  v[i].real();
                       if (z.real() < x) inside = !inside;
                     }
                   }
                   return inside && distance_to_boundary(z) > 0.0;
                 }},
      shape_);
}

bool DomainSpec::in_closure(Complex z, double tol) const {
  return distance_to_closure(z) <= tol;
}

double DomainSpec::distance_to_boundary(Complex z) const {
  return std::visit(
      Overloaded{[&](const Disk& d) { return std::abs(std::abs(z - d.center) - d.radius); },
                 [&](const HalfPlane& h) {
                   return std::abs((z * std::conj(half_plane_normal(h))).real() - h.offset);
                 },
                 [&](const Strip& s) {
                   return std::abs(std::abs(strip_local(s, z).imag()) - s.half_width);
                 },
                 [&](const Polygon& p) {
                   double best = kInf;
                   const auto& v = p.vertices;
                   for (std::size_t i = 0; i < v.size(); ++i)
                     best = std::min(best, segment_distance(z, v[i], v[(i + 1) % v.size()]));
                   return best;
                 }},
      shape_);
}

double DomainSpec::distance_to_closure(Complex z) const {
  return std::visit(
      Overloaded{[&](const Disk& d) { return std::max(0.0, std::abs(z - d.center) - d.radius); },
                 [&](const HalfPlane& h) {
                   return std::max(0.0, h.offset - (z * std::conj(half_plane_normal(h))).real());
                 },
                 [&](const Strip& s) {
                   return std::max(0.0, std::abs(strip_local(s, z).imag()) - s.half_width);
                 },
                 [&](const Polygon&) { return contains(z) ? 0.0 : distance_to_boundary(z); }},
      shape_);
}

std::size_t DomainSpec::boundary_components() const {
  return std::holds_alternative<Strip>(shape_) ? 2 : 1;
}

bool DomainSpec::component_is_loop(std::size_t) const {
  return std::holds_alternative<Disk>(shape_) || std::holds_alternative<Polygon>(shape_);
}

double DomainSpec::component_period(std::size_t) const {
  if (std::holds_alternative<Disk>(shape_)) return kTwoPi;
  if (std::holds_alternative<Polygon>(shape_)) return perimeter_;
  return kInf;
}

Complex DomainSpec::boundary_point(std::size_t c, double t) const {
  return std::visit(
      Overloaded{[&](const Disk& d) { return d.center + std::polar(d.radius, t); },
                 [&](const HalfPlane& h) {
                   return h.offset * half_plane_normal(h) + t * half_plane_tangent(h);
                 },
                 [&](const Strip& s) {
                   double y = c == 0 ? -s.half_width : s.half_width;
                   return s.center + Complex(t, y) * std::polar(1.0, s.axis_angle);
                 },
                 [&](const Polygon& p) {
                   const auto& v = p.vertices;
                   double s = wrap(t, perimeter_);
                   auto it = std::upper_bound(edge_start_.begin(), edge_start_.end(), s);
                   std::size_t e = static_cast<std::size_t>(it - edge_start_.begin()) - 1;
                   Complex a = v[e];
                   Complex b = v[(e + 1) % v.size()];
                   double len = std::abs(b - a);
                   return a + (b - a) * ((s - edge_start_[e]) / len);
                 }},
      shape_);
}

double DomainSpec::distance_to_arc(Complex z, const Arc& arc) const {
  if (arc.component >= boundary_components()) throw PreconditionError("arc component out of range");
  bool full = arc_is_full(*this, arc);
  if (auto d = std::get_if<Disk>(&shape_)) {
    double rad = std::abs(z - d->center);
    if (full) return std::abs(rad - d->radius);
    if (rad == 0.0) return d->radius;
    double theta = std::arg(z - d->center);
    double start = wrap(arc.from, kTwoPi);
    double rel = wrap(theta - start, kTwoPi);
    if (rel <= arc.to - arc.from) return std::abs(rad - d->radius);
    return std::min(std::abs(z - boundary_point(0, arc.from)),
                    std::abs(z - boundary_point(0, arc.to)));
  }
  if (auto p = std::get_if<Polygon>(&shape_)) {
    const auto& v = p->vertices;
    if (full) return distance_to_boundary(z);
    double a = wrap(arc.from, perimeter_);
    double b = a + (arc.to - arc.from);
    std::vector<std::pair<double, double>> pieces;
    if (b <= perimeter_) {
      pieces.emplace_back(a, b);
    } else {
      pieces.emplace_back(a, perimeter_);
      pieces.emplace_back(0.0, b - perimeter_);
    }
    double best = kInf;
    for (auto [s0, s1] : pieces) {
      for (std::size_t e = 0; e < v.size(); ++e) {
        double e0 = edge_start_[e];
        double e1 = e + 1 < v.size() ? edge_start_[e + 1] : perimeter_;
        double lo = std::max(s0, e0);
        double hi = std::min(s1, e1);
        if (lo > hi) continue;
        Complex pa = v[e];
        Complex pb = v[(e + 1) % v.size()];
        double len = e1 - e0;
        Complex qa = pa + (pb - pa) * ((lo - e0) / len);
        Complex qb = pa + (pb - pa) * ((hi - e0) / len);
        best = std::min(best, segment_distance(z, qa, qb));
      }
    }
    return best;
  }
  double t = line_parameter(shape_, arc.component, z);
  double ts = full ? t : std::clamp(t, arc.from, arc.to);
  return std::abs(z - boundary_point(arc.component, ts));
}

std::optional<double> DomainSpec::bounding_radius() const {
  if (auto d = std::get_if<Disk>(&shape_)) return std::abs(d->center) + d->radius;
  if (auto p = std::get_if<Polygon>(&shape_)) {
    double r = 0.0;
    for (auto v : p->vertices) r = std::max(r, std::abs(v));
    return r;
  }
  return std::nullopt;
}

Complex DomainSpec::reference_point() const {
  return std::visit(
      Overloaded{[](const Disk& d) { return d.center; },
                 [](const HalfPlane& h) { return (h.offset + 1.0) * half_plane_normal(h); },
                 [](const Strip& s) { return s.center; },
                 [this](const Polygon& p) {
                   // Probe points just inside each edge midpoint.
                   const auto& v = p.vertices;
                   for (std::size_t i = 0; i < v.size(); ++i) {
                     Complex a = v[i];
                     Complex b = v[(i + 1) % v.size()];
                     Complex m = 0.5 * (a + b);
                     Complex nrm = Complex(0, 1) * (b - a) / std::abs(b - a);
                     for (double s : {1e-3, 1e-2, 1e-1}) {
                       double len = std::abs(b - a);
                       if (contains(m + s * len * nrm)) return m + s * len * nrm;
                       if (contains(m - s * len * nrm)) return m - s * len * nrm;
                     }
                   }
                   return v[0];
                 }},
      shape_);
}

void validate_portion(const DomainSpec& domain, const BoundaryPortion& portion) {
  if (!portion.isolated.empty())
    throw ConfigError("boundary portion has isolated points; S must be open in the boundary");
  if (!portion.dense.empty())
    throw ConfigError("boundary portion has dense marks; S must be a finite union of open arcs");
  const auto& arcs = portion.arcs;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.component >= domain.boundary_components()) {
      std::ostringstream msg;
      msg << "arc " << i << " names boundary component " << a.component << " but the "
          << domain.kind() << " has " << domain.boundary_components();
      throw ConfigError(msg.str());
    }
    if (a.closed_from || a.closed_to) throw ConfigError("arcs of S must be open intervals");
    if (!a.full && !(a.from < a.to)) throw ConfigError("arc needs from < to");
    if (domain.component_is_loop(a.component) && !a.full &&
        (std::isinf(a.from) || std::isinf(a.to)))
      throw ConfigError("arcs on closed boundary curves need finite parameters");
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const Arc& a = arcs[i];
      const Arc& b = arcs[j];
      if (a.component != b.component) continue;
      bool overlap = false;
      if (arc_is_full(domain, a) || arc_is_full(domain, b)) {
        overlap = true;
      } else if (domain.component_is_loop(a.component)) {
        double period = domain.component_period(a.component);
        double a0 = wrap(a.from, period);
        double la = a.to - a.from;
        double b0 = a0 + wrap(b.from - a0, period);
        double lb = b.to - b.from;
        overlap = b0 < a0 + la || b0 + lb > a0 + period;
      } else {
        overlap = std::max(a.from, b.from) < std::min(a.to, b.to);
      }
      if (overlap) throw ConfigError("arcs of S must be pairwise disjoint");
    }
  }
}

double distance_to_portion_closure(const DomainSpec& domain, const BoundaryPortion& portion,
                                   Complex z) {
  double best = kInf;
  for (const auto& a : portion.arcs) best = std::min(best, domain.distance_to_arc(z, a));
  return best;
}

std::vector<Arc> unmarked_boundary(const DomainSpec& domain, const BoundaryPortion& portion) {
  std::vector<Arc> out;
  for (std::size_t c = 0; c < domain.boundary_components(); ++c) {
    std::vector<std::pair<double, double>> spans;
    bool covered = false;
    bool loop = domain.component_is_loop(c);
    double period = domain.component_period(c);
    for (const auto& a : portion.arcs) {
      if (a.component != c) continue;
      if (arc_is_full(domain, a)) {
        covered = true;
        break;
      }
      if (loop) {
        double s = wrap(a.from, period);
        spans.emplace_back(s, s + (a.to - a.from));
      } else {
        spans.emplace_back(a.from, a.to);
      }
    }
    if (covered) continue;
    if (spans.empty()) {
      out.push_back(Arc{c, loop ? 0.0 : -kInf, loop ? period : kInf, true});
      continue;
    }
    std::sort(spans.begin(), spans.end());
    if (loop) {
      for (std::size_t k = 0; k < spans.size(); ++k) {
        double start = spans[k].second;
        double end = k + 1 < spans.size() ? spans[k + 1].first : spans[0].first + period;
        out.push_back(Arc{c, start, end});
      }
    } else {
      if (std::isfinite(spans.front().first))
        out.push_back(Arc{c, -kInf, spans.front().first});
      for (std::size_t k = 0; k + 1 < spans.size(); ++k)
        out.push_back(Arc{c, spans[k].second, spans[k + 1].first});
      if (std::isfinite(spans.back().second)) out.push_back(Arc{c, spans.back().second, kInf});
    }
  }
  return out;
}

double distance_to_unmarked_boundary(const DomainSpec& domain, const BoundaryPortion& portion,
                                     Complex z) {
  double best = kInf;
  for (const auto& a : unmarked_boundary(domain, portion))
    best = std::min(best, domain.distance_to_arc(z, a));
  return best;
}

bool in_domain_or_portion(const DomainSpec& domain, const BoundaryPortion& portion, Complex z,
                          double tol) {
  if (domain.contains(z)) return true;
  if (domain.distance_to_boundary(z) > tol) return false;
  return distance_to_portion_closure(domain, portion, z) <= tol &&
         distance_to_unmarked_boundary(domain, portion, z) > 0.0;
}

}  // namespace unitaylor::geometry

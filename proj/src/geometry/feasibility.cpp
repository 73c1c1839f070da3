#include "unitaylor/geometry/feasibility.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace unitaylor::geometry {

namespace {

struct Span {
  double from, to;
  bool closed_from, closed_to;
  bool full;
};

double wrap(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0) r += period;
  return r;
}

// Does the span (shifted by multiples of the period on loops) contain p,
// and a one-sided neighbourhood of p?
struct SideCover {
  bool point = false, left = false, right = false;
};

SideCover cover(const Span& s, double p, bool loop, double period) {
  SideCover c;
  if (s.full) return {true, true, true};
  std::vector<double> shifts{0.0};
  if (loop) shifts = {-period, 0.0, period};
  for (double sh : shifts) {
    double a = s.from + sh, b = s.to + sh;
    bool in = (a < p && p < b) || (p == a && s.closed_from) || (p == b && s.closed_to);
    c.point = c.point || in;
    c.left = c.left || (a < p && p <= b);
    c.right = c.right || (a <= p && p < b);
  }
  return c;
}

}  // namespace

FeasibilityResult absorbing_family_check(const DomainSpec& region, const BoundaryPortion& portion) {
  FeasibilityResult out;
  auto fail = [&](std::size_t comp, double t, const std::string& why) {
    if (!out.feasible) return;
    out.feasible = false;
    out.witness_component = comp;
    out.witness_parameter = t;
    out.reason = why;
  };

  for (const auto& d : portion.dense) {
    double t = 0.0;
    if (std::isfinite(d.from) && std::isfinite(d.to))
      t = 0.5 * (d.from + d.to);
    else if (std::isfinite(d.from))
      t = std::ceil(d.from) + 1.0;
    else if (std::isfinite(d.to))
      t = std::floor(d.to) - 1.0;
    fail(d.component, t, "dense mark set: no point of S has a boundary neighbourhood inside S");
  }

  for (std::size_t c = 0; c < region.boundary_components(); ++c) {
    bool loop = region.component_is_loop(c);
    double period = region.component_period(c);
    std::vector<Span> spans;
    for (const auto& a : portion.arcs) {
      if (a.component != c) continue;
      bool full = a.full || (loop ? a.to - a.from >= period : std::isinf(a.from) && std::isinf(a.to));
      double from = loop && !full ? wrap(a.from, period) : a.from;
      double to = loop && !full ? from + (a.to - a.from) : a.to;
      spans.push_back({from, to, a.closed_from, a.closed_to, full});
    }
    for (const auto& p : portion.isolated)
      if (p.component == c) {
        double t = loop ? wrap(p.at, period) : p.at;
        spans.push_back({t, t, true, true, false});
      }

    // Every point of S that is a closed endpoint must be interior to the union.
    for (const auto& s : spans) {
      for (int side = 0; side < 2; ++side) {
        bool closed = side == 0 ? s.closed_from : s.closed_to;
        if (!closed || s.full) continue;
        double p = side == 0 ? s.from : s.to;
        SideCover total;
        for (const auto& o : spans) {
          SideCover sc = cover(o, p, loop, period);
          total.point |= sc.point;
          total.left |= sc.left;
          total.right |= sc.right;
        }
        if (!(total.left && total.right)) {
          std::ostringstream why;
          why << "S contains the boundary point at parameter " << p
              << " but no boundary neighbourhood of it";
          fail(c, p, why.str());
        }
      }
    }

    // Clopen iff S meets this component in nothing or everything.
    bool any = !spans.empty();
    bool everything = false;
    for (const auto& s : spans) everything = everything || s.full;
    if (!everything && any && loop) {
      // A union of arcs may still cover a whole loop.
      std::vector<double> probe;
      for (const auto& s : spans) {
        probe.push_back(s.from);
        probe.push_back(s.to);
      }
      everything = true;
      for (double p : probe) {
        SideCover tc;
        for (const auto& o : spans) {
          SideCover sc = cover(o, wrap(p, period), loop, period);
          tc.point |= sc.point;
          tc.left |= sc.left;
          tc.right |= sc.right;
        }
        if (!(tc.point && tc.left && tc.right)) everything = false;
      }
    }
    if (any && !everything) out.clopen = false;
  }
  if (!portion.dense.empty()) out.clopen = false;
  return out;
}

}  // namespace unitaylor::geometry

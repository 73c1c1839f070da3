#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "unitaylor/geometry/compact.hpp"
#include "unitaylor/geometry/domain.hpp"
#include "unitaylor/polyalg/poly.hpp"

namespace unitaylor::testing {

using namespace geometry;

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }
  Complex complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
};

struct RandomPoly {
  Poly poly;
  // Direct coefficients kept for the independent evaluation below.
  std::vector<std::pair<std::vector<int>, Complex>> terms;
};

RandomPoly random_poly(Rng& rng, int min_degree = 0) {
  std::size_t d = static_cast<std::size_t>(rng.integer(1, 2));
  int deg = rng.integer(std::max(min_degree, 1), 8);
  Point c(d);
  for (auto& x : c) x = rng.complex(1.0);
  RandomPoly out{Poly(c), {}};
  std::vector<int> a(d, 0);
  // All exponents with total degree <= deg; a few are dropped.
  auto visit = [&](auto&& self, std::size_t var, int left) -> void {
    if (var == d) {
      if (rng.uniform(0, 1) < 0.2) return;
      Complex v = rng.complex(2.0);
      out.poly.set(MultiIndex(a), to_hi(v));
      out.terms.push_back({a, v});
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[var] = k;
      self(self, var + 1, left - k);
    }
    a[var] = 0;
  };
  visit(visit, 0, deg);
  // Keep the degree: the pure power of the first variable is always present.
  std::vector<int> top(d, 0);
  top[0] = deg;
  Complex v = rng.complex(2.0) + Complex(0.5, 0.0);
  out.poly.set(MultiIndex(top), to_hi(v));
  out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(), [&](const auto& t) { return t.first == top; }),
                  out.terms.end());
  out.terms.push_back({top, v});
  return out;
}

// sum a_alpha prod (z_i - c_i)^alpha_i, term by term in 256-bit arithmetic.
HiComplex direct_eval(const RandomPoly& f, const Point& z) {
  HiComplex s(0);
  const Point& c = f.poly.center();
  for (const auto& [a, v] : f.terms) {
    HiComplex t = to_hi(v);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int k = 0; k < a[i]; ++k) t *= to_hi(z[i]) - to_hi(c[i]);
    s += t;
  }
  return s;
}

double scale_at(const RandomPoly& f, const Point& z) {
  double s = 0;
  for (const auto& [a, v] : f.terms) {
    double t = std::abs(v);
    for (std::size_t i = 0; i < a.size(); ++i) t *= std::pow(std::abs(z[i] - f.poly.center()[i]), a[i]);
    s += t;
  }
  return std::max(s, 1e-300);
}

Point random_point(Rng& rng, std::size_t d, double r) {
  Point p(d);
  for (auto& x : p) x = rng.complex(r);
  return p;
}

void fail(SuiteResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

}  // namespace

SuiteResult recentering_exactness(int cases, std::uint64_t seed) {
  SuiteResult r{"recentering exactness", 0, 0, 0.0, {}};
  Rng rng(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    auto f = random_poly(rng);
    std::size_t d = f.poly.dimension();
    Point zeta = random_point(rng, d, 1.5);
    Poly g = recenter(f.poly, zeta);
    for (int t = 0; t < 5; ++t) {
      Point z = random_point(rng, d, 2.5);
      std::vector<HiComplex> zh;
      for (auto x : z) zh.push_back(to_hi(x));
      double err = magnitude(g.evaluate_hi(zh) - direct_eval(f, z)) / scale_at(f, z);
      r.worst = std::max(r.worst, err);
      if (!(err < 1e-60)) fail(r, "case " + std::to_string(n) + ": relative error " + std::to_string(err));
    }
  }
  return r;
}

SuiteResult recentering_round_trip(int cases, std::uint64_t seed) {
  SuiteResult r{"recentering round trip", 0, 0, 0.0, {}};
  Rng rng(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    auto f = random_poly(rng);
    Point zeta = random_point(rng, f.poly.dimension(), 1.5);
    Poly back = recenter(recenter(f.poly, zeta), f.poly.center());
    double err = 0;
    for (const auto& [a, v] : f.poly.terms()) err = std::max(err, magnitude(back.coefficient(a) - v));
    for (const auto& [a, v] : back.terms())
      if (is_exact_zero(f.poly.coefficient(a))) err = std::max(err, magnitude(v));
    r.worst = std::max(r.worst, err);
    if (!(err < 1e-60)) fail(r, "case " + std::to_string(n) + ": coefficient drift " + std::to_string(err));
  }
  return r;
}

SuiteResult truncation_identity(int cases, std::uint64_t seed) {
  SuiteResult r{"truncation identity", 0, 0, 0.0, {}};
  Rng rng(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    auto f = random_poly(rng);
    std::size_t d = f.poly.dimension();
    MultiIndexEnum en(d);
    std::int64_t cut = rng.integer(-1, static_cast<int>(f.poly.max_enum_index()) + 2);
    Poly lo = f.poly.truncated(cut), hi = f.poly.tail(cut);
    bool ok = (lo + hi) == f.poly;
    for (const auto& [a, v] : lo.terms()) ok = ok && en.index_of(a) <= cut;
    for (const auto& [a, v] : hi.terms()) ok = ok && en.index_of(a) > cut;
    // The partial sum at the own center is the truncation.
    ok = ok && partial_sum(f.poly, f.poly.center(), cut) == lo;
    // Enumeration indices of a polynomial's terms are increasing in map order.
    std::int64_t prev = -1;
    for (const auto& [a, v] : f.poly.terms()) {
      std::int64_t k = en.index_of(a);
      ok = ok && k > prev && en.at(k) == a;
      prev = k;
    }
    if (!ok) fail(r, "case " + std::to_string(n) + " at cut " + std::to_string(cut));
  }
  return r;
}

SuiteResult derivative_order(int cases, std::uint64_t seed) {
  SuiteResult r{"derivative vs finite difference", 0, 0, 0.0, {}};
  r.worst = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    auto f = random_poly(rng, 3);
    std::size_t d = f.poly.dimension();
    std::size_t var = 0;
    Poly df = derivative(f.poly, MultiIndex::unit(d, var));
    Point z = random_point(rng, d, 1.0);
    std::vector<HiComplex> zh;
    for (auto x : z) zh.push_back(to_hi(x));
    HiComplex exact = df.evaluate_hi(zh);
    auto central = [&](double h) {
      auto zp = z, zm = z;
      zp[var] += h;
      zm[var] -= h;
      return (direct_eval(f, zp) - direct_eval(f, zm)) / HiComplex(2 * h);
    };
    double h = 1e-2;
    double e1 = magnitude(central(h) - exact), e2 = magnitude(central(h / 2) - exact);
    double order = std::log2(e1 / e2);
    r.worst = std::min(r.worst, order);
    if (!(order >= 1.9)) fail(r, "case " + std::to_string(n) + ": observed order " + std::to_string(order));
  }
  return r;
}

SuiteResult cauchy_soundness(int cases, std::uint64_t seed) {
  SuiteResult r{"Cauchy bound soundness", 0, 0, 0.0, {}};
  Rng rng(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    auto f = random_poly(rng);
    std::size_t d = f.poly.dimension();
    Point c = random_point(rng, d, 1.0);
    double rho = rng.uniform(0.2, 2.0);
    // Sampled maximum on the torus |z_i - c_i| = rho. With more samples
    // than the degree, each coefficient is an exact discrete average of
    // these samples, so the sampled maximum already bounds it.
    int m = f.poly.degree() + 3;
    double sup = 0;
    std::vector<int> k(d, 0);
    while (true) {
      Point z(d);
      for (std::size_t i = 0; i < d; ++i) z[i] = c[i] + std::polar(rho, 2 * std::numbers::pi * k[i] / m);
      sup = std::max(sup, std::abs(to_double(direct_eval(f, z))));
      std::size_t i = 0;
      while (i < d && ++k[i] == m) k[i++] = 0;
      if (i == d) break;
    }
    Poly g = recenter(f.poly, c);
    for (const auto& [a, v] : g.terms()) {
      double bound = cauchy_bound(sup, rho, a);
      double ratio = magnitude(v) / bound;
      r.worst = std::max(r.worst, ratio);
      if (!(ratio <= 1 + 1e-12)) fail(r, "case " + std::to_string(n) + ": |a|/bound = " + std::to_string(ratio));
    }
  }
  return r;
}

namespace {

// L_n membership straight from the definition.
bool in_exhaustion(const DomainSpec& dom, const BoundaryPortion& s, int n, Complex z, double tol) {
  return dom.in_closure(z, tol) && std::abs(z) <= n + tol &&
         distance_to_unmarked_boundary(dom, s, z) >= 1.0 / n - tol;
}

DomainSpec random_domain(Rng& rng, std::string& label) {
  switch (rng.integer(0, 3)) {
    case 0: {
      Disk d{rng.complex(0.5), rng.uniform(0.8, 2.0)};
      label = "disk";
      return DomainSpec(d);
    }
    case 1: {
      HalfPlane h{rng.uniform(0, 2 * std::numbers::pi), rng.uniform(-0.5, 0.0)};
      label = "half_plane";
      return DomainSpec(h);
    }
    case 2: {
      Strip s{rng.uniform(0, std::numbers::pi), rng.uniform(0.6, 1.5), rng.complex(0.2)};
      label = "strip";
      return DomainSpec(s);
    }
    default: {
      // Convex polygon: random angles on a circle around the origin.
      int k = rng.integer(3, 6);
      std::vector<double> th;
      for (int i = 0; i < k; ++i) th.push_back(rng.uniform(0, 2 * std::numbers::pi));
      std::sort(th.begin(), th.end());
      double rad = rng.uniform(1.0, 2.0);
      std::vector<Complex> v;
      for (double t : th) v.push_back(std::polar(rad, t));
      DomainSpec p(Polygon{v});
      label = "polygon";
      // Reject thin polygons: the origin must be well inside.
      if (!p.contains(0) || p.distance_to_boundary(0) < 0.3) return random_domain(rng, label);
      return p;
    }
  }
}

}  // namespace

ExhaustionAudit exhaustion_audit(int triples, int inner, std::uint64_t seed) {
  ExhaustionAudit out;
  Rng rng(seed);
  Sampling samp;
  for (int t = 0; t < triples; ++t, ++out.triples) {
    std::string label;
    DomainSpec dom = random_domain(rng, label);
    BoundaryPortion s;
    std::size_t comp = 0;
    if (rng.uniform(0, 1) < 0.6) {
      comp = static_cast<std::size_t>(rng.integer(0, static_cast<int>(dom.boundary_components()) - 1));
      Arc a;
      a.component = comp;
      if (dom.component_is_loop(comp)) {
        double p = dom.component_period(comp);
        a.from = rng.uniform(0, p / 2);
        a.to = a.from + rng.uniform(0.1, 0.45) * p;
      } else if (rng.uniform(0, 1) < 0.3) {
        a.full = true;
      } else {
        a.from = rng.uniform(-2, 0);
        a.to = a.from + rng.uniform(0.5, 3);
      }
      s.arcs.push_back(a);
    }
    int n = rng.integer(1, 4);
    std::ostringstream note;
    note << label << " marks=" << s.arcs.size() << " n=" << n;

    auto ln = exhaustion_set(dom, s, n, samp);
    Descriptor next(ExhaustionCell{dom, s, n + 1});
    double tol = 1e-9;
    for (auto z : ln.validation_points) {
      if (!in_exhaustion(dom, s, n, z, tol)) {
        ++out.membership_failures;
        note << " membership@" << z;
        break;
      }
      if (!next.contains(z)) {
        ++out.monotone_failures;
        note << " monotone@" << z;
        break;
      }
    }

    // Inner compacts: small balls inside Omega and, when S is marked,
    // segments from an interior point to a point of S.
    for (int q = 0; q < inner; ++q) {
      Descriptor k;
      Complex p;
      do {
        p = dom.reference_point() + rng.complex(1.5);
      } while (!dom.contains(p) || dom.distance_to_boundary(p) < 0.05);
      if (!s.arcs.empty() && q % 2 == 1) {
        const Arc& a = s.arcs.front();
        double tt = a.full ? rng.uniform(-2, 2) : a.from + rng.uniform(0.1, 0.9) * (a.to - a.from);
        k = Descriptor(Polyline{{p, dom.boundary_point(a.component, tt)}});
      } else {
        k = Descriptor(Ball{p, rng.uniform(0.2, 0.9) * dom.distance_to_boundary(p)});
      }
      auto pts = sample(k, samp).validation_points;
      bool absorbed = false;
      for (int m = 1; m <= 400 && !absorbed; ++m) {
        Descriptor lm(ExhaustionCell{dom, s, m});
        absorbed = std::all_of(pts.begin(), pts.end(), [&](Complex z) { return lm.contains(z); });
      }
      if (!absorbed) {
        ++out.absorbing_failures;
        note << " not-absorbed:" << k.kind();
      }
    }

    Box b = ln.empty() ? Box{0, 0, 0, 0} : ln.point_bounds();
    double extent = std::max(b.x1 - b.x0, b.y1 - b.y0);
    auto cc = complement_connected(ln, 0.5, std::max(2 * ln.h_grid, extent / 300.0));
    if (cc.verdict == Verdict::Disconnected) ++out.disconnected;
    if (cc.verdict == Verdict::Inconclusive) ++out.inconclusive;
    note << " verdict=" << to_string(cc.verdict);
    out.notes.push_back(note.str());
  }
  return out;
}

}  // namespace unitaylor::testing

#include "unitaylor/polyalg/poly.hpp"

#include <algorithm>
#include <cmath>

#include "unitaylor/errors.hpp"
#include "unitaylor/parallel.hpp"

namespace unitaylor {

namespace {

void require_same_center(const Poly& a, const Poly& b) {
  if (a.center() != b.center())
    throw PreconditionError("polynomials with different centers; recenter first");
}

// Dense coefficient tensor, first variable slowest.
struct Dense {
  std::vector<int> extent;  // degree_in(var) + 1
  std::vector<HiComplex> data;

  std::size_t size() const {
    std::size_t n = 1;
    for (int e : extent) n *= static_cast<std::size_t>(e);
    return n;
  }
  std::size_t offset(const MultiIndex& a) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < extent.size(); ++i) off = off * static_cast<std::size_t>(extent[i]) + static_cast<std::size_t>(a[i]);
    return off;
  }
};

Dense to_dense(const Poly& f) {
  Dense t;
  for (std::size_t i = 0; i < f.dimension(); ++i) t.extent.push_back(f.degree_in(i) + 1);
  t.data.assign(t.size(), HiComplex(0));
  for (const auto& [a, c] : f.terms()) t.data[t.offset(a)] = c;
  return t;
}

Poly from_dense(const Dense& t, const Point& center) {
  Poly out(center);
  std::size_t d = t.extent.size();
  MultiIndex a(d);
  for (std::size_t off = 0; off < t.data.size(); ++off) {
    std::size_t rem = off;
    for (std::size_t i = d; i-- > 0;) {
      a[i] = static_cast<int>(rem % static_cast<std::size_t>(t.extent[i]));
      rem /= static_cast<std::size_t>(t.extent[i]);
    }
    if (!is_exact_zero(t.data[off])) out.set(a, t.data[off]);
  }
  return out;
}

}  // namespace

Poly::Poly(Point center) : center_(std::move(center)) {}

Poly Poly::constant(Point center, const HiComplex& value) {
  Poly p(std::move(center));
  p.set(MultiIndex(p.dimension()), value);
  return p;
}

Poly Poly::monomial(Point center, const MultiIndex& alpha, const HiComplex& coeff) {
  Poly p(std::move(center));
  if (alpha.dimension() != p.dimension()) throw PreconditionError("multi-index dimension mismatch");
  p.set(alpha, coeff);
  return p;
}

Poly Poly::power(Point center, std::size_t var, int k) {
  std::size_t d = center.size();
  return monomial(std::move(center), MultiIndex::unit(d, var, k));
}

HiComplex Poly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? HiComplex(0) : it->second;
}

void Poly::set(const MultiIndex& alpha, const HiComplex& value) {
  if (alpha.dimension() != dimension()) throw PreconditionError("multi-index dimension mismatch");
  if (is_exact_zero(value))
    terms_.erase(alpha);
  else
    terms_[alpha] = value;
}

void Poly::add(const MultiIndex& alpha, const HiComplex& value) {
  if (alpha.dimension() != dimension()) throw PreconditionError("multi-index dimension mismatch");
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (!is_exact_zero(value)) terms_.emplace(alpha, value);
    return;
  }
  it->second += value;
  if (is_exact_zero(it->second)) terms_.erase(it);
}

std::int64_t Poly::max_enum_index() const {
  if (terms_.empty()) return -1;
  return MultiIndexEnum(dimension()).index_of(terms_.rbegin()->first);
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.order(); }

int Poly::degree_in(std::size_t var) const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [a, c] : terms_) best = std::max(best, a[var]);
  return best;
}

HiComplex Poly::evaluate_hi(std::span<const HiComplex> z) const {
  if (z.size() != dimension()) throw PreconditionError("point dimension mismatch");
  if (terms_.empty()) return HiComplex(0);
  std::size_t d = dimension();
  std::vector<std::vector<HiComplex>> pw(d);
  for (std::size_t i = 0; i < d; ++i) {
    HiComplex x = z[i] - to_hi(center_[i]);
    int deg = degree_in(i);
    pw[i].resize(static_cast<std::size_t>(deg) + 1);
    pw[i][0] = HiComplex(1);
    for (int k = 1; k <= deg; ++k) pw[i][static_cast<std::size_t>(k)] = pw[i][static_cast<std::size_t>(k) - 1] * x;
  }
  HiComplex sum(0);
  for (const auto& [a, c] : terms_) {
    HiComplex t = c;
    for (std::size_t i = 0; i < d; ++i)
      if (a[i] > 0) t *= pw[i][static_cast<std::size_t>(a[i])];
    sum += t;
  }
  return sum;
}

Complex Poly::operator()(const Point& z) const {
  std::vector<HiComplex> zh;
  zh.reserve(z.size());
  for (auto v : z) zh.push_back(to_hi(v));
  return to_double(evaluate_hi(zh));
}

Poly& Poly::operator+=(const Poly& o) {
  if (dimension() == 0 && terms_.empty()) center_ = o.center_;
  require_same_center(*this, o);
  for (const auto& [a, c] : o.terms_) add(a, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (dimension() == 0 && terms_.empty()) center_ = o.center_;
  require_same_center(*this, o);
  for (const auto& [a, c] : o.terms_) add(a, -c);
  return *this;
}

Poly& Poly::operator*=(const HiComplex& s) {
  if (is_exact_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_center(a, b);
  Poly out(a.center());
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) out.add(x + y, cx * cy);
  return out;
}

Poly Poly::truncated(std::int64_t n) const {
  Poly out(center_);
  if (n < 0 || terms_.empty()) return out;
  MultiIndexEnum e(dimension());
  for (const auto& [a, c] : terms_) {
    if (e.index_of(a) > n) break;
    out.terms_.emplace_hint(out.terms_.end(), a, c);
  }
  return out;
}

Poly Poly::tail(std::int64_t n) const {
  Poly out(center_);
  if (terms_.empty()) return out;
  MultiIndexEnum e(dimension());
  for (const auto& [a, c] : terms_)
    if (e.index_of(a) > n) out.terms_.emplace_hint(out.terms_.end(), a, c);
  return out;
}

bool Poly::operator==(const Poly& o) const {
  if (center_ != o.center_ || terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [a, c] : terms_) {
    if (!(a == it->first) || c != it->second) return false;
    ++it;
  }
  return true;
}

Complex eval(const Poly& f, const Point& z) { return f(z); }

Poly derivative(const Poly& f, const MultiIndex& alpha) {
  if (alpha.dimension() != f.dimension()) throw PreconditionError("multi-index dimension mismatch");
  Poly out(f.center());
  for (const auto& [b, c] : f.terms()) {
    if (!alpha.dominated_by(b)) continue;
    HiComplex factor = c;
    for (std::size_t i = 0; i < b.dimension(); ++i)
      for (int k = 0; k < alpha[i]; ++k) factor *= HiReal(b[i] - k);
    out.add(b - alpha, factor);
  }
  return out;
}

Poly recenter(const Poly& f, const Point& zeta_new) {
  if (zeta_new.size() != f.dimension()) throw PreconditionError("center dimension mismatch");
  if (f.is_zero()) return Poly(zeta_new);
  Dense t = to_dense(f);
  std::size_t d = t.extent.size();
  for (std::size_t v = 0; v < d; ++v) {
    if (zeta_new[v] == f.center()[v]) continue;
    HiComplex delta = to_hi(zeta_new[v]) - to_hi(f.center()[v]);
    std::size_t n = static_cast<std::size_t>(t.extent[v]);
    std::size_t inner = 1;
    for (std::size_t i = v + 1; i < d; ++i) inner *= static_cast<std::size_t>(t.extent[i]);
    std::size_t outer = t.data.size() / (inner * n);
    // Taylor shift of every fiber along v by repeated synthetic division.
    parallel_for(outer * inner, [&](std::size_t job) {
      std::size_t o = job / inner, in = job % inner;
      auto at = [&](std::size_t k) -> HiComplex& { return t.data[(o * n + k) * inner + in]; };
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k-- > i;) at(k) += delta * at(k + 1);
    });
  }
  return from_dense(t, zeta_new);
}

Poly partial_sum(const Poly& f, const Point& zeta, std::int64_t n) {
  if (n < 0) return Poly(zeta);
  return recenter(f, zeta).truncated(n);
}

double cauchy_bound(double sup_value, double rho, const MultiIndex& alpha) {
  if (!(rho > 0)) throw DomainError("cauchy_bound needs rho > 0");
  if (sup_value < 0) throw DomainError("cauchy_bound needs a nonnegative sup");
  return sup_value / std::pow(rho, alpha.order());
}

std::vector<HiComplex> evaluate_on_product(const Poly& f,
                                           const std::vector<std::vector<Complex>>& factor_points) {
  std::size_t d = f.dimension();
  if (factor_points.size() != d) throw PreconditionError("grid dimension mismatch");
  std::size_t total = 1;
  for (const auto& p : factor_points) total *= p.size();
  if (total == 0) return {};
  if (f.is_zero()) return std::vector<HiComplex>(total, HiComplex(0));
  Dense t = to_dense(f);
  // cur has shape (extent_0..extent_{k-1}, N_k..N_{d-1}).
  std::vector<HiComplex> cur = std::move(t.data);
  std::size_t suffix = 1;
  for (std::size_t k = d; k-- > 0;) {
    std::size_t n = static_cast<std::size_t>(t.extent[k]);
    std::size_t prefix = 1;
    for (std::size_t i = 0; i < k; ++i) prefix *= static_cast<std::size_t>(t.extent[i]);
    const auto& pts = factor_points[k];
    std::size_t np = pts.size();
    std::vector<HiComplex> shifted(np);
    HiComplex c = to_hi(f.center()[k]);
    for (std::size_t p = 0; p < np; ++p) shifted[p] = to_hi(pts[p]) - c;
    std::vector<HiComplex> next(prefix * np * suffix);
    parallel_for(prefix * np, [&](std::size_t job) {
      std::size_t pre = job / np, p = job % np;
      const HiComplex& x = shifted[p];
      for (std::size_t s = 0; s < suffix; ++s) {
        HiComplex acc(0);
        for (std::size_t a = n; a-- > 0;) {
          acc *= x;
          acc += cur[(pre * n + a) * suffix + s];
        }
        next[(pre * np + p) * suffix + s] = acc;
      }
    });
    cur = std::move(next);
    suffix *= np;
  }
  return cur;
}

double seminorm_on(const Poly& f, const std::vector<std::vector<Complex>>& factor_points,
                   const DerivativeFamily& fam) {
  for (const auto& p : factor_points)
    if (p.empty()) return 0.0;
  double best = 0.0;
  for (const auto& alpha : fam.members()) {
    Poly g = derivative(f, alpha);
    if (g.is_zero()) continue;
    for (const auto& v : evaluate_on_product(g, factor_points)) best = std::max(best, magnitude(v));
  }
  return best;
}

double seminorm(const Poly& f, const geometry::ProductCompact& k, const DerivativeFamily& fam) {
  if (k.empty()) return 0.0;
  return seminorm_on(f, validation_grids(k), fam);
}

std::vector<std::vector<Complex>> validation_grids(const geometry::ProductCompact& k) {
  std::vector<std::vector<Complex>> g;
  for (const auto& f : k.factors) g.push_back(f.validation_points);
  return g;
}

std::vector<std::vector<Complex>> fit_grids(const geometry::ProductCompact& k) {
  std::vector<std::vector<Complex>> g;
  for (const auto& f : k.factors) g.push_back(f.fit_points);
  return g;
}

std::vector<Point> product_points(const std::vector<std::vector<Complex>>& factor_points) {
  std::size_t total = 1;
  for (const auto& p : factor_points) total *= p.size();
  std::vector<Point> out;
  out.reserve(total);
  if (total == 0) return out;
  std::size_t d = factor_points.size();
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t q = 0; q < total; ++q) {
    Point z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = factor_points[i][idx[i]];
    out.push_back(std::move(z));
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < factor_points[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace unitaylor

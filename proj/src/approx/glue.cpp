#include <algorithm>
#include <cmath>
#include <sstream>

#include "unitaylor/approx/approx.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::approx {

namespace {

// Upper bound for sup |D_gamma g| over the bounding polydisk of a product.
class DerivativeBound {
 public:
  DerivativeBound(const Poly& g, const geometry::ProductCompact& k) {
    std::size_t d = g.dimension();
    Point c(d);
    radius_.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      geometry::Box b = k.factors[i].point_bounds();
      c[i] = Complex(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1));
      radius_[i] = 0.5 * std::hypot(b.x1 - b.x0, b.y1 - b.y0);
    }
    g_ = recenter(g, c);
  }

  double sup(const MultiIndex& gamma) const {
    HiReal total(0);
    for (const auto& [beta, a] : g_.terms()) {
      if (!gamma.dominated_by(beta)) continue;
      HiReal term = abs(a);
      for (std::size_t i = 0; i < beta.dimension(); ++i) {
        for (int q = 0; q < gamma[i]; ++q) term *= (beta[i] - q);
        for (int q = 0; q < beta[i] - gamma[i]; ++q) term *= HiReal(radius_[i]);
      }
      total += term;
    }
    return static_cast<double>(total);
  }

 private:
  Poly g_;
  std::vector<double> radius_;
};

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// max over alpha in fam of sum_k C(alpha_i0, k) sup |D^(alpha - k e_i0) g|.
double leibniz_factor(const Poly& g, const geometry::ProductCompact& k, std::size_t i0,
                      const DerivativeFamily& fam) {
  DerivativeBound bound(g, k);
  double m = 0.0;
  for (const auto& alpha : fam.members()) {
    double s = 0.0;
    for (int q = 0; q <= alpha[i0]; ++q) {
      MultiIndex gamma = alpha;
      gamma[i0] -= q;
      s += binom(alpha[i0], q) * bound.sup(gamma);
    }
    m = std::max(m, s);
  }
  return m;
}

std::vector<int> orders_up_to(int n) {
  std::vector<int> out;
  for (int k = 0; k <= n; ++k) out.push_back(k);
  return out;
}

// Q(z) = q(z_i0) as a d-variate polynomial centered at `center`.
Poly embed(const Poly& q, const Point& center, std::size_t i0) {
  Poly qc = recenter(q, Point{center[i0]});
  Poly out(center);
  for (const auto& [a, v] : qc.terms()) out.set(MultiIndex::unit(center.size(), i0, a[0]), v);
  return out;
}

std::vector<SetError> seminorm_entries(const Poly& p, const geometry::ProductCompact& k,
                                       const DerivativeFamily& fam, const std::string& set) {
  std::vector<SetError> out;
  if (k.empty()) {
    for (const auto& alpha : fam.members()) out.push_back({set, alpha, 0.0});
    return out;
  }
  auto grids = validation_grids(k);
  for (const auto& alpha : fam.members()) {
    DerivativeFamily one(std::vector<MultiIndex>{alpha});
    out.push_back({set, alpha, seminorm_on(p, grids, one)});
  }
  return out;
}

}  // namespace

FitResult glue(const Poly& g_tilde, const geometry::ProductCompact& k_tau,
               const geometry::ProductCompact& l_tilde, std::size_t i0, const DerivativeFamily& fam_in,
               double eps, int degree_cap, const GlueOptions& opt) {
  std::size_t d = g_tilde.dimension();
  if (d == 0 || k_tau.dimension() != d || (!l_tilde.factors.empty() && l_tilde.dimension() != d))
    throw PreconditionError("glue: dimension mismatch");
  if (i0 >= d) throw PreconditionError("glue: separating index out of range");
  if (!(eps > 0)) throw PreconditionError("glue: eps must be positive");
  DerivativeFamily fam = fam_in.empty() ? DerivativeFamily::values_only(d) : fam_in;
  DerivativeFamily fam_l = opt.fam_l.value_or(fam);
  if (fam_l.empty()) fam_l = DerivativeFamily::values_only(d);
  double eps_l = opt.eps_l.value_or(eps);
  if (!(eps_l > 0)) throw PreconditionError("glue: eps_l must be positive");
  int t = opt.vanish_order;

  FitResult res;
  auto finish = [&](Poly p, std::string msg) {
    res.poly = std::move(p);
    res.report.achieved = seminorm_entries(res.poly - g_tilde, k_tau, fam, "K");
    auto el = seminorm_entries(res.poly, l_tilde, fam_l, "L");
    res.report.achieved.insert(res.report.achieved.end(), el.begin(), el.end());
    bool ok = res.report.max_error("K") < eps && res.report.max_error("L") < eps_l;
    res.report.success = ok;
    res.report.message = std::move(msg);
    if (!ok) res.report.message += "; re-measured seminorms exceed the tolerance";
    return res;
  };

  if (g_tilde.is_zero()) return finish(g_tilde, "g_tilde is zero: P = 0");
  if (l_tilde.empty() && t == 0) {
    res.report.degree_used = g_tilde.degree();
    return finish(g_tilde, "l_tilde is empty: P = g_tilde");
  }

  double m_k = leibniz_factor(g_tilde, k_tau, i0, fam);
  double m_l = l_tilde.empty() ? 1.0 : leibniz_factor(g_tilde, l_tilde, i0, fam_l);
  m_k = std::max(m_k, 1e-300);
  m_l = std::max(m_l, 1e-300);

  BumpOptions bo;
  bo.orders_a = orders_up_to(fam.max_order_in(i0));
  bo.eps_a = eps / (2 * m_k);
  bo.vanish_order = t;
  bo.vanish_center = g_tilde.center()[i0];
  geometry::PlanarCompact empty_b;
  const geometry::PlanarCompact& b = l_tilde.empty() ? empty_b : l_tilde.factors[i0];
  FitResult q = bump(k_tau.factors[i0], b, orders_up_to(fam_l.max_order_in(i0)), eps_l / (2 * m_l),
                     degree_cap, bo);

  res.report.trace = q.report.trace;
  res.report.conditioning = q.report.conditioning;
  res.report.degree_used = q.report.degree_used;
  if (!q.report.success) {
    res.poly = Poly(g_tilde.center());
    res.report.success = false;
    res.report.achieved = q.report.achieved;
    res.report.message = "glue: bump failed: " + q.report.message;
    return res;
  }
  Poly p = g_tilde * embed(q.poly, g_tilde.center(), i0);
  std::ostringstream msg;
  msg << "glued with bump of degree " << q.report.degree_used << " (M_K " << m_k << ", M_L " << m_l << ")";
  return finish(std::move(p), msg.str());
}

}  // namespace unitaylor::approx

#include "unitaylor/approx/target.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <limits>
#include <variant>

#include "unitaylor/errors.hpp"
#include "unitaylor/parallel.hpp"

namespace unitaylor::approx {

struct PolyForm {
  Poly p;
};
struct ExprForm {
  Expression e;
  double radius;
  int nodes;
};
struct SampledForm {
  std::vector<Point> points;
  std::vector<Complex> values;
};
struct DifferenceForm {
  std::shared_ptr<const TargetFunction::Impl> base;
  Poly p;
};

struct TargetFunction::Impl {
  std::variant<PolyForm, ExprForm, SampledForm, DifferenceForm> form;
  std::size_t dim = 1;
};

namespace {

std::vector<HiComplex> eval_values(const TargetFunction::Impl& impl, const std::vector<Point>& pts);
std::vector<HiComplex> eval_derivative(const TargetFunction::Impl& impl, const std::vector<Point>& pts,
                                       const MultiIndex& alpha);

std::vector<HiComplex> poly_values(const Poly& p, const std::vector<Point>& pts) {
  std::vector<HiComplex> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    std::vector<HiComplex> z;
    for (auto c : pts[i]) z.push_back(to_hi(c));
    out[i] = p.evaluate_hi(z);
  });
  return out;
}

// D_alpha h(z) = alpha! / (2 pi i)^d  oint h(w) / (w - z)^(alpha + 1) dw over a
// torus of radius r; with w_k = z + r e^{i theta_k} the trapezoid rule gives
// alpha! / (N^d r^|alpha|) sum h(w) e^{-i alpha . theta}.
HiComplex cauchy_derivative(const Expression& e, const Point& z, const MultiIndex& alpha, double r,
                            int n) {
  std::size_t d = z.size();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < d; ++i)
    if (alpha[i] > 0) active.push_back(i);
  std::vector<HiComplex> zh;
  for (auto c : z) zh.push_back(to_hi(c));
  HiReal two_pi = 2 * boost::math::constants::pi<HiReal>();
  std::vector<HiComplex> roots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    HiReal th = two_pi * k / n;
    roots[static_cast<std::size_t>(k)] = HiComplex(cos(th), sin(th));
  }
  HiReal rh(r);
  std::size_t m = active.size();
  std::vector<int> idx(m, 0);
  HiComplex sum(0);
  while (true) {
    std::vector<HiComplex> w = zh;
    HiComplex phase(1);
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t var = active[a];
      const HiComplex& u = roots[static_cast<std::size_t>(idx[a])];
      w[var] += rh * u;
      // e^{-i alpha theta} = conj(u)^alpha
      HiComplex cu(u.real(), -u.imag());
      for (int p = 0; p < alpha[var]; ++p) phase *= cu;
    }
    sum += e.evaluate(w) * phase;
    std::size_t a = 0;
    for (; a < m; ++a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
    if (a == m) break;
  }
  HiReal scale(1);
  for (std::size_t var : active) {
    for (int p = 2; p <= alpha[var]; ++p) scale *= p;
    scale /= n;
    for (int p = 0; p < alpha[var]; ++p) scale /= rh;
  }
  return sum * scale;
}

std::vector<HiComplex> eval_values(const TargetFunction::Impl& impl, const std::vector<Point>& pts) {
  if (auto f = std::get_if<PolyForm>(&impl.form)) return poly_values(f->p, pts);
  if (auto f = std::get_if<ExprForm>(&impl.form)) {
    std::vector<HiComplex> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      std::vector<HiComplex> z;
      for (auto c : pts[i]) z.push_back(to_hi(c));
      out[i] = f->e.evaluate(z);
    });
    return out;
  }
  if (auto f = std::get_if<SampledForm>(&impl.form)) {
    std::vector<HiComplex> out;
    out.reserve(pts.size());
    for (const auto& z : pts) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t k = 0; k < f->points.size(); ++k) {
        double dist = 0;
        for (std::size_t i = 0; i < z.size(); ++i) dist += std::norm(z[i] - f->points[k][i]);
        if (dist < best) {
          best = dist;
          arg = k;
        }
      }
      out.push_back(to_hi(f->values[arg]));
    }
    return out;
  }
  const auto& f = std::get<DifferenceForm>(impl.form);
  auto base = eval_values(*f.base, pts);
  auto sub = poly_values(f.p, pts);
  for (std::size_t i = 0; i < base.size(); ++i) base[i] -= sub[i];
  return base;
}

std::vector<HiComplex> eval_derivative(const TargetFunction::Impl& impl, const std::vector<Point>& pts,
                                       const MultiIndex& alpha) {
  if (alpha.order() == 0) return eval_values(impl, pts);
  if (auto f = std::get_if<PolyForm>(&impl.form)) return poly_values(derivative(f->p, alpha), pts);
  if (auto f = std::get_if<ExprForm>(&impl.form)) {
    if (f->e.uses_conjugate())
      throw PreconditionError("derivatives of a non-holomorphic expression are undefined");
    std::vector<HiComplex> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      out[i] = cauchy_derivative(f->e, pts[i], alpha, f->radius, f->nodes);
    });
    return out;
  }
  if (std::holds_alternative<SampledForm>(impl.form))
    throw PreconditionError("sampled targets carry values only");
  const auto& f = std::get<DifferenceForm>(impl.form);
  auto base = eval_derivative(*f.base, pts, alpha);
  auto sub = poly_values(derivative(f.p, alpha), pts);
  for (std::size_t i = 0; i < base.size(); ++i) base[i] -= sub[i];
  return base;
}

std::string describe_impl(const TargetFunction::Impl& impl) {
  if (auto f = std::get_if<PolyForm>(&impl.form))
    return "polynomial of degree " + std::to_string(f->p.degree());
  if (auto f = std::get_if<ExprForm>(&impl.form)) return f->e.text();
  if (std::holds_alternative<SampledForm>(impl.form)) return "sampled table";
  const auto& f = std::get<DifferenceForm>(impl.form);
  return "(" + describe_impl(*f.base) + ") - polynomial";
}

bool holomorphic_impl(const TargetFunction::Impl& impl) {
  if (auto f = std::get_if<ExprForm>(&impl.form)) return !f->e.uses_conjugate();
  if (std::holds_alternative<SampledForm>(impl.form)) return false;
  if (auto f = std::get_if<DifferenceForm>(&impl.form)) return holomorphic_impl(*f->base);
  return true;
}

}  // namespace

TargetFunction TargetFunction::polynomial(Poly p) {
  auto impl = std::make_shared<Impl>();
  impl->dim = p.dimension();
  impl->form = PolyForm{std::move(p)};
  return TargetFunction(impl);
}

TargetFunction TargetFunction::expression(Expression e, double cauchy_radius, int cauchy_nodes) {
  if (!(cauchy_radius > 0) || cauchy_nodes < 4) throw PreconditionError("bad Cauchy quadrature parameters");
  auto impl = std::make_shared<Impl>();
  impl->dim = e.dimension();
  impl->form = ExprForm{std::move(e), cauchy_radius, cauchy_nodes};
  return TargetFunction(impl);
}

TargetFunction TargetFunction::sampled(std::vector<Point> points, std::vector<Complex> values) {
  if (points.empty() || points.size() != values.size())
    throw PreconditionError("sampled target needs matching nonempty tables");
  auto impl = std::make_shared<Impl>();
  impl->dim = points.front().size();
  impl->form = SampledForm{std::move(points), std::move(values)};
  return TargetFunction(impl);
}

TargetFunction TargetFunction::minus(const Poly& p) const {
  if (p.dimension() != dimension()) throw PreconditionError("target dimension mismatch");
  auto impl = std::make_shared<Impl>();
  impl->dim = dimension();
  impl->form = DifferenceForm{impl_, p};
  return TargetFunction(impl);
}

std::size_t TargetFunction::dimension() const { return impl_->dim; }
std::string TargetFunction::describe() const { return describe_impl(*impl_); }
bool TargetFunction::holomorphic() const { return holomorphic_impl(*impl_); }

std::vector<HiComplex> TargetFunction::values(const std::vector<Point>& points) const {
  return eval_values(*impl_, points);
}

std::vector<HiComplex> TargetFunction::derivative_values(const std::vector<Point>& points,
                                                         const MultiIndex& alpha) const {
  return eval_derivative(*impl_, points, alpha);
}

}  // namespace unitaylor::approx

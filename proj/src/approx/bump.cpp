#include <algorithm>
#include <cmath>
#include <sstream>

#include "unitaylor/approx/approx.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::approx {

namespace {

using CVec = std::vector<Complex>;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Complex> denser_points(const geometry::PlanarCompact& k, std::size_t want) {
  std::vector<Complex> pts = k.fit_points;
  double h = k.fit_spacing > 0 ? k.fit_spacing : k.h_grid;
  for (int halvings = 0; halvings < 6 && pts.size() < want; ++halvings) {
    h *= 0.5;
    auto pk = geometry::sample(k.descriptor, geometry::Sampling{h, h});
    if (pk.validation_points.size() <= pts.size()) break;
    pts = pk.validation_points;
  }
  return pts;
}

// Sample points of one side with the derivative orders constrained there.
struct Side {
  std::vector<Complex> z;
  std::vector<int> orders;
  double weight = 1.0;  // 1 / tolerance
  bool is_a = false;
};

// Basis values D^j p_m(z) for j = 0..K at a set of points, kept per m.
struct BasisValues {
  std::size_t npts = 0;
  int kmax = 0;
  std::vector<CVec> p;  // p[m][pt * (kmax+1) + j]
};

// Weighted Vandermonde-with-Arnoldi for q = w * qhat, w = (z - c0)^T.
class ArnoldiBump {
 public:
  ArnoldiBump(std::vector<Side> sides, int t, Complex c0, Complex cs, double rs, int kmax)
      : sides_(std::move(sides)), t_(t), c0_(c0), cs_(cs), rs_(rs), kmax_(kmax) {
    for (const auto& s : sides_) {
      for (auto z : s.z) {
        pts_.push_back(z);
        weight_.push_back(s.weight);
        orders_.push_back(s.orders);
        target_.push_back(s.is_a);
      }
    }
    dw_ = weight_derivs(pts_);
    for (std::size_t i = 0; i < pts_.size(); ++i)
      for (int k : orders_[i]) {
        row_pt_.push_back(i);
        row_order_.push_back(k);
      }
    y_.resize(row_pt_.size());
    for (std::size_t r = 0; r < row_pt_.size(); ++r)
      y_[r] = (target_[row_pt_[r]] && row_order_[r] == 0) ? Complex(weight_[row_pt_[r]]) : Complex(0);
    vals_.npts = pts_.size();
    vals_.kmax = kmax_;
  }

  std::size_t rows() const { return row_pt_.size(); }
  int columns() const { return static_cast<int>(v_.size()); }
  const std::vector<CVec>& hess() const { return h_; }
  double nu0() const { return nu0_; }

  // Extends the orthonormal basis to degree m; false on breakdown.
  bool extend_to(int m) {
    while (columns() <= m) {
      if (v_.empty()) {
        CVec p0(pts_.size() * static_cast<std::size_t>(kmax_ + 1), Complex(0));
        for (std::size_t i = 0; i < pts_.size(); ++i) p0[i * static_cast<std::size_t>(kmax_ + 1)] = 1.0;
        CVec col = apply(p0, pts_.size(), dw_);
        double nrm = norm(col);
        if (!(nrm > 0)) return false;
        nu0_ = nrm;
        scale(col, 1.0 / nrm);
        scale(p0, 1.0 / nrm);
        v_.push_back(std::move(col));
        vals_.p.push_back(std::move(p0));
        continue;
      }
      std::size_t m0 = v_.size() - 1;
      CVec q = times_s(vals_.p[m0], pts_);
      CVec u = apply(q, pts_.size(), dw_);
      double before = norm(u);
      CVec hcol(m0 + 2, Complex(0));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t l = 0; l <= m0; ++l) {
          Complex hl = dot(v_[l], u);
          hcol[l] += hl;
          axpy(u, -hl, v_[l]);
          axpy(q, -hl, vals_.p[l]);
        }
      }
      double nrm = norm(u);
      if (!(nrm > 1e-13 * before) || !(nrm > 0)) return false;
      hcol[m0 + 1] = nrm;
      scale(u, 1.0 / nrm);
      scale(q, 1.0 / nrm);
      v_.push_back(std::move(u));
      vals_.p.push_back(std::move(q));
      h_.push_back(std::move(hcol));
    }
    return true;
  }

  // Least-squares coefficients on the first m+1 columns with one refinement step.
  CVec solve(int m) const {
    CVec c(static_cast<std::size_t>(m) + 1);
    for (int l = 0; l <= m; ++l) c[static_cast<std::size_t>(l)] = dot(v_[static_cast<std::size_t>(l)], y_);
    CVec r = y_;
    for (int l = 0; l <= m; ++l) axpy(r, -c[static_cast<std::size_t>(l)], v_[static_cast<std::size_t>(l)]);
    for (int l = 0; l <= m; ++l) c[static_cast<std::size_t>(l)] += dot(v_[static_cast<std::size_t>(l)], r);
    return c;
  }

  // Replays the recurrence at new points, extending `out` to p_0..p_m.
  void replay(BasisValues& out, const std::vector<Complex>& z, int m) const {
    std::size_t stride = static_cast<std::size_t>(kmax_ + 1);
    if (out.p.empty()) {
      out.npts = z.size();
      out.kmax = kmax_;
      CVec p0(z.size() * stride, Complex(0));
      for (std::size_t i = 0; i < z.size(); ++i) p0[i * stride] = 1.0 / nu0_;
      out.p.push_back(std::move(p0));
    }
    for (int l = static_cast<int>(out.p.size()) - 1; l < m; ++l) {
      CVec q = times_s(out.p[static_cast<std::size_t>(l)], z);
      const CVec& hcol = h_[static_cast<std::size_t>(l)];
      for (int j = 0; j <= l; ++j) axpy(q, -hcol[static_cast<std::size_t>(j)], out.p[static_cast<std::size_t>(j)]);
      scale(q, 1.0 / hcol[static_cast<std::size_t>(l) + 1].real());
      out.p.push_back(std::move(q));
    }
  }

  // D^k q at the points for every k <= kmax, given coefficients and basis values.
  std::vector<CVec> q_derivatives(const BasisValues& b, const std::vector<Complex>& z, const CVec& c) const {
    std::size_t stride = static_cast<std::size_t>(kmax_ + 1);
    CVec qhat(z.size() * stride, Complex(0));
    for (std::size_t l = 0; l < c.size(); ++l) axpy(qhat, c[l], b.p[l]);
    auto dw = weight_derivs(z);
    std::vector<CVec> out(stride, CVec(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i)
      for (int k = 0; k <= kmax_; ++k) {
        Complex s = 0;
        for (int j = 0; j <= k; ++j)
          s += binom(k, j) * dw[i * stride + static_cast<std::size_t>(k - j)] * qhat[i * stride + static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(k)][i] = s;
      }
    return out;
  }

 private:
  // D^j w at points, w = (z - c0)^T.
  CVec weight_derivs(const std::vector<Complex>& z) const {
    std::size_t stride = static_cast<std::size_t>(kmax_ + 1);
    CVec out(z.size() * stride, Complex(0));
    for (std::size_t i = 0; i < z.size(); ++i)
      for (int j = 0; j <= std::min(kmax_, t_); ++j) {
        double fall = 1.0;
        for (int q = 0; q < j; ++q) fall *= (t_ - q);
        out[i * stride + static_cast<std::size_t>(j)] = fall * std::pow(z[i] - c0_, t_ - j);
        if (t_ - j == 0) out[i * stride + static_cast<std::size_t>(j)] = fall;
      }
    return out;
  }

  // Rows weight_i * D^k (w p) for the row layout.
  CVec apply(const CVec& p, std::size_t, const CVec& dw) const {
    std::size_t stride = static_cast<std::size_t>(kmax_ + 1);
    CVec out(row_pt_.size());
    for (std::size_t r = 0; r < row_pt_.size(); ++r) {
      std::size_t i = row_pt_[r];
      int k = row_order_[r];
      Complex s = 0;
      for (int j = 0; j <= k; ++j)
        s += binom(k, j) * dw[i * stride + static_cast<std::size_t>(k - j)] * p[i * stride + static_cast<std::size_t>(j)];
      out[r] = weight_[i] * s;
    }
    return out;
  }

  // Derivative values of s * p with s = (z - cs) / rs.
  CVec times_s(const CVec& p, const std::vector<Complex>& z) const {
    std::size_t stride = static_cast<std::size_t>(kmax_ + 1);
    CVec out(p.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      Complex s = (z[i] - cs_) / rs_;
      for (int j = 0; j <= kmax_; ++j) {
        Complex v = s * p[i * stride + static_cast<std::size_t>(j)];
        if (j > 0) v += (static_cast<double>(j) / rs_) * p[i * stride + static_cast<std::size_t>(j - 1)];
        out[i * stride + static_cast<std::size_t>(j)] = v;
      }
    }
    return out;
  }

  static Complex dot(const CVec& a, const CVec& b) {
    Complex s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
  }
  static double norm(const CVec& a) {
    double s = 0;
    for (auto v : a) s += std::norm(v);
    return std::sqrt(s);
  }
  static void axpy(CVec& y, Complex a, const CVec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  }
  static void scale(CVec& y, double a) {
    for (auto& v : y) v *= a;
  }

  std::vector<Side> sides_;
  int t_;
  Complex c0_, cs_;
  double rs_;
  int kmax_;
  std::vector<Complex> pts_;
  std::vector<double> weight_;
  std::vector<std::vector<int>> orders_;
  std::vector<bool> target_;
  CVec dw_;
  std::vector<std::size_t> row_pt_;
  std::vector<int> row_order_;
  CVec y_;
  std::vector<CVec> v_;
  std::vector<CVec> h_;
  BasisValues vals_;
  double nu0_ = 1.0;
};

// Side errors in natural units: max_k |D^k q - delta_k0| on a, max_k |D^k q| on b.
std::vector<SetError> side_errors(const std::vector<CVec>& dq, const std::vector<int>& orders, bool is_a,
                                  const std::string& set) {
  std::vector<SetError> out;
  for (int k : orders) {
    double err = 0.0;
    for (auto v : dq[static_cast<std::size_t>(k)]) err = std::max(err, std::abs(is_a && k == 0 ? v - 1.0 : v));
    out.push_back({set, MultiIndex{k}, err});
  }
  return out;
}

std::vector<SetError> hi_side_errors(const Poly& q, const std::vector<Complex>& z, const std::vector<int>& orders,
                                     bool is_a, const std::string& set) {
  std::vector<SetError> out;
  for (int k : orders) {
    auto vals = evaluate_on_product(derivative(q, MultiIndex{k}), {z});
    double err = 0.0;
    for (const auto& v : vals) err = std::max(err, magnitude(is_a && k == 0 ? v - HiComplex(1) : v));
    out.push_back({set, MultiIndex{k}, err});
  }
  return out;
}

double worst_ratio(const std::vector<SetError>& errs, double eps_a, double eps_b) {
  double r = 0.0;
  for (const auto& e : errs) r = std::max(r, e.error / (e.set == "a" ? eps_a : eps_b));
  return r;
}

// Rebuilds q = (z - c0)^T * qhat exactly from the recurrence, in extended precision.
Poly to_poly(const std::vector<CVec>& h, double nu0, const CVec& c, Complex cs, double rs, int t, Complex c0) {
  std::size_t m = c.size();
  std::vector<std::vector<HiComplex>> p;  // coefficients in s
  p.push_back({HiComplex(HiReal(1) / HiReal(nu0))});
  for (std::size_t l = 0; l + 1 < m; ++l) {
    std::vector<HiComplex> q(l + 2, HiComplex(0));
    for (std::size_t k = 0; k < p[l].size(); ++k) q[k + 1] += p[l][k];
    for (std::size_t j = 0; j <= l; ++j) {
      HiComplex hj = to_hi(h[l][j]);
      for (std::size_t k = 0; k < p[j].size(); ++k) q[k] -= hj * p[j][k];
    }
    HiReal hn(h[l][l + 1].real());
    for (auto& v : q) v /= hn;
    p.push_back(std::move(q));
  }
  std::vector<HiComplex> qhat(m, HiComplex(0));
  for (std::size_t l = 0; l < m; ++l) {
    HiComplex cl = to_hi(c[l]);
    for (std::size_t k = 0; k < p[l].size(); ++k) qhat[k] += cl * p[l][k];
  }
  Poly in_s(Point{cs});
  HiReal rinv = HiReal(1) / HiReal(rs);
  HiReal scale(1);
  for (std::size_t k = 0; k < m; ++k) {
    in_s.set(MultiIndex{static_cast<int>(k)}, qhat[k] * scale);
    scale *= rinv;
  }
  Poly at_c0 = recenter(in_s, Point{c0});
  Poly out(Point{c0});
  for (const auto& [a, v] : at_c0.terms()) out.set(MultiIndex{a[0] + t}, v);
  return out;
}

}  // namespace

FitResult bump(const geometry::PlanarCompact& a, const geometry::PlanarCompact& b, const std::vector<int>& fam,
               double eps, int degree_cap, const BumpOptions& opt) {
  if (!(eps > 0)) throw PreconditionError("bump: eps must be positive");
  double eps_a = opt.eps_a.value_or(eps);
  if (!(eps_a > 0)) throw PreconditionError("bump: eps_a must be positive");
  std::vector<int> orders_b = fam.empty() ? std::vector<int>{0} : fam;
  std::vector<int> orders_a = opt.orders_a.empty() ? std::vector<int>{0} : opt.orders_a;
  for (int k : orders_a)
    if (k < 0) throw PreconditionError("bump: negative derivative order");
  for (int k : orders_b)
    if (k < 0) throw PreconditionError("bump: negative derivative order");
  int t = opt.vanish_order;
  Complex default_center = t > 0 ? opt.vanish_center : opt.center.value_or(Complex(0, 0));

  FitResult res;
  if (a.empty()) {
    res.poly = Poly(Point{opt.center.value_or(default_center)});
    res.report.success = true;
    res.report.degree_used = -1;
    res.report.message = "a is empty: q = 0";
    return res;
  }
  if (b.empty() && t == 0) {
    res.poly = Poly::constant(Point{opt.center.value_or(default_center)}, HiComplex(1));
    res.report.success = true;
    res.report.degree_used = 0;
    res.report.message = "b is empty: q = 1";
    for (int k : orders_a) res.report.achieved.push_back({"a", MultiIndex{k}, 0.0});
    return res;
  }

  // Preconditions: disjoint, union has connected complement.
  double gap = INFINITY;
  for (auto p : a.validation_points)
    for (auto q : b.validation_points) gap = std::min(gap, std::abs(p - q));
  if (!(gap > 0)) throw PreconditionError("bump: the two compacts overlap");
  if (!b.empty()) {
    geometry::PlanarCompact u;
    u.descriptor = geometry::Descriptor(geometry::Union{{a.descriptor, b.descriptor}});
    u.validation_points = a.validation_points;
    u.validation_points.insert(u.validation_points.end(), b.validation_points.begin(), b.validation_points.end());
    u.fit_points = u.validation_points;
    u.h_grid = std::min(a.h_grid, b.h_grid);
    geometry::Box box = u.point_bounds();
    double extent = std::max(box.x1 - box.x0, box.y1 - box.y0);
    double res_cell = std::max(std::min(2 * u.h_grid, 0.5 * gap), extent / 400.0);
    auto cert = geometry::complement_connected(u, 0.5, res_cell);
    if (cert.verdict == geometry::Verdict::Disconnected)
      throw PreconditionError("bump: the union of the two compacts does not have a connected complement");
    if (cert.verdict == geometry::Verdict::Inconclusive)
      res.report.message = "complement certificate of the union is inconclusive; ";
  }

  int kmax = 0;
  for (int k : orders_a) kmax = std::max(kmax, k);
  for (int k : orders_b) kmax = std::max(kmax, k);

  std::size_t want = 4 * static_cast<std::size_t>(degree_cap + 1);
  std::vector<Complex> fa = denser_points(a, want / orders_a.size() / 2 + 1);
  std::vector<Complex> fb = b.empty() ? std::vector<Complex>{} : denser_points(b, want / orders_b.size() / 2 + 1);

  Complex cs = 0;
  for (auto z : fa) cs += z;
  for (auto z : fb) cs += z;
  cs /= static_cast<double>(fa.size() + fb.size());
  double rs = 0.0;
  for (auto z : fa) rs = std::max(rs, std::abs(z - cs));
  for (auto z : fb) rs = std::max(rs, std::abs(z - cs));
  if (!(rs > 0)) rs = 1.0;

  std::vector<Side> sides;
  sides.push_back(Side{fa, orders_a, 1.0 / eps_a, true});
  if (!fb.empty()) sides.push_back(Side{fb, orders_b, 1.0 / eps, false});
  ArnoldiBump arn(std::move(sides), t, opt.vanish_center, cs, rs, kmax);

  const auto& va = a.validation_points;
  const auto& vb = b.validation_points;
  auto confirm = [&](int m, const CVec& c) {
    Poly q = to_poly(arn.hess(), arn.nu0(), c, cs, rs, t, opt.vanish_center);
    if (opt.center && t == 0) q = recenter(q, Point{*opt.center});
    auto hi = hi_side_errors(q, va, orders_a, true, "a");
    auto hb = hi_side_errors(q, vb, orders_b, false, "b");
    hi.insert(hi.end(), hb.begin(), hb.end());
    FitResult fr;
    fr.poly = std::move(q);
    fr.report.achieved = hi;
    fr.report.degree_used = m + t;
    return std::make_pair(worst_ratio(hi, eps_a, eps), std::move(fr));
  };
  // Extended-precision confirmation is expensive; run it for candidates only
  // and once more for the best double-precision attempt on failure.
  double best_ratio = INFINITY;
  std::optional<FitResult> best;
  double best_double = INFINITY;
  int best_m = -1;
  CVec best_c;
  int step = std::max(1, opt.degree_step);
  int start = std::clamp(opt.start_degree, 0, std::max(0, degree_cap));
  bool broke = false;
  BasisValues ba, bb;
  for (int m = start; m <= degree_cap; m = (m == degree_cap ? degree_cap + 1 : std::min(degree_cap, m + step))) {
    if (!arn.extend_to(m)) {
      broke = true;
      break;
    }
    CVec c = arn.solve(m);
    arn.replay(ba, va, m);
    arn.replay(bb, vb, m);
    auto dqa = arn.q_derivatives(ba, va, c);
    auto dqb = arn.q_derivatives(bb, vb, c);
    std::vector<SetError> errs = side_errors(dqa, orders_a, true, "a");
    auto eb = side_errors(dqb, orders_b, false, "b");
    errs.insert(errs.end(), eb.begin(), eb.end());
    double ratio = worst_ratio(errs, eps_a, eps);
    res.report.trace.push_back({m + t, ratio});
    if (ratio < best_double) {
      best_double = ratio;
      best_m = m;
      best_c = c;
    }
    if (ratio < 0.9) {
      auto [hratio, fr] = confirm(m, c);
      if (hratio < best_ratio) {
        best_ratio = hratio;
        best = std::move(fr);
      }
      if (hratio < 1.0) break;
    }
  }
  if (!(best_ratio < 1.0) && best_m >= 0 && !best) {
    auto [hratio, fr] = confirm(best_m, best_c);
    best_ratio = hratio;
    best = std::move(fr);
  }
  if (!best) {
    res.report.success = false;
    res.report.message += broke ? "basis breakdown before any candidate" : "no candidate";
    res.poly = Poly(Point{default_center});
    return res;
  }
  FitResult out = std::move(*best);
  out.report.trace = std::move(res.report.trace);
  out.report.conditioning.unknowns = out.report.degree_used - t + 1;
  out.report.conditioning.rows = static_cast<int>(arn.rows());
  out.report.conditioning.rank = arn.columns();
  out.report.success = best_ratio < 1.0;
  std::ostringstream msg;
  msg << res.report.message;
  if (out.report.success)
    msg << "bump met tolerances at total degree " << out.report.degree_used;
  else
    msg << (broke ? "basis breakdown; " : "degree cap reached; ") << "best error/tolerance ratio " << best_ratio;
  out.report.message = msg.str();
  return out;
}

}  // namespace unitaylor::approx

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "unitaylor/approx/approx.hpp"
#include "unitaylor/errors.hpp"
#include "unitaylor/parallel.hpp"

namespace unitaylor::approx {

namespace {

constexpr double kIllConditioned = 1e14;
constexpr std::size_t kMaxProductPoints = 20000;

// Fit grids with at least `want` product points when the descriptors allow.
std::vector<std::vector<Complex>> dense_fit_grids(const geometry::ProductCompact& k, std::size_t want) {
  auto grids = fit_grids(k);
  auto product_size = [&] {
    std::size_t n = 1;
    for (const auto& g : grids) n *= g.size();
    return n;
  };
  if (grids.size() == 1) {
    const auto& f = k.factors[0];
    double h = f.fit_spacing > 0 ? f.fit_spacing : f.h_grid;
    for (int halvings = 0; halvings < 8 && product_size() < want; ++halvings) {
      h *= 0.5;
      auto pk = geometry::sample(f.descriptor, geometry::Sampling{h, h});
      if (pk.validation_points.size() <= grids[0].size()) break;
      grids[0] = pk.validation_points;
    }
  } else if (product_size() < want) {
    grids = validation_grids(k);
  }
  // Thin out oversized products evenly per factor.
  while (product_size() > kMaxProductPoints) {
    std::size_t widest = 0;
    for (std::size_t i = 1; i < grids.size(); ++i)
      if (grids[i].size() > grids[widest].size()) widest = i;
    std::vector<Complex> thinned;
    for (std::size_t q = 0; q < grids[widest].size(); q += 2) thinned.push_back(grids[widest][q]);
    grids[widest] = std::move(thinned);
  }
  return grids;
}

HiReal falling(int n, int k) {
  HiReal r(1);
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace

double FitReport::max_error(const std::string& set) const {
  double best = 0.0;
  for (const auto& e : achieved)
    if (e.set == set) best = std::max(best, e.error);
  return best;
}

std::vector<SetError> measure_errors(const Poly& p, const TargetFunction& target,
                                     const std::vector<std::vector<Complex>>& grids,
                                     const DerivativeFamily& fam, const std::string& set) {
  std::vector<SetError> out;
  for (const auto& g : grids)
    if (g.empty()) {
      for (const auto& alpha : fam.members()) out.push_back({set, alpha, 0.0});
      return out;
    }
  auto pts = product_points(grids);
  for (const auto& alpha : fam.members()) {
    auto pv = evaluate_on_product(derivative(p, alpha), grids);
    auto tv = target.derivative_values(pts, alpha);
    double err = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) err = std::max(err, magnitude(pv[i] - tv[i]));
    out.push_back({set, alpha, err});
  }
  return out;
}

FitResult ls_fit_at_degree(const geometry::ProductCompact& k, const TargetFunction& target, int degree,
                           const DerivativeFamily& fam_in) {
  std::size_t d = k.dimension();
  if (d == 0 || d != target.dimension()) throw PreconditionError("ls_fit: dimension mismatch");
  if (degree < 0) throw PreconditionError("ls_fit: degree must be >= 0");
  DerivativeFamily fam = fam_in.empty() ? DerivativeFamily::values_only(d) : fam_in;
  FitResult res;
  Point center(d);
  for (std::size_t i = 0; i < d; ++i) center[i] = k.factors[i].centroid();
  res.poly = Poly(center);
  res.report.degree_used = degree;
  if (k.empty()) {
    res.report.success = true;
    res.report.message = "empty compact";
    return res;
  }

  MultiIndexEnum en(d);
  std::size_t n = static_cast<std::size_t>(en.count_up_to(degree));
  std::vector<MultiIndex> basis;
  for (std::size_t j = 0; j < n; ++j) basis.push_back(en.at(static_cast<std::int64_t>(j)));

  auto grids = dense_fit_grids(k, 4 * n / std::max<std::size_t>(1, fam.members().size()) + 1);
  std::vector<double> radius(d);
  for (std::size_t i = 0; i < d; ++i) {
    double r = 0.0;
    for (auto z : grids[i]) r = std::max(r, std::abs(z - center[i]));
    radius[i] = r > 0 ? r : 1.0;
  }
  auto pts = product_points(grids);
  std::vector<MultiIndex> alphas(fam.members().begin(), fam.members().end());
  std::size_t rows = pts.size() * alphas.size();

  // Scaled variables s_i = (z_i - c_i) / r_i in extended precision.
  std::vector<std::vector<HiComplex>> spow(pts.size() * d);
  std::vector<HiReal> rinv(d);
  for (std::size_t i = 0; i < d; ++i) rinv[i] = HiReal(1) / HiReal(radius[i]);
  parallel_for(pts.size(), [&](std::size_t p) {
    for (std::size_t i = 0; i < d; ++i) {
      auto& v = spow[p * d + i];
      HiComplex s = (to_hi(pts[p][i]) - to_hi(center[i])) * rinv[i];
      v.resize(static_cast<std::size_t>(degree) + 1);
      v[0] = HiComplex(1);
      for (int e = 1; e <= degree; ++e) v[static_cast<std::size_t>(e)] = v[static_cast<std::size_t>(e) - 1] * s;
    }
  });

  std::vector<HiComplex> a_hi(rows * n);
  parallel_for(rows, [&](std::size_t row) {
    std::size_t p = row / alphas.size();
    const MultiIndex& alpha = alphas[row % alphas.size()];
    for (std::size_t c = 0; c < n; ++c) {
      const MultiIndex& beta = basis[c];
      HiComplex v(1);
      bool zero = false;
      for (std::size_t i = 0; i < d && !zero; ++i) {
        if (alpha[i] > beta[i]) {
          zero = true;
          break;
        }
        if (alpha[i] > 0) {
          HiReal f = falling(beta[i], alpha[i]);
          for (int q = 0; q < alpha[i]; ++q) f *= rinv[i];
          v *= f;
        }
        v *= spow[p * d + i][static_cast<std::size_t>(beta[i] - alpha[i])];
      }
      a_hi[row * n + c] = zero ? HiComplex(0) : v;
    }
  });
  std::vector<HiComplex> b_hi(rows);
  for (std::size_t q = 0; q < alphas.size(); ++q) {
    auto tv = target.derivative_values(pts, alphas[q]);
    for (std::size_t p = 0; p < pts.size(); ++p) b_hi[p * alphas.size() + q] = tv[p];
  }

  Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < n; ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_double(a_hi[r * n + c]);
  Eigen::VectorXd colscale(static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    double nrm = a.col(c).norm();
    colscale(c) = nrm > 0 ? nrm : 1.0;
    a.col(c) /= colscale(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  auto& cond = res.report.conditioning;
  cond.rank = static_cast<int>(qr.rank());
  cond.unknowns = static_cast<int>(n);
  cond.rows = static_cast<int>(rows);
  {
    const auto& r = qr.matrixR();
    double top = std::abs(r(0, 0));
    double bottom = cond.rank > 0 ? std::abs(r(cond.rank - 1, cond.rank - 1)) : 0.0;
    cond.condition_estimate = bottom > 0 ? top / bottom : INFINITY;
  }

  // Solve in double, then refine with residuals in extended precision.
  std::vector<HiComplex> x(n, HiComplex(0));
  std::vector<HiComplex> resid = b_hi;
  double last = INFINITY;
  for (int iter = 0; iter < 10; ++iter) {
    Eigen::VectorXcd rd(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) rd(static_cast<Eigen::Index>(r)) = to_double(resid[r]);
    Eigen::VectorXcd delta = qr.solve(rd);
    double dnorm = 0.0, xnorm = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      Complex dc = delta(static_cast<Eigen::Index>(c)) / colscale(static_cast<Eigen::Index>(c));
      x[c] += to_hi(dc);
      dnorm = std::max(dnorm, std::abs(dc));
      xnorm = std::max(xnorm, magnitude(x[c]));
    }
    parallel_for(rows, [&](std::size_t r) {
      HiComplex acc = b_hi[r];
      for (std::size_t c = 0; c < n; ++c) acc -= a_hi[r * n + c] * x[c];
      resid[r] = acc;
    });
    double rel = xnorm > 0 ? dnorm / xnorm : 0.0;
    cond.refinement_residual = rel;
    if (rel < 1e-60 || rel >= 0.5 * last) break;
    last = rel;
  }

  Poly p(center);
  for (std::size_t c = 0; c < n; ++c) {
    HiComplex coeff = x[c];
    for (std::size_t i = 0; i < d; ++i)
      for (int q = 0; q < basis[c][i]; ++q) coeff *= rinv[i];
    p.set(basis[c], coeff);
  }
  res.poly = std::move(p);
  res.report.achieved = measure_errors(res.poly, target, validation_grids(k), fam, "K");
  double err = res.report.max_error("K");
  res.report.trace.push_back({degree, err});
  if (cond.condition_estimate > kIllConditioned) {
    res.report.message = "ill-conditioned least-squares system";
  }
  return res;
}

FitResult ls_fit(const geometry::ProductCompact& k, const TargetFunction& target, int degree_cap,
                 const DerivativeFamily& fam, double eps) {
  if (!(eps > 0)) throw PreconditionError("ls_fit: eps must be positive");
  if (degree_cap < 0) throw PreconditionError("ls_fit: degree cap must be >= 0");
  // Never ask for more unknowns than sample rows (a singleton supports degree 0).
  if (k.dimension() > 0 && !k.empty()) {
    std::size_t pts = 1;
    for (const auto& g : validation_grids(k)) pts *= g.size();
    std::size_t rows = pts * std::max<std::size_t>(1, fam.members().size());
    MultiIndexEnum en(k.dimension());
    int supported = 0;
    while (supported < degree_cap && static_cast<std::size_t>(en.count_up_to(supported + 1)) <= rows) ++supported;
    degree_cap = std::min(degree_cap, supported);
  }
  int degree = std::min(degree_cap, std::max(4, (degree_cap + 3) / 4));
  std::optional<FitResult> best;
  std::vector<TraceEntry> trace;
  while (true) {
    FitResult r = ls_fit_at_degree(k, target, degree, fam);
    double err = r.report.max_error("K");
    trace.push_back({degree, err});
    bool ill = r.report.conditioning.condition_estimate > kIllConditioned;
    if (!best || err < best->report.max_error("K")) best = r;
    if (err < eps && !ill) {
      best = std::move(r);
      best->report.success = true;
      break;
    }
    if (ill) {
      best->report.message = "ill-conditioned least-squares system at degree " + std::to_string(degree);
      break;
    }
    if (degree >= degree_cap) {
      std::ostringstream msg;
      msg << "degree cap " << degree_cap << " reached; best validation error " << best->report.max_error("K")
          << " >= eps " << eps;
      best->report.message = msg.str();
      break;
    }
    degree = std::min(degree_cap, degree + std::max(2, degree / 8));
  }
  best->report.trace = std::move(trace);
  return std::move(*best);
}

}  // namespace unitaylor::approx

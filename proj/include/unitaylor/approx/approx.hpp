#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unitaylor/approx/target.hpp"
#include "unitaylor/geometry/compact.hpp"
#include "unitaylor/polyalg/poly.hpp"

namespace unitaylor::approx {

struct SetError {
  std::string set;  // "K", "L", "a", "b"
  MultiIndex alpha;
  double error = 0.0;
};

struct TraceEntry {
  int degree = 0;
  double error = 0.0;
};

struct Conditioning {
  int rank = 0;
  int unknowns = 0;
  int rows = 0;
  double condition_estimate = 0.0;
  // Relative residual of the last refinement step.
  double refinement_residual = 0.0;
};

struct FitReport {
  bool success = false;
  std::string message;
  std::vector<SetError> achieved;  // validation-grid maxima
  int degree_used = -1;
  Conditioning conditioning;
  std::vector<TraceEntry> trace;

  double max_error(const std::string& set) const;
};

struct FitResult {
  Poly poly;
  FitReport report;
};

// Least-squares fit at one total degree; the report carries validation errors.
FitResult ls_fit_at_degree(const geometry::ProductCompact& k, const TargetFunction& target, int degree,
                           const DerivativeFamily& fam);

// Escalates the degree from max(4, ceil(cap/4)) to cap until the validation
// seminorm of P - target drops below eps.
FitResult ls_fit(const geometry::ProductCompact& k, const TargetFunction& target, int degree_cap,
                 const DerivativeFamily& fam, double eps);

struct BumpOptions {
  // Orders k with |D^k(q - 1)| < eps_a required on a (default: values only).
  std::vector<int> orders_a{0};
  std::optional<double> eps_a;
  // q is forced to vanish to this order at `vanish_center`.
  int vanish_order = 0;
  Complex vanish_center{0.0, 0.0};
  // Center of the returned polynomial (defaults to vanish_center when
  // vanish_order > 0, else the fit center).
  std::optional<Complex> center;
  int start_degree = 4;
  int degree_step = 2;
};

// One-variable q with |D^k(q - 1)| small on a and |D^k q| < eps on b for k in fam.
FitResult bump(const geometry::PlanarCompact& a, const geometry::PlanarCompact& b,
               const std::vector<int>& fam, double eps, int degree_cap,
               const BumpOptions& options = {});

struct GlueOptions {
  // Family and tolerance on the l_tilde side (default: fam and eps).
  std::optional<DerivativeFamily> fam_l;
  std::optional<double> eps_l;
  int vanish_order = 0;
};

// P = g_tilde * q(z_i0) with seminorm(P - g_tilde, k_tau, fam) < eps and
// seminorm(P, l_tilde, fam_l) < eps_l, both re-measured on validation grids.
FitResult glue(const Poly& g_tilde, const geometry::ProductCompact& k_tau,
               const geometry::ProductCompact& l_tilde, std::size_t i0, const DerivativeFamily& fam,
               double eps, int degree_cap, const GlueOptions& options = {});

// Validation-grid errors of P against the target, one entry per member of fam.
std::vector<SetError> measure_errors(const Poly& p, const TargetFunction& target,
                                     const std::vector<std::vector<Complex>>& grids,
                                     const DerivativeFamily& fam, const std::string& set);

}  // namespace unitaylor::approx

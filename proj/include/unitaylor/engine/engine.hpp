#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitaylor/approx/approx.hpp"
#include "unitaylor/geometry/scene.hpp"
#include "unitaylor/io/json_io.hpp"

namespace unitaylor::engine {

inline constexpr const char* kCertificateSchema = "unitaylor.certificate/1";
inline constexpr const char* kReportSchema = "unitaylor.report/1";
// Required smallness below this is reported as an infeasible budget.
inline constexpr double kSmallnessFloor = 1e-14;

// A_D: values only on K. O: the whole family F on K as well.
enum class Mode { AD, O };

struct TargetSpec {
  std::string expression;     // closed form, used when poly is absent
  std::optional<Poly> poly;   // explicit polynomial target
  approx::TargetFunction function(std::size_t dim) const;
  std::string describe() const;
};

struct Requirement {
  std::string id;
  enum class Source { Factors, Tau, Point } source = Source::Factors;
  std::int64_t tau = 0;
  std::vector<geometry::Descriptor> factors;  // resolved compact K
  TargetSpec target;
  double epsilon = 0.0;
  DerivativeFamily fam;  // gapless closure applied on resolution
  int level = 1;         // selects L_m
  Mode mode = Mode::AD;
  // Uniform-center mode: centers zeta range over this compact.
  std::optional<std::vector<geometry::Descriptor>> uniform_center;

  DerivativeFamily fam_k(std::size_t dim) const;
};

struct GridConfig {
  double fit_spacing = 0.05;
  double validation_spacing = 0.025;
  double box_margin = 0.5;
};

struct Caps {
  int degree = 90;      // free degree of bumps
  int fit_degree = 40;  // least-squares fits
  int retries = 3;
};

struct Config {
  geometry::DomainScene scene;
  GridConfig grid;
  Caps caps;
  std::optional<Poly> seed;
};

// Scene hash: FNV-1a over the canonical scene JSON.
std::string scene_hash(const geometry::DomainScene& scene);

// Resolves tau/point sources and applies the gapless closure; throws
// ConfigError naming the violated invariant.
Requirement resolve(const geometry::DomainScene& scene, Requirement r);

struct ResolvedRequirement {
  Requirement req;
  geometry::ProductCompact k;
  std::size_t i0 = 0;       // separating factor
  double separation = 0.0;  // min distance of factor i0 to closure(Omega_i0)
};

ResolvedRequirement validate_requirement(const Config& cfg, const Requirement& r, double spacing_divisor = 1.0);

struct PlannedStage {
  std::size_t index = 0;
  std::string requirement;
  // Reservation eps_i / 2^(r-i+1) for every earlier requirement i.
  std::vector<std::pair<std::string, double>> reservations;
  std::string cut_rule;
};

std::vector<PlannedStage> plan_schedule(const std::vector<Requirement>& reqs, const geometry::CutSet& mu);

struct LedgerEntry {
  std::string requirement;  // earlier requirement i
  std::size_t stage = 0;    // later stage s (1-based)
  double allocated = 0.0;
  // Bound on |change of E_K(i)| from the actual coefficient changes at indices <= lambda_i.
  double consumed_bound = 0.0;
  double measured_k = 0.0;  // |E_K(i) after s - E_K(i) before s|
  double measured_l = 0.0;  // seminorm of P_s on L_{m_i}
};

struct StageSnapshot {
  std::size_t stage = 0;
  std::vector<double> error_k;  // E_K(i) for i = 1..stage
  std::vector<double> error_l;
};

struct RequirementResult {
  std::string id;
  double epsilon = 0.0;
  std::int64_t cut = -1;
  std::size_t i0 = 0;
  int vanish_order = 0;
  double smallness = 0.0;  // tolerance demanded on L
  int attempts = 0;
  double error_k = 0.0;
  double error_l = 0.0;
  std::vector<approx::SetError> errors;
  approx::FitReport fit_report;
  approx::FitReport glue_report;
};

struct Failure {
  std::string requirement;
  std::size_t stage = 0;
  std::string binding_budget;
  std::string message;
};

struct Certificate {
  std::string schema = kCertificateSchema;
  std::string scene_hash;
  std::string enumeration_rule;
  std::string center_mode = "fixed-center";
  Poly f;
  std::vector<std::int64_t> cuts;
  std::vector<RequirementResult> results;
  std::vector<LedgerEntry> ledger;
  std::vector<StageSnapshot> snapshots;
  GridConfig grid;
  Caps caps;
  int budget_level = 1;
  double budget_radius = 0.0;
  std::optional<Failure> failure;

  bool success() const { return !failure; }
};

Certificate construct(const Config& cfg, const std::vector<Requirement>& reqs);

struct RequirementCheck {
  std::string id;
  double epsilon = 0.0;
  std::int64_t cut = -1;
  double error_k = 0.0;
  double error_l = 0.0;
  std::vector<approx::SetError> errors;
  bool pass = false;
};

struct VerifyReport {
  std::string kind = "verify";
  double resolution = 2.0;
  std::vector<RequirementCheck> checks;
  std::vector<std::string> problems;  // structural issues (cuts, mu, counts)
  bool pass = false;
};

// Throws ConfigError on a scene-hash or enumeration-rule mismatch.
VerifyReport verify(const Certificate& cert, const Config& cfg, const std::vector<Requirement>& reqs,
                    double resolution);

// Max over zeta on l_tilde's validation grid of both quantities for requirement `index`.
VerifyReport verify_uniform_center(const Certificate& cert, const Config& cfg,
                                   const std::vector<Requirement>& reqs, std::size_t index,
                                   const std::vector<geometry::Descriptor>& l_tilde, double resolution);

struct ValueGrid {
  geometry::Box box{-4, 4, -4, 4};
  double cell = 1.0;
};

struct ScanResult {
  std::vector<Complex> visited;  // S_k(f, zeta)(z), k = 0..N
  std::size_t cells_hit = 0;
  std::size_t cells_total = 0;
  double coverage = 0.0;
};

ScanResult universal_point_scan(const Poly& f, const Point& zeta, const Point& z, std::int64_t horizon,
                                const ValueGrid& grid);

io::Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const io::Json& j);
io::Json report_to_json(const VerifyReport& r);
std::string report_to_text(const VerifyReport& r);

}  // namespace unitaylor::engine

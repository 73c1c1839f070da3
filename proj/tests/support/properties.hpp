#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unitaylor::testing {

// Outcome of one randomized property suite.
struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // worst observed value of the checked quantity
  std::string first_failure;
};

// Polynomial algebra, `cases` random polynomials in 1 or 2 variables each.
SuiteResult recentering_exactness(int cases, std::uint64_t seed);
SuiteResult recentering_round_trip(int cases, std::uint64_t seed);
SuiteResult truncation_identity(int cases, std::uint64_t seed);
SuiteResult derivative_order(int cases, std::uint64_t seed);  // worst = smallest observed order
SuiteResult cauchy_soundness(int cases, std::uint64_t seed);

// Exhaustions of random (domain, portion, n): monotone, absorbing for
// `inner` random compacts, complements certified connected.
struct ExhaustionAudit {
  int triples = 0;
  int monotone_failures = 0;
  int membership_failures = 0;
  int absorbing_failures = 0;
  int disconnected = 0;
  int inconclusive = 0;
  std::vector<std::string> notes;
};

ExhaustionAudit exhaustion_audit(int triples, int inner, std::uint64_t seed);

}  // namespace unitaylor::testing

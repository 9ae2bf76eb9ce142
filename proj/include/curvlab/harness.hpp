#ifndef CURVLAB_HARNESS_HPP
#define CURVLAB_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/conditions.hpp"

// Named verification suites over models and filtered random tensors, with
// machine-readable pass/fail records. Suite ids:
//
//   lemma31  the five quadratic-form identities on the 3-dimensional basis
//   prop32   Ricci lower bound S/12 in dimension three, plus the degenerate
//            zero-eigenvalue branch
//   prop42   trace identities, the S/(n(n+1)) Ricci bound, sectional
//            nonnegativity from 2-nonnegativity, and the frame implications
//            of 3-nonnegativity / full nonnegativity
//   lemmas4x the frame-search implication checks in their own right, at the
//            configured budget
//   prop51   splitting obstruction for product tensors and its sharpness
//   kahler   incompatibility of the strengthened isotropic inequality with
//            a complex structure; vanishing orthogonal bisectional curvature
//            identities on flat structures

namespace curvlab {

struct HarnessConfig {
  std::uint64_t seed = 42;
  int trials = 200;           // randomized trials per suite
  std::int64_t budget = 5000; // frame-search samples per certificate
  std::vector<int> dims = {3, 4, 5, 6};
  int min_yield = 20;         // accepted samples a filtered suite must reach
  int filter_max_attempts = 6000;
  bool inject_flipped_sphere = false;  // fault injection for self-tests
  Execution exec = Execution::Parallel;
  std::vector<std::string> suites = {"lemma31", "prop32", "prop42",
                                     "lemmas4x", "prop51", "kahler"};
};

// One failed check, with enough provenance to re-run deterministically.
struct FailureRecord {
  std::string case_id;  // "suite/case", includes dims, seeds, model names
  double margin = 0.0;  // signed distance to the passing region
  std::vector<std::pair<std::string, double>> measured;
  std::string detail;   // optional human-readable context
};

struct SuiteResult {
  std::string id;
  std::int64_t trials = 0;
  std::int64_t passes = 0;
  std::vector<FailureRecord> failures;
  std::string status;           // pass | fail | insufficient-yield
  std::int64_t samples_accepted = -1;  // filtered suites only
  std::string note;
  double wall_ms = 0.0;  // informational; never serialized
};

struct VerificationReport {
  std::string version = "curvlab-report/1";
  std::string status;  // pass | fail | nothing-run
  HarnessConfig config;
  std::vector<SuiteResult> suites;
  bool all_passed() const { return status == "pass"; }
};

// Known suite ids in canonical report order.
const std::vector<std::string>& suite_ids();
bool is_suite_id(const std::string& id);

SuiteResult run_suite(const std::string& id, const HarnessConfig& config);

// Runs config.suites in canonical order and aggregates. Empty selection
// yields an empty report with status "nothing-run".
VerificationReport run_all(const HarnessConfig& config);

// Deterministic JSON encoding; wall times are excluded so identical configs
// produce byte-identical reports.
std::string report_to_json(const VerificationReport& report);

}  // namespace curvlab

#endif  // CURVLAB_HARNESS_HPP

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvlab/harness.hpp"

using namespace curvlab;

namespace {

HarnessConfig small_config() {
  HarnessConfig cfg;
  cfg.seed = 42;
  cfg.trials = 40;
  cfg.budget = 800;
  cfg.min_yield = 8;
  return cfg;
}

}  // namespace

TEST_CASE("suite ids are fixed and validated") {
  CHECK(suite_ids().size() == 6);
  for (const auto& id : suite_ids()) CHECK(is_suite_id(id));
  CHECK_FALSE(is_suite_id("bogus"));
  CHECK_THROWS_AS(run_suite("bogus", small_config()), std::invalid_argument);
}

TEST_CASE("every suite passes on a small configuration") {
  const HarnessConfig cfg = small_config();
  for (const auto& id : suite_ids()) {
    const SuiteResult res = run_suite(id, cfg);
    CAPTURE(id);
    CHECK(res.status == "pass");
    CHECK(res.trials > 0);
    CHECK(res.passes + static_cast<std::int64_t>(res.failures.size()) ==
          res.trials);
  }
}

TEST_CASE("filtered suites report their accepted sample count") {
  const SuiteResult res = run_suite("prop32", small_config());
  CHECK(res.samples_accepted >= 8);
}

TEST_CASE("insufficient yield is a distinct non-pass status") {
  HarnessConfig cfg = small_config();
  cfg.filter_max_attempts = 1;  // cannot possibly reach the yield target
  const SuiteResult res = run_suite("prop32", cfg);
  CHECK(res.status == "insufficient-yield");
  CHECK(res.status != "pass");
  CHECK(res.status != "fail");
}

TEST_CASE("fault injection produces a counterexample payload") {
  HarnessConfig cfg = small_config();
  cfg.dims = {4};
  cfg.trials = 10;
  cfg.inject_flipped_sphere = true;
  const SuiteResult res = run_suite("prop42", cfg);
  CHECK(res.status == "fail");
  REQUIRE(res.failures.size() == 1);
  const FailureRecord& f = res.failures.front();
  CHECK(f.case_id.find("injected") != std::string::npos);
  CHECK(f.margin < 0.0);
  bool has_min_ricci = false;
  for (const auto& [k, v] : f.measured) {
    if (k == "min_ricci") {
      has_min_ricci = true;
      CHECK(v == doctest::Approx(-3.0));
    }
  }
  CHECK(has_min_ricci);
}

TEST_CASE("failures reproduce exactly on a re-run") {
  HarnessConfig cfg = small_config();
  cfg.dims = {4};
  cfg.trials = 10;
  cfg.inject_flipped_sphere = true;
  const SuiteResult a = run_suite("prop42", cfg);
  const SuiteResult b = run_suite("prop42", cfg);
  REQUIRE(a.failures.size() == b.failures.size());
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    CHECK(a.failures[i].case_id == b.failures[i].case_id);
    CHECK(a.failures[i].margin == b.failures[i].margin);
    CHECK(a.failures[i].measured == b.failures[i].measured);
  }
}

TEST_CASE("run_all aggregates in canonical order") {
  HarnessConfig cfg = small_config();
  cfg.dims = {4};
  cfg.trials = 10;
  cfg.suites = {"prop32", "lemma31"};  // order given does not matter
  const VerificationReport rep = run_all(cfg);
  REQUIRE(rep.suites.size() == 2);
  CHECK(rep.suites[0].id == "lemma31");
  CHECK(rep.suites[1].id == "prop32");
  CHECK(rep.status == "pass");
  CHECK(rep.all_passed());
}

TEST_CASE("empty configuration runs nothing") {
  HarnessConfig cfg = small_config();
  cfg.suites = {};
  const VerificationReport rep = run_all(cfg);
  CHECK(rep.status == "nothing-run");
  CHECK(rep.suites.empty());
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("report JSON is deterministic and excludes wall time") {
  HarnessConfig cfg = small_config();
  cfg.dims = {4};
  cfg.trials = 15;
  cfg.suites = {"lemma31", "prop51"};
  const std::string a = report_to_json(run_all(cfg));
  const std::string b = report_to_json(run_all(cfg));
  CHECK(a == b);
  CHECK(a.find("wall") == std::string::npos);
  // failure payloads serialize deterministically too
  cfg.suites = {"prop42"};
  cfg.inject_flipped_sphere = true;
  const std::string fa = report_to_json(run_all(cfg));
  const std::string fb = report_to_json(run_all(cfg));
  CHECK(fa == fb);
  CHECK(fa.find("sphere-flipped") != std::string::npos);
}

TEST_CASE("serial and parallel suite execution agree") {
  HarnessConfig cfg = small_config();
  cfg.dims = {4};
  cfg.trials = 20;
  cfg.suites = {"lemma31", "prop32", "prop51"};
  cfg.exec = Execution::Serial;
  const std::string s = report_to_json(run_all(cfg));
  cfg.exec = Execution::Parallel;
  const std::string p = report_to_json(run_all(cfg));
  CHECK(s == p);
}

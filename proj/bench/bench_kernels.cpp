// Benchmark of the OpenMP kernels against their serial reference
// implementations. Each section times both paths on the same inputs, checks
// the outputs are bit-identical, and prints the speedup.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "curvlab/conditions.hpp"
#include "curvlab/harness.hpp"

using namespace curvlab;

namespace {

double time_ms(const std::function<void()>& work) {
  const auto t0 = std::chrono::steady_clock::now();
  work();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const char* label, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-34s serial %9.2f ms   parallel %9.2f ms   x%.2f   %s\n",
              label, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              identical ? "bit-identical" : "MISMATCH");
}

void bench_gram(int n, int reps) {
  const CurvatureTensor r = random_curvature(Dimension(n), 9001);
  SymForm serial_out, parallel_out;
  const double ts = time_ms([&] {
    for (int i = 0; i < reps; ++i) {
      serial_out =
          second_kind_matrix(r, SecondKindDomain::Traceless, Execution::Serial);
    }
  });
  const double tp = time_ms([&] {
    for (int i = 0; i < reps; ++i) {
      parallel_out = second_kind_matrix(r, SecondKindDomain::Traceless,
                                        Execution::Parallel);
    }
  });
  const bool same = serial_out.matrix.data() == parallel_out.matrix.data();
  const std::string label =
      "second-kind gram n=" + std::to_string(n) + " x" + std::to_string(reps);
  report(label.c_str(), ts, tp, same);
}

void bench_certify(int n, std::int64_t budget) {
  const CurvatureTensor r = random_curvature(Dimension(n), 4242);
  ConditionExpr expr;
  expr.tag = ConditionTag::Pic1;
  FrameCertificate cs, cp;
  const double ts = time_ms(
      [&] { cs = certify_min(r, expr, budget, 7, Execution::Serial); });
  const double tp = time_ms(
      [&] { cp = certify_min(r, expr, budget, 7, Execution::Parallel); });
  const bool same = cs.best_value == cp.best_value &&
                    cs.refinement_steps == cp.refinement_steps &&
                    std::memcmp(cs.frame.vectors[0].data(),
                                cp.frame.vectors[0].data(),
                                sizeof(double) * cs.frame.vectors[0].size()) == 0;
  const std::string label = "certify pic1 n=" + std::to_string(n) +
                            " budget=" + std::to_string(budget);
  report(label.c_str(), ts, tp, same);
}

void bench_suite(const char* id) {
  HarnessConfig cfg;
  cfg.trials = 100;
  cfg.budget = 1000;
  SuiteResult rs, rp;
  cfg.exec = Execution::Serial;
  const double ts = time_ms([&] { rs = run_suite(id, cfg); });
  cfg.exec = Execution::Parallel;
  const double tp = time_ms([&] { rp = run_suite(id, cfg); });
  const bool same = rs.passes == rp.passes && rs.trials == rp.trials &&
                    rs.failures.size() == rp.failures.size();
  const std::string label = std::string("suite ") + id;
  report(label.c_str(), ts, tp, same);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  std::printf("curvlab kernel benchmark, %d thread(s)\n\n", max_threads());
  bench_gram(6, quick ? 20 : 200);
  bench_gram(8, quick ? 5 : 50);
  bench_certify(5, quick ? 2000 : 20000);
  bench_certify(6, quick ? 1000 : 10000);
  if (!quick) {
    bench_suite("lemma31");
    bench_suite("prop32");
  }
  return 0;
}

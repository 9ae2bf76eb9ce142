#include "curvlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>

#include "curvlab/json_writer.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

namespace {

struct TrialOutcome {
  bool pass = false;
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> measured;
  std::string detail;
};

struct Trial {
  std::string case_id;
  std::function<TrialOutcome()> run;
};

TrialOutcome pass_if(bool ok, double margin,
                     std::vector<std::pair<std::string, double>> measured,
                     std::string detail = {}) {
  return TrialOutcome{ok, margin, std::move(measured), std::move(detail)};
}

double band_of(const CurvatureTensor& r) { return 1e-8 * (1.0 + r.max_abs()); }

// Sub-seed salts, one per random consumer; arbitrary but frozen.
constexpr std::uint64_t kSaltLemma31 = 0x31a1;
constexpr std::uint64_t kSaltProp32 = 0x32b2;
constexpr std::uint64_t kSaltProp42 = 0x42c3;
constexpr std::uint64_t kSaltLemmas4x = 0x4cd4;
constexpr std::uint64_t kSaltProp51 = 0x51e5;
constexpr std::uint64_t kSaltKahler = 0x6af6;
constexpr std::uint64_t kSaltFiltered = 0x77a0;

double sum_k_smallest_second(const CurvatureTensor& r, int k, Execution exec) {
  const Spectrum s =
      second_kind_spectrum(r, SecondKindDomain::Traceless, 1e-12, exec);
  return smallest_k_sum(s, k);
}

double min_second_eigenvalue(const CurvatureTensor& r, Execution exec) {
  const Spectrum s =
      second_kind_spectrum(r, SecondKindDomain::Traceless, 1e-12, exec);
  return s.eigenvalues.front();
}

// Hypothesis predicates. Boundary samples (inside the tolerance band) are
// excluded from implication checks, so "k-nonnegative" acceptance demands
// the eigenvalue sum clear the band from above.
bool hyp_k_nonneg(const CurvatureTensor& r, int k, Execution exec) {
  return sum_k_smallest_second(r, k, exec) >= band_of(r);
}

bool hyp_full_nonneg(const CurvatureTensor& r, Execution exec) {
  return min_second_eigenvalue(r, exec) >= -1e-12 * (1.0 + r.max_abs());
}

struct NamedTensor {
  std::string name;
  CurvatureTensor tensor;
};

struct FilteredSet {
  std::vector<NamedTensor> samples;  // name carries the sub-seed for re-runs
  std::int64_t attempts = 0;
  bool reached = false;
};

FilteredSet collect_filtered(
    Dimension dim, std::uint64_t seed, std::uint64_t salt,
    const std::function<bool(const CurvatureTensor&)>& predicate, int target,
    int max_attempts_total) {
  FilteredSet out;
  constexpr int kAttemptsPerSlot = 60;
  int slot = 0;
  while (static_cast<int>(out.samples.size()) < target &&
         out.attempts < max_attempts_total) {
    const std::uint64_t sub =
        CounterRng::derive(CounterRng::derive(seed, salt), slot);
    auto got = random_filtered(dim, sub, predicate, kAttemptsPerSlot);
    out.attempts += got ? got->attempts : kAttemptsPerSlot;
    if (got) {
      out.samples.push_back(
          NamedTensor{"seed=" + std::to_string(sub), std::move(got->tensor)});
    }
    ++slot;
  }
  out.reached = static_cast<int>(out.samples.size()) >= target;
  return out;
}

// Models with known second-kind behavior in the given ambient dimension.
std::vector<NamedTensor> model_catalog(int n) {
  std::vector<NamedTensor> models;
  models.push_back({"sphere", sphere(Dimension(n), 1.0)});
  if (n >= 3) models.push_back({"cylinder", cylinder(Dimension(n))});
  if (n == 4) {
    models.push_back(
        {"s2xs2", product(sphere(Dimension(2), 1.0), sphere(Dimension(2), 1.0))});
    models.push_back({"cp2", cpn(2).tensor});
  }
  if (n == 6) models.push_back({"cp3", cpn(3).tensor});
  return models;
}

// Unit pair (x, y) with g(x, y) = g(x, Jy) = 0, drawn deterministically.
std::pair<std::vector<double>, std::vector<double>> admissible_pair(
    const ComplexStructure& j, std::uint64_t seed, int index) {
  const int n = 2 * j.m;
  CounterRng rng(seed, kStreamVector);
  const std::uint64_t base = static_cast<std::uint64_t>(index) << 16;
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t at = base + attempt * 2ull * n;
    std::vector<double> x(n), y(n);
    for (int t = 0; t < n; ++t) x[t] = rng.gaussian(at + t);
    for (int t = 0; t < n; ++t) y[t] = rng.gaussian(at + n + t);
    double nx = 0.0;
    for (double v : x) nx += v * v;
    if (nx < 1e-12) continue;
    nx = std::sqrt(nx);
    for (double& v : x) v /= nx;
    const std::vector<double> jx = j.apply(x);
    for (int pass = 0; pass < 2; ++pass) {
      double cx = 0.0, cj = 0.0;
      for (int t = 0; t < n; ++t) {
        cx += y[t] * x[t];
        cj += y[t] * jx[t];
      }
      for (int t = 0; t < n; ++t) y[t] -= cx * x[t] + cj * jx[t];
    }
    double ny = 0.0;
    for (double v : y) ny += v * v;
    if (ny < 1e-12) continue;
    ny = std::sqrt(ny);
    for (double& v : y) v /= ny;
    return {std::move(x), std::move(y)};
  }
  throw std::runtime_error("admissible_pair: degenerate draw stream");
}

double tensor_value(const CurvatureTensor& r, const std::vector<double>& a,
                    const std::vector<double>& b, const std::vector<double>& c,
                    const std::vector<double>& d) {
  return pairing(r.lambda2_matrix(), wedge(a, b), wedge(c, d));
}

SuiteResult execute_trials(const std::string& id, std::vector<Trial> trials,
                           const HarnessConfig& cfg,
                           std::int64_t samples_accepted, bool yield_ok,
                           std::string note) {
  SuiteResult res;
  res.id = id;
  res.note = std::move(note);
  res.samples_accepted = samples_accepted;
  res.trials = static_cast<std::int64_t>(trials.size());
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(trials.size());
  for_each_index(
      static_cast<std::int64_t>(trials.size()),
      [&](std::int64_t i) {
        try {
          outcomes[i] = trials[i].run();
        } catch (const std::exception& e) {
          outcomes[i] = TrialOutcome{false, 0.0, {}, std::string("exception: ") + e.what()};
        }
      },
      cfg.exec);

  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (outcomes[i].pass) {
      ++res.passes;
    } else {
      res.failures.push_back(FailureRecord{trials[i].case_id,
                                           outcomes[i].margin,
                                           outcomes[i].measured,
                                           outcomes[i].detail});
    }
  }
  res.status = !yield_ok ? "insufficient-yield"
                         : (res.failures.empty() ? "pass" : "fail");
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

// ---------------------------------------------------------------------------
// lemma31: the five quadratic-form identities over the 3-dimensional
// traceless basis, on models and random tensors.
// ---------------------------------------------------------------------------

TrialOutcome check_dim3_identities(const CurvatureTensor& r, double rel_tol) {
  const auto basis = traceless_basis(Dimension(3));
  const double tol = rel_tol * (1.0 + r.max_abs());
  const double r1212 = r.component(1, 2, 1, 2);
  const double r1313 = r.component(1, 3, 1, 3);
  const double r2323 = r.component(2, 3, 2, 3);
  const double expected[5] = {
      r1212, r1313, r2323, r1212,
      (2.0 / 3.0) * (r1313 + r2323) - (1.0 / 3.0) * r1212};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double got = second_kind_bilinear(r, basis[i], basis[i]);
    worst = std::max(worst, std::abs(got - expected[i]));
  }
  return pass_if(worst <= tol, tol - worst, {{"max_error", worst}});
}

SuiteResult suite_lemma31(const HarnessConfig& cfg) {
  std::vector<Trial> trials;
  {
    CurvatureTensor s3 = sphere(Dimension(3), 1.0);
    trials.push_back({"lemma31/model=sphere3", [s3] {
                        auto out = check_dim3_identities(s3, 1e-12);
                        // constant curvature: every identity evaluates to 1
                        const auto basis = traceless_basis(Dimension(3));
                        for (const auto& b : basis) {
                          const double v = second_kind_bilinear(s3, b, b);
                          if (std::abs(v - 1.0) > 1e-12) {
                            out.pass = false;
                            out.detail = "identity value deviates from 1";
                          }
                        }
                        return out;
                      }});
    CurvatureTensor f3 = flat(Dimension(3));
    trials.push_back({"lemma31/model=flat3",
                      [f3] { return check_dim3_identities(f3, 1e-12); }});
  }
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t sub =
        CounterRng::derive(CounterRng::derive(cfg.seed, kSaltLemma31), t);
    trials.push_back({"lemma31/random/t=" + std::to_string(t) +
                          "/seed=" + std::to_string(sub),
                      [sub] {
                        return check_dim3_identities(
                            random_curvature(Dimension(3), sub), 1e-12);
                      }});
  }
  return execute_trials("lemma31", std::move(trials), cfg, -1, true, {});
}

// ---------------------------------------------------------------------------
// prop32: three-dimensional Ricci bound S/12 under 3-nonnegativity, plus the
// degenerate branch (zero Ricci eigenvalue forces the zero tensor).
// ---------------------------------------------------------------------------

TrialOutcome check_ricci_floor(const CurvatureTensor& r) {
  const RicciBoundReport rep = ricci_bound_check(r, /*strict=*/false, 1e-8);
  TrialOutcome out = pass_if(rep.passes, rep.margin,
                             {{"min_ricci", rep.min_ricci},
                              {"threshold", rep.threshold}});
  // Degenerate branch: a vanishing Ricci eigenvalue forces R = 0.
  const double scale = 1.0 + r.max_abs();
  if (std::abs(rep.min_ricci) <= 1e-10 * scale && r.max_abs() > 1e-10 * scale) {
    out.pass = false;
    out.detail = "zero Ricci eigenvalue on a nonzero tensor";
  }
  return out;
}

SuiteResult suite_prop32(const HarnessConfig& cfg) {
  const Dimension dim(3);
  std::vector<Trial> trials;
  {
    CurvatureTensor s3 = sphere(dim, 1.0);
    trials.push_back(
        {"prop32/model=sphere3", [s3] { return check_ricci_floor(s3); }});
    CurvatureTensor f3 = flat(dim);
    trials.push_back({"prop32/model=flat3", [f3] {
                        // equality case: Ricci vanishes and so does R
                        const bool zero = f3.max_abs() == 0.0;
                        return pass_if(zero, 0.0, {{"max_abs", f3.max_abs()}});
                      }});
  }
  auto pred = [&cfg](const CurvatureTensor& r) {
    return hyp_k_nonneg(r, 3, cfg.exec);
  };
  FilteredSet set = collect_filtered(dim, cfg.seed, kSaltProp32, pred,
                                     cfg.min_yield, cfg.filter_max_attempts);
  for (std::size_t s = 0; s < set.samples.size(); ++s) {
    const CurvatureTensor r = set.samples[s].tensor;
    trials.push_back({"prop32/sample=" + std::to_string(s) + "/" +
                          set.samples[s].name,
                      [r] { return check_ricci_floor(r); }});
  }
  return execute_trials("prop32", std::move(trials), cfg,
                        static_cast<std::int64_t>(set.samples.size()),
                        set.reached, {});
}

// ---------------------------------------------------------------------------
// prop42: the five algebraic implications in dimensions 4..6.
// ---------------------------------------------------------------------------

PositivityClass classify(double value, double band) {
  if (value > band) return PositivityClass::Positive;
  if (value >= -band) return PositivityClass::Nonnegative;
  return PositivityClass::Indefinite;
}

TrialOutcome check_trace_vs_scalar(const CurvatureTensor& r, Execution exec) {
  const int n = r.n();
  const Dimension dim = r.dim();
  const double sum_all =
      sum_k_smallest_second(r, dim.sym2_traceless(), exec);
  const double s = scalar(r);
  const double expected = (n + 2) * s / (2.0 * n);
  const double scale = 1.0 + r.max_abs();
  const double err = std::abs(sum_all - expected);
  const double band = band_of(r);
  const bool classes_agree =
      classify(sum_all, band) == classify(expected, band);
  return pass_if(err <= 1e-10 * scale && classes_agree, 1e-10 * scale - err,
                 {{"eigenvalue_sum", sum_all}, {"scaled_scalar", expected}});
}

TrialOutcome check_expected_exempt(bool hypothesis_holds) {
  return pass_if(!hypothesis_holds, hypothesis_holds ? -1.0 : 1.0,
                 {{"hypothesis", hypothesis_holds ? 1.0 : 0.0}},
                 hypothesis_holds ? "expected the hypothesis filter to exclude this tensor"
                                  : "");
}

TrialOutcome check_min_sectional(const CurvatureTensor& r) {
  const int n = r.n();
  double min_sec = 0.0;
  bool first = true;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double v = sectional(r, i, j);
      if (first || v < min_sec) {
        min_sec = v;
        first = false;
      }
    }
  }
  const double floor = -1e-10 * (1.0 + r.max_abs());
  return pass_if(min_sec >= floor, min_sec - floor,
                 {{"min_sectional", min_sec}});
}

TrialOutcome check_certified_floor(const CurvatureTensor& r, ConditionTag tag,
                                   double beta, std::int64_t budget,
                                   std::uint64_t seed, Execution exec) {
  ConditionExpr expr;
  expr.tag = tag;
  expr.beta = beta;
  const FrameCertificate cert = certify_min(r, expr, budget, seed, exec);
  const double floor = -band_of(r);
  return pass_if(cert.best_value >= floor, cert.best_value - floor,
                 {{"best_value", cert.best_value},
                  {"lambda", cert.expr.lambda},
                  {"mu", cert.expr.mu}});
}

SuiteResult suite_prop42(const HarnessConfig& cfg) {
  std::vector<Trial> trials;
  std::int64_t accepted = 0;
  bool yield_ok = true;
  const std::int64_t part_budget = std::max<std::int64_t>(500, cfg.budget / 10);

  for (int n : cfg.dims) {
    if (n < 4 || n > 6) continue;
    const Dimension dim(n);
    const std::uint64_t dim_seed =
        CounterRng::derive(CounterRng::derive(cfg.seed, kSaltProp42), n);
    const std::string nn = "/n=" + std::to_string(n);

    // part 1: full trace vs scalar curvature, with sign classification
    for (const auto& m : model_catalog(n)) {
      const CurvatureTensor r = m.tensor;
      const Execution exec = cfg.exec;
      trials.push_back({"prop42/part1" + nn + "/model=" + m.name,
                        [r, exec] { return check_trace_vs_scalar(r, exec); }});
    }
    const int random_count = std::min(cfg.trials, 100);
    for (int t = 0; t < random_count; ++t) {
      const std::uint64_t sub = CounterRng::derive(dim_seed, 100 + t);
      const Execution exec = cfg.exec;
      trials.push_back({"prop42/part1" + nn + "/random/t=" + std::to_string(t) +
                            "/seed=" + std::to_string(sub),
                        [sub, dim, exec] {
                          return check_trace_vs_scalar(
                              random_curvature(dim, sub), exec);
                        }});
    }

    // part 2: n-nonnegative second kind pushes Ricci above S/(n(n+1))
    {
      const CurvatureTensor s = sphere(dim, 1.0);
      trials.push_back(
          {"prop42/part2" + nn + "/model=sphere", [s] { return check_ricci_floor(s); }});
      const CurvatureTensor cyl = cylinder(dim);
      const Execution exec = cfg.exec;
      trials.push_back({"prop42/part2" + nn + "/model=cylinder/expect-exempt",
                        [cyl, n, exec] {
                          return check_expected_exempt(hyp_k_nonneg(cyl, n, exec));
                        }});
      if (cfg.inject_flipped_sphere && n == 4) {
        // fault injection: a sign-flipped sphere pretending to satisfy the
        // hypothesis must produce a counterexample record
        const CurvatureTensor bad = -1.0 * sphere(dim, 1.0);
        trials.push_back({"prop42/part2" + nn + "/model=sphere-flipped[injected]",
                          [bad] { return check_ricci_floor(bad); }});
      }
      auto pred = [n, exec](const CurvatureTensor& r) {
        return hyp_k_nonneg(r, n, exec);
      };
      FilteredSet set =
          collect_filtered(dim, dim_seed, kSaltFiltered + 2, pred,
                           cfg.min_yield, cfg.filter_max_attempts);
      accepted += static_cast<std::int64_t>(set.samples.size());
      yield_ok = yield_ok && set.reached;
      for (std::size_t k = 0; k < set.samples.size(); ++k) {
        const CurvatureTensor r = set.samples[k].tensor;
        trials.push_back({"prop42/part2" + nn + "/sample=" + std::to_string(k) +
                              "/" + set.samples[k].name,
                          [r] { return check_ricci_floor(r); }});
      }
    }

    // part 3: 2-nonnegative second kind gives nonnegative sectional curvature
    {
      const Execution exec = cfg.exec;
      auto pred = [exec](const CurvatureTensor& r) {
        return hyp_k_nonneg(r, 2, exec);
      };
      FilteredSet set =
          collect_filtered(dim, dim_seed, kSaltFiltered + 3, pred,
                           cfg.min_yield, cfg.filter_max_attempts);
      accepted += static_cast<std::int64_t>(set.samples.size());
      yield_ok = yield_ok && set.reached;
      for (std::size_t k = 0; k < set.samples.size(); ++k) {
        const CurvatureTensor r = set.samples[k].tensor;
        trials.push_back({"prop42/part3" + nn + "/sample=" + std::to_string(k) +
                              "/" + set.samples[k].name,
                          [r] { return check_min_sectional(r); }});
      }
    }

    // parts 4 and 5: frame implications at a reduced budget (the lemmas4x
    // suite runs them at full budget)
    {
      const Execution exec = cfg.exec;
      const std::uint64_t cert_seed = CounterRng::derive(dim_seed, 4);
      auto pred3 = [exec](const CurvatureTensor& r) {
        return hyp_k_nonneg(r, 3, exec);
      };
      FilteredSet set3 =
          collect_filtered(dim, dim_seed, kSaltFiltered + 4, pred3,
                           std::max(4, cfg.min_yield / 5),
                           cfg.filter_max_attempts);
      yield_ok = yield_ok && set3.reached;
      std::vector<NamedTensor> three_nonneg;
      three_nonneg.push_back({"model=sphere", sphere(dim, 1.0)});
      for (std::size_t k = 0; k < set3.samples.size(); ++k) {
        three_nonneg.push_back({"sample=" + std::to_string(k) + "/" +
                                    set3.samples[k].name,
                                set3.samples[k].tensor});
      }
      for (const auto& nt : three_nonneg) {
        for (ConditionTag tag : {ConditionTag::Pic1, ConditionTag::Lemma43}) {
          const CurvatureTensor r = nt.tensor;
          trials.push_back(
              {"prop42/part4" + nn + "/" + nt.name + "/expr=" +
                   condition_tag_name(tag),
               [r, tag, part_budget, cert_seed, exec] {
                 return check_certified_floor(r, tag, 1.0, part_budget,
                                              cert_seed, exec);
               }});
        }
      }

      auto pred_full = [exec](const CurvatureTensor& r) {
        return hyp_full_nonneg(r, exec);
      };
      FilteredSet set_full =
          collect_filtered(dim, dim_seed, kSaltFiltered + 5, pred_full,
                           std::max(4, cfg.min_yield / 5),
                           cfg.filter_max_attempts);
      yield_ok = yield_ok && set_full.reached;
      std::vector<NamedTensor> full_nonneg;
      full_nonneg.push_back({"model=sphere", sphere(dim, 1.0)});
      for (std::size_t k = 0; k < set_full.samples.size(); ++k) {
        full_nonneg.push_back({"sample=" + std::to_string(k) + "/" +
                                   set_full.samples[k].name,
                               set_full.samples[k].tensor});
      }
      for (const auto& nt : full_nonneg) {
        for (ConditionTag tag : {ConditionTag::Pic2, ConditionTag::Lemma44}) {
          const CurvatureTensor r = nt.tensor;
          trials.push_back(
              {"prop42/part5" + nn + "/" + nt.name + "/expr=" +
                   condition_tag_name(tag),
               [r, tag, part_budget, cert_seed, exec] {
                 return check_certified_floor(r, tag, 1.0, part_budget,
                                              cert_seed, exec);
               }});
        }
      }
    }
  }
  return execute_trials("prop42", std::move(trials), cfg, accepted, yield_ok,
                        {});
}

// ---------------------------------------------------------------------------
// lemmas4x: the frame-search implications at full budget.
// ---------------------------------------------------------------------------

SuiteResult suite_lemmas4x(const HarnessConfig& cfg) {
  std::vector<Trial> trials;
  std::int64_t accepted = 0;
  bool yield_ok = true;

  for (int n : cfg.dims) {
    if (n < 4 || n > 5) continue;
    const Dimension dim(n);
    const Execution exec = cfg.exec;
    const std::uint64_t dim_seed =
        CounterRng::derive(CounterRng::derive(cfg.seed, kSaltLemmas4x), n);
    const std::uint64_t cert_seed = CounterRng::derive(dim_seed, 9);
    const std::string nn = "/n=" + std::to_string(n);

    struct Family {
      const char* label;
      std::function<bool(const CurvatureTensor&)> hypothesis;
      std::vector<ConditionTag> tags;
      std::uint64_t salt;
    };
    const std::vector<Family> families = {
        {"three-nonneg",
         [exec](const CurvatureTensor& r) { return hyp_k_nonneg(r, 3, exec); },
         {ConditionTag::Lemma43, ConditionTag::Pic1},
         kSaltFiltered + 6},
        {"full-nonneg",
         [exec](const CurvatureTensor& r) { return hyp_full_nonneg(r, exec); },
         {ConditionTag::Lemma44, ConditionTag::Pic2},
         kSaltFiltered + 7},
    };

    for (const auto& family : families) {
      for (const auto& m : model_catalog(n)) {
        const bool holds = family.hypothesis(m.tensor);
        if (!holds) {
          const CurvatureTensor r = m.tensor;
          auto hyp = family.hypothesis;
          trials.push_back({std::string("lemmas4x/") + family.label + nn +
                                "/model=" + m.name + "/expect-exempt",
                            [r, hyp] { return check_expected_exempt(hyp(r)); }});
          continue;
        }
        for (ConditionTag tag : family.tags) {
          const CurvatureTensor r = m.tensor;
          const std::int64_t budget = cfg.budget;
          trials.push_back({std::string("lemmas4x/") + family.label + nn +
                                "/model=" + m.name + "/expr=" +
                                condition_tag_name(tag),
                            [r, tag, budget, cert_seed, exec] {
                              return check_certified_floor(r, tag, 1.0, budget,
                                                           cert_seed, exec);
                            }});
        }
      }
      FilteredSet set =
          collect_filtered(dim, dim_seed, family.salt, family.hypothesis,
                           cfg.min_yield, cfg.filter_max_attempts);
      accepted += static_cast<std::int64_t>(set.samples.size());
      yield_ok = yield_ok && set.reached;
      for (std::size_t k = 0; k < set.samples.size(); ++k) {
        for (ConditionTag tag : family.tags) {
          const CurvatureTensor r = set.samples[k].tensor;
          const std::int64_t budget = cfg.budget;
          trials.push_back({std::string("lemmas4x/") + family.label + nn +
                                "/sample=" + std::to_string(k) + "/" +
                                set.samples[k].name + "/expr=" +
                                condition_tag_name(tag),
                            [r, tag, budget, cert_seed, exec] {
                              return check_certified_floor(r, tag, 1.0, budget,
                                                           cert_seed, exec);
                            }});
        }
      }
    }
  }
  return execute_trials("lemmas4x", std::move(trials), cfg, accepted, yield_ok,
                        {});
}

// ---------------------------------------------------------------------------
// prop51: splitting obstruction on products, with sharpness pins.
// ---------------------------------------------------------------------------

SuiteResult suite_prop51(const HarnessConfig& cfg) {
  std::vector<Trial> trials;
  const Execution exec = cfg.exec;

  struct ProductCase {
    std::string name;
    CurvatureTensor tensor;
    int split_dim;      // k, the dimension of the first factor
    bool decisive;      // sphere factors: demand margin <= -1e-6
  };
  std::vector<ProductCase> violations;
  violations.push_back({"s2xs2", product(sphere(Dimension(2), 1.0),
                                         sphere(Dimension(2), 1.0)),
                        2, true});
  violations.push_back({"s2xs2_kappa2", product(sphere(Dimension(2), 1.0),
                                                sphere(Dimension(2), 2.0)),
                        2, true});
  violations.push_back({"s2xs3", product(sphere(Dimension(2), 1.0),
                                         sphere(Dimension(3), 1.0)),
                        2, true});
  violations.push_back({"s3xs3_mixed", product(sphere(Dimension(3), 0.5),
                                               sphere(Dimension(3), 1.0)),
                        3, true});
  violations.push_back({"cylinder4", cylinder(Dimension(4)), 1, true});
  violations.push_back({"cylinder5", cylinder(Dimension(5)), 1, true});
  {
    const std::uint64_t s1 =
        CounterRng::derive(CounterRng::derive(cfg.seed, kSaltProp51), 1);
    const std::uint64_t s2 =
        CounterRng::derive(CounterRng::derive(cfg.seed, kSaltProp51), 2);
    violations.push_back({"random2x2/seed=" + std::to_string(s1),
                          product(random_curvature(Dimension(2), s1),
                                  random_curvature(Dimension(2),
                                                   CounterRng::derive(s1, 7))),
                          2, false});
    violations.push_back({"random2x3/seed=" + std::to_string(s2),
                          product(random_curvature(Dimension(2), s2),
                                  random_curvature(Dimension(3),
                                                   CounterRng::derive(s2, 7))),
                          2, false});
  }

  for (const auto& pc : violations) {
    const CurvatureTensor r = pc.tensor;
    const int n = r.n();
    const int k_eigen = pc.split_dim * (n - pc.split_dim) + 1;
    const bool decisive = pc.decisive;
    trials.push_back(
        {"prop51/violation=" + pc.name + "/k=" + std::to_string(pc.split_dim),
         [r, k_eigen, decisive, exec] {
           const double sum = sum_k_smallest_second(r, k_eigen, exec);
           const double limit = decisive ? -1e-6 : 1e-10 * (1.0 + r.max_abs());
           return pass_if(sum <= limit, limit - sum,
                          {{"eigenvalue_sum", sum},
                           {"k", static_cast<double>(k_eigen)}});
         }});
  }

  // sharpness: one extra eigenvalue flips the sign or lands exactly on zero
  {
    const CurvatureTensor cyl = cylinder(Dimension(4));
    trials.push_back({"prop51/sharp=cylinder4/k=5", [cyl, exec] {
                        const double sum = sum_k_smallest_second(cyl, 5, exec);
                        const double err = std::abs(sum - 0.5);
                        return pass_if(err <= 1e-10, 1e-10 - err,
                                       {{"eigenvalue_sum", sum}});
                      }});
    const CurvatureTensor ss =
        product(sphere(Dimension(2), 1.0), sphere(Dimension(2), 1.0));
    trials.push_back({"prop51/sharp=s2xs2/k=6", [ss, exec] {
                        const double sum = sum_k_smallest_second(ss, 6, exec);
                        const double err = std::abs(sum);
                        return pass_if(err <= 1e-10, 1e-10 - err,
                                       {{"eigenvalue_sum", sum}});
                      }});
    trials.push_back({"prop51/sharp=s2xs2/k=5", [ss, exec] {
                        const double sum = sum_k_smallest_second(ss, 5, exec);
                        const double err = std::abs(sum + 1.0);
                        return pass_if(err <= 1e-10, 1e-10 - err,
                                       {{"eigenvalue_sum", sum}});
                      }});
  }
  {
    const CurvatureTensor ff = product(flat(Dimension(2)), flat(Dimension(3)));
    trials.push_back({"prop51/vacuous=flat2xflat3", [ff] {
                        return pass_if(ff.max_abs() == 0.0, 0.0,
                                       {{"max_abs", ff.max_abs()}});
                      }});
  }
  return execute_trials(
      "prop51", std::move(trials), cfg, -1, true,
      "product tensors are sampled spot checks of the splitting obstruction, "
      "not a proof over all products");
}

// ---------------------------------------------------------------------------
// kahler: the strengthened isotropic inequality against complex structures.
// ---------------------------------------------------------------------------

SuiteResult suite_kahler(const HarnessConfig& cfg) {
  std::vector<Trial> trials;
  const Execution exec = cfg.exec;
  const std::uint64_t suite_seed = CounterRng::derive(cfg.seed, kSaltKahler);

  for (int m : {2, 3}) {
    const int n = 2 * m;
    const std::string fl = "kahler/flat" + std::to_string(n);
    const CurvatureTensor f = flat(Dimension(n));
    const ComplexStructure j = standard_complex_structure(m);
    const std::uint64_t cert_seed = CounterRng::derive(suite_seed, m);

    {
      const std::int64_t budget = cfg.budget;
      trials.push_back({fl + "/beta=2", [f, budget, cert_seed, exec] {
                          ConditionExpr expr;
                          expr.tag = ConditionTag::Beta;
                          expr.beta = 2.0;
                          const FrameCertificate cert =
                              certify_min(f, expr, budget, cert_seed, exec);
                          const double err = std::abs(cert.best_value);
                          return pass_if(err <= 1e-9, 1e-9 - err,
                                         {{"best_value", cert.best_value}});
                        }});
    }
    trials.push_back({fl + "/bisectional", [f, j, cert_seed] {
                        double worst = 0.0;
                        for (int t = 0; t < 20; ++t) {
                          auto [x, y] = admissible_pair(j, cert_seed, t);
                          worst = std::max(
                              worst, std::abs(orthogonal_bisectional(f, j, x, y)));
                        }
                        return pass_if(worst <= 1e-12, 1e-12 - worst,
                                       {{"max_abs_value", worst}});
                      }});
    trials.push_back({fl + "/diag-holomorphic-sum", [f, j, cert_seed] {
                        // for admissible (Z, W) the two holomorphic-plane
                        // values must cancel
                        double worst = 0.0;
                        for (int t = 0; t < 20; ++t) {
                          auto [z, w] = admissible_pair(j, cert_seed, 100 + t);
                          const auto jz = j.apply(z);
                          const auto jw = j.apply(w);
                          const double v = tensor_value(f, z, jz, z, jz) +
                                           tensor_value(f, w, jw, w, jw);
                          worst = std::max(worst, std::abs(v));
                        }
                        return pass_if(worst <= 1e-12, 1e-12 - worst,
                                       {{"max_abs_value", worst}});
                      }});
  }

  for (int m : {2, 3}) {
    const std::string cp = "kahler/cp" + std::to_string(m);
    const KahlerModel model = cpn(m);
    const CurvatureTensor r = model.tensor;
    const ComplexStructure j = model.structure;
    const std::uint64_t cert_seed = CounterRng::derive(suite_seed, 10 + m);

    for (double beta : {1.1, 1.5, 2.0}) {
      const std::int64_t budget = cfg.budget;
      trials.push_back(
          {cp + "/beta=" + std::to_string(beta).substr(0, 3),
           [r, beta, budget, cert_seed, exec] {
             ConditionExpr expr;
             expr.tag = ConditionTag::Beta;
             expr.beta = beta;
             const FrameCertificate cert =
                 certify_min(r, expr, budget, cert_seed, exec);
             // a decisively negative frame witnesses the violation
             return pass_if(cert.best_value <= -1e-3, -1e-3 - cert.best_value,
                            {{"best_value", cert.best_value}});
           }});
    }
    {
      const std::int64_t budget = cfg.budget;
      const double upper = (m == 2) ? 1e-6 : 1e-4;
      trials.push_back({cp + "/pic", [r, budget, cert_seed, exec, upper] {
                          ConditionExpr expr;
                          expr.tag = ConditionTag::Pic;
                          const FrameCertificate cert =
                              certify_min(r, expr, budget, cert_seed, exec);
                          const bool ok = cert.best_value >= -1e-6 &&
                                          cert.best_value <= upper;
                          return pass_if(ok, upper - std::abs(cert.best_value),
                                         {{"best_value", cert.best_value}});
                        }});
    }
    trials.push_back({cp + "/complex-symmetry", [r, j] {
                        const double res = kahler_symmetry_residual(r, j);
                        return pass_if(res <= 1e-12, 1e-12 - res,
                                       {{"residual", res}});
                      }});
    trials.push_back({cp + "/polarization-chain", [r, j, cert_seed] {
                        // 2 R(X,JX,Y,JY) equals the four-plane sum on any
                        // complex-compatible tensor
                        double worst = 0.0;
                        for (int t = 0; t < 20; ++t) {
                          auto [x, y] = admissible_pair(j, cert_seed, 200 + t);
                          const auto jx = j.apply(x);
                          const auto jy = j.apply(y);
                          const double lhs = 2.0 * tensor_value(r, x, jx, y, jy);
                          const double rhs = tensor_value(r, x, y, x, y) +
                                             tensor_value(r, jx, y, jx, y) +
                                             tensor_value(r, x, jy, x, jy) +
                                             tensor_value(r, jx, jy, jx, jy);
                          worst = std::max(worst, std::abs(lhs - rhs));
                        }
                        const double tol = 1e-10 * (1.0 + r.max_abs());
                        return pass_if(worst <= tol, tol - worst,
                                       {{"max_abs_error", worst}});
                      }});
  }
  return execute_trials("kahler", std::move(trials), cfg, -1, true, {});
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {"lemma31", "prop32", "prop42",
                                               "lemmas4x", "prop51", "kahler"};
  return ids;
}

bool is_suite_id(const std::string& id) {
  const auto& ids = suite_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

SuiteResult run_suite(const std::string& id, const HarnessConfig& config) {
  if (id == "lemma31") return suite_lemma31(config);
  if (id == "prop32") return suite_prop32(config);
  if (id == "prop42") return suite_prop42(config);
  if (id == "lemmas4x") return suite_lemmas4x(config);
  if (id == "prop51") return suite_prop51(config);
  if (id == "kahler") return suite_kahler(config);
  throw std::invalid_argument("run_suite: unknown suite '" + id + "'");
}

VerificationReport run_all(const HarnessConfig& config) {
  VerificationReport report;
  report.config = config;
  if (config.suites.empty()) {
    report.status = "nothing-run";
    return report;
  }
  for (const std::string& id : suite_ids()) {
    if (std::find(config.suites.begin(), config.suites.end(), id) ==
        config.suites.end()) {
      continue;
    }
    report.suites.push_back(run_suite(id, config));
  }
  if (report.suites.empty()) {
    // only unknown ids were requested
    throw std::invalid_argument("run_all: no known suite selected");
  }
  const bool ok = std::all_of(report.suites.begin(), report.suites.end(),
                              [](const SuiteResult& s) {
                                return s.status == "pass";
                              });
  report.status = ok ? "pass" : "fail";
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("version");
  w.value(report.version);
  w.key("status");
  w.value(report.status);
  w.key("config");
  w.begin_object();
  w.key("seed");
  w.value(static_cast<std::uint64_t>(report.config.seed));
  w.key("trials");
  w.value(report.config.trials);
  w.key("budget");
  w.value(static_cast<std::int64_t>(report.config.budget));
  w.key("dims");
  w.begin_array();
  for (int d : report.config.dims) w.value(d);
  w.end_array();
  w.key("min_yield");
  w.value(report.config.min_yield);
  w.key("filter_max_attempts");
  w.value(report.config.filter_max_attempts);
  w.key("inject_flipped_sphere");
  w.value(report.config.inject_flipped_sphere);
  w.key("suites");
  w.begin_array();
  for (const auto& s : report.config.suites) w.value(s);
  w.end_array();
  w.end_object();
  w.key("suites");
  w.begin_array();
  for (const SuiteResult& s : report.suites) {
    w.begin_object();
    w.key("id");
    w.value(s.id);
    w.key("status");
    w.value(s.status);
    w.key("trials");
    w.value(static_cast<std::int64_t>(s.trials));
    w.key("passes");
    w.value(static_cast<std::int64_t>(s.passes));
    if (s.samples_accepted >= 0) {
      w.key("samples_accepted");
      w.value(static_cast<std::int64_t>(s.samples_accepted));
    }
    if (!s.note.empty()) {
      w.key("note");
      w.value(s.note);
    }
    w.key("failures");
    w.begin_array();
    for (const FailureRecord& f : s.failures) {
      w.begin_object();
      w.key("case");
      w.value(f.case_id);
      w.key("margin");
      w.value(f.margin);
      w.key("measured");
      w.begin_object();
      for (const auto& [k, v] : f.measured) {
        w.key(k);
        w.value(v);
      }
      w.end_object();
      if (!f.detail.empty()) {
        w.key("detail");
        w.value(f.detail);
      }
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

}  // namespace curvlab

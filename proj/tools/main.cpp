// curvlab command-line front end: build model tensors, compute operator
// spectra, check k-positivity, certify frame-quantified inequalities, and
// run the verification suites. All machine output is JSON; exit codes are
// 0 = holds / success, 1 = violated / failures, 2 = usage or data error,
// 3 = within the tolerance band.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvlab/harness.hpp"
#include "curvlab/json_writer.hpp"
#include "curvlab/tensor_io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBoundary = 3;

std::uint64_t default_seed() {
  const char* env = std::getenv("CURVLAB_SEED");
  if (env == nullptr || *env == '\0') return 42;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw curvlab::IoError("CURVLAB_SEED is not an unsigned integer: '" +
                           std::string(env) + "'");
  }
  return static_cast<std::uint64_t>(v);
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::FILE* f = std::fopen(out_path.c_str(), "wb");
  if (f == nullptr) {
    throw curvlab::IoError("cannot open '" + out_path + "' for writing");
  }
  std::fwrite(payload.data(), 1, payload.size(), f);
  std::fclose(f);
}

curvlab::ModelSpec parse_manifest(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kind")) {
    throw curvlab::IoError("manifest needs an object with a 'kind' field");
  }
  curvlab::ModelSpec spec;
  spec.kind = doc["kind"].get<std::string>();
  const nlohmann::json params =
      doc.contains("params") ? doc["params"] : nlohmann::json::object();
  if (params.contains("dim")) spec.dim = params["dim"].get<int>();
  if (params.contains("kappa")) spec.kappa = params["kappa"].get<double>();
  if (params.contains("m")) spec.m = params["m"].get<int>();
  if (params.contains("seed")) spec.seed = params["seed"].get<std::uint64_t>();
  if (params.contains("scale")) spec.scale = params["scale"].get<double>();
  if (spec.kind == "product") {
    if (!params.contains("left") || !params.contains("right")) {
      throw curvlab::IoError("product manifest needs left and right specs");
    }
    spec.left = std::make_shared<curvlab::ModelSpec>(parse_manifest(params["left"]));
    spec.right = std::make_shared<curvlab::ModelSpec>(parse_manifest(params["right"]));
  }
  return spec;
}

struct ModelArgs {
  std::string kind;
  int dim = 0;
  double kappa = 1.0;
  int m = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double scale = 1.0;
  std::string left, right, manifest, out = "-";
  bool project = false;
};

int cmd_model(const ModelArgs& a) {
  curvlab::CurvatureTensor tensor = [&]() -> curvlab::CurvatureTensor {
    if (!a.manifest.empty()) {
      std::ifstream f(a.manifest);
      if (!f) throw curvlab::IoError("cannot open manifest '" + a.manifest + "'");
      nlohmann::json doc;
      f >> doc;
      return parse_manifest(doc).build();
    }
    if (a.kind == "product") {
      if (a.left.empty() || a.right.empty()) {
        throw CLI::ValidationError("model", "product needs --left and --right");
      }
      const curvlab::LoadOptions opts{a.project, 1e-10};
      return curvlab::product(curvlab::read_tensor_file(a.left, opts),
                              curvlab::read_tensor_file(a.right, opts));
    }
    curvlab::ModelSpec spec;
    spec.kind = a.kind;
    spec.dim = a.dim;
    spec.kappa = a.kappa;
    spec.m = a.m;
    spec.seed = a.seed_given ? a.seed : default_seed();
    spec.scale = a.scale;
    if ((a.kind == "sphere" || a.kind == "flat" || a.kind == "cylinder" ||
         a.kind == "random") &&
        a.dim <= 0) {
      throw CLI::ValidationError("model", a.kind + " needs --dim");
    }
    if (a.kind == "cpn" && a.m <= 0) {
      throw CLI::ValidationError("model", "cpn needs --m");
    }
    return spec.build();
  }();
  emit(curvlab::tensor_to_json(tensor), a.out);
  return kExitHolds;
}

struct SpectrumArgs {
  std::string file;
  std::string op = "second-restricted";
  bool project = false;
  double tol = 1e-10;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const curvlab::LoadOptions opts{a.project, a.tol};
  const curvlab::CurvatureTensor r = curvlab::read_tensor_file(a.file, opts);
  curvlab::Spectrum spec;
  if (a.op == "first") {
    spec = curvlab::first_kind_spectrum(r);
  } else if (a.op == "second-full") {
    spec = curvlab::second_kind_spectrum(r, curvlab::SecondKindDomain::Full);
  } else if (a.op == "second-restricted") {
    spec = curvlab::second_kind_spectrum(r, curvlab::SecondKindDomain::Traceless);
  } else {
    throw CLI::ValidationError("spectrum", "unknown operator '" + a.op + "'");
  }
  curvlab::JsonWriter w;
  w.begin_object();
  w.key("operator");
  w.value(a.op);
  w.key("dim");
  w.value(r.n());
  w.key("basis");
  w.value(curvlab::basis_tag_name(spec.basis));
  w.key("eigenvalues");
  w.begin_array();
  for (double v : spec.eigenvalues) w.value(v);
  w.end_array();
  w.end_object();
  emit(w.take() + "\n", "-");
  return kExitHolds;
}

struct CheckArgs {
  std::string file;
  std::string condition;
  int k = 0;
  std::string op = "second";
  double tol = 1e-10;
  bool json = false;
  bool project = false;
};

int cmd_check(const CheckArgs& a) {
  if (a.condition != "k-pos" && a.condition != "k-nonneg") {
    throw CLI::ValidationError("check", "condition must be k-pos or k-nonneg");
  }
  const curvlab::OperatorKind kind = [&] {
    if (a.op == "first") return curvlab::OperatorKind::FirstKind;
    if (a.op == "second") return curvlab::OperatorKind::SecondKindRestricted;
    throw CLI::ValidationError("check", "operator must be first or second");
  }();
  const curvlab::CurvatureTensor r =
      curvlab::read_tensor_file(a.file, curvlab::LoadOptions{a.project, 1e-10});
  const curvlab::KPositivityReport rep =
      curvlab::k_positivity(r, kind, a.k, a.tol);

  // inside the band either condition reads as boundary; outside it the two
  // flavors agree on holds/violated
  const char* status = "boundary";
  int exit_code = kExitBoundary;
  if (rep.sum > rep.band) {
    status = "holds";
    exit_code = kExitHolds;
  } else if (rep.sum < -rep.band) {
    status = "violated";
    exit_code = kExitViolated;
  }

  if (a.json) {
    curvlab::JsonWriter w;
    w.begin_object();
    w.key("condition");
    w.value(a.condition);
    w.key("operator");
    w.value(a.op);
    w.key("k");
    w.value(a.k);
    w.key("sum");
    w.value(rep.sum);
    w.key("margin");
    w.value(rep.sum);
    w.key("band");
    w.value(rep.band);
    w.key("status");
    w.value(status);
    w.end_object();
    emit(w.take() + "\n", "-");
  } else {
    std::printf("%s (k = %d, operator = %s): %s, margin %.17g\n",
                a.condition.c_str(), a.k, a.op.c_str(), status, rep.sum);
  }
  return exit_code;
}

struct CertifyArgs {
  std::string file;
  std::string expr;
  double beta = 0.0;
  bool beta_given = false;
  std::int64_t samples = 5000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tol = 1e-8;
  bool project = false;
};

int cmd_certify(const CertifyArgs& a) {
  curvlab::ConditionExpr expr;
  expr.tag = curvlab::condition_tag_from_name(a.expr);
  if (expr.tag == curvlab::ConditionTag::Beta) {
    if (!a.beta_given) {
      throw CLI::ValidationError("certify", "--expr beta needs --beta");
    }
    if (!(a.beta > 1.0)) {
      throw CLI::ValidationError("certify", "--beta must be > 1");
    }
    expr.beta = a.beta;
  } else if (a.beta_given) {
    throw CLI::ValidationError("certify", "--beta only applies to --expr beta");
  }
  const curvlab::CurvatureTensor r =
      curvlab::read_tensor_file(a.file, curvlab::LoadOptions{a.project, 1e-10});
  const std::uint64_t seed = a.seed_given ? a.seed : default_seed();
  const curvlab::FrameCertificate cert =
      curvlab::certify_min(r, expr, a.samples, seed);
  emit(curvlab::certificate_to_json(cert) + "\n", "-");
  const double floor = -a.tol * (1.0 + r.max_abs());
  return cert.best_value >= floor ? kExitHolds : kExitViolated;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int trials = 200;
  std::int64_t budget = 5000;
  std::vector<int> dims = {3, 4, 5, 6};
  int min_yield = 20;
  bool inject_flipped_sphere = false;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.suite != "all" && !curvlab::is_suite_id(a.suite)) {
    throw CLI::ValidationError("verify", "unknown suite '" + a.suite + "'");
  }
  curvlab::HarnessConfig cfg;
  cfg.seed = a.seed_given ? a.seed : default_seed();
  cfg.trials = a.trials;
  cfg.budget = a.budget;
  cfg.dims = a.dims;
  cfg.min_yield = a.min_yield;
  cfg.inject_flipped_sphere = a.inject_flipped_sphere;
  if (a.suite != "all") cfg.suites = {a.suite};
  const curvlab::VerificationReport report = curvlab::run_all(cfg);
  emit(curvlab::report_to_json(report) + "\n", "-");
  return report.all_passed() ? kExitHolds : kExitViolated;
}

int cmd_info(bool json) {
  if (json) {
    curvlab::JsonWriter w;
    w.begin_object();
    w.key("name");
    w.value("curvlab");
    w.key("version");
    w.value(kVersion);
    w.key("tensor_format");
    w.value(curvlab::kTensorFormat);
    w.key("report_format");
    w.value("curvlab-report/1");
    w.key("models");
    w.begin_array();
    for (const char* k : {"sphere", "flat", "product", "cylinder", "cpn", "random"}) {
      w.value(k);
    }
    w.end_array();
    w.key("suites");
    w.begin_array();
    for (const auto& s : curvlab::suite_ids()) w.value(s);
    w.end_array();
    w.key("max_threads");
    w.value(curvlab::max_threads());
    w.end_object();
    emit(w.take() + "\n", "-");
  } else {
    std::printf("curvlab %s\n", kVersion);
    std::printf("tensor format: %s\n", curvlab::kTensorFormat);
    std::printf("models: sphere flat product cylinder cpn random\n");
    std::printf("suites:");
    for (const auto& s : curvlab::suite_ids()) std::printf(" %s", s.c_str());
    std::printf("\nmax threads: %d\n", curvlab::max_threads());
  }
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: algebraic curvature operators of the second kind"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap worker thread count");

  ModelArgs model;
  auto* cmd_m = app.add_subcommand("model", "construct a model tensor as JSON");
  cmd_m->add_option("kind", model.kind,
                    "sphere | flat | product | cylinder | cpn | random");
  cmd_m->add_option("--dim", model.dim, "ambient dimension");
  cmd_m->add_option("--kappa", model.kappa, "sectional curvature scale");
  cmd_m->add_option("--m", model.m, "complex dimension for cpn");
  cmd_m->add_option("--seed", model.seed, "random seed")
      ->each([&model](const std::string&) { model.seed_given = true; });
  cmd_m->add_option("--scale", model.scale, "random tensor scale");
  cmd_m->add_option("--left", model.left, "left factor tensor file");
  cmd_m->add_option("--right", model.right, "right factor tensor file");
  cmd_m->add_option("--manifest", model.manifest, "JSON model manifest");
  cmd_m->add_option("--out", model.out, "output path, - for stdout");
  cmd_m->add_flag("--project", model.project,
                  "Bianchi-project loaded factors instead of rejecting");

  SpectrumArgs spectrum;
  auto* cmd_s = app.add_subcommand("spectrum", "eigenvalues of an operator");
  cmd_s->add_option("file", spectrum.file, "tensor JSON file")->required();
  cmd_s->add_option("--operator", spectrum.op,
                    "first | second-full | second-restricted");
  cmd_s->add_flag("--project", spectrum.project,
                  "Bianchi-project on load instead of rejecting");
  cmd_s->add_option("--tol", spectrum.tol, "load tolerance");

  CheckArgs check;
  auto* cmd_c = app.add_subcommand("check", "k-positivity of an operator");
  cmd_c->add_option("file", check.file, "tensor JSON file")->required();
  cmd_c->add_option("--condition", check.condition, "k-pos | k-nonneg")
      ->required();
  cmd_c->add_option("--k", check.k, "how many smallest eigenvalues to sum")
      ->required();
  cmd_c->add_option("--operator", check.op, "first | second");
  cmd_c->add_option("--tol", check.tol, "relative tolerance band");
  cmd_c->add_flag("--json", check.json, "JSON output");
  cmd_c->add_flag("--project", check.project, "Bianchi-project on load");

  CertifyArgs certify;
  auto* cmd_f = app.add_subcommand("certify", "frame-search a condition minimum");
  cmd_f->add_option("file", certify.file, "tensor JSON file")->required();
  cmd_f->add_option("--expr", certify.expr,
                    "pic | pic1 | pic2 | lemma43 | lemma44 | beta")
      ->required();
  cmd_f->add_option("--beta", certify.beta, "beta > 1 for --expr beta")
      ->each([&certify](const std::string&) { certify.beta_given = true; });
  cmd_f->add_option("--samples", certify.samples, "frame sample budget");
  cmd_f->add_option("--seed", certify.seed, "search seed")
      ->each([&certify](const std::string&) { certify.seed_given = true; });
  cmd_f->add_option("--tol", certify.tol, "violation tolerance");
  cmd_f->add_flag("--project", certify.project, "Bianchi-project on load");

  VerifyArgs verify;
  auto* cmd_v = app.add_subcommand("verify", "run verification suites");
  cmd_v->add_option("--suite", verify.suite,
                    "all | lemma31 | prop32 | prop42 | lemmas4x | prop51 | kahler")
      ->required();
  cmd_v->add_option("--seed", verify.seed, "suite seed")
      ->each([&verify](const std::string&) { verify.seed_given = true; });
  cmd_v->add_option("--trials", verify.trials, "randomized trials per suite");
  cmd_v->add_option("--budget", verify.budget, "frame samples per certificate");
  cmd_v->add_option("--dims", verify.dims, "ambient dimensions to cover");
  cmd_v->add_option("--min-yield", verify.min_yield,
                    "accepted samples a filtered suite must reach");
  cmd_v->add_flag("--inject-flipped-sphere", verify.inject_flipped_sphere,
                  "fault injection: adds a sign-flipped sphere to prop42");

  bool info_json = false;
  auto* cmd_i = app.add_subcommand("info", "build and format information");
  cmd_i->add_flag("--json", info_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    curvlab::set_thread_cap(threads);
    if (cmd_m->parsed()) {
      if (model.kind.empty() && model.manifest.empty()) {
        throw CLI::ValidationError("model", "need a kind or --manifest");
      }
      return cmd_model(model);
    }
    if (cmd_s->parsed()) return cmd_spectrum(spectrum);
    if (cmd_c->parsed()) return cmd_check(check);
    if (cmd_f->parsed()) return cmd_certify(certify);
    if (cmd_v->parsed()) return cmd_verify(verify);
    if (cmd_i->parsed()) return cmd_info(info_json);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

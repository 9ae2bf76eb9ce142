#include "curvlab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curvlab/json_writer.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMuGridPoints = 41;
constexpr int kRefineCandidates = 10;
constexpr double kSweepImprovementFloor = 1e-12;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Cross coefficient in front of lambda * mu * r1234.
double cross_coefficient(ConditionTag tag, double beta) {
  switch (tag) {
    case ConditionTag::Pic:
    case ConditionTag::Pic1:
    case ConditionTag::Pic2:
      return 2.0;
    case ConditionTag::Lemma43:
      return 4.0;
    case ConditionTag::Lemma44:
      return 6.0;
    case ConditionTag::Beta:
      return 2.0 * beta;
  }
  return 2.0;
}

double generic_value(const FrameScalars& s, double lambda, double mu,
                     double coeff) {
  const double l2 = lambda * lambda;
  const double m2 = mu * mu;
  return s.r1313 + l2 * s.r1414 + m2 * s.r2323 + l2 * m2 * s.r2424 -
         coeff * lambda * mu * s.r1234;
}

// Value, together with the parameters that realize it.
struct InnerMin {
  double value = 0.0;
  double lambda = 1.0;
  double mu = 1.0;
};

// min over lambda in [lo, hi] of A + lambda^2 B - c lambda D, closed form:
// the candidates are the endpoints and the clamped stationary point.
InnerMin quad_min_interval(double a, double b, double d, double c, double lo,
                           double hi) {
  InnerMin best{a + lo * lo * b - c * lo * d, lo, 1.0};
  auto consider = [&](double lambda) {
    const double v = a + lambda * lambda * b - c * lambda * d;
    if (v < best.value || (v == best.value && lambda < best.lambda)) {
      best.value = v;
      best.lambda = lambda;
    }
  };
  consider(hi);
  if (b > 0.0) {
    consider(std::clamp(c * d / (2.0 * b), lo, hi));
  }
  return best;
}

// min over all real lambda. Unbounded cases (B < 0, or B = 0 with D != 0)
// cannot be represented exactly; a decisively negative finite witness is
// returned instead, which is all a violation certificate needs.
InnerMin quad_min_real(double a, double b, double d, double c) {
  if (b > 0.0) {
    const double lambda = c * d / (2.0 * b);
    return InnerMin{a - c * c * d * d / (4.0 * b), lambda, 1.0};
  }
  if (b == 0.0) {
    if (d == 0.0) return InnerMin{a, 0.0, 1.0};
    const double lambda = (a + std::abs(a) + 1.0) / (c * d);
    return InnerMin{a - c * lambda * d, lambda, 1.0};
  }
  // b < 0: walk far enough out that the quadratic term dominates.
  const double reach = std::sqrt((std::abs(a) + c * std::abs(d) + 1.0) / -b) + 1.0;
  const double lambda = (d >= 0.0) ? reach : -reach;
  return InnerMin{a + lambda * lambda * b - c * lambda * d, lambda, 1.0};
}

// Inner minimum over lambda for a fixed mu.
InnerMin lambda_min_for_mu(const FrameScalars& s, double mu, double coeff,
                           bool lambda_interval) {
  const double a = s.r1313 + mu * mu * s.r2323;
  const double b = s.r1414 + mu * mu * s.r2424;
  const double d = mu * s.r1234;
  InnerMin m = lambda_interval ? quad_min_interval(a, b, d, coeff, -1.0, 1.0)
                               : quad_min_real(a, b, d, coeff);
  m.mu = mu;
  return m;
}

void consider(InnerMin& best, const InnerMin& cand) {
  if (cand.value < best.value) best = cand;
}

// Grid plus golden-section refinement over mu (or its tangent
// reparameterization when mu ranges over all reals); lambda is closed-form
// per mu. Tracks the best point seen across every evaluation.
InnerMin minimize_over_mu(const FrameScalars& s, double coeff,
                          bool lambda_interval, bool mu_interval) {
  auto eval = [&](double t) {
    const double mu = mu_interval ? t : std::tan(t);
    return lambda_min_for_mu(s, mu, coeff, lambda_interval);
  };
  const double lo = mu_interval ? -1.0 : -kPi / 2.0;
  const double hi = mu_interval ? 1.0 : kPi / 2.0;
  // The open real line is sampled strictly inside (-pi/2, pi/2); the
  // midpoint offset keeps tan() finite and places t = 0 on the grid.
  const double pad = mu_interval ? 0.0 : 0.5;
  const double span = (hi - lo) / (mu_interval ? (kMuGridPoints - 1) : kMuGridPoints);

  InnerMin best;
  double best_t = 0.0;
  bool first = true;
  std::vector<double> ts(kMuGridPoints);
  for (int k = 0; k < kMuGridPoints; ++k) {
    const double t = lo + span * (k + pad);
    ts[k] = t;
    const InnerMin m = eval(t);
    if (first || m.value < best.value) {
      best = m;
      best_t = t;
      first = false;
    }
  }

  // Golden-section on the bracket around the best grid point.
  double a = std::max(lo + pad * span * 0.5, best_t - span);
  double b = std::min(hi - pad * span * 0.5, best_t + span);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  InnerMin f1 = eval(x1);
  InnerMin f2 = eval(x2);
  consider(best, f1);
  consider(best, f2);
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
    if (f1.value <= f2.value) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = eval(x1);
      consider(best, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = eval(x2);
      consider(best, f2);
    }
  }
  return best;
}

InnerMin minimize_params(const FrameScalars& s, ConditionTag tag, double beta) {
  const double coeff = cross_coefficient(tag, beta);
  switch (tag) {
    case ConditionTag::Pic:
    case ConditionTag::Beta:
      return InnerMin{generic_value(s, 1.0, 1.0, coeff), 1.0, 1.0};
    case ConditionTag::Pic1:
      return quad_min_interval(s.r1313 + s.r2323, s.r1414 + s.r2424, s.r1234,
                               coeff, -1.0, 1.0);
    case ConditionTag::Lemma43:
      return quad_min_real(s.r1313 + s.r2323, s.r1414 + s.r2424, s.r1234,
                           coeff);
    case ConditionTag::Pic2:
      return minimize_over_mu(s, coeff, /*lambda_interval=*/true,
                              /*mu_interval=*/true);
    case ConditionTag::Lemma44:
      return minimize_over_mu(s, coeff, /*lambda_interval=*/false,
                              /*mu_interval=*/false);
  }
  throw std::logic_error("minimize_params: unhandled tag");
}

// Deterministic frame draw: frame index i owns the counter block starting at
// i << 20, so retries after a degenerate Gram-Schmidt step stay inside the
// block and never collide with other frames.
Frame4 sample_frame(int n, std::uint64_t seed, std::int64_t index) {
  CounterRng rng(seed, kStreamFrame);
  const std::uint64_t base = static_cast<std::uint64_t>(index) << 20;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t at = base + attempt * 4ull * n;
    Frame4 f;
    f.n = n;
    bool ok = true;
    for (int v = 0; v < 4 && ok; ++v) {
      std::vector<double> x(n);
      for (int t = 0; t < n; ++t) {
        x[t] = rng.gaussian(at + static_cast<std::uint64_t>(v) * n + t);
      }
      // two orthogonalization passes against the accepted vectors
      for (int pass = 0; pass < 2; ++pass) {
        for (int u = 0; u < v; ++u) {
          const double c = dot(x, f.vectors[u]);
          for (int t = 0; t < n; ++t) x[t] -= c * f.vectors[u][t];
        }
      }
      const double norm = std::sqrt(dot(x, x));
      if (norm < 1e-8) {
        ok = false;
        break;
      }
      for (int t = 0; t < n; ++t) x[t] /= norm;
      f.vectors[v] = std::move(x);
    }
    if (ok) return f;
  }
}

// Orthonormal basis of R^n whose first four vectors are the frame; the
// remainder comes from Gram-Schmidt over the standard basis.
std::vector<std::vector<double>> complete_frame(const Frame4& f) {
  const int n = f.n;
  std::vector<std::vector<double>> basis;
  basis.reserve(n);
  for (int v = 0; v < 4; ++v) basis.push_back(f.vectors[v]);
  for (int e = 0; e < n && static_cast<int>(basis.size()) < n; ++e) {
    std::vector<double> x(n, 0.0);
    x[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = dot(x, b);
        for (int t = 0; t < n; ++t) x[t] -= c * b[t];
      }
    }
    const double norm = std::sqrt(dot(x, x));
    if (norm < 1e-8) continue;
    for (int t = 0; t < n; ++t) x[t] /= norm;
    basis.push_back(std::move(x));
  }
  if (static_cast<int>(basis.size()) != n) {
    throw std::runtime_error("complete_frame: basis completion failed");
  }
  return basis;
}

Frame4 head_frame(const std::vector<std::vector<double>>& basis) {
  Frame4 f;
  f.n = static_cast<int>(basis[0].size());
  for (int v = 0; v < 4; ++v) f.vectors[v] = basis[v];
  return f;
}

struct RefineOutcome {
  InnerMin best;
  Frame4 frame;
  std::int64_t accepted = 0;
};

// Coordinate descent over Givens angles: the six rotations inside the frame
// span and the 4 (n - 4) rotations of a frame vector against the orthogonal
// complement. Rotations act on an orthonormal basis, so the iterate stays on
// the frame manifold without re-orthonormalization.
RefineOutcome refine_frame(const SymMatrix& m, const Frame4& start,
                           ConditionTag tag, double beta) {
  const int n = start.n;
  std::vector<std::vector<double>> basis = complete_frame(start);

  std::vector<std::pair<int, int>> planes;
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) planes.emplace_back(p, q);
  }
  for (int p = 0; p < 4; ++p) {
    for (int q = 4; q < n; ++q) planes.emplace_back(p, q);
  }

  auto eval_basis = [&](const std::vector<std::vector<double>>& b) {
    return minimize_params(frame_scalars(m, head_frame(b)), tag, beta);
  };

  RefineOutcome out;
  out.best = eval_basis(basis);
  out.frame = head_frame(basis);

  double step = 0.4;
  while (step >= 3e-9) {
    for (;;) {
      double sweep_improvement = 0.0;
      for (const auto& [p, q] : planes) {
        for (double dir : {+1.0, -1.0}) {
          const double c = std::cos(dir * step);
          const double s = std::sin(dir * step);
          std::vector<std::vector<double>> cand = basis;
          for (int t = 0; t < n; ++t) {
            const double vp = basis[p][t];
            const double vq = basis[q][t];
            cand[p][t] = c * vp + s * vq;
            cand[q][t] = -s * vp + c * vq;
          }
          const InnerMin v = eval_basis(cand);
          if (v.value < out.best.value) {
            sweep_improvement += out.best.value - v.value;
            out.best = v;
            basis = std::move(cand);
            ++out.accepted;
          }
        }
      }
      if (sweep_improvement < kSweepImprovementFloor) break;
    }
    step *= 0.5;
  }
  out.frame = head_frame(basis);
  return out;
}

}  // namespace

double Frame4::gram_residual() const {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    if (static_cast<int>(vectors[a].size()) != n) return 1.0;
    for (int b = a; b < 4; ++b) {
      const double g = dot(vectors[a], vectors[b]);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

const char* condition_tag_name(ConditionTag tag) {
  switch (tag) {
    case ConditionTag::Pic: return "pic";
    case ConditionTag::Pic1: return "pic1";
    case ConditionTag::Pic2: return "pic2";
    case ConditionTag::Lemma43: return "lemma43";
    case ConditionTag::Lemma44: return "lemma44";
    case ConditionTag::Beta: return "beta";
  }
  return "unknown";
}

ConditionTag condition_tag_from_name(const std::string& name) {
  if (name == "pic") return ConditionTag::Pic;
  if (name == "pic1") return ConditionTag::Pic1;
  if (name == "pic2") return ConditionTag::Pic2;
  if (name == "lemma43") return ConditionTag::Lemma43;
  if (name == "lemma44") return ConditionTag::Lemma44;
  if (name == "beta") return ConditionTag::Beta;
  throw std::invalid_argument("unknown condition expression '" + name + "'");
}

void ConditionExpr::check() const {
  auto in_unit = [](double v) { return v >= -1.0 && v <= 1.0; };
  switch (tag) {
    case ConditionTag::Pic:
    case ConditionTag::Beta:
      if (lambda != 1.0 || mu != 1.0) {
        throw std::invalid_argument(
            "ConditionExpr: lambda and mu are fixed to 1 for this expression");
      }
      if (tag == ConditionTag::Beta && !(beta > 1.0)) {
        throw std::invalid_argument("ConditionExpr: beta must be > 1");
      }
      break;
    case ConditionTag::Pic1:
      if (!in_unit(lambda) || mu != 1.0) {
        throw std::invalid_argument(
            "ConditionExpr: pic1 needs lambda in [-1, 1] and mu = 1");
      }
      break;
    case ConditionTag::Pic2:
      if (!in_unit(lambda) || !in_unit(mu)) {
        throw std::invalid_argument(
            "ConditionExpr: pic2 needs lambda, mu in [-1, 1]");
      }
      break;
    case ConditionTag::Lemma43:
      if (mu != 1.0) {
        throw std::invalid_argument("ConditionExpr: lemma43 fixes mu = 1");
      }
      break;
    case ConditionTag::Lemma44:
      break;
  }
  if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(beta)) {
    throw std::invalid_argument("ConditionExpr: non-finite parameter");
  }
}

FrameScalars frame_scalars(const SymMatrix& pair_matrix, const Frame4& f) {
  const auto& v = f.vectors;
  const std::vector<double> w13 = wedge(v[0], v[2]);
  const std::vector<double> w14 = wedge(v[0], v[3]);
  const std::vector<double> w23 = wedge(v[1], v[2]);
  const std::vector<double> w24 = wedge(v[1], v[3]);
  const std::vector<double> w12 = wedge(v[0], v[1]);
  const std::vector<double> w34 = wedge(v[2], v[3]);
  FrameScalars s;
  s.r1313 = pairing(pair_matrix, w13, w13);
  s.r1414 = pairing(pair_matrix, w14, w14);
  s.r2323 = pairing(pair_matrix, w23, w23);
  s.r2424 = pairing(pair_matrix, w24, w24);
  s.r1234 = pairing(pair_matrix, w12, w34);
  return s;
}

double condition_value(const CurvatureTensor& r, const ConditionExpr& expr,
                       const Frame4& f) {
  expr.check();
  if (r.n() < 4) {
    throw std::invalid_argument("condition_value: needs ambient dimension >= 4");
  }
  if (f.n != r.n()) {
    throw std::invalid_argument("condition_value: frame dimension mismatch");
  }
  const double res = f.gram_residual();
  if (res > 1e-10) {
    throw std::invalid_argument(
        "condition_value: frame is not orthonormal, Gram residual " +
        std::to_string(res));
  }
  const FrameScalars s = frame_scalars(r.lambda2_matrix(), f);
  return generic_value(s, expr.lambda, expr.mu,
                       cross_coefficient(expr.tag, expr.beta));
}

FrameCertificate certify_min(const CurvatureTensor& r,
                             const ConditionExpr& expr, std::int64_t budget,
                             std::uint64_t seed, Execution exec) {
  ConditionExpr base = expr;
  base.lambda = 1.0;
  base.mu = 1.0;
  base.check();
  if (budget < 1) {
    throw std::invalid_argument("certify_min: budget must be >= 1");
  }
  if (r.n() < 4) {
    throw std::invalid_argument("certify_min: needs ambient dimension >= 4");
  }
  const SymMatrix& m = r.lambda2_matrix();
  const int n = r.n();

  // Stage one: inner-minimized value per sampled frame.
  std::vector<InnerMin> sampled(budget);
  for_each_index(
      budget,
      [&](std::int64_t i) {
        const Frame4 f = sample_frame(n, seed, i);
        sampled[i] = minimize_params(frame_scalars(m, f), expr.tag, expr.beta);
      },
      exec);

  std::vector<std::int64_t> order(budget);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    if (sampled[a].value != sampled[b].value) {
      return sampled[a].value < sampled[b].value;
    }
    return a < b;
  });

  // Stage two: refine the best candidates; candidates are independent, and
  // the final pick keys on (value, candidate rank).
  const std::int64_t n_candidates =
      std::min<std::int64_t>(kRefineCandidates, budget);
  std::vector<RefineOutcome> refined(n_candidates);
  for_each_index(
      n_candidates,
      [&](std::int64_t c) {
        const Frame4 f = sample_frame(n, seed, order[c]);
        refined[c] = refine_frame(m, f, expr.tag, expr.beta);
      },
      exec);

  std::int64_t best_c = 0;
  for (std::int64_t c = 1; c < n_candidates; ++c) {
    if (refined[c].best.value < refined[best_c].best.value) best_c = c;
  }

  FrameCertificate cert;
  cert.expr = base;
  cert.expr.lambda = refined[best_c].best.lambda;
  cert.expr.mu = refined[best_c].best.mu;
  cert.frame = refined[best_c].frame;
  cert.samples = budget;
  cert.refinement_steps = refined[best_c].accepted;
  cert.seed = seed;
  // The reported value is the literal re-evaluation at the argmin, through
  // the same path condition_value takes. The search compares closed-form
  // inner minima, which can differ from a direct evaluation in the last
  // ulps (and by more once a stationary lambda blows up on tensors far from
  // any hypothesis), so the certificate pins the reproducible number.
  cert.best_value =
      generic_value(frame_scalars(m, cert.frame), cert.expr.lambda,
                    cert.expr.mu, cross_coefficient(expr.tag, expr.beta));
  return cert;
}

const char* positivity_class_name(PositivityClass c) {
  switch (c) {
    case PositivityClass::Positive: return "positive";
    case PositivityClass::Nonnegative: return "nonnegative";
    case PositivityClass::Indefinite: return "indefinite";
  }
  return "unknown";
}

KPositivityReport k_positivity(const CurvatureTensor& r, OperatorKind kind,
                               int k, double tol, Execution exec) {
  const Spectrum spec =
      (kind == OperatorKind::FirstKind)
          ? first_kind_spectrum(r)
          : second_kind_spectrum(r, SecondKindDomain::Traceless, 1e-12, exec);
  const int dim = static_cast<int>(spec.eigenvalues.size());
  if (k < 1 || k > dim) {
    throw std::invalid_argument("k_positivity: k must lie in 1.." +
                                std::to_string(dim) + ", got " +
                                std::to_string(k));
  }
  KPositivityReport rep;
  rep.k = k;
  rep.matrix_dim = dim;
  rep.sum = smallest_k_sum(spec, k);
  rep.band = tol * (1.0 + r.max_abs());
  if (rep.sum > rep.band) {
    rep.classification = PositivityClass::Positive;
  } else if (rep.sum >= -rep.band) {
    rep.classification = PositivityClass::Nonnegative;
  } else {
    rep.classification = PositivityClass::Indefinite;
  }
  return rep;
}

RicciBoundReport ricci_bound_check(const CurvatureTensor& r, bool strict,
                                   double tol) {
  const SymMatrix ric = ricci(r);
  const Spectrum spec = eigen_sym_checked(ric);
  const double s = ric.trace();
  const int n = r.n();
  RicciBoundReport rep;
  rep.min_ricci = spec.eigenvalues.front();
  rep.threshold = s / (static_cast<double>(n) * (n + 1));
  rep.margin = rep.min_ricci - rep.threshold;
  rep.strict = strict;
  const double band = tol * (1.0 + r.max_abs());
  rep.passes = strict ? rep.margin > band : rep.margin >= -band;
  return rep;
}

double orthogonal_bisectional(const CurvatureTensor& r,
                              const ComplexStructure& j,
                              const std::vector<double>& x,
                              const std::vector<double>& y) {
  const int n = r.n();
  if (n != 2 * j.m || static_cast<int>(x.size()) != n ||
      static_cast<int>(y.size()) != n) {
    throw std::invalid_argument("orthogonal_bisectional: dimension mismatch");
  }
  const std::vector<double> jx = j.apply(x);
  const std::vector<double> jy = j.apply(y);
  const double unit_x = std::abs(dot(x, x) - 1.0);
  const double unit_y = std::abs(dot(y, y) - 1.0);
  const double ortho = std::abs(dot(x, y));
  const double j_ortho = std::abs(dot(x, jy));
  const double worst = std::max({unit_x, unit_y, ortho, j_ortho});
  if (worst > 1e-10) {
    throw std::invalid_argument(
        "orthogonal_bisectional: X, Y must be unit with g(X,Y) = g(X,JY) = 0; "
        "residual " + std::to_string(worst));
  }
  return pairing(r.lambda2_matrix(), wedge(x, jx), wedge(y, jy));
}

double kahler_symmetry_residual(const CurvatureTensor& r,
                                const ComplexStructure& j) {
  const int n = r.n();
  if (n != 2 * j.m) {
    throw std::invalid_argument("kahler_symmetry_residual: J does not match n");
  }
  const SymMatrix& m = r.lambda2_matrix();
  const int n2 = r.dim().lambda2();
  // columns of J = images of the basis vectors
  std::vector<std::vector<double>> jcols(n, std::vector<double>(n));
  for (int c = 0; c < n; ++c) {
    for (int row = 0; row < n; ++row) jcols[c][row] = j.j.at(row, c);
  }
  double worst = 0.0;
  for (int b = 0; b < n2; ++b) {
    const PairIndex pb = pair_from_flat(n, b);
    const std::vector<double> w = wedge(jcols[pb.i - 1], jcols[pb.j - 1]);
    for (int a = 0; a < n2; ++a) {
      double rot = 0.0;
      for (int t = 0; t < n2; ++t) rot += m(a, t) * w[t];
      worst = std::max(worst, std::abs(m(a, b) - rot));
    }
  }
  return worst;
}

std::string certificate_to_json(const FrameCertificate& cert) {
  JsonWriter w;
  w.begin_object();
  w.key("expr");
  w.begin_object();
  w.key("tag");
  w.value(condition_tag_name(cert.expr.tag));
  if (cert.expr.tag == ConditionTag::Beta) {
    w.key("beta");
    w.value(cert.expr.beta);
  }
  w.end_object();
  w.key("best_value");
  w.value(cert.best_value);
  w.key("frame");
  w.begin_array();
  for (const auto& v : cert.frame.vectors) {
    w.begin_array();
    for (double t : v) w.value(t);
    w.end_array();
  }
  w.end_array();
  w.key("params");
  w.begin_object();
  w.key("lambda");
  w.value(cert.expr.lambda);
  w.key("mu");
  w.value(cert.expr.mu);
  w.end_object();
  w.key("samples");
  w.value(static_cast<std::int64_t>(cert.samples));
  w.key("refinement_steps");
  w.value(static_cast<std::int64_t>(cert.refinement_steps));
  w.key("seed");
  w.value(static_cast<std::uint64_t>(cert.seed));
  w.end_object();
  return w.take();
}

}  // namespace curvlab

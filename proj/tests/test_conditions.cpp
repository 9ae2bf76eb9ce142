#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "curvlab/conditions.hpp"
#include "test_util.hpp"

using namespace curvlab;
using namespace curvlab::testutil;

namespace {

Frame4 coordinate_frame(int n, int a, int b, int c, int d) {
  Frame4 f;
  f.n = n;
  int idx[4] = {a, b, c, d};
  for (int v = 0; v < 4; ++v) {
    f.vectors[v].assign(n, 0.0);
    f.vectors[v][idx[v]] = 1.0;
  }
  return f;
}

Frame4 rotated_frame(const Frame4& f, const DenseMatrix& q) {
  Frame4 out;
  out.n = f.n;
  for (int v = 0; v < 4; ++v) {
    out.vectors[v].assign(f.n, 0.0);
    for (int r = 0; r < f.n; ++r) {
      double s = 0.0;
      for (int c = 0; c < f.n; ++c) s += q.at(r, c) * f.vectors[v][c];
      out.vectors[v][r] = s;
    }
  }
  return out;
}

// Direct four-slot contraction, the oracle for every frame evaluation.
double contract4(const CurvatureTensor& r, const std::vector<double>& a,
                 const std::vector<double>& b, const std::vector<double>& c,
                 const std::vector<double>& d) {
  const int n = r.n();
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    if (a[i - 1] == 0.0) continue;
    for (int j = 1; j <= n; ++j) {
      if (b[j - 1] == 0.0) continue;
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          acc += r.component(i, j, k, l) * a[i - 1] * b[j - 1] * c[k - 1] *
                 d[l - 1];
        }
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("frame scalars match the direct contraction oracle") {
  const CurvatureTensor r = random_curvature(Dimension(5), 17);
  CounterRng rng(3, 1);
  Frame4 f;
  f.n = 5;
  // build one orthonormal frame by hand
  std::uint64_t c = 0;
  for (int v = 0; v < 4; ++v) {
    std::vector<double> x(5);
    for (int t = 0; t < 5; ++t) x[t] = rng.gaussian(c++);
    for (int u = 0; u < v; ++u) {
      double d = 0.0;
      for (int t = 0; t < 5; ++t) d += x[t] * f.vectors[u][t];
      for (int t = 0; t < 5; ++t) x[t] -= d * f.vectors[u][t];
      d = 0.0;
      for (int t = 0; t < 5; ++t) d += x[t] * f.vectors[u][t];
      for (int t = 0; t < 5; ++t) x[t] -= d * f.vectors[u][t];
    }
    double norm = 0.0;
    for (double t : x) norm += t * t;
    norm = std::sqrt(norm);
    for (double& t : x) t /= norm;
    f.vectors[v] = x;
  }
  REQUIRE(f.gram_residual() <= 1e-12);

  const FrameScalars s = frame_scalars(r.lambda2_matrix(), f);
  const auto& v = f.vectors;
  CHECK(s.r1313 == doctest::Approx(contract4(r, v[0], v[2], v[0], v[2])).epsilon(1e-11));
  CHECK(s.r1414 == doctest::Approx(contract4(r, v[0], v[3], v[0], v[3])).epsilon(1e-11));
  CHECK(s.r2323 == doctest::Approx(contract4(r, v[1], v[2], v[1], v[2])).epsilon(1e-11));
  CHECK(s.r2424 == doctest::Approx(contract4(r, v[1], v[3], v[1], v[3])).epsilon(1e-11));
  CHECK(s.r1234 == doctest::Approx(contract4(r, v[0], v[1], v[2], v[3])).epsilon(1e-11));
}

TEST_CASE("condition_value on models") {
  SUBCASE("constant curvature gives 4 in every frame") {
    const CurvatureTensor s = sphere(Dimension(4), 1.0);
    ConditionExpr pic;
    pic.tag = ConditionTag::Pic;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      const DenseMatrix q = random_orthogonal(4, seed);
      const Frame4 f = rotated_frame(coordinate_frame(4, 0, 1, 2, 3), q);
      CHECK(condition_value(s, pic, f) == doctest::Approx(4.0).epsilon(1e-12));
    }
  }
  SUBCASE("flat gives 0 for every expression") {
    const CurvatureTensor f0 = flat(Dimension(5));
    const Frame4 f = coordinate_frame(5, 0, 2, 3, 4);
    for (ConditionTag tag : {ConditionTag::Pic, ConditionTag::Pic1,
                             ConditionTag::Pic2, ConditionTag::Lemma43,
                             ConditionTag::Lemma44}) {
      ConditionExpr e;
      e.tag = tag;
      if (tag == ConditionTag::Pic1 || tag == ConditionTag::Pic2 ||
          tag == ConditionTag::Lemma43) {
        e.lambda = 0.5;
      }
      if (tag == ConditionTag::Pic2) e.mu = -0.25;
      CHECK(condition_value(f0, e, f) == 0.0);
    }
  }
  SUBCASE("weights zero collapse to a plain sectional value") {
    const CurvatureTensor r = random_curvature(Dimension(4), 23);
    ConditionExpr e;
    e.tag = ConditionTag::Pic2;
    e.lambda = 0.0;
    e.mu = 0.0;
    const DenseMatrix q = random_orthogonal(4, 5);
    const Frame4 f = rotated_frame(coordinate_frame(4, 0, 1, 2, 3), q);
    const double want = contract4(r, f.vectors[0], f.vectors[2], f.vectors[0],
                                  f.vectors[2]);
    CHECK(condition_value(r, e, f) == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("condition_value is rotation invariant") {
  const CurvatureTensor r = random_curvature(Dimension(4), 31);
  const DenseMatrix q = random_orthogonal(4, 32);
  const CurvatureTensor rq = rotate(r, q);  // rq(f) = r(Q f)
  ConditionExpr e;
  e.tag = ConditionTag::Pic2;
  e.lambda = 0.7;
  e.mu = -0.3;
  const Frame4 f = coordinate_frame(4, 0, 1, 2, 3);
  const Frame4 qf = rotated_frame(f, q);
  CHECK(condition_value(rq, e, f) ==
        doctest::Approx(condition_value(r, e, qf)).epsilon(1e-10));
}

TEST_CASE("parameter and frame validation") {
  const CurvatureTensor r = sphere(Dimension(4), 1.0);
  const Frame4 good = coordinate_frame(4, 0, 1, 2, 3);
  ConditionExpr e;
  e.tag = ConditionTag::Pic1;
  e.lambda = 1.5;  // outside [-1, 1]
  CHECK_THROWS_AS(condition_value(r, e, good), std::invalid_argument);
  e.lambda = 0.5;
  CHECK_NOTHROW(condition_value(r, e, good));

  ConditionExpr beta;
  beta.tag = ConditionTag::Beta;
  beta.beta = 1.0;  // must be strictly above 1
  CHECK_THROWS_AS(beta.check(), std::invalid_argument);
  beta.beta = 1.5;
  CHECK_NOTHROW(beta.check());

  Frame4 bad = good;
  bad.vectors[1] = bad.vectors[0];  // repeated vector, Gram residual 1
  ConditionExpr pic;
  pic.tag = ConditionTag::Pic;
  CHECK_THROWS_WITH_AS(condition_value(r, pic, bad),
                       doctest::Contains("Gram residual"),
                       std::invalid_argument);
}

TEST_CASE("certify_min on the unit sphere") {
  const CurvatureTensor s = sphere(Dimension(4), 1.0);
  SUBCASE("isotropic form is constant 4") {
    ConditionExpr e;
    e.tag = ConditionTag::Pic;
    const FrameCertificate cert = certify_min(s, e, 500, 11);
    CHECK(std::abs(cert.best_value - 4.0) <= 1e-9);
    CHECK(cert.samples == 500);
  }
  SUBCASE("the two-parameter family bottoms out at 1") {
    ConditionExpr e;
    e.tag = ConditionTag::Lemma44;
    const FrameCertificate cert = certify_min(s, e, 500, 11);
    CHECK(std::abs(cert.best_value - 1.0) <= 1e-9);
    CHECK(std::abs(cert.expr.lambda) <= 1e-6);
    CHECK(std::abs(cert.expr.mu) <= 1e-6);
  }
}

TEST_CASE("certificates re-evaluate to their own best value") {
  for (ConditionTag tag : {ConditionTag::Pic1, ConditionTag::Pic2,
                           ConditionTag::Lemma43, ConditionTag::Lemma44}) {
    const CurvatureTensor r = random_curvature(Dimension(4), 47);
    ConditionExpr e;
    e.tag = tag;
    const FrameCertificate cert = certify_min(r, e, 200, 13);
    const double reval = condition_value(r, cert.expr, cert.frame);
    CHECK(std::abs(reval - cert.best_value) <= 1e-12 * (1.0 + std::abs(reval)));
  }
}

TEST_CASE("certify_min is deterministic and schedule-independent") {
  const CurvatureTensor r = random_curvature(Dimension(5), 53);
  ConditionExpr e;
  e.tag = ConditionTag::Pic1;
  const FrameCertificate a = certify_min(r, e, 400, 99, Execution::Serial);
  const FrameCertificate b = certify_min(r, e, 400, 99, Execution::Parallel);
  const FrameCertificate c = certify_min(r, e, 400, 99, Execution::Parallel);
  CHECK(a.best_value == b.best_value);
  CHECK(b.best_value == c.best_value);
  CHECK(a.expr.lambda == b.expr.lambda);
  CHECK(a.refinement_steps == b.refinement_steps);
  for (int v = 0; v < 4; ++v) {
    CHECK(std::memcmp(a.frame.vectors[v].data(), b.frame.vectors[v].data(),
                      sizeof(double) * a.frame.vectors[v].size()) == 0);
  }
  // JSON serialization is byte-stable
  CHECK(certificate_to_json(a) == certificate_to_json(b));
}

TEST_CASE("certify_min finds the complex-structure violation") {
  const KahlerModel cp2 = cpn(2);
  SUBCASE("beta = 1.5 is decisively violated") {
    ConditionExpr e;
    e.tag = ConditionTag::Beta;
    e.beta = 1.5;
    const FrameCertificate cert = certify_min(cp2.tensor, e, 2000, 21);
    CHECK(cert.best_value < -0.05);
    // global minimum is 4 - 4 beta = -2 on holomorphic-pair frames
    CHECK(cert.best_value >= -2.0 - 1e-9);
  }
  SUBCASE("the base isotropic form stays nonnegative with minimum zero") {
    ConditionExpr e;
    e.tag = ConditionTag::Pic;
    const FrameCertificate cert = certify_min(cp2.tensor, e, 2000, 21);
    CHECK(cert.best_value >= -1e-6);
    CHECK(cert.best_value <= 1e-6);
  }
}

TEST_CASE("certify_min argument validation") {
  const CurvatureTensor r = sphere(Dimension(4), 1.0);
  ConditionExpr e;
  e.tag = ConditionTag::Pic;
  CHECK_THROWS_AS(certify_min(r, e, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(certify_min(sphere(Dimension(3), 1.0), e, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("k_positivity on the model spectra") {
  const CurvatureTensor cyl = cylinder(Dimension(4));
  const KPositivityReport five = k_positivity(cyl, OperatorKind::SecondKindRestricted, 5);
  CHECK(five.classification == PositivityClass::Positive);
  CHECK(five.sum == doctest::Approx(0.5).epsilon(1e-11));

  const KPositivityReport four = k_positivity(cyl, OperatorKind::SecondKindRestricted, 4);
  CHECK(four.classification == PositivityClass::Indefinite);
  CHECK(four.sum == doctest::Approx(-0.5).epsilon(1e-11));

  const CurvatureTensor ss =
      product(sphere(Dimension(2), 1.0), sphere(Dimension(2), 1.0));
  const KPositivityReport six = k_positivity(ss, OperatorKind::SecondKindRestricted, 6);
  CHECK(six.classification == PositivityClass::Nonnegative);
  CHECK(std::abs(six.sum) <= 1e-11);
  const KPositivityReport fv = k_positivity(ss, OperatorKind::SecondKindRestricted, 5);
  CHECK(fv.classification == PositivityClass::Indefinite);
  CHECK(fv.sum == doctest::Approx(-1.0).epsilon(1e-11));

  const KPositivityReport cp3 =
      k_positivity(cpn(2).tensor, OperatorKind::SecondKindRestricted, 3);
  CHECK(cp3.classification == PositivityClass::Indefinite);
  CHECK(cp3.sum == doctest::Approx(-6.0).epsilon(1e-10));

  // first-kind flavor: the unit sphere pair operator is the identity
  const KPositivityReport first =
      k_positivity(sphere(Dimension(4), 1.0), OperatorKind::FirstKind, 2);
  CHECK(first.classification == PositivityClass::Positive);
  CHECK(first.sum == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(k_positivity(cyl, OperatorKind::SecondKindRestricted, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(k_positivity(cyl, OperatorKind::SecondKindRestricted, 10),
                  std::invalid_argument);
}

TEST_CASE("ricci_bound_check") {
  const RicciBoundReport s = ricci_bound_check(sphere(Dimension(4), 1.0), true);
  CHECK(s.passes);
  CHECK(s.min_ricci == doctest::Approx(3.0));
  CHECK(s.threshold == doctest::Approx(0.6));
  CHECK(s.margin == doctest::Approx(2.4));

  const RicciBoundReport f = ricci_bound_check(flat(Dimension(4)), false);
  CHECK(f.passes);  // equality case under the nonstrict bound
  CHECK(f.margin == 0.0);
  CHECK_FALSE(ricci_bound_check(flat(Dimension(4)), true).passes);

  const RicciBoundReport c = ricci_bound_check(cylinder(Dimension(4)), false);
  CHECK_FALSE(c.passes);
  CHECK(c.min_ricci == doctest::Approx(0.0));
  CHECK(c.threshold == doctest::Approx(0.3));
}

TEST_CASE("orthogonal bisectional curvature") {
  SUBCASE("flat complex structures carry none") {
    const ComplexStructure j = standard_complex_structure(2);
    const CurvatureTensor f = flat(Dimension(4));
    std::vector<double> x = {1, 0, 0, 0};
    std::vector<double> y = {0, 0, 1, 0};
    CHECK(orthogonal_bisectional(f, j, x, y) == 0.0);
  }
  SUBCASE("projective model matches the direct contraction") {
    const KahlerModel cp2 = cpn(2);
    std::vector<double> x = {1, 0, 0, 0};
    std::vector<double> y = {0, 0, 1, 0};
    const double got = orthogonal_bisectional(cp2.tensor, cp2.structure, x, y);
    const auto jx = cp2.structure.apply(x);
    const auto jy = cp2.structure.apply(y);
    const double oracle = contract4(cp2.tensor, x, jx, y, jy);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(got == doctest::Approx(2.0).epsilon(1e-13));
  }
  SUBCASE("constant curvature contracts to zero") {
    const ComplexStructure j = standard_complex_structure(2);
    const CurvatureTensor s = sphere(Dimension(4), 1.0);
    std::vector<double> x = {1, 0, 0, 0};
    std::vector<double> y = {0, 0, 0, 1};
    CHECK(std::abs(orthogonal_bisectional(s, j, x, y)) <= 1e-14);
  }
  SUBCASE("admissibility is enforced") {
    const ComplexStructure j = standard_complex_structure(2);
    const CurvatureTensor f = flat(Dimension(4));
    std::vector<double> x = {1, 0, 0, 0};
    std::vector<double> jx = {0, 1, 0, 0};  // y = Jx violates g(x, Jy) = 0
    CHECK_THROWS_AS(orthogonal_bisectional(f, j, x, jx), std::invalid_argument);
    std::vector<double> long_x = {2, 0, 0, 0};
    std::vector<double> y = {0, 0, 1, 0};
    CHECK_THROWS_AS(orthogonal_bisectional(f, j, long_x, y), std::invalid_argument);
  }
}

TEST_CASE("complex-symmetry residual") {
  CHECK(kahler_symmetry_residual(cpn(2).tensor, cpn(2).structure) == 0.0);
  CHECK(kahler_symmetry_residual(cpn(3).tensor, cpn(3).structure) == 0.0);
  CHECK(kahler_symmetry_residual(flat(Dimension(4)),
                                 standard_complex_structure(2)) == 0.0);
  // random tensors are not complex-compatible
  const CurvatureTensor r = random_curvature(Dimension(4), 61);
  CHECK(kahler_symmetry_residual(r, standard_complex_structure(2)) > 1e-3);
}

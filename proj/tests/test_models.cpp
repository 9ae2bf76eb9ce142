#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "curvlab/models.hpp"
#include "test_util.hpp"

using namespace curvlab;
using namespace curvlab::testutil;

namespace {

// Contraction oracle independent of ricci(): plain sums over the component
// accessor in a different index arrangement.
SymMatrix ricci_by_contraction(const CurvatureTensor& r) {
  const int n = r.n();
  SymMatrix out(n);
  for (int a = 1; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      double s = 0.0;
      for (int t = 1; t <= n; ++t) s += r.component(t, a, t, b);
      out.set(a - 1, b - 1, s);
    }
  }
  return out;
}

std::vector<double> sorted_second_kind(const CurvatureTensor& r) {
  return second_kind_spectrum(r, SecondKindDomain::Traceless).eigenvalues;
}

}  // namespace

TEST_CASE("sphere: restricted action is exactly kappa times the identity") {
  for (int n : {2, 3, 4, 5, 6}) {
    for (double kappa : {1.0, 0.5, 2.0}) {
      const SymForm f =
          second_kind_matrix(sphere(Dimension(n), kappa), SecondKindDomain::Traceless);
      for (int a = 0; a < f.matrix.dim(); ++a) {
        for (int b = 0; b < f.matrix.dim(); ++b) {
          CHECK(std::abs(f.matrix(a, b) - (a == b ? kappa : 0.0)) <= 1e-14);
        }
      }
    }
  }
  CHECK(sphere(Dimension(3), 0.0).max_abs() == 0.0);  // kappa = 0 is flat
}

TEST_CASE("sphere contractions against the oracle") {
  const CurvatureTensor s = sphere(Dimension(3), 2.0);
  const SymMatrix direct = ricci_by_contraction(s);
  const SymMatrix lib = ricci(s);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(direct(a, b) == lib(a, b));
      CHECK(direct(a, b) == (a == b ? 4.0 : 0.0));
    }
  }
  CHECK(scalar(s) == 12.0);
}

TEST_CASE("product: direct sum of components") {
  const CurvatureTensor r1 = random_curvature(Dimension(3), 5);
  const CurvatureTensor r2 = random_curvature(Dimension(2), 6);
  const CurvatureTensor p = product(r1, r2);
  REQUIRE(p.n() == 5);
  // factor blocks copied verbatim
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        for (int l = 1; l <= 3; ++l) {
          CHECK(p.component(i, j, k, l) == r1.component(i, j, k, l));
        }
      }
    }
  }
  CHECK(p.component(4, 5, 4, 5) == r2.component(1, 2, 1, 2));
  // mixed components vanish
  CHECK(p.component(1, 4, 1, 4) == 0.0);
  CHECK(p.component(1, 2, 4, 5) == 0.0);
  CHECK(p.component(3, 4, 3, 5) == 0.0);
  // contraction compatibility
  CHECK(scalar(p) ==
        doctest::Approx(scalar(r1) + scalar(r2)).epsilon(1e-13));
  const SymMatrix ric = ricci(p);
  const SymMatrix ric1 = ricci(r1);
  const SymMatrix ric2 = ricci(r2);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(ric(a, b) == ric1(a, b));
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) CHECK(ric(3 + a, 3 + b) == ric2(a, b));
  }
  CHECK(ric(0, 4) == 0.0);
  // flat x flat is flat
  CHECK(product(flat(Dimension(2)), flat(Dimension(3))).max_abs() == 0.0);
}

TEST_CASE("cylinder spectra match the closed form") {
  for (int n : {3, 4, 5, 6}) {
    const CurvatureTensor c = cylinder(Dimension(n));
    const auto eig = sorted_second_kind(c);
    const int total = (n - 1) * (n + 2) / 2;
    REQUIRE(static_cast<int>(eig.size()) == total);
    const double lam1 = -static_cast<double>(n - 2) / n;
    CHECK(std::abs(eig[0] - lam1) <= 1e-12);
    for (int i = 1; i < n; ++i) CHECK(std::abs(eig[i]) <= 1e-12);
    for (int i = n; i < total; ++i) CHECK(std::abs(eig[i] - 1.0) <= 1e-12);
    // sum of the smallest n+1 eigenvalues is 2/n
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) sum += eig[i];
    CHECK(sum == doctest::Approx(2.0 / n).epsilon(1e-11));
  }
}

TEST_CASE("cylinder lowest eigenvector is the balanced diagonal direction") {
  for (int n : {4, 5}) {
    const CurvatureTensor c = cylinder(Dimension(n));
    const Spectrum spec = second_kind_spectrum(c, SecondKindDomain::Traceless);
    // reference direction sum_{i<n} e_i (.) e_i - (n-1) e_n (.) e_n as a
    // coordinate vector over the traceless basis
    SymMatrix ref(n);
    for (int i = 0; i < n - 1; ++i) ref.set(i, i, 1.0);
    ref.set(n - 1, n - 1, -(n - 1.0));
    const auto basis = traceless_basis(Dimension(n));
    std::vector<double> coords(basis.size());
    double ref_norm = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      coords[a] = frobenius_dot(basis[a], ref);
      ref_norm += coords[a] * coords[a];
    }
    ref_norm = std::sqrt(ref_norm);
    double cosine = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      cosine += coords[a] / ref_norm * spec.eigenvectors.at(a, 0);
    }
    CHECK(std::abs(cosine) >= 1.0 - 1e-8);
  }
}

TEST_CASE("product of unit 2-spheres: spectrum and eigenspaces") {
  const CurvatureTensor ss =
      product(sphere(Dimension(2), 1.0), sphere(Dimension(2), 1.0));
  const auto eig = sorted_second_kind(ss);
  REQUIRE(eig.size() == 9);
  CHECK(std::abs(eig[0] + 1.0) <= 1e-12);
  for (int i = 1; i <= 4; ++i) CHECK(std::abs(eig[i]) <= 1e-12);
  for (int i = 5; i <= 8; ++i) CHECK(std::abs(eig[i] - 1.0) <= 1e-12);
}

TEST_CASE("standard complex structure") {
  const ComplexStructure j1 = standard_complex_structure(1);
  CHECK(j1.j.at(0, 1) == -1.0);
  CHECK(j1.j.at(1, 0) == 1.0);
  CHECK(j1.j.at(0, 0) == 0.0);
  for (int m : {2, 3}) {
    const ComplexStructure js = standard_complex_structure(m);
    const int n = 2 * m;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double jj = 0.0, jtj = 0.0;
        for (int t = 0; t < n; ++t) {
          jj += js.j.at(r, t) * js.j.at(t, c);
          jtj += js.j.at(t, r) * js.j.at(t, c);
        }
        CHECK(jj == (r == c ? -1.0 : 0.0));
        CHECK(jtj == (r == c ? 1.0 : 0.0));
      }
    }
  }
  // a non-orthogonal J is rejected
  DenseMatrix bad(2, 2);
  bad.at(0, 1) = -2.0;
  bad.at(1, 0) = 0.5;
  CHECK_THROWS_AS(ComplexStructure(1, bad), std::invalid_argument);
}

TEST_CASE("complex projective models") {
  SUBCASE("m=1 coincides with the curvature-4 two-sphere") {
    const KahlerModel cp1 = cpn(1);
    const CurvatureTensor s24 = sphere(Dimension(2), 4.0);
    CHECK(cp1.tensor.lambda2_matrix()(0, 0) == s24.lambda2_matrix()(0, 0));
  }
  SUBCASE("m=2: spectrum -2 (x3), 4 (x6); Einstein constant 6") {
    const KahlerModel cp2 = cpn(2);
    const auto eig = sorted_second_kind(cp2.tensor);
    REQUIRE(eig.size() == 9);
    for (int i = 0; i < 3; ++i) CHECK(eig[i] == doctest::Approx(-2.0).epsilon(1e-10));
    for (int i = 3; i < 9; ++i) CHECK(eig[i] == doctest::Approx(4.0).epsilon(1e-10));
    const SymMatrix ric = ricci(cp2.tensor);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) CHECK(ric(a, b) == (a == b ? 6.0 : 0.0));
    }
  }
  SUBCASE("m=3: spectrum -2 (x8), 4 (x12); Einstein constant 8") {
    const KahlerModel cp3 = cpn(3);
    const auto eig = sorted_second_kind(cp3.tensor);
    REQUIRE(eig.size() == 20);
    for (int i = 0; i < 8; ++i) CHECK(eig[i] == doctest::Approx(-2.0).epsilon(1e-10));
    for (int i = 8; i < 20; ++i) CHECK(eig[i] == doctest::Approx(4.0).epsilon(1e-10));
    const SymMatrix ric = ricci(cp3.tensor);
    for (int a = 0; a < 6; ++a) CHECK(ric(a, a) == 8.0);
  }
  SUBCASE("trace cross-check: both routes give 2 (m+1)^2") {
    for (int m : {2, 3}) {
      const KahlerModel cp = cpn(m);
      const int n = 2 * m;
      const double via_matrix =
          second_kind_matrix(cp.tensor, SecondKindDomain::Traceless).matrix.trace();
      const double via_scalar = (n + 2) * scalar(cp.tensor) / (2.0 * n);
      const double want = 2.0 * (m + 1) * (m + 1);
      CHECK(via_matrix == doctest::Approx(want).epsilon(1e-11));
      CHECK(via_scalar == doctest::Approx(want).epsilon(1e-11));
    }
  }
  SUBCASE("tensors are valid and complex-compatible") {
    for (int m : {1, 2, 3}) {
      const KahlerModel cp = cpn(m);
      CHECK(validate(cp.tensor).bianchi_violation == 0.0);
    }
  }
}

TEST_CASE("random_curvature: deterministic, Bianchi-exact") {
  const CurvatureTensor a = random_curvature(Dimension(4), 99);
  const CurvatureTensor b = random_curvature(Dimension(4), 99);
  CHECK(std::memcmp(a.lambda2_matrix().data().data(),
                    b.lambda2_matrix().data().data(),
                    a.lambda2_matrix().data().size() * sizeof(double)) == 0);
  CHECK(a.lambda2_matrix().data() !=
        random_curvature(Dimension(4), 100).lambda2_matrix().data());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const CurvatureTensor r = random_curvature(Dimension(4), seed);
    CHECK(validate(r).bianchi_violation <= 1e-12 * (1.0 + r.max_abs()));
  }
  // scale parameter acts linearly
  const CurvatureTensor unit = random_curvature(Dimension(3), 7, 1.0);
  const CurvatureTensor twice = random_curvature(Dimension(3), 7, 2.0);
  CHECK(std::abs(twice.lambda2_matrix()(0, 1) -
                 2.0 * unit.lambda2_matrix()(0, 1)) <= 1e-15);
}

TEST_CASE("random_filtered") {
  SUBCASE("a satisfiable predicate is found") {
    auto pred = [](const CurvatureTensor& r) {
      // 3-nonnegative restricted action
      const auto eig = sorted_second_kind(r);
      return eig[0] + eig[1] + eig[2] >= 1e-8;
    };
    const auto got = random_filtered(Dimension(4), 11, pred, 400);
    REQUIRE(got.has_value());
    CHECK(pred(got->tensor));
    CHECK(got->attempts >= 1);
    // determinism
    const auto again = random_filtered(Dimension(4), 11, pred, 400);
    REQUIRE(again.has_value());
    CHECK(again->attempts == got->attempts);
    CHECK(again->tensor.lambda2_matrix().data() ==
          got->tensor.lambda2_matrix().data());
  }
  SUBCASE("exhaustion is a value, not an exception") {
    auto never = [](const CurvatureTensor&) { return false; };
    const auto got = random_filtered(Dimension(4), 1, never, 10);
    CHECK_FALSE(got.has_value());
  }
  SUBCASE("an indefinite first-kind tensor is found") {
    auto indefinite = [](const CurvatureTensor& r) {
      return first_kind_spectrum(r).eigenvalues.front() < -0.1;
    };
    const auto got = random_filtered(Dimension(4), 3, indefinite, 100);
    REQUIRE(got.has_value());
    CHECK(first_kind_spectrum(got->tensor).eigenvalues.front() < -0.1);
  }
}

TEST_CASE("model specs build the same tensors") {
  ModelSpec s;
  s.kind = "sphere";
  s.dim = 4;
  s.kappa = 1.0;
  CHECK(s.build().lambda2_matrix().data() ==
        sphere(Dimension(4), 1.0).lambda2_matrix().data());

  ModelSpec c;
  c.kind = "cylinder";
  c.dim = 5;
  CHECK(c.build().lambda2_matrix().data() ==
        cylinder(Dimension(5)).lambda2_matrix().data());

  ModelSpec p;
  p.kind = "product";
  p.left = std::make_shared<ModelSpec>();
  p.left->kind = "sphere";
  p.left->dim = 3;
  p.right = std::make_shared<ModelSpec>();
  p.right->kind = "flat";
  p.right->dim = 1;
  CHECK(p.build().lambda2_matrix().data() ==
        cylinder(Dimension(4)).lambda2_matrix().data());

  ModelSpec bad;
  bad.kind = "dodecahedron";
  CHECK_THROWS_AS(bad.build(), std::invalid_argument);
}

TEST_CASE("cylinder requires dimension three") {
  CHECK_THROWS_AS(cylinder(Dimension(2)), std::invalid_argument);
}

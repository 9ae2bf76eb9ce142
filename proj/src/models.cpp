#include "curvlab/models.hpp"

#include <cmath>
#include <memory>

#include "curvlab/rng.hpp"

namespace curvlab {

CurvatureTensor sphere(Dimension dim, double kappa) {
  const int n2 = dim.lambda2();
  SymMatrix m(n2);
  for (int a = 0; a < n2; ++a) m.set(a, a, kappa);
  return CurvatureTensor(dim, std::move(m));
}

CurvatureTensor flat(Dimension dim) { return sphere(dim, 0.0); }

CurvatureTensor product(const CurvatureTensor& r1, const CurvatureTensor& r2) {
  const int n1 = r1.n();
  const int n2 = r2.n();
  const Dimension dim(n1 + n2);
  const int pairs = dim.lambda2();
  SymMatrix m(pairs);
  auto factor_component = [&](int i, int j, int k, int l) -> double {
    const bool first = i <= n1 && j <= n1 && k <= n1 && l <= n1;
    if (first) return r1.component(i, j, k, l);
    const bool second = i > n1 && j > n1 && k > n1 && l > n1;
    if (second) return r2.component(i - n1, j - n1, k - n1, l - n1);
    return 0.0;  // mixed indices vanish by the product structure
  };
  for (int a = 0; a < pairs; ++a) {
    const PairIndex pa = pair_from_flat(dim.n(), a);
    for (int b = a; b < pairs; ++b) {
      const PairIndex pb = pair_from_flat(dim.n(), b);
      m.set(a, b, factor_component(pa.i, pa.j, pb.i, pb.j));
    }
  }
  return CurvatureTensor(dim, std::move(m));
}

CurvatureTensor cylinder(Dimension dim) {
  if (dim.n() < 3) {
    throw std::invalid_argument("cylinder: needs dimension >= 3");
  }
  return product(sphere(Dimension(dim.n() - 1), 1.0), flat(Dimension(1)));
}

ComplexStructure::ComplexStructure(int m_in, DenseMatrix j_in)
    : m(m_in), j(std::move(j_in)) {
  if (m < 1) throw std::invalid_argument("ComplexStructure: m must be >= 1");
  const int n = 2 * m;
  if (j.rows() != n || j.cols() != n) {
    throw std::invalid_argument("ComplexStructure: J must be 2m x 2m");
  }
  // J^2 = -I and J^T J = I, exactly.
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double jj = 0.0, jtj = 0.0;
      for (int t = 0; t < n; ++t) {
        jj += j.at(r, t) * j.at(t, c);
        jtj += j.at(t, r) * j.at(t, c);
      }
      const double want_jj = (r == c) ? -1.0 : 0.0;
      const double want_jtj = (r == c) ? 1.0 : 0.0;
      if (jj != want_jj || jtj != want_jtj) {
        throw std::invalid_argument(
            "ComplexStructure: J^2 = -I and J^T J = I must hold exactly");
      }
    }
  }
}

std::vector<double> ComplexStructure::apply(const std::vector<double>& x) const {
  const int n = 2 * m;
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("ComplexStructure::apply: size mismatch");
  }
  std::vector<double> y(n, 0.0);
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += j.at(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

ComplexStructure standard_complex_structure(int m) {
  if (m < 1) throw std::invalid_argument("standard_complex_structure: m >= 1");
  const int n = 2 * m;
  DenseMatrix j(n, n);
  for (int a = 0; a < m; ++a) {
    j.at(2 * a + 1, 2 * a) = 1.0;   // J e_{2a-1} = e_{2a}
    j.at(2 * a, 2 * a + 1) = -1.0;  // J e_{2a}  = -e_{2a-1}
  }
  return ComplexStructure(m, std::move(j));
}

KahlerModel cpn(int m) {
  ComplexStructure cs = standard_complex_structure(m);
  const Dimension dim(2 * m);
  const int n = dim.n();
  const int pairs = dim.lambda2();
  auto jm = [&](int a, int b) { return cs.j.at(a - 1, b - 1); };
  SymMatrix mat(pairs);
  for (int a = 0; a < pairs; ++a) {
    const PairIndex pa = pair_from_flat(n, a);
    for (int b = a; b < pairs; ++b) {
      const PairIndex pb = pair_from_flat(n, b);
      const int i = pa.i, j = pa.j, k = pb.i, l = pb.j;
      const double gik = (i == k) ? 1.0 : 0.0;
      const double gjl = (j == l) ? 1.0 : 0.0;
      const double gil = (i == l) ? 1.0 : 0.0;
      const double gjk = (j == k) ? 1.0 : 0.0;
      const double v = gik * gjl - gil * gjk + jm(i, k) * jm(j, l) -
                       jm(i, l) * jm(j, k) + 2.0 * jm(i, j) * jm(k, l);
      mat.set(a, b, v);
    }
  }
  return KahlerModel{CurvatureTensor(dim, std::move(mat)), std::move(cs)};
}

CurvatureTensor random_curvature(Dimension dim, std::uint64_t seed,
                                 double scale) {
  const int n2 = dim.lambda2();
  CounterRng rng(seed, kStreamTensor);
  SymMatrix m(n2);
  for (int a = 0; a < n2; ++a) {
    for (int b = a; b < n2; ++b) {
      const std::uint64_t counter =
          static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n2) + b;
      m.set(a, b, scale * rng.gaussian(counter));
    }
  }
  return bianchi_project(CurvatureTensor(dim, std::move(m)));
}

std::optional<FilteredSample> random_filtered(
    Dimension dim, std::uint64_t seed,
    const std::function<bool(const CurvatureTensor&)>& predicate,
    int max_attempts) {
  for (int t = 0; t < max_attempts; ++t) {
    const std::uint64_t sub = CounterRng::derive(seed, static_cast<std::uint64_t>(t));
    CurvatureTensor candidate = [&] {
      if (t % 2 == 0) {
        return random_curvature(dim, sub, 1.0);
      }
      CounterRng rng(sub, kStreamFilter);
      const double mix = rng.uniform(0);
      return mix * sphere(dim, 1.0) +
             (1.0 - mix) * random_curvature(dim, CounterRng::derive(sub, 1), 1.0);
    }();
    if (predicate(candidate)) {
      return FilteredSample{std::move(candidate), t + 1};
    }
  }
  return std::nullopt;
}

CurvatureTensor ModelSpec::build() const {
  if (kind == "sphere") return sphere(Dimension(dim), kappa);
  if (kind == "flat") return flat(Dimension(dim));
  if (kind == "cylinder") return cylinder(Dimension(dim));
  if (kind == "cpn") return cpn(m).tensor;
  if (kind == "random") return random_curvature(Dimension(dim), seed, scale);
  if (kind == "product") {
    if (!left || !right) {
      throw std::invalid_argument("ModelSpec: product needs left and right");
    }
    return product(left->build(), right->build());
  }
  throw std::invalid_argument("ModelSpec: unknown kind '" + kind + "'");
}

}  // namespace curvlab

#ifndef CURVLAB_TEST_UTIL_HPP
#define CURVLAB_TEST_UTIL_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "curvlab/rng.hpp"
#include "curvlab/spaces.hpp"

namespace curvlab::testutil {

inline SymMatrix random_sym_matrix(int dim, std::uint64_t seed,
                                   double scale = 1.0) {
  CounterRng rng(seed, 0xab1cULL ^ 0x5117);
  SymMatrix m(dim);
  std::uint64_t c = 0;
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      m.set(a, b, scale * rng.gaussian(c++));
    }
  }
  return m;
}

// Dense Gaussian elimination with partial pivoting; test-only oracle helper.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-14) {
      throw std::runtime_error("gauss_solve: singular system");
    }
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

// Random orthogonal matrix via Gram-Schmidt of a Gaussian matrix.
inline DenseMatrix random_orthogonal(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x0a7bULL);
  DenseMatrix q(n, n);
  std::uint64_t c = 0;
  for (int col = 0; col < n; ++col) {
    std::vector<double> v(n);
    for (int r = 0; r < n; ++r) v[r] = rng.gaussian(c++);
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < col; ++prev) {
        double d = 0.0;
        for (int r = 0; r < n; ++r) d += v[r] * q.at(r, prev);
        for (int r = 0; r < n; ++r) v[r] -= d * q.at(r, prev);
      }
    }
    double norm = 0.0;
    for (double t : v) norm += t * t;
    norm = std::sqrt(norm);
    for (int r = 0; r < n; ++r) q.at(r, col) = v[r] / norm;
  }
  return q;
}

}  // namespace curvlab::testutil

#endif

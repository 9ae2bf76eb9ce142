#include "curvlab/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

CurvatureTensor::CurvatureTensor(Dimension dim, SymMatrix lambda2)
    : dim_(dim), m_(std::move(lambda2)) {
  if (m_.dim() != dim_.lambda2()) {
    throw std::invalid_argument(
        "CurvatureTensor: pair-basis matrix has dimension " +
        std::to_string(m_.dim()) + ", expected " +
        std::to_string(dim_.lambda2()));
  }
}

double CurvatureTensor::component(int i, int j, int k, int l) const {
  const int n = dim_.n();
  if (i < 1 || j < 1 || k < 1 || l < 1 || i > n || j > n || k > n || l > n) {
    throw std::invalid_argument("CurvatureTensor::component: index out of range");
  }
  if (i == j || k == l) return 0.0;
  double sign = 1.0;
  if (i > j) {
    std::swap(i, j);
    sign = -sign;
  }
  if (k > l) {
    std::swap(k, l);
    sign = -sign;
  }
  return sign * m_(pair_flat(n, i, j), pair_flat(n, k, l));
}

CurvatureTensor operator+(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.dim_ != b.dim_) {
    throw std::invalid_argument("CurvatureTensor: dimension mismatch in +");
  }
  SymMatrix m(a.m_.dim());
  for (int x = 0; x < m.dim(); ++x) {
    for (int y = x; y < m.dim(); ++y) {
      m.set(x, y, a.m_(x, y) + b.m_(x, y));
    }
  }
  return CurvatureTensor(a.dim_, std::move(m));
}

CurvatureTensor operator*(double s, const CurvatureTensor& r) {
  SymMatrix m(r.m_.dim());
  for (int x = 0; x < m.dim(); ++x) {
    for (int y = x; y < m.dim(); ++y) {
      m.set(x, y, s * r.m_(x, y));
    }
  }
  return CurvatureTensor(r.dim_, std::move(m));
}

SymmetryReport validate(const CurvatureTensor& r) {
  SymmetryReport rep;
  rep.scale = 1.0 + r.max_abs();
  const int n = r.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
          const double b = r.component(i, j, k, l) + r.component(i, k, l, j) +
                           r.component(i, l, j, k);
          rep.bianchi_violation = std::max(rep.bianchi_violation, std::abs(b));
        }
      }
    }
  }
  // Storage is symmetric bit-for-bit; kept in the report for data loaded
  // from external sources before symmetrization.
  rep.pair_violation = 0.0;
  return rep;
}

CurvatureTensor bianchi_project(const CurvatureTensor& t) {
  const int n = t.n();
  const int n2 = t.dim().lambda2();
  SymMatrix out(n2);
  for (int a = 0; a < n2; ++a) {
    const PairIndex pa = pair_from_flat(n, a);
    for (int b = a; b < n2; ++b) {
      const PairIndex pb = pair_from_flat(n, b);
      const int i = pa.i, j = pa.j, k = pb.i, l = pb.j;
      const double v = (2.0 * t.component(i, j, k, l) -
                        t.component(i, k, l, j) - t.component(i, l, j, k)) /
                       3.0;
      out.set(a, b, v);
    }
  }
  return CurvatureTensor(t.dim(), std::move(out));
}

SymForm first_kind_matrix(const CurvatureTensor& r) {
  return SymForm{r.lambda2_matrix(), BasisTag::Lambda2};
}

double second_kind_bilinear(const CurvatureTensor& r, const SymMatrix& phi,
                            const SymMatrix& psi) {
  const int n = r.n();
  if (phi.dim() != n || psi.dim() != n) {
    throw std::invalid_argument("second_kind_bilinear: tensors must be n x n");
  }
  // Group the quadruple sum sum_{ijkl} R_ijkl phi_il psi_jk by unordered
  // index pairs; the four sign combinations of each (pair, pair) cell
  // contract against one stored matrix entry.
  const SymMatrix& m = r.lambda2_matrix();
  const int n2 = m.dim();
  double acc = 0.0;
  for (int a = 0; a < n2; ++a) {
    const PairIndex pa = pair_from_flat(n, a);
    const int i = pa.i - 1, j = pa.j - 1;
    for (int b = 0; b < n2; ++b) {
      const double mv = m(a, b);
      if (mv == 0.0) continue;
      const PairIndex pb = pair_from_flat(n, b);
      const int k = pb.i - 1, l = pb.j - 1;
      acc += mv * (phi(i, l) * psi(j, k) - phi(j, l) * psi(i, k) -
                   phi(i, k) * psi(j, l) + phi(j, k) * psi(i, l));
    }
  }
  return acc;
}

SymForm second_kind_matrix(const CurvatureTensor& r, SecondKindDomain domain,
                           Execution exec) {
  const std::vector<SymMatrix> basis = (domain == SecondKindDomain::Full)
                                           ? sym_basis(r.dim())
                                           : traceless_basis(r.dim());
  SymMatrix g = gram_matrix(
      static_cast<int>(basis.size()),
      [&](int a, int b) { return second_kind_bilinear(r, basis[a], basis[b]); },
      exec);
  const BasisTag tag = (domain == SecondKindDomain::Full)
                           ? BasisTag::Sym2
                           : BasisTag::Sym2Traceless;
  return SymForm{std::move(g), tag};
}

Spectrum first_kind_spectrum(const CurvatureTensor& r, double tol) {
  Spectrum s = eigen_sym_checked(r.lambda2_matrix(), tol);
  s.basis = BasisTag::Lambda2;
  return s;
}

Spectrum second_kind_spectrum(const CurvatureTensor& r, SecondKindDomain domain,
                              double tol, Execution exec) {
  SymForm form = second_kind_matrix(r, domain, exec);
  Spectrum s = eigen_sym_checked(form.matrix, tol);
  s.basis = form.basis;
  return s;
}

SymMatrix ricci(const CurvatureTensor& r) {
  const int n = r.n();
  SymMatrix ric(n);
  for (int j = 1; j <= n; ++j) {
    for (int k = j; k <= n; ++k) {
      double s = 0.0;
      for (int i = 1; i <= n; ++i) s += r.component(j, i, k, i);
      ric.set(j - 1, k - 1, s);
    }
  }
  return ric;
}

double scalar(const CurvatureTensor& r) { return ricci(r).trace(); }

double sectional(const CurvatureTensor& r, int i, int j) {
  if (i == j) {
    throw std::invalid_argument("sectional: indices must span a plane, got i == j");
  }
  return r.component(i, j, i, j);
}

CurvatureTensor kulkarni_nomizu(const SymMatrix& h, const SymMatrix& k) {
  if (h.dim() != k.dim()) {
    throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  }
  const Dimension dim(h.dim());
  const int n = dim.n();
  const int n2 = dim.lambda2();
  SymMatrix out(n2);
  for (int a = 0; a < n2; ++a) {
    const PairIndex pa = pair_from_flat(n, a);
    const int i = pa.i - 1, j = pa.j - 1;
    for (int b = a; b < n2; ++b) {
      const PairIndex pb = pair_from_flat(n, b);
      const int p = pb.i - 1, q = pb.j - 1;
      // grouped so the value is bit-identical under h <-> k
      const double v = (h(i, p) * k(j, q) + k(i, p) * h(j, q)) -
                       (h(i, q) * k(j, p) + k(i, q) * h(j, p));
      out.set(a, b, v);
    }
  }
  return CurvatureTensor(dim, std::move(out));
}

CurvatureTensor rotate(const CurvatureTensor& r, const DenseMatrix& q) {
  const int n = r.n();
  if (q.rows() != n || q.cols() != n) {
    throw std::invalid_argument("rotate: Q must be n x n");
  }
  const int n2 = r.dim().lambda2();
  // Induced map on the pair basis: W[(ab)][(ij)] = Q_ai Q_bj - Q_bi Q_aj.
  DenseMatrix w(n2, n2);
  for (int row = 0; row < n2; ++row) {
    const PairIndex pr = pair_from_flat(n, row);
    const int a = pr.i - 1, b = pr.j - 1;
    for (int col = 0; col < n2; ++col) {
      const PairIndex pc = pair_from_flat(n, col);
      const int i = pc.i - 1, j = pc.j - 1;
      w.at(row, col) = q.at(a, i) * q.at(b, j) - q.at(b, i) * q.at(a, j);
    }
  }
  const SymMatrix& m = r.lambda2_matrix();
  // M' = W^T M W, upper triangle mirrored for exact symmetry.
  DenseMatrix mw(n2, n2);
  for (int x = 0; x < n2; ++x) {
    for (int y = 0; y < n2; ++y) {
      double s = 0.0;
      for (int t = 0; t < n2; ++t) s += m(x, t) * w.at(t, y);
      mw.at(x, y) = s;
    }
  }
  SymMatrix out(n2);
  for (int x = 0; x < n2; ++x) {
    for (int y = x; y < n2; ++y) {
      double s = 0.0;
      for (int t = 0; t < n2; ++t) s += w.at(t, x) * mw.at(t, y);
      out.set(x, y, s);
    }
  }
  return CurvatureTensor(r.dim(), std::move(out));
}

std::vector<double> wedge(const std::vector<double>& u,
                          const std::vector<double>& v) {
  if (u.size() != v.size() || u.size() < 2) {
    throw std::invalid_argument("wedge: vectors must share a dimension >= 2");
  }
  const int n = static_cast<int>(u.size());
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      w.push_back(u[i] * v[j] - u[j] * v[i]);
    }
  }
  return w;
}

double pairing(const SymMatrix& m, const std::vector<double>& a,
               const std::vector<double>& b) {
  if (static_cast<int>(a.size()) != m.dim() ||
      static_cast<int>(b.size()) != m.dim()) {
    throw std::invalid_argument("pairing: coordinate size mismatch");
  }
  double acc = 0.0;
  for (int x = 0; x < m.dim(); ++x) {
    if (a[x] == 0.0) continue;
    double row = 0.0;
    for (int y = 0; y < m.dim(); ++y) row += m(x, y) * b[y];
    acc += a[x] * row;
  }
  return acc;
}

}  // namespace curvlab

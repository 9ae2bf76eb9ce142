#include "curvlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace curvlab {

int pair_flat(int n, int i, int j) {
  if (i < 1 || j <= i || j > n) {
    throw std::invalid_argument("pair_flat: need 1 <= i < j <= n, got (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ") with n = " + std::to_string(n));
  }
  return (i - 1) * n - i * (i + 1) / 2 + j - 1;
}

PairIndex pair_from_flat(int n, int flat) {
  const int total = n * (n - 1) / 2;
  if (flat < 0 || flat >= total) {
    throw std::invalid_argument("pair_from_flat: flat out of range");
  }
  int i = 1;
  int row = n - 1;  // pairs starting with i
  int rest = flat;
  while (rest >= row) {
    rest -= row;
    ++i;
    --row;
  }
  return PairIndex{i, i + 1 + rest, flat};
}

std::vector<PairIndex> pair_basis(Dimension dim) {
  std::vector<PairIndex> out;
  out.reserve(dim.lambda2());
  int flat = 0;
  for (int i = 1; i <= dim.n(); ++i) {
    for (int j = i + 1; j <= dim.n(); ++j) {
      out.push_back(PairIndex{i, j, flat++});
    }
  }
  return out;
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::trace() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

bool SymMatrix::all_finite() const {
  for (double v : a_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double frobenius_dot(const SymMatrix& x, const SymMatrix& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("frobenius_dot: dimension mismatch");
  }
  const auto& a = x.data();
  const auto& b = y.data();
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

const char* basis_tag_name(BasisTag tag) {
  switch (tag) {
    case BasisTag::Ambient: return "ambient";
    case BasisTag::Lambda2: return "lambda2";
    case BasisTag::Sym2: return "sym2";
    case BasisTag::Sym2Traceless: return "sym2-traceless";
  }
  return "unknown";
}

std::vector<SymMatrix> sym_basis(Dimension dim) {
  const int n = dim.n();
  std::vector<SymMatrix> out;
  out.reserve(dim.sym2());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      SymMatrix b(n);
      b.set(i - 1, j - 1, inv_sqrt2);
      out.push_back(std::move(b));
    }
  }
  for (int i = 1; i <= n; ++i) {
    SymMatrix b(n);
    b.set(i - 1, i - 1, 1.0);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<SymMatrix> traceless_basis(Dimension dim) {
  const int n = dim.n();
  std::vector<SymMatrix> out;
  out.reserve(dim.sym2_traceless());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      SymMatrix b(n);
      b.set(i - 1, j - 1, inv_sqrt2);
      out.push_back(std::move(b));
    }
  }
  for (int k = 1; k <= n - 1; ++k) {
    SymMatrix b(n);
    const double c = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    // the closing entry balances the accumulated head exactly, so the trace
    // telescopes to zero with no rounding residue
    double head = 0.0;
    for (int m = 0; m < k; ++m) {
      b.set(m, m, c);
      head += c;
    }
    b.set(k, k, -head);
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

double offdiag_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double v = a[static_cast<std::size_t>(p) * n + q];
      s += v * v;
    }
  }
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenResult eigen_sym(const SymMatrix& m, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("eigen_sym: tol must be positive");
  }
  if (!m.all_finite()) {
    throw std::invalid_argument("eigen_sym: matrix has non-finite entries");
  }
  const int n = m.dim();
  std::vector<double> a = m.data();
  DenseMatrix q = DenseMatrix::identity(n);

  const double scale = m.frobenius();
  const double stop = tol * scale;
  constexpr int kMaxSweeps = 100;

  EigenResult out;
  double off = offdiag_norm(a, n);
  int sweep = 0;
  while (off > stop && sweep < kMaxSweeps) {
    ++sweep;
    // Threshold sweeps: early passes skip pivots that are already small
    // compared to the current off-diagonal mass.
    const double thresh =
        (sweep < 4) ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apq = a[static_cast<std::size_t>(p) * n + r];
        if (std::abs(apq) <= thresh || apq == 0.0) continue;
        const double app = a[static_cast<std::size_t>(p) * n + p];
        const double aqq = a[static_cast<std::size_t>(r) * n + r];
        const double diff = aqq - app;
        double t;
        if (std::abs(apq) < 1e-300 * std::abs(diff)) {
          t = apq / diff;
        } else {
          const double theta = diff / (2.0 * apq);
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[static_cast<std::size_t>(p) * n + p] = app - t * apq;
        a[static_cast<std::size_t>(r) * n + r] = aqq + t * apq;
        a[static_cast<std::size_t>(p) * n + r] = 0.0;
        a[static_cast<std::size_t>(r) * n + p] = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == r) continue;
          const double akp = a[static_cast<std::size_t>(k) * n + p];
          const double akq = a[static_cast<std::size_t>(k) * n + r];
          const double np = akp - s * (akq + tau * akp);
          const double nq = akq + s * (akp - tau * akq);
          a[static_cast<std::size_t>(k) * n + p] = np;
          a[static_cast<std::size_t>(p) * n + k] = np;
          a[static_cast<std::size_t>(k) * n + r] = nq;
          a[static_cast<std::size_t>(r) * n + k] = nq;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q.at(k, p);
          const double qkq = q.at(k, r);
          q.at(k, p) = c * qkp - s * qkq;
          q.at(k, r) = s * qkp + c * qkq;
        }
      }
    }
    off = offdiag_norm(a, n);
  }

  out.sweeps = sweep;
  out.residual = (scale > 0.0) ? off / scale : 0.0;
  if (off > stop) {
    return out;  // not converged; spectrum stays empty
  }

  // Stable ascending sort of (eigenvalue, original position).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[static_cast<std::size_t>(x) * n + x] <
           a[static_cast<std::size_t>(y) * n + y];
  });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors = DenseMatrix(n, n);
  spec.tol = tol;
  for (int col = 0; col < n; ++col) {
    const int src = order[col];
    spec.eigenvalues[col] = a[static_cast<std::size_t>(src) * n + src];
    // Sign convention: the entry of largest magnitude is positive; first such
    // entry wins ties.
    int arg = 0;
    double best = -1.0;
    for (int k = 0; k < n; ++k) {
      const double v = std::abs(q.at(k, src));
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    const double sign = (q.at(arg, src) < 0.0) ? -1.0 : 1.0;
    for (int k = 0; k < n; ++k) {
      spec.eigenvectors.at(k, col) = sign * q.at(k, src);
    }
  }
  out.spectrum = std::move(spec);
  return out;
}

Spectrum eigen_sym_checked(const SymMatrix& m, double tol) {
  EigenResult r = eigen_sym(m, tol);
  if (!r.converged()) {
    throw std::runtime_error(
        "eigen_sym: no convergence after " + std::to_string(r.sweeps) +
        " sweeps, relative off-diagonal residual " +
        std::to_string(r.residual));
  }
  return *std::move(r.spectrum);
}

double smallest_k_sum(const Spectrum& s, int k) {
  if (k < 1 || k > static_cast<int>(s.eigenvalues.size())) {
    throw std::invalid_argument("smallest_k_sum: k out of range");
  }
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += s.eigenvalues[i];
  return sum;
}

}  // namespace curvlab

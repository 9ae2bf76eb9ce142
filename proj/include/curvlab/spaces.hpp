#ifndef CURVLAB_SPACES_HPP
#define CURVLAB_SPACES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Ordered bases and index maps for the two-form space, the symmetric
// two-tensor space and its traceless part, plus the dense symmetric
// eigensolver every other component relies on.
//
// Index conventions used throughout the library:
//   * vector/tensor indices i, j, k, l are 1-based and range over 1..n,
//   * flat positions into matrices and basis lists are 0-based.

namespace curvlab {

// Ambient dimension of the Euclidean space V = R^n, with the derived
// dimensions of the spaces built on it. Curvature is carried by n >= 2;
// n = 1 is admitted only so flat line factors can enter products (its
// two-form space is empty and every derived operator is trivial).
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 1) {
      throw std::invalid_argument("Dimension: n must be >= 1, got " +
                                  std::to_string(n));
    }
  }
  int n() const { return n_; }
  int lambda2() const { return n_ * (n_ - 1) / 2; }
  int sym2() const { return n_ * (n_ + 1) / 2; }
  int sym2_traceless() const { return (n_ - 1) * (n_ + 2) / 2; }

  friend bool operator==(Dimension a, Dimension b) { return a.n_ == b.n_; }
  friend bool operator!=(Dimension a, Dimension b) { return a.n_ != b.n_; }

 private:
  int n_;
};

// A strictly increasing index pair (i, j), 1 <= i < j <= n, together with its
// rank in the lexicographic enumeration of all such pairs.
struct PairIndex {
  int i = 0;
  int j = 0;
  int flat = 0;
};

// Lexicographic rank of (i, j) among pairs with 1 <= i < j <= n. 0-based.
int pair_flat(int n, int i, int j);
// Inverse of pair_flat.
PairIndex pair_from_flat(int n, int flat);
// All pairs in flat order.
std::vector<PairIndex> pair_basis(Dimension dim);

// Dense rectangular matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
           0.0) {}

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// Dense symmetric matrix. set()/add() write both (a, b) and (b, a), so the
// stored data is symmetric bit-for-bit at all times.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim)
      : dim_(dim),
        a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
           0.0) {}

  static SymMatrix identity(int dim);

  int dim() const { return dim_; }
  double operator()(int a, int b) const {
    return a_[static_cast<std::size_t>(a) * dim_ + b];
  }
  void set(int a, int b, double v) {
    a_[static_cast<std::size_t>(a) * dim_ + b] = v;
    a_[static_cast<std::size_t>(b) * dim_ + a] = v;
  }
  void add(int a, int b, double v) {
    a_[static_cast<std::size_t>(a) * dim_ + b] += v;
    if (a != b) a_[static_cast<std::size_t>(b) * dim_ + a] += v;
  }

  double max_abs() const;
  double frobenius() const;
  double trace() const;
  bool all_finite() const;

  const std::vector<double>& data() const { return a_; }

  friend bool operator==(const SymMatrix& x, const SymMatrix& y) {
    return x.dim_ == y.dim_ && x.a_ == y.a_;
  }

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

// Frobenius inner product sum_{a,b} x_ab y_ab over the full matrix.
double frobenius_dot(const SymMatrix& x, const SymMatrix& y);

// Which ordered basis a matrix or eigenvector block is expressed in.
enum class BasisTag {
  Ambient,         // standard basis of R^d, no further structure
  Lambda2,         // pairs (i, j), i < j, lexicographic
  Sym2,            // off-diagonal pairs, then diagonal units
  Sym2Traceless,   // off-diagonal pairs, then diagonal-traceless chain
};

const char* basis_tag_name(BasisTag tag);

// A symmetric bilinear form materialized over one of the ordered bases.
struct SymForm {
  SymMatrix matrix;
  BasisTag basis = BasisTag::Ambient;
};

// Orthonormal basis of symmetric two-tensors on R^n, in the frozen order:
// all off-diagonal pairs (i, j), i < j, lexicographically, then the diagonal
// units. Off-diagonal elements have entries 1/sqrt(2) at (i, j) and (j, i);
// diagonal elements have entry 1 at (i, i). Orthonormal under the plain
// Frobenius sum.
std::vector<SymMatrix> sym_basis(Dimension dim);

// Orthonormal basis of the traceless subspace: the off-diagonal elements of
// sym_basis, then the n-1 diagonal-traceless elements
//   d_k = (E_11 + ... + E_kk - k E_{k+1,k+1}) / sqrt(k (k+1)),  k = 1..n-1.
// Every element has exact zero trace.
std::vector<SymMatrix> traceless_basis(Dimension dim);

// Eigen decomposition of a symmetric matrix.
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // column k pairs with eigenvalues[k]
  BasisTag basis = BasisTag::Ambient;
  double tol = 0.0;
};

// Result of eigen_sym. The spectrum is absent only if the sweep budget ran
// out; residual then names the remaining relative off-diagonal norm.
struct EigenResult {
  std::optional<Spectrum> spectrum;
  double residual = 0.0;
  int sweeps = 0;
  bool converged() const { return spectrum.has_value(); }
};

// Deterministic cyclic Jacobi eigensolver with threshold sweeps; budget 100
// sweeps; tol is relative to the Frobenius norm of the input. Repeated calls
// on identical input produce bit-identical output: rotations are applied in
// a fixed order, eigenvalues are stably sorted ascending, and each
// eigenvector column is sign-fixed so its largest-magnitude entry is
// positive.
EigenResult eigen_sym(const SymMatrix& m, double tol = 1e-12);

// As eigen_sym, but throws std::runtime_error naming the residual when the
// sweep budget runs out.
Spectrum eigen_sym_checked(const SymMatrix& m, double tol = 1e-12);

// Sum of the k smallest eigenvalues of an already computed spectrum.
double smallest_k_sum(const Spectrum& s, int k);

}  // namespace curvlab

#endif  // CURVLAB_SPACES_HPP

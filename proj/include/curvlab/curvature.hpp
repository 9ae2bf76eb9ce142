#ifndef CURVLAB_CURVATURE_HPP
#define CURVLAB_CURVATURE_HPP

#include "curvlab/kernels.hpp"
#include "curvlab/spaces.hpp"

// The algebraic curvature tensor type and the two operators it induces.
//
// Storage is a dense symmetric matrix over the lexicographic pair basis:
// entry (flat(i,j), flat(k,l)) = R_{ijkl} for i < j, k < l. The pair
// symmetries R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij} are therefore
// unrepresentable-by-construction; only the first Bianchi identity needs a
// runtime check.
//
// Sign convention: the unit sphere has R_{ijkl} = g_ik g_jl - g_il g_jk, so
// sectional curvature of the coordinate plane (i, j) is R_{ijij}.

namespace curvlab {

class CurvatureTensor {
 public:
  // Takes any symmetric matrix over the pair basis; Bianchi is NOT enforced
  // here (see validate / bianchi_project).
  CurvatureTensor(Dimension dim, SymMatrix lambda2);

  Dimension dim() const { return dim_; }
  int n() const { return dim_.n(); }
  const SymMatrix& lambda2_matrix() const { return m_; }

  // Component R_{ijkl} for arbitrary 1-based indices; sign rules applied on
  // the fly, 0 when i == j or k == l.
  double component(int i, int j, int k, int l) const;

  double max_abs() const { return m_.max_abs(); }

  friend CurvatureTensor operator+(const CurvatureTensor& a,
                                   const CurvatureTensor& b);
  friend CurvatureTensor operator*(double s, const CurvatureTensor& r);

  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) {
    return a.dim_ == b.dim_ && a.m_ == b.m_;
  }

 private:
  Dimension dim_;
  SymMatrix m_;
};

// Per-identity maximum violations, report-only.
struct SymmetryReport {
  double bianchi_violation = 0.0;  // max |R_ijkl + R_iklj + R_iljk|
  double pair_violation = 0.0;     // raw storage asymmetry (0 by construction)
  double scale = 1.0;              // 1 + max |R|
  bool passes(double tol) const {
    return bianchi_violation <= tol * scale && pair_violation <= tol * scale;
  }
};

SymmetryReport validate(const CurvatureTensor& r);

// Orthogonal projection of a pair-symmetric tensor onto the subspace
// satisfying the first Bianchi identity:
//   P(T)_ijkl = (2 T_ijkl - T_iklj - T_iljk) / 3.
// Idempotent; kills exactly the fully antisymmetric (four-form) part;
// fixes inputs already satisfying the identity.
CurvatureTensor bianchi_project(const CurvatureTensor& t);

// The operator on two-forms: matrix entries R_{ijkl} over the pair basis.
SymForm first_kind_matrix(const CurvatureTensor& r);

// The quadratic action on symmetric two-tensors, polarized:
//   (phi, psi) -> sum_{ijkl} R_ijkl phi_il psi_jk.
// Symmetric and bilinear in (phi, psi).
double second_kind_bilinear(const CurvatureTensor& r, const SymMatrix& phi,
                            const SymMatrix& psi);

enum class SecondKindDomain { Full, Traceless };

// Gram matrix of second_kind_bilinear over sym_basis (Full) or
// traceless_basis (Traceless). The restricted form is always assembled as a
// Gram matrix of the bilinear form; the full operator does not preserve the
// traceless subspace in general, so slicing its matrix would be wrong.
SymForm second_kind_matrix(const CurvatureTensor& r, SecondKindDomain domain,
                           Execution exec = Execution::Parallel);

Spectrum first_kind_spectrum(const CurvatureTensor& r, double tol = 1e-12);
Spectrum second_kind_spectrum(const CurvatureTensor& r, SecondKindDomain domain,
                              double tol = 1e-12,
                              Execution exec = Execution::Parallel);

// Ric_jk = sum_i R_jiki; the n x n symmetric Ricci matrix.
SymMatrix ricci(const CurvatureTensor& r);
// Scalar curvature = trace of the Ricci matrix.
double scalar(const CurvatureTensor& r);
// Sectional curvature R_ijij of the coordinate plane; throws when i == j.
double sectional(const CurvatureTensor& r, int i, int j);

// Kulkarni-Nomizu product of two symmetric two-tensors:
//   (h, k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il.
// Satisfies every curvature symmetry including Bianchi exactly;
// kulkarni_nomizu(g, g) / 2 is the unit sphere tensor.
CurvatureTensor kulkarni_nomizu(const SymMatrix& h, const SymMatrix& k);

// Pullback R'(X,Y,Z,W) = R(QX, QY, QZ, QW) along an orthogonal matrix Q.
CurvatureTensor rotate(const CurvatureTensor& r, const DenseMatrix& q);

// Coordinates of u wedge v over the pair basis: w[(ij)] = u_i v_j - u_j v_i.
std::vector<double> wedge(const std::vector<double>& u,
                          const std::vector<double>& v);

// R(u,v,w,x) = wedge(u,v)^T M wedge(w,x) with M the pair-basis matrix.
double pairing(const SymMatrix& m, const std::vector<double>& a,
               const std::vector<double>& b);

}  // namespace curvlab

#endif  // CURVLAB_CURVATURE_HPP

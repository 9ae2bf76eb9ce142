#ifndef CURVLAB_CONDITIONS_HPP
#define CURVLAB_CONDITIONS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/models.hpp"

// Frame-quantified curvature expressions and their numerical certification.
//
// Every expression below is the contraction
//   r1313 + a^2 r1414 + b^2 r2323 + a^2 b^2 r2424 - c * a * b * r1234
// of the tensor into an orthonormal 4-frame, with the weights (a, b) and the
// cross coefficient c fixed per expression family. certify_min searches
// frames (and inner parameters) for the smallest value; the result is a
// verified upper bound on the true infimum: a negative certificate is a
// concrete witness of violation, a nonnegative one is evidence only.

namespace curvlab {

// Four pairwise-orthonormal vectors in R^n, n >= 4.
struct Frame4 {
  int n = 0;
  std::array<std::vector<double>, 4> vectors;

  // max |<f_a, f_b> - delta_ab|
  double gram_residual() const;
};

enum class ConditionTag { Pic, Pic1, Pic2, Lemma43, Lemma44, Beta };

const char* condition_tag_name(ConditionTag tag);
ConditionTag condition_tag_from_name(const std::string& name);

// An expression together with concrete evaluation parameters.
//   Pic      lambda = mu = 1, coefficient 2
//   Pic1     mu = 1, lambda in [-1, 1], coefficient 2
//   Pic2     lambda, mu in [-1, 1], coefficient 2
//   Lemma43  mu = 1, lambda unrestricted, coefficient 4
//   Lemma44  lambda, mu unrestricted, coefficient 6
//   Beta     lambda = mu = 1, coefficient 2 * beta, beta > 1
struct ConditionExpr {
  ConditionTag tag = ConditionTag::Pic;
  double lambda = 1.0;
  double mu = 1.0;
  double beta = 1.0;

  // Throws std::invalid_argument when the parameters leave the tag's range.
  void check() const;
};

// The five frame-contracted scalars every expression is built from.
struct FrameScalars {
  double r1313 = 0.0, r1414 = 0.0, r2323 = 0.0, r2424 = 0.0, r1234 = 0.0;
};

FrameScalars frame_scalars(const SymMatrix& pair_matrix, const Frame4& f);

// Exact frame-contracted value of the expression at the expr's parameters.
// Throws on a non-orthonormal frame (message carries the Gram residual) or
// out-of-range parameters.
double condition_value(const CurvatureTensor& r, const ConditionExpr& expr,
                       const Frame4& f);

// Numerically found minimum of a frame-quantified expression.
struct FrameCertificate {
  ConditionExpr expr;   // tag and beta; lambda/mu hold the argmin parameters
  double best_value = 0.0;
  Frame4 frame;         // argmin frame
  std::int64_t samples = 0;
  std::int64_t refinement_steps = 0;
  std::uint64_t seed = 0;
};

// Deterministic in seed: stage one draws `budget` frames from a counter
// stream (sample i depends only on (seed, i)) and minimizes the inner
// parameters per frame -- closed form in lambda, a 41-point grid plus
// golden-section refinement in mu where mu varies; stage two refines the
// ten best candidates with pairwise Givens rotations under step-halving
// until the improvement per sweep drops below 1e-12. The reduction keys on
// (value, sample index), so the result is schedule-independent.
FrameCertificate certify_min(const CurvatureTensor& r,
                             const ConditionExpr& expr, std::int64_t budget,
                             std::uint64_t seed,
                             Execution exec = Execution::Parallel);

enum class OperatorKind { FirstKind, SecondKindRestricted };
enum class PositivityClass { Positive, Nonnegative, Indefinite };

const char* positivity_class_name(PositivityClass c);

struct KPositivityReport {
  PositivityClass classification = PositivityClass::Indefinite;
  double sum = 0.0;      // sum of the k smallest eigenvalues
  int k = 0;
  int matrix_dim = 0;
  double band = 0.0;     // |sum| <= band classifies as Nonnegative
};

// Sign of the sum of the k smallest eigenvalues of the chosen operator,
// with the band [-tol * (1 + max|R|), +tol * (1 + max|R|)] mapped to
// Nonnegative. Throws when k is out of range.
KPositivityReport k_positivity(const CurvatureTensor& r, OperatorKind kind,
                               int k, double tol = 1e-10,
                               Execution exec = Execution::Parallel);

struct RicciBoundReport {
  double min_ricci = 0.0;
  double threshold = 0.0;  // S / (n (n + 1))
  double margin = 0.0;     // min_ricci - threshold
  bool strict = false;
  bool passes = false;
};

// Checks the smallest Ricci eigenvalue against S / (n (n + 1)).
RicciBoundReport ricci_bound_check(const CurvatureTensor& r, bool strict,
                                   double tol = 1e-10);

// R(X, JX, Y, JY) for unit X, Y with g(X, Y) = g(X, JY) = 0; throws with the
// measured residual when the admissibility constraints fail.
double orthogonal_bisectional(const CurvatureTensor& r,
                              const ComplexStructure& j,
                              const std::vector<double>& x,
                              const std::vector<double>& y);

// max over basis quadruples of |R(e_i,e_j,e_k,e_l) - R(e_i,e_j,Je_k,Je_l)|.
double kahler_symmetry_residual(const CurvatureTensor& r,
                                const ComplexStructure& j);

// JSON encoding of a certificate (deterministic byte layout).
std::string certificate_to_json(const FrameCertificate& cert);

}  // namespace curvlab

#endif  // CURVLAB_CONDITIONS_HPP

#ifndef CURVLAB_MODELS_HPP
#define CURVLAB_MODELS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "curvlab/curvature.hpp"

// Constructors for the model tensors with known second-kind spectra, and for
// seeded random Bianchi-compatible test tensors.

namespace curvlab {

// Constant sectional curvature kappa; the restricted second-kind matrix is
// kappa times the identity.
CurvatureTensor sphere(Dimension dim, double kappa);
CurvatureTensor flat(Dimension dim);

// Direct sum: components within each factor are copied, every component with
// indices from both factors vanishes.
CurvatureTensor product(const CurvatureTensor& r1, const CurvatureTensor& r2);

// product(sphere(n-1, 1), flat(1)); defined for n >= 3. Second-kind spectrum
// is -(n-2)/n once, 0 with multiplicity n-1, and 1 on the rest.
CurvatureTensor cylinder(Dimension dim);

// Orthogonal complex structure: J^2 = -I and J^T J = I hold exactly.
struct ComplexStructure {
  ComplexStructure(int m, DenseMatrix j);
  int m = 0;           // complex dimension; ambient dimension is 2m
  DenseMatrix j;       // the endomorphism matrix
  // J applied to a vector.
  std::vector<double> apply(const std::vector<double>& x) const;
};

// Block structure J e_{2a-1} = e_{2a}, J e_{2a} = -e_{2a-1}.
ComplexStructure standard_complex_structure(int m);

// Complex projective space with holomorphic sectional curvature 4:
//   R_ijkl = g_ik g_jl - g_il g_jk + J_ik J_jl - J_il J_jk + 2 J_ij J_kl.
// Einstein with Ricci = 2(m+1) I; second-kind spectrum is -2 with
// multiplicity (m-1)(m+1) and 4 with multiplicity m(m+1).
struct KahlerModel {
  CurvatureTensor tensor;
  ComplexStructure structure;
};
KahlerModel cpn(int m);

// Bianchi projection of a seeded Gaussian pair-basis matrix; deterministic in
// (dim, seed, scale).
CurvatureTensor random_curvature(Dimension dim, std::uint64_t seed,
                                 double scale = 1.0);

// Rejection-samples tensors satisfying a pure predicate. Proposals alternate
// between pure Gaussian projections and convex mixes
// t * sphere(n, 1) + (1 - t) * Gaussian, t uniform, so positivity-constrained
// predicates stay reachable. Returns nothing after max_attempts rejections.
struct FilteredSample {
  CurvatureTensor tensor;
  int attempts = 0;  // proposals consumed, including the accepted one
};
std::optional<FilteredSample> random_filtered(
    Dimension dim, std::uint64_t seed,
    const std::function<bool(const CurvatureTensor&)>& predicate,
    int max_attempts);

// Buildable description of a model tensor; mirrors the CLI flags and the
// JSON manifest form.
struct ModelSpec {
  std::string kind;  // sphere | flat | product | cylinder | cpn | random
  int dim = 0;
  double kappa = 1.0;
  int m = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  // product factors, set programmatically or parsed from a manifest
  std::shared_ptr<ModelSpec> left;
  std::shared_ptr<ModelSpec> right;

  CurvatureTensor build() const;
};

}  // namespace curvlab

#endif  // CURVLAB_MODELS_HPP

#ifndef CURVLAB_TENSOR_IO_HPP
#define CURVLAB_TENSOR_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "curvlab/curvature.hpp"

// The on-disk tensor format "curvlab-tensor/1":
//
//   {"format": "curvlab-tensor/1", "dim": n, "lambda2_matrix": [[...], ...]}
//
// The matrix is dense row-major over the lexicographic pair basis; floats
// carry 17 significant digits and round-trip 64-bit values exactly. An
// alternative import form lists raw components
//
//   {"format": "curvlab-tensor/1", "dim": n, "components": [[i,j,k,l,v], ...]}
//
// with 1-based indices; unlisted components are zero, the pair symmetries
// fill the rest, and conflicting duplicates are rejected. Loading validates
// the first Bianchi identity: violations above tolerance are rejected unless
// projection is requested.

namespace curvlab {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTensorFormat = "curvlab-tensor/1";

struct LoadOptions {
  bool project = false;  // Bianchi-project instead of rejecting violations
  double tol = 1e-10;    // relative symmetry/Bianchi tolerance
};

std::string tensor_to_json(const CurvatureTensor& r);
void write_tensor_file(const std::string& path, const CurvatureTensor& r);

CurvatureTensor tensor_from_json(const std::string& text,
                                 const LoadOptions& options = {});
CurvatureTensor read_tensor_file(const std::string& path,
                                 const LoadOptions& options = {});

}  // namespace curvlab

#endif  // CURVLAB_TENSOR_IO_HPP

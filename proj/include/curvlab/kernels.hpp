#ifndef CURVLAB_KERNELS_HPP
#define CURVLAB_KERNELS_HPP

#include <cstdint>
#include <functional>

#include "curvlab/spaces.hpp"

// Data-parallel inner loops, each in two forms: an OpenMP kernel used in
// production and a serial reference implementation kept for testing and
// benchmarking. Both produce bit-identical results by construction: loop
// bodies write to disjoint slots or reduce through an index-keyed minimum,
// so no floating-point combination depends on thread schedule.

namespace curvlab {

enum class Execution { Serial, Parallel };

// Number of worker threads the Parallel mode would use (1 when built
// without OpenMP).
int max_threads();
// Caps the OpenMP thread count; no-op without OpenMP or when n <= 0.
void set_thread_cap(int n);

// Smallest (value, index) pair under the lexicographic order, ties on value
// resolved toward the smaller index. NaN values are treated as +infinity.
struct IndexedMin {
  double value = 0.0;
  std::int64_t index = -1;
};

IndexedMin indexed_min_serial(std::int64_t count,
                              const std::function<double(std::int64_t)>& f);
IndexedMin indexed_min_parallel(std::int64_t count,
                                const std::function<double(std::int64_t)>& f);
IndexedMin indexed_min(std::int64_t count,
                       const std::function<double(std::int64_t)>& f,
                       Execution exec);

// Evaluates body(i) for i in [0, count); bodies must write to disjoint state.
void for_each_index_serial(std::int64_t count,
                           const std::function<void(std::int64_t)>& body);
void for_each_index_parallel(std::int64_t count,
                             const std::function<void(std::int64_t)>& body);
void for_each_index(std::int64_t count,
                    const std::function<void(std::int64_t)>& body,
                    Execution exec);

// Gram matrix G[a][b] = form(a, b) of a symmetric bilinear form over a basis
// of the given size. Only the upper triangle is evaluated; the mirror makes
// the result exactly symmetric.
SymMatrix gram_matrix_serial(int size,
                             const std::function<double(int, int)>& form);
SymMatrix gram_matrix_parallel(int size,
                               const std::function<double(int, int)>& form);
SymMatrix gram_matrix(int size, const std::function<double(int, int)>& form,
                      Execution exec);

}  // namespace curvlab

#endif  // CURVLAB_KERNELS_HPP

#include "curvlab/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curvlab {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_cap(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace {

inline bool lex_less(double v, std::int64_t i, const IndexedMin& best) {
  if (best.index < 0) return true;
  if (v < best.value) return true;
  return v == best.value && i < best.index;
}

inline double sanitize(double v) {
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

IndexedMin indexed_min_serial(std::int64_t count,
                              const std::function<double(std::int64_t)>& f) {
  IndexedMin best;
  for (std::int64_t i = 0; i < count; ++i) {
    const double v = sanitize(f(i));
    if (lex_less(v, i, best)) best = IndexedMin{v, i};
  }
  return best;
}

IndexedMin indexed_min_parallel(std::int64_t count,
                                const std::function<double(std::int64_t)>& f) {
#ifdef _OPENMP
  IndexedMin best;
#pragma omp parallel
  {
    IndexedMin local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const double v = sanitize(f(i));
      if (lex_less(v, i, local)) local = IndexedMin{v, i};
    }
#pragma omp critical(curvlab_indexed_min)
    {
      if (local.index >= 0 && lex_less(local.value, local.index, best)) {
        best = local;
      }
    }
  }
  return best;
#else
  return indexed_min_serial(count, f);
#endif
}

IndexedMin indexed_min(std::int64_t count,
                       const std::function<double(std::int64_t)>& f,
                       Execution exec) {
  return exec == Execution::Parallel ? indexed_min_parallel(count, f)
                                     : indexed_min_serial(count, f);
}

void for_each_index_serial(std::int64_t count,
                           const std::function<void(std::int64_t)>& body) {
  for (std::int64_t i = 0; i < count; ++i) body(i);
}

void for_each_index_parallel(std::int64_t count,
                             const std::function<void(std::int64_t)>& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) body(i);
#else
  for_each_index_serial(count, body);
#endif
}

void for_each_index(std::int64_t count,
                    const std::function<void(std::int64_t)>& body,
                    Execution exec) {
  if (exec == Execution::Parallel) {
    for_each_index_parallel(count, body);
  } else {
    for_each_index_serial(count, body);
  }
}

namespace {

SymMatrix gram_from_upper(int size, const std::function<double(int, int)>& form,
                          Execution exec) {
  SymMatrix g(size);
  const std::int64_t entries =
      static_cast<std::int64_t>(size) * (size + 1) / 2;
  // Flatten the upper triangle (a <= b) so entries parallelize evenly.
  for_each_index(
      entries,
      [&](std::int64_t t) {
        // invert t -> (a, b), a <= b, enumerated row by row
        int a = 0;
        std::int64_t rem = t;
        std::int64_t row = size;
        while (rem >= row) {
          rem -= row;
          ++a;
          --row;
        }
        const int b = a + static_cast<int>(rem);
        g.set(a, b, form(a, b));
      },
      exec);
  return g;
}

}  // namespace

SymMatrix gram_matrix_serial(int size,
                             const std::function<double(int, int)>& form) {
  return gram_from_upper(size, form, Execution::Serial);
}

SymMatrix gram_matrix_parallel(int size,
                               const std::function<double(int, int)>& form) {
  return gram_from_upper(size, form, Execution::Parallel);
}

SymMatrix gram_matrix(int size, const std::function<double(int, int)>& form,
                      Execution exec) {
  return gram_from_upper(size, form, exec);
}

}  // namespace curvlab

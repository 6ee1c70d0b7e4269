#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oneq {

// Execution policy for the data-parallel kernels.  Serial is the reference
// path; Parallel must produce bit-identical results for any thread count,
// which every kernel here guarantees by computing independent items into
// indexed slots and reducing in index order.
enum class Exec { Serial, Parallel };

/// Runs f(i) for i in [0, n).  Items must be independent.
template <typename F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            f(static_cast<std::size_t>(i));
        }
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) {
        f(i);
    }
}

/// Evaluates f(i) into a vector of results, one slot per index.
template <typename T, typename F>
std::vector<T> map_indexed(std::size_t n, Exec exec, F&& f) {
    std::vector<T> out(n);
    for_each_index(n, exec, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

/// Sum of term(i) over [0, n) with a fixed chunk decomposition.  Chunk
/// partials are accumulated serially within a chunk and combined in chunk
/// order, so the result does not depend on the thread count.
template <typename T, typename F>
T chunked_sum(std::size_t n, Exec exec, F&& term, std::size_t chunk = 1 << 14) {
    if (n == 0) {
        return T{};
    }
    const std::size_t num_chunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(num_chunks, T{});
    for_each_index(num_chunks, exec, [&](std::size_t c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(lo + chunk, n);
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) {
            acc += term(i);
        }
        partial[c] = acc;
    });
    T total{};
    for (const T& p : partial) {
        total += p;
    }
    return total;
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int k) {
#ifdef _OPENMP
    if (k > 0) {
        omp_set_num_threads(k);
    }
#else
    (void)k;
#endif
}

inline double wall_time() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

}  // namespace oneq

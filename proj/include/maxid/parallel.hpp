#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxid {

// Execution policy for the replicate/grid kernels. `serial` is the reference
// path used by the tests; `openmp` distributes chunks over threads. Both paths
// run the same chunk bodies over the same chunk geometry, and callers
// accumulate into per-chunk slots that are reduced in chunk order, so results
// are bit-identical for any thread count.
enum class Exec { serial, openmp };

template <typename Body>
void for_each_chunk(std::int64_t n, std::int64_t chunk_size, Exec exec, Body&& body) {
    if (n <= 0) return;
    if (chunk_size <= 0) chunk_size = 1;
    const std::int64_t nchunks = (n + chunk_size - 1) / chunk_size;
    if (exec == Exec::serial) {
        for (std::int64_t c = 0; c < nchunks; ++c) {
            const std::int64_t lo = c * chunk_size;
            const std::int64_t hi = lo + chunk_size < n ? lo + chunk_size : n;
            body(c, lo, hi);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < nchunks; ++c) {
            const std::int64_t lo = c * chunk_size;
            const std::int64_t hi = lo + chunk_size < n ? lo + chunk_size : n;
            body(c, lo, hi);
        }
    }
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace maxid

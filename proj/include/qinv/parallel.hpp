#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qinv {

// threads <= 0 means the OpenMP default.
inline int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

// Runs fun(i) for i in [0, count). Each i must write only its own output slot.
template <class Function>
void parallel_for(std::size_t count, int threads, Function fun) {
    const int nthreads = resolve_threads(threads);
#ifdef _OPENMP
    if (nthreads > 1 && count > 1) {
        const auto n = static_cast<long long>(count);
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 1)
        for (long long i = 0; i < n; ++i) fun(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)nthreads;
    for (std::size_t i = 0; i < count; ++i) fun(i);
}

}  // namespace qinv

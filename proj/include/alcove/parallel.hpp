#ifndef ALCOVE_PARALLEL_HPP
#define ALCOVE_PARALLEL_HPP

#include <cstddef>

#ifdef ALCOVE_HAVE_OPENMP
#include <omp.h>
#endif

namespace alcove {

enum class ExecPolicy { serial, parallel };

// Runs body(i) for i in [0, n). The parallel path requires bodies that touch
// disjoint state per index; results must not depend on iteration order.
template <class F>
void parallel_for(ExecPolicy pol, std::size_t n, F&& body) {
#ifdef ALCOVE_HAVE_OPENMP
    if (pol == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)pol;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace alcove

#endif

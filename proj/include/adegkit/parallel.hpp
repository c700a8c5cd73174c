#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adegkit/rational.hpp"

namespace adk {

// Exact reduction of f(mask) over all 2^n masks. The serial version is the
// reference implementation; the parallel version must agree bit for bit
// (rational addition is associative and commutative, so any merge order
// yields the identical canonical value).

template <class F>
Q hypercube_sum_serial(int n, F&& f) {
    Q acc = 0;
    const uint64_t end = uint64_t(1) << n;
    for (uint64_t m = 0; m < end; ++m) acc += f(m);
    return acc;
}

template <class F>
Q hypercube_sum(int n, F&& f) {
#ifdef _OPENMP
    const uint64_t end = uint64_t(1) << n;
    Q total = 0;
#pragma omp parallel
    {
        Q local = 0;
#pragma omp for schedule(static)
        for (int64_t m = 0; m < static_cast<int64_t>(end); ++m)
            local += f(static_cast<uint64_t>(m));
#pragma omp critical
        total += local;
    }
    return total;
#else
    return hypercube_sum_serial(n, f);
#endif
}

}  // namespace adk

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "expseries/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expseries::kernels {

// Fixed block size for reductions.  Blocking is independent of the worker
// count, so the serial and parallel paths combine the same partial results
// in the same order and agree bit for bit.
inline constexpr std::size_t kBlock = 1024;

struct MinScan {
    double value = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
};

// Minimum of f(0..n-1) and the first index attaining it.
template <class F>
MinScan min_scan(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
    MinScan result;
    if (n == 0) return result;
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    std::vector<MinScan> blocks(nb);
    auto run_block = [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        MinScan local{f(lo), lo};
        for (std::size_t i = lo + 1; i < hi; ++i) {
            double v = f(i);
            if (v < local.value) {
                local.value = v;
                local.argmin = i;
            }
        }
        blocks[b] = local;
    };
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::resolved_threads())
#endif
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b)
            run_block(static_cast<std::size_t>(b));
    } else {
        for (std::size_t b = 0; b < nb; ++b) run_block(b);
    }
    result = blocks[0];
    for (std::size_t b = 1; b < nb; ++b)
        if (blocks[b].value < result.value) result = blocks[b];
    return result;
}

// out[i] = f(i) for i in [0, n).  Writes are disjoint by index.
template <class T, class F>
void map(std::size_t n, T* out, F&& f, Exec exec = Exec::Parallel) {
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::resolved_threads())
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            out[i] = f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    }
}

template <class T, class F>
std::vector<T> map_vec(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
    std::vector<T> out(n);
    map(n, out.data(), f, exec);
    return out;
}

}  // namespace expseries::kernels

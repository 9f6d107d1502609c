#include "expseries/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expseries::par {

namespace {
std::atomic<int> g_max_threads{0};
std::atomic<std::uint64_t> g_seed{0};
}  // namespace

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() { return g_max_threads.load(); }

int resolved_threads() {
    int n = g_max_threads.load();
    if (n > 0) return n;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_sampling_seed(std::uint64_t seed) { g_seed.store(seed); }

std::uint64_t sampling_seed() { return g_seed.load(); }

}  // namespace expseries::par

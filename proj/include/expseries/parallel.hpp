#pragma once

#include <cstddef>
#include <cstdint>

namespace expseries {

// Which implementation of a data-parallel scan to run.  Both produce
// bit-identical results; Serial is the reference kept for testing.
enum class Exec { Serial, Parallel };

namespace par {

// Worker-count override used by all parallel kernels; 0 means the OpenMP
// default.  Thread count never affects results, only wall time.
void set_max_threads(int n);
int max_threads();

// Resolved thread count for a parallel region (>= 1).
int resolved_threads();

// Global seed consulted by sampling lattices (CLI wires EXPSERIES_SEED here).
void set_sampling_seed(std::uint64_t seed);
std::uint64_t sampling_seed();

}  // namespace par
}  // namespace expseries

// Timing comparison of the serial reference kernels against their parallel
// counterparts.  Results must agree bit-for-bit; the table reports wall time
// and speedup.  On a single hardware thread the honest expectation is a
// speedup near 1.0 (slightly below, because of scheduling overhead).

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "expseries/exppoly.hpp"
#include "expseries/geometry.hpp"
#include "expseries/interpolation.hpp"
#include "expseries/parallel.hpp"
#include "expseries/product.hpp"

using namespace expseries;

namespace {

struct BenchCase {
    std::string name;
    std::function<double(Exec)> run;  // returns a checksum for agreement
};

double time_once(const std::function<double(Exec)>& run, Exec exec, double& checksum) {
    const auto t0 = std::chrono::steady_clock::now();
    checksum = run(exec);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    const std::size_t scale = quick ? 1 : 8;

    // Support values of a disc-capped wedge over a dense direction grid.
    const ConvexDomain domain({HalfPlane{-0.4, 0.0}, HalfPlane{0.7, 0.0}},
                              {Disc{{-2.0, 0.0}, 2.5}});
    std::vector<double> angles(scale * 40000);
    for (std::size_t k = 0; k < angles.size(); ++k)
        angles[k] = -kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(angles.size());

    // Sector lattice scan of an exponential polynomial's growth floor.
    const ExpPolynomial poly({ExpTerm{-5.0, {Complex{1.0, 0.0}}},
                              ExpTerm{-2.0, {Complex{0.4, 0.3}, Complex{1.0, 0.0}}}});
    const Angle sector(0.1, 0.2);

    // Absolute-convergence margins across a rectangle.
    const ExponentSequence seq({}, RayTail{0.3, 2.0, 2.0});
    const CoeffModel model{CoeffGrowth::ExpModulus, 1.0, 0.5};

    // Condensation profile of a separated power sequence.
    const ExponentSequence powers({}, RayTail{0.0, 2.0, 2.0});
    const CanonicalProduct product(powers, 400);

    const std::vector<BenchCase> cases = {
        {"support grid",
         [&](Exec exec) {
             const std::vector<double> v = support_values(domain, angles, exec);
             double sum = 0.0;
             for (double x : v) sum += x;
             return sum;
         }},
        {"sector bound scan",
         [&](Exec exec) {
             return verify_sector_bound(poly, sector, 1.0, scale * 20000, exec).worst_log_ratio;
         }},
        {"margin grid",
         [&](Exec exec) {
             const std::size_t n = quick ? 101 : 301;
             const std::vector<double> v =
                 margin_grid(seq, model, -2.0, 2.0, -2.0, 2.0, n, n, exec);
             double sum = 0.0;
             for (double x : v) sum += x;
             return sum;
         }},
        {"condensation profile",
         [&](Exec exec) {
             double sum = 0.0;
             for (int rep = 0; rep < static_cast<int>(scale); ++rep) {
                 const std::vector<double> v = condensation_profile(product, 400, exec);
                 for (double x : v) sum += x;
             }
             return sum;
         }},
    };

    std::cout << "threads available: " << par::resolved_threads() << "\n";
    std::printf("%-22s %12s %12s %9s  %s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
                "agreement");
    int mismatches = 0;
    for (const BenchCase& c : cases) {
        double serial_sum = 0.0, parallel_sum = 0.0;
        const double ts = time_once(c.run, Exec::Serial, serial_sum);
        const double tp = time_once(c.run, Exec::Parallel, parallel_sum);
        const bool agree =
            std::memcmp(&serial_sum, &parallel_sum, sizeof(double)) == 0;
        if (!agree) ++mismatches;
        std::printf("%-22s %12.4f %12.4f %9.2fx  %s\n", c.name.c_str(), ts, tp,
                    tp > 0.0 ? ts / tp : 0.0, agree ? "bitwise" : "MISMATCH");
    }
    if (par::resolved_threads() == 1)
        std::cout << "note: one hardware thread; speedups near 1.0x are expected here\n";
    return mismatches == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <vector>

#include "expseries/exponents.hpp"
#include "expseries/interpolation.hpp"
#include "expseries/parallel.hpp"

namespace expseries {

// One term a(z) * e^{omega z} with polynomial coefficient a given by its
// coefficients in ascending degree (top coefficient nonzero).
struct ExpTerm {
    double omega = 0.0;
    std::vector<Complex> coeffs;
};

// Exponential polynomial sum_k a_k(z) e^{omega_k z} with strictly increasing
// real frequencies.
class ExpPolynomial {
  public:
    explicit ExpPolynomial(std::vector<ExpTerm> terms);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    double top_frequency() const { return terms_.back().omega; }
    double bottom_frequency() const { return terms_.front().omega; }

  private:
    std::vector<ExpTerm> terms_;
};

Complex eval(const ExpPolynomial& p, Complex z);
Complex eval_derivative(const ExpPolynomial& p, Complex z, std::size_t order);

// Term-wise derivative (frequencies unchanged, coefficients a -> a' + omega*a).
ExpPolynomial derivative(const ExpPolynomial& p);

// Log-spaced sampling lattice over the sector annulus
// { r < |z| <= 8r, |arg z - beta| <= alpha }; the radial phase is seeded so
// reruns can jitter the radii deterministically (seed 0 = canonical grid,
// which includes |z| = 8r and both boundary rays).
struct SectorLattice {
    double base_r = 1.0;
    double beta = 0.0;
    double alpha = 0.0;
    std::size_t n_radial = 1;
    std::size_t n_angular = 1;
    double phase = 0.0;

    std::size_t size() const { return n_radial * n_angular; }
    double radius(std::size_t i) const;
    double theta(std::size_t j) const;
    Complex point(std::size_t k) const;
};

SectorLattice make_sector_lattice(const Angle& angle, double r, std::size_t samples,
                                  std::uint64_t seed);

struct BoundScanReport {
    bool ok = false;                 // every sampled ratio is strictly positive
    double worst_log_ratio = 0.0;    // min over samples, -inf on an exact zero
    double worst_ratio = 0.0;        // exp(worst_log_ratio)
    double constant_estimate = 0.0;  // the scan's lower-bound constant (= worst_ratio)
    Complex worst_point;
};

// Scan of |p(z)| / e^{omega_top * cos(beta+alpha) * |z|} over the sector
// lattice: the growth floor of the dominant exponential inside the sector.
BoundScanReport verify_sector_bound(const ExpPolynomial& p, const Angle& angle, double r,
                                    std::size_t samples, Exec exec = Exec::Parallel);

// Scan of |p(z)| / e^{omega_bottom * Re z} over the reflected lattice
// (z = -w, w in the sector): the growth floor on the left.  Requires all
// frequencies negative.
BoundScanReport verify_left_bound(const ExpPolynomial& p, const Angle& angle, double r,
                                  std::size_t samples, Exec exec = Exec::Parallel);

struct ZeroCount {
    long count = 0;
    bool certified = false;
};

// Argument-principle count of the zeros of p in the slightly enlarged sector
// annulus { r_in <= |z| <= r_out, |arg z - beta| <= alpha }.  Winding of
// p(z) e^{-omega_top z} along the contour with adaptive phase tracking;
// certified only when the winding closes to an integer cleanly.
ZeroCount count_zeros_sector_annulus(const ExpPolynomial& p, const Angle& angle, double r_in,
                                     double r_out);

struct ZeroFreeReport {
    double radius = 0.0;
    bool certified = false;
};

// Smallest radius among r_max/2^12 .. r_max certified (via a rigorous
// dominance radius and contour counts) to have no zeros of p in the sector
// beyond it; {r_max, false} when none certifies.
ZeroFreeReport zero_free_radius(const ExpPolynomial& p, const Angle& angle, double r_max);

// Rigorous coefficient-inequality radius: beyond it the top term dominates
// and p cannot vanish in the sector.  +inf only if the search cap is hit.
double dominance_radius(const ExpPolynomial& p, const Angle& angle);

// Structural membership test: every frequency of p is a node and each
// coefficient polynomial has degree below that node's multiplicity.
bool hermite_membership(const ExpPolynomial& p, const NodeSet& nodes);

}  // namespace expseries

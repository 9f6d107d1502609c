#pragma once

#include <optional>
#include <vector>

#include "expseries/directions.hpp"

namespace expseries {

// Asymptotic continuation of an exponent sequence: points start*ratio^k *
// e^{i*angle}, k = 0, 1, 2, ...
struct RayTail {
    double angle = 0.0;
    double ratio = 2.0;
    double start = 1.0;
};

// Closed sector { v != 0 : |arg v - beta| <= alpha } contained strictly in
// the right half-plane.
class Angle {
  public:
    Angle(double beta, double alpha);

    double beta() const { return beta_; }
    double alpha() const { return alpha_; }

  private:
    double beta_;
    double alpha_;
};

bool in_angle(Complex v, const Angle& angle);

// Finite list of distinct nonzero exponents, optionally continued by a ray
// tail.  The explicit values are kept in the order given.
class ExponentSequence {
  public:
    explicit ExponentSequence(std::vector<Complex> values,
                              std::optional<RayTail> tail = std::nullopt);

    const std::vector<Complex>& values() const { return values_; }
    const std::optional<RayTail>& tail() const { return tail_; }
    bool has_tail() const { return tail_.has_value(); }

    // First `count` exponents in ascending-modulus order, merging the
    // explicit values with the tail.  Requires count <= available.
    std::vector<Complex> materialize(std::size_t count) const;

    // Number of exponents available (SIZE_MAX when the tail is present).
    std::size_t available() const;

    // q-th percentile of the explicit moduli (0 when there are none).
    double percentile_modulus(double q) const;

  private:
    std::vector<Complex> values_;
    std::optional<RayTail> tail_;
};

struct LimitDirectionsOptions {
    // Only exponents with modulus > radius participate; < 0 means the 75th
    // percentile of the explicit moduli.
    double radius = -1.0;
    // Circular gap below which neighboring directions fall into one arc.
    double cluster_tol = 1e-3;
};

// Directions of accumulation of the exponents at infinity.  With a ray tail
// the answer is exactly the tail direction; otherwise it is estimated from
// the explicit values beyond the radius, clustered into arcs.
DirectionSet limit_directions(const ExponentSequence& seq, LimitDirectionsOptions options = {});

struct Condition8Result {
    bool holds = false;
    double estimate = 0.0;  // +inf when divergence is detected
};

// Estimates limsup Re(v)/ln|v| and reports whether it diverges.  A ray tail
// pointing into the open right half-plane is exact divergence; finite
// prefixes use a tail-dominance test: the estimate is the max over the
// second half (by modulus) of the usable ratios, and divergence is declared
// when it reaches max(threshold, twice the first-half max).
Condition8Result check_condition8(const ExponentSequence& seq, double threshold = 10.0);

// Subsequence inside the sector with consecutive modulus ratios > 2: greedy
// modulus-doubling selection on the explicit values, with the ray tail
// re-stepped to a power of its ratio that exceeds 2.
ExponentSequence thin_sequence(const ExponentSequence& seq, const Angle& angle);

}  // namespace expseries

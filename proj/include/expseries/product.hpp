#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "expseries/exponents.hpp"
#include "expseries/parallel.hpp"

namespace expseries {

// Truncated canonical product G_N(z) = prod_{n<=N} (1 - z/lambda_n) over the
// first N zeros in ascending-modulus order.  Construction enforces the
// modulus-doubling separation |lambda_{n+1}| >= 2|lambda_n| (up to fp slack)
// across the retained zeros, the dropped ones, and the tail.
class CanonicalProduct {
  public:
    CanonicalProduct(const ExponentSequence& zeros, std::size_t truncation);

    std::size_t truncation() const { return retained_.size(); }
    const std::vector<Complex>& zeros() const { return retained_; }

    // Moduli of the zeros dropped by the truncation (explicit part) and the
    // ray continuation after them, if any.
    const std::vector<double>& dropped_moduli() const { return dropped_moduli_; }
    const std::optional<RayTail>& dropped_tail() const { return dropped_tail_; }

  private:
    std::vector<Complex> retained_;
    std::vector<double> dropped_moduli_;
    std::optional<RayTail> dropped_tail_;
};

struct GProductValue {
    Complex value;
    // Bound on |log(G/G_N)| contributed by the dropped zeros; requires the
    // first dropped modulus to exceed 2|z|.
    double tail_bound = 0.0;
};

struct LogAbsValue {
    double log_abs = 0.0;  // -inf exactly at a retained zero
    double tail_bound = 0.0;
};

// Evaluate the truncated product; exact zero at retained zeros.
GProductValue eval_G(const CanonicalProduct& product, Complex z);

// Log-magnitude evaluation; immune to overflow for huge products.
LogAbsValue eval_log_abs(const CanonicalProduct& product, Complex z);

// G_N'(lambda_n), 1-based n into the retained zeros.
Complex derivative_at_zero(const CanonicalProduct& product, std::size_t n);
double log_abs_derivative_at_zero(const CanonicalProduct& product, std::size_t n);

// v_n = (1/|lambda_n|) * ln(1/|G_N'(lambda_n)|) for n = 1..upto.
std::vector<double> condensation_profile(const CanonicalProduct& product, std::size_t upto,
                                         Exec exec = Exec::Parallel);

// Finite-sample condensation estimate: max of the profile over the tail
// window n in [ceil(upto/2), upto], clamped below at zero (the limit is
// nonnegative; under the separation condition it is zero).
double condensation_index(const CanonicalProduct& product, std::size_t upto,
                          Exec exec = Exec::Parallel);

}  // namespace expseries

#include "expseries/product.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expseries/errors.hpp"
#include "expseries/kernels.hpp"

namespace expseries {

namespace {
// Fp slack on the modulus-doubling separation: the boundary ratio 2 itself
// is admitted.
constexpr double kSeparationSlack = 1.0 - 1e-9;
}  // namespace

CanonicalProduct::CanonicalProduct(const ExponentSequence& zeros, std::size_t truncation) {
    if (truncation < 1)
        throw Error(ErrorCode::InvalidSequence, "CanonicalProduct: truncation must be >= 1");
    if (truncation > zeros.available())
        throw Error(ErrorCode::IndexOutOfRange,
                    "CanonicalProduct: truncation exceeds the available zeros");

    std::vector<Complex> explicit_sorted = zeros.values();
    std::sort(explicit_sorted.begin(), explicit_sorted.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });

    std::size_t i = 0;
    double tail_mod = zeros.has_tail() ? zeros.tail()->start : kInf;
    const Complex tail_dir = zeros.has_tail()
                                 ? Complex{std::cos(zeros.tail()->angle), std::sin(zeros.tail()->angle)}
                                 : Complex{1.0, 0.0};
    retained_.reserve(truncation);
    while (retained_.size() < truncation) {
        if (i < explicit_sorted.size() && std::abs(explicit_sorted[i]) <= tail_mod)
            retained_.push_back(explicit_sorted[i++]);
        else {
            retained_.push_back(tail_mod * tail_dir);
            tail_mod *= zeros.tail()->ratio;
        }
    }
    for (; i < explicit_sorted.size(); ++i)
        dropped_moduli_.push_back(std::abs(explicit_sorted[i]));
    if (zeros.has_tail())
        dropped_tail_ = RayTail{zeros.tail()->angle, zeros.tail()->ratio, tail_mod};

    // Separation across retained, dropped explicit, and the tail junction.
    std::vector<double> mods;
    for (const Complex& v : retained_) mods.push_back(std::abs(v));
    for (double m : dropped_moduli_) mods.push_back(m);
    if (dropped_tail_) mods.push_back(dropped_tail_->start);
    if (!(mods.front() > 0.0))
        throw Error(ErrorCode::InvalidSequence, "CanonicalProduct: zero modulus");
    for (std::size_t k = 1; k < mods.size(); ++k)
        if (mods[k] < 2.0 * kSeparationSlack * mods[k - 1])
            throw Error(ErrorCode::InvalidSequence,
                        "CanonicalProduct: zeros violate the modulus-doubling separation");
    if (dropped_tail_ && dropped_tail_->ratio < 2.0 * kSeparationSlack)
        throw Error(ErrorCode::InvalidSequence,
                    "CanonicalProduct: tail ratio violates the modulus-doubling separation");
}

namespace {

double dropped_log_bound(const CanonicalProduct& product, double abs_z) {
    const std::vector<double>& dropped = product.dropped_moduli();
    const std::optional<RayTail>& tail = product.dropped_tail();
    if (dropped.empty() && !tail) return 0.0;
    if (abs_z == 0.0) return 0.0;
    double first = kInf;
    if (!dropped.empty()) first = dropped.front();
    if (tail) first = std::min(first, tail->start);
    if (first <= 2.0 * abs_z)
        throw Error(ErrorCode::TruncationTooSmall,
                    "eval_G: |z| reaches half the first dropped zero; increase the truncation");
    double sum = 0.0;
    for (double r : dropped) sum += abs_z / (r - abs_z);
    if (tail) {
        const double m0 = tail->start;
        const double q = tail->ratio;
        sum += abs_z / ((1.0 - abs_z / m0) * m0) * (q / (q - 1.0));
    }
    return sum;
}

}  // namespace

GProductValue eval_G(const CanonicalProduct& product, Complex z) {
    const double bound = dropped_log_bound(product, std::abs(z));
    Complex log_sum{0.0, 0.0};
    for (const Complex& lam : product.zeros()) {
        const Complex factor = 1.0 - z / lam;
        if (factor == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, bound};
        log_sum += std::log(factor);
    }
    return {std::exp(log_sum), bound};
}

LogAbsValue eval_log_abs(const CanonicalProduct& product, Complex z) {
    const double bound = dropped_log_bound(product, std::abs(z));
    double sum = 0.0;
    for (const Complex& lam : product.zeros()) {
        const Complex factor = 1.0 - z / lam;
        if (factor == Complex{0.0, 0.0}) return {-kInf, bound};
        sum += std::log(std::abs(factor));
    }
    return {sum, bound};
}

namespace {

void check_zero_index(const CanonicalProduct& product, std::size_t n) {
    if (n < 1 || n > product.truncation())
        throw Error(ErrorCode::IndexOutOfRange,
                    "derivative_at_zero: index must be in [1, truncation]");
}

}  // namespace

Complex derivative_at_zero(const CanonicalProduct& product, std::size_t n) {
    check_zero_index(product, n);
    const std::vector<Complex>& zs = product.zeros();
    const Complex lam = zs[n - 1];
    Complex log_sum = std::log(-1.0 / lam);
    for (std::size_t m = 0; m < zs.size(); ++m) {
        if (m == n - 1) continue;
        log_sum += std::log(1.0 - lam / zs[m]);
    }
    return std::exp(log_sum);
}

double log_abs_derivative_at_zero(const CanonicalProduct& product, std::size_t n) {
    check_zero_index(product, n);
    const std::vector<Complex>& zs = product.zeros();
    const Complex lam = zs[n - 1];
    double sum = -std::log(std::abs(lam));
    for (std::size_t m = 0; m < zs.size(); ++m) {
        if (m == n - 1) continue;
        sum += std::log(std::abs(1.0 - lam / zs[m]));
    }
    return sum;
}

std::vector<double> condensation_profile(const CanonicalProduct& product, std::size_t upto,
                                         Exec exec) {
    if (upto < 1 || upto > product.truncation())
        throw Error(ErrorCode::IndexOutOfRange,
                    "condensation_profile: upto must be in [1, truncation]");
    return kernels::map_vec<double>(
        upto,
        [&](std::size_t idx) {
            const std::size_t n = idx + 1;
            return -log_abs_derivative_at_zero(product, n) / std::abs(product.zeros()[idx]);
        },
        exec);
}

double condensation_index(const CanonicalProduct& product, std::size_t upto, Exec exec) {
    const std::vector<double> profile = condensation_profile(product, upto, exec);
    const std::size_t lo = (upto + 1) / 2;  // 1-based window start
    double best = 0.0;
    for (std::size_t n = lo; n <= upto; ++n) best = std::max(best, profile[n - 1]);
    return best;
}

}  // namespace expseries

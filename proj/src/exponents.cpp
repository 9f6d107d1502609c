#include "expseries/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expseries/errors.hpp"

namespace expseries {

Angle::Angle(double beta, double alpha) : beta_(beta), alpha_(alpha) {
    if (!std::isfinite(beta) || std::abs(beta) >= kPi / 2.0)
        throw Error(ErrorCode::InvalidAngle, "Angle: beta must lie in (-pi/2, pi/2)");
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha + std::abs(beta) >= kPi / 2.0)
        throw Error(ErrorCode::InvalidAngle, "Angle: need 0 <= alpha < pi/2 - |beta|");
}

bool in_angle(Complex v, const Angle& angle) {
    if (v == Complex{0.0, 0.0})
        throw Error(ErrorCode::ZeroArgument, "in_angle: zero has no direction");
    return angle_distance(std::arg(v), angle.beta()) <= angle.alpha();
}

ExponentSequence::ExponentSequence(std::vector<Complex> values, std::optional<RayTail> tail)
    : values_(std::move(values)), tail_(std::move(tail)) {
    for (const Complex& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorCode::InvalidSequence, "ExponentSequence: non-finite exponent");
        if (v == Complex{0.0, 0.0})
            throw Error(ErrorCode::ZeroArgument, "ExponentSequence: exponents must be nonzero");
    }
    std::vector<Complex> sorted = values_;
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw Error(ErrorCode::InvalidSequence, "ExponentSequence: exponents must be distinct");
    if (tail_) {
        if (!std::isfinite(tail_->angle) || !(tail_->ratio > 1.0) || !std::isfinite(tail_->ratio) ||
            !(tail_->start > 0.0) || !std::isfinite(tail_->start))
            throw Error(ErrorCode::InvalidSequence,
                        "ExponentSequence: ray tail needs finite angle, ratio > 1, start > 0");
    }
}

std::size_t ExponentSequence::available() const {
    return tail_ ? std::numeric_limits<std::size_t>::max() : values_.size();
}

std::vector<Complex> ExponentSequence::materialize(std::size_t count) const {
    if (count > available())
        throw Error(ErrorCode::IndexOutOfRange, "ExponentSequence: not enough exponents");
    std::vector<Complex> explicit_sorted = values_;
    std::sort(explicit_sorted.begin(), explicit_sorted.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    std::vector<Complex> out;
    out.reserve(count);
    std::size_t i = 0;
    double tail_mod = tail_ ? tail_->start : kInf;
    const Complex tail_dir = tail_ ? Complex{std::cos(tail_->angle), std::sin(tail_->angle)}
                                   : Complex{1.0, 0.0};
    while (out.size() < count) {
        if (i < explicit_sorted.size() && std::abs(explicit_sorted[i]) <= tail_mod) {
            out.push_back(explicit_sorted[i++]);
        } else {
            out.push_back(tail_mod * tail_dir);
            tail_mod *= tail_->ratio;
        }
    }
    return out;
}

double ExponentSequence::percentile_modulus(double q) const {
    if (values_.empty()) return 0.0;
    std::vector<double> mods;
    mods.reserve(values_.size());
    for (const Complex& v : values_) mods.push_back(std::abs(v));
    std::sort(mods.begin(), mods.end());
    const double pos = q * static_cast<double>(mods.size());
    std::size_t idx = pos <= 1.0 ? 0 : static_cast<std::size_t>(std::ceil(pos)) - 1;
    idx = std::min(idx, mods.size() - 1);
    return mods[idx];
}

DirectionSet limit_directions(const ExponentSequence& seq, LimitDirectionsOptions options) {
    if (seq.has_tail()) return DirectionSet::single(Direction(seq.tail()->angle));

    const double radius = options.radius < 0.0 ? seq.percentile_modulus(0.75) : options.radius;
    std::vector<double> args;
    for (const Complex& v : seq.values())
        if (std::abs(v) > radius) args.push_back(std::arg(v));
    if (args.empty())
        throw Error(ErrorCode::EmptyDirectionSet,
                    "limit_directions: no exponents beyond the radius and no tail");
    std::sort(args.begin(), args.end());
    args.erase(std::unique(args.begin(), args.end()), args.end());

    const std::size_t n = args.size();
    if (n == 1) return DirectionSet::single(Direction(args[0]));

    // Cut the circle at gaps wider than the cluster tolerance.
    std::vector<std::size_t> cuts;  // index i: gap between args[i] and args[i+1 mod n]
    for (std::size_t i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? args[i + 1] : args[0] + 2.0 * kPi;
        if (next - args[i] > options.cluster_tol) cuts.push_back(i);
    }
    if (cuts.empty()) return DirectionSet::full_circle();

    std::vector<Arc> arcs;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
        const std::size_t begin = (cuts[(c + cuts.size() - 1) % cuts.size()] + 1) % n;
        const std::size_t end = cuts[c];  // inclusive
        double lo = args[begin];
        double hi = args[end] + (end < begin ? 2.0 * kPi : 0.0);
        arcs.push_back(Arc{lo, hi - lo});
    }
    return DirectionSet{std::move(arcs)};
}

Condition8Result check_condition8(const ExponentSequence& seq, double threshold) {
    for (const Complex& v : seq.values())
        if (v.real() <= 0.0)
            throw Error(ErrorCode::NonPositiveRealPart,
                        "check_condition8: exponents must have positive real part");
    if (seq.has_tail()) {
        if (std::cos(seq.tail()->angle) <= 0.0)
            throw Error(ErrorCode::NonPositiveRealPart,
                        "check_condition8: tail must point into the right half-plane");
        return {true, kInf};
    }

    std::vector<Complex> sorted = seq.values();
    std::sort(sorted.begin(), sorted.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    std::vector<double> ratios;
    for (const Complex& v : sorted) {
        const double mod = std::abs(v);
        if (mod > 1.0) ratios.push_back(v.real() / std::log(mod));
    }
    if (ratios.empty()) return {false, 0.0};
    const std::size_t half = ratios.size() / 2;
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        double& acc = (i < half) ? first : second;
        acc = std::max(acc, ratios[i]);
    }
    if (half == 0) first = second;
    if (second >= std::max(threshold, 2.0 * first)) return {true, kInf};
    return {second >= threshold, second};
}

ExponentSequence thin_sequence(const ExponentSequence& seq, const Angle& angle) {
    std::vector<Complex> candidates;
    for (const Complex& v : seq.values())
        if (in_angle(v, angle)) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end(), [&](Complex a, Complex b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        const double da = angle_distance(std::arg(a), angle.beta());
        const double db = angle_distance(std::arg(b), angle.beta());
        if (da != db) return da < db;
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    std::vector<Complex> kept;
    double last_mod = 0.0;
    for (const Complex& v : candidates) {
        const double mod = std::abs(v);
        if (kept.empty() || mod > 2.0 * last_mod) {
            kept.push_back(v);
            last_mod = mod;
        }
    }

    std::optional<RayTail> tail;
    if (seq.has_tail() && angle_distance(seq.tail()->angle, angle.beta()) <= angle.alpha()) {
        const RayTail& t = *seq.tail();
        // Step the ray to a power of its ratio exceeding 2.
        const double m = std::max(1.0, std::ceil(std::log(2.0) / std::log(t.ratio) + 1e-12));
        double ratio = std::pow(t.ratio, m);
        if (!(ratio > 2.0)) ratio = std::pow(t.ratio, m + 1.0);
        double start = t.start;
        if (!kept.empty() && start <= 2.0 * last_mod) {
            const double j = std::ceil((std::log(2.0 * last_mod) - std::log(t.start)) /
                                       std::log(t.ratio) + 1e-12);
            start = t.start * std::pow(t.ratio, std::max(0.0, j));
            while (start <= 2.0 * last_mod) start *= t.ratio;
        }
        tail = RayTail{normalize_angle(t.angle), ratio, start};
    }

    if (kept.empty() && !tail)
        throw Error(ErrorCode::NoExponentsInAngle,
                    "thin_sequence: no exponents inside the sector");
    return ExponentSequence(std::move(kept), tail);
}

}  // namespace expseries

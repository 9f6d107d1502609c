#include "expseries/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "expseries/errors.hpp"
#include "expseries/kernels.hpp"

namespace expseries {

ExpPolynomial::ExpPolynomial(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty())
        throw Error(ErrorCode::InvalidPolynomial, "ExpPolynomial: at least one term required");
    double prev = -kInf;
    for (const ExpTerm& t : terms_) {
        if (!std::isfinite(t.omega))
            throw Error(ErrorCode::InvalidPolynomial, "ExpPolynomial: non-finite frequency");
        if (!(t.omega > prev))
            throw Error(ErrorCode::InvalidPolynomial,
                        "ExpPolynomial: frequencies must be strictly increasing");
        prev = t.omega;
        if (t.coeffs.empty())
            throw Error(ErrorCode::InvalidPolynomial, "ExpPolynomial: empty coefficient list");
        for (const Complex& c : t.coeffs)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw Error(ErrorCode::InvalidPolynomial, "ExpPolynomial: non-finite coefficient");
        if (t.coeffs.back() == Complex{0.0, 0.0})
            throw Error(ErrorCode::InvalidPolynomial,
                        "ExpPolynomial: top coefficient of a term must be nonzero");
    }
}

namespace {

Complex poly_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs) {
    std::vector<Complex> out;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        out.push_back(static_cast<double>(i) * coeffs[i]);
    return out;
}

double coeff_l1(const std::vector<Complex>& coeffs) {
    double s = 0.0;
    for (const Complex& c : coeffs) s += std::abs(c);
    return s;
}

}  // namespace

Complex eval(const ExpPolynomial& p, Complex z) {
    Complex acc{0.0, 0.0};
    for (const ExpTerm& t : p.terms()) acc += poly_eval(t.coeffs, z) * std::exp(t.omega * z);
    return acc;
}

Complex eval_derivative(const ExpPolynomial& p, Complex z, std::size_t order) {
    if (order == 0) return eval(p, z);
    Complex acc{0.0, 0.0};
    for (const ExpTerm& t : p.terms()) {
        // d^m/dz^m [a e^{w z}] = e^{w z} sum_i C(m,i) w^{m-i} a^{(i)}.
        std::vector<Complex> deriv = t.coeffs;
        Complex inner{0.0, 0.0};
        double binom = 1.0;
        double w_pow = std::pow(t.omega, static_cast<double>(order));
        for (std::size_t i = 0; i <= order; ++i) {
            if (i > 0) {
                binom = binom * static_cast<double>(order - i + 1) / static_cast<double>(i);
                deriv = poly_derivative(deriv);
                w_pow = t.omega == 0.0 ? (i == order ? 1.0 : 0.0)
                                       : std::pow(t.omega, static_cast<double>(order - i));
            }
            if (deriv.empty()) break;
            inner += binom * w_pow * poly_eval(deriv, z);
        }
        acc += inner * std::exp(t.omega * z);
    }
    return acc;
}

ExpPolynomial derivative(const ExpPolynomial& p) {
    std::vector<ExpTerm> terms;
    for (const ExpTerm& t : p.terms()) {
        std::vector<Complex> d = poly_derivative(t.coeffs);
        if (t.omega != 0.0) {
            d.resize(t.coeffs.size(), Complex{0.0, 0.0});
            for (std::size_t i = 0; i < t.coeffs.size(); ++i) d[i] += t.omega * t.coeffs[i];
        }
        while (!d.empty() && d.back() == Complex{0.0, 0.0}) d.pop_back();
        if (!d.empty()) terms.push_back(ExpTerm{t.omega, std::move(d)});
    }
    if (terms.empty())
        throw Error(ErrorCode::InvalidPolynomial, "derivative: result is identically zero");
    return ExpPolynomial(std::move(terms));
}

double SectorLattice::radius(std::size_t i) const {
    return base_r * std::pow(8.0, (static_cast<double>(i) + 1.0 - phase) /
                                      static_cast<double>(n_radial));
}

double SectorLattice::theta(std::size_t j) const {
    if (n_angular == 1) return beta;
    return beta + alpha * (-1.0 + 2.0 * static_cast<double>(j) /
                                       (static_cast<double>(n_angular) - 1.0));
}

Complex SectorLattice::point(std::size_t k) const {
    return std::polar(radius(k / n_angular), theta(k % n_angular));
}

SectorLattice make_sector_lattice(const Angle& angle, double r, std::size_t samples,
                                  std::uint64_t seed) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorCode::InvalidAngle, "make_sector_lattice: radius must be positive");
    if (samples < 1)
        throw Error(ErrorCode::InvalidAngle, "make_sector_lattice: need at least one sample");
    SectorLattice lat;
    lat.base_r = r;
    lat.beta = angle.beta();
    lat.alpha = angle.alpha();
    lat.n_angular =
        angle.alpha() == 0.0
            ? 1
            : std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(
                                           std::sqrt(static_cast<double>(samples)))));
    lat.n_radial = std::max<std::size_t>(1, (samples + lat.n_angular - 1) / lat.n_angular);
    lat.phase = seed == 0 ? 0.0
                          : std::fmod(static_cast<double>(seed) * 0.6180339887498949, 1.0);
    return lat;
}

namespace {

// log |sum_k a_k(z) e^{(omega_k - pivot) z}|: the polynomial p rescaled by a
// nonvanishing exponential so the scan never overflows.
double log_abs_scaled(const ExpPolynomial& p, Complex z, double pivot) {
    Complex acc{0.0, 0.0};
    for (const ExpTerm& t : p.terms())
        acc += poly_eval(t.coeffs, z) * std::exp((t.omega - pivot) * z);
    return std::log(std::abs(acc));
}

BoundScanReport finish_scan(const SectorLattice& lat, const kernels::MinScan& scan,
                            bool negate_point) {
    BoundScanReport report;
    report.worst_log_ratio = scan.value;
    report.worst_ratio = std::exp(scan.value);
    report.constant_estimate = report.worst_ratio;
    report.ok = scan.value > -kInf;
    report.worst_point = lat.point(scan.argmin);
    if (negate_point) report.worst_point = -report.worst_point;
    return report;
}

}  // namespace

BoundScanReport verify_sector_bound(const ExpPolynomial& p, const Angle& angle, double r,
                                    std::size_t samples, Exec exec) {
    if (p.top_frequency() >= 0.0)
        throw Error(ErrorCode::NonNegativeTopFrequency,
                    "verify_sector_bound: requires top frequency < 0");
    const SectorLattice lat = make_sector_lattice(angle, r, samples, par::sampling_seed());
    const double omega_top = p.top_frequency();
    const double floor_cos = std::cos(angle.beta() + angle.alpha());
    const auto scan = kernels::min_scan(
        lat.size(),
        [&](std::size_t k) {
            const Complex z = lat.point(k);
            return log_abs_scaled(p, z, omega_top) +
                   omega_top * (z.real() - floor_cos * std::abs(z));
        },
        exec);
    return finish_scan(lat, scan, false);
}

BoundScanReport verify_left_bound(const ExpPolynomial& p, const Angle& angle, double r,
                                  std::size_t samples, Exec exec) {
    const SectorLattice lat = make_sector_lattice(angle, r, samples, par::sampling_seed());
    const double omega_bot = p.bottom_frequency();
    const auto scan = kernels::min_scan(
        lat.size(),
        [&](std::size_t k) { return log_abs_scaled(p, -lat.point(k), omega_bot); }, exec);
    return finish_scan(lat, scan, true);
}

double dominance_radius(const ExpPolynomial& p, const Angle& angle) {
    const ExpTerm& top = p.terms().back();
    const double a_top = std::abs(top.coeffs.back());
    const double d = static_cast<double>(top.coeffs.size() - 1);
    const double c0 = std::cos(std::abs(angle.beta()) + angle.alpha());
    double s_low = 0.0;
    for (std::size_t j = 0; j + 1 < top.coeffs.size(); ++j) s_low += std::abs(top.coeffs[j]);
    const double t1 = std::max(1.0, 2.0 * s_low / a_top);
    if (p.terms().size() == 1) return t1;

    // Monotonicity threshold: beyond it each U_k / (a_top t^d / 2) decreases.
    double t_mono = 1.0;
    for (std::size_t k = 0; k + 1 < p.terms().size(); ++k) {
        const ExpTerm& term = p.terms()[k];
        const double dk = static_cast<double>(term.coeffs.size() - 1);
        const double delta = top.omega - term.omega;
        if (dk > d) t_mono = std::max(t_mono, (dk - d) / (delta * c0));
    }
    // C(t): sum_k A~_k t^{d_k} e^{-Delta_k c0 t} <= a_top t^d / 4, in logs.
    const auto dominated = [&](double t) {
        const double log_t = std::log(t);
        double log_sum = -kInf;
        for (std::size_t k = 0; k + 1 < p.terms().size(); ++k) {
            const ExpTerm& term = p.terms()[k];
            const double dk = static_cast<double>(term.coeffs.size() - 1);
            const double lk =
                std::log(coeff_l1(term.coeffs)) + dk * log_t - (top.omega - term.omega) * c0 * t;
            log_sum = log_sum == -kInf ? lk : std::max(log_sum, lk) +
                                                  std::log1p(std::exp(-std::abs(log_sum - lk)));
        }
        return log_sum <= std::log(a_top / 4.0) + d * log_t;
    };
    double t = std::max(t1, t_mono);
    int doubles = 0;
    while (!dominated(t)) {
        t *= 2.0;
        if (++doubles > 200) return kInf;
    }
    double lo = t / 2.0, hi = t;
    if (doubles == 0) return hi;  // already dominated at the base radius
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= std::max(t1, t_mono)) break;
        if (dominated(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

struct PieceResult {
    double delta_arg = 0.0;
    bool ok = false;
};

// Winding increment along a parametrized contour piece, with adaptive
// bisection: a step is trusted only when the phase moves less than pi/2 and
// the magnitude changes by less than 4x.
template <class PointFn, class EvalFn>
PieceResult winding_piece(const PointFn& point, const EvalFn& f, std::size_t n0) {
    struct Seg {
        double t0, t1;
        Complex w0, w1;
        int depth;
    };
    PieceResult result;
    std::vector<Seg> stack;
    std::vector<Complex> w(n0 + 1);
    for (std::size_t i = 0; i <= n0; ++i) {
        w[i] = f(point(static_cast<double>(i) / static_cast<double>(n0)));
        if (w[i] == Complex{0.0, 0.0}) return result;  // zero on the contour
    }
    for (std::size_t i = n0; i-- > 0;)
        stack.push_back(Seg{static_cast<double>(i) / static_cast<double>(n0),
                            static_cast<double>(i + 1) / static_cast<double>(n0), w[i], w[i + 1],
                            0});
    double acc = 0.0;
    while (!stack.empty()) {
        Seg seg = stack.back();
        stack.pop_back();
        const double dphi = std::arg(seg.w1 / seg.w0);
        const double mag = std::abs(seg.w1) / std::abs(seg.w0);
        if (std::abs(dphi) <= kPi / 2.0 && mag <= 4.0 && mag >= 0.25) {
            acc += dphi;
            continue;
        }
        if (seg.depth >= 42) return result;  // refinement exhausted
        const double tm = 0.5 * (seg.t0 + seg.t1);
        const Complex wm = f(point(tm));
        if (wm == Complex{0.0, 0.0}) return result;
        stack.push_back(Seg{seg.t0, tm, seg.w0, wm, seg.depth + 1});
        stack.push_back(Seg{tm, seg.t1, wm, seg.w1, seg.depth + 1});
    }
    result.delta_arg = acc;
    result.ok = true;
    return result;
}

}  // namespace

ZeroCount count_zeros_sector_annulus(const ExpPolynomial& p, const Angle& angle, double r_in,
                                     double r_out) {
    if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out))
        throw Error(ErrorCode::InvalidAngle,
                    "count_zeros_sector_annulus: need 0 < r_in < r_out < inf");
    const double beta = angle.beta();
    const double alpha_c = angle.alpha() + 1e-7;
    const double r_lo = r_in * (1.0 - 1e-9);
    const double r_hi = r_out * (1.0 + 1e-9);
    const double omega_top = p.top_frequency();
    const auto f = [&](Complex z) {
        Complex acc{0.0, 0.0};
        for (const ExpTerm& t : p.terms())
            acc += poly_eval(t.coeffs, z) * std::exp((t.omega - omega_top) * z);
        return acc;
    };

    // Initial division fine enough that the phase-rate bound
    // |w'/w| <= spread*|sin theta| + deg/|z| (away from cancellations)
    // advances less than pi/4 per step; cancellations are caught by the
    // magnitude window and refined adaptively.
    const double spread = omega_top - p.bottom_frequency();
    double degree_sum = 0.0;
    for (const ExpTerm& t : p.terms()) degree_sum += static_cast<double>(t.coeffs.size() - 1);
    const double max_sin =
        std::max(std::abs(std::sin(beta - alpha_c)), std::abs(std::sin(beta + alpha_c)));
    const double radial_budget =
        spread * max_sin * (r_hi - r_lo) + degree_sum * std::log(r_hi / r_lo);
    const double arc_budget = (spread * r_hi + degree_sum) * 2.0 * alpha_c;
    const auto steps = [](double budget) {
        return 64 + static_cast<std::size_t>(std::min(3e5, std::ceil(budget / (kPi / 4.0))));
    };
    const std::size_t n_radial = steps(radial_budget);
    const std::size_t n_arc = steps(arc_budget);

    for (std::size_t boost : {1, 4, 16}) {
        double total = 0.0;
        bool ok = true;
        const auto add_piece = [&](auto&& point, std::size_t n0) {
            if (!ok) return;
            const PieceResult piece = winding_piece(point, f, n0 * boost);
            if (!piece.ok)
                ok = false;
            else
                total += piece.delta_arg;
        };
        add_piece([&](double t) { return std::polar(r_lo + (r_hi - r_lo) * t, beta - alpha_c); },
                  n_radial);
        add_piece([&](double t) { return std::polar(r_hi, beta - alpha_c + 2.0 * alpha_c * t); },
                  n_arc);
        add_piece([&](double t) { return std::polar(r_hi - (r_hi - r_lo) * t, beta + alpha_c); },
                  n_radial);
        add_piece([&](double t) { return std::polar(r_lo, beta + alpha_c - 2.0 * alpha_c * t); },
                  n_arc);
        if (!ok) continue;
        const double winding = total / (2.0 * kPi);
        const double nearest = std::round(winding);
        if (std::abs(winding - nearest) <= 1e-6 && nearest >= 0.0)
            return {static_cast<long>(nearest), true};
    }
    return {0, false};
}

ZeroFreeReport zero_free_radius(const ExpPolynomial& p, const Angle& angle, double r_max) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw Error(ErrorCode::InvalidAngle, "zero_free_radius: r_max must be positive");
    const double r_star = dominance_radius(p, angle);
    if (!std::isfinite(r_star)) return {r_max, false};
    const double r_out = 2.0 * std::max(r_star, r_max);
    for (int j = 12; j >= 0; --j) {
        const double r = r_max / std::pow(2.0, static_cast<double>(j));
        const ZeroCount zc = count_zeros_sector_annulus(p, angle, r, r_out);
        if (zc.certified && zc.count == 0) return {r, true};
    }
    return {r_max, false};
}

bool hermite_membership(const ExpPolynomial& p, const NodeSet& nodes) {
    for (const ExpTerm& t : p.terms()) {
        bool matched = false;
        for (const Node& node : nodes.nodes()) {
            if (t.omega == node.mu) {
                matched = t.coeffs.size() <= node.multiplicity;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace expseries

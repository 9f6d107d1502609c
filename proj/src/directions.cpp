#include "expseries/directions.hpp"

#include <algorithm>
#include <cmath>

#include "expseries/errors.hpp"

namespace expseries {

double normalize_angle(double theta) {
    if (!std::isfinite(theta))
        throw Error(ErrorCode::InvalidAngle, "normalize_angle: non-finite angle");
    double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi], ties to even
    if (r <= -kPi) r = kPi;                       // fold the -pi representative
    return r;
}

double angle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * kPi));
}

namespace {

constexpr double kFull = 2.0 * kPi;

struct Interval {
    double lo, hi;
};

}  // namespace

// Circular union: unroll every arc and its +2pi copy onto the line, merge
// touching intervals there, keep the components that start in the base
// period, and drop components swallowed by the wrap of the last one.
DirectionSet::DirectionSet(std::vector<Arc> arcs) {
    std::vector<Interval> lin;
    for (Arc a : arcs) {
        if (!(a.width >= 0.0) || !std::isfinite(a.width))
            throw Error(ErrorCode::InvalidAngle, "DirectionSet: arc width must be finite and >= 0");
        if (a.width >= kFull) {
            arcs_ = {Arc{-kPi, kFull}};
            return;
        }
        double lo = normalize_angle(a.lo);
        lin.push_back({lo, lo + a.width});
        lin.push_back({lo + kFull, lo + a.width + kFull});
    }
    if (lin.empty()) return;

    std::sort(lin.begin(), lin.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    for (const Interval& iv : lin) {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }

    std::vector<Arc> base;
    for (const Interval& iv : merged) {
        if (iv.lo <= -kPi || iv.lo > kPi) continue;
        if (iv.hi - iv.lo >= kFull) {
            arcs_ = {Arc{-kPi, kFull}};
            return;
        }
        base.push_back(Arc{iv.lo, iv.hi - iv.lo});
    }
    // Components are disjoint with increasing endpoints, so only the last can
    // reach past pi; anything its wrapped tail covers was already merged into
    // it via the +2pi copies and must be dropped here.
    if (base.size() >= 2) {
        double wrap = base.back().hi() - kFull;
        std::size_t keep_from = 0;
        while (keep_from + 1 < base.size() && base[keep_from].hi() <= wrap) ++keep_from;
        base.erase(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(keep_from));
    }
    arcs_ = std::move(base);
}

DirectionSet DirectionSet::full_circle() {
    DirectionSet s;
    s.arcs_ = {Arc{-kPi, kFull}};
    return s;
}

DirectionSet DirectionSet::single(Direction d) {
    DirectionSet s;
    s.arcs_ = {Arc{d.angle(), 0.0}};
    return s;
}

bool DirectionSet::is_full_circle() const {
    return arcs_.size() == 1 && arcs_[0].width >= kFull;
}

bool DirectionSet::contains(Direction d, double tol) const {
    if (is_full_circle()) return true;
    for (const Arc& a : arcs_) {
        // Circular distance from d to the closed arc [lo, lo+width].
        double rel = std::remainder(d.angle() - a.lo, kFull);  // [-pi, pi]
        if (rel < 0) rel += kFull;                             // [0, 2*pi)
        double gap = (rel <= a.width) ? 0.0 : std::min(rel - a.width, kFull - rel);
        if (gap <= tol) return true;
    }
    return false;
}

bool DirectionSet::subset_of(const DirectionSet& other, double tol) const {
    if (other.is_full_circle()) return true;
    for (const Arc& a : arcs_) {
        bool inside = false;
        for (const Arc& b : other.arcs_) {
            double rel = std::remainder(a.lo - (b.lo - tol), kFull);
            if (rel < 0) rel += kFull;
            if (rel + a.width <= b.width + 2.0 * tol) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

double DirectionSet::total_width() const {
    double w = 0.0;
    for (const Arc& a : arcs_) w += a.width;
    return w;
}

DirectionSet intersect(const DirectionSet& a, const DirectionSet& b, double tol) {
    if (a.empty() || b.empty()) return DirectionSet{};
    if (a.is_full_circle()) return b;
    std::vector<Arc> overlaps;
    for (const Arc& pa : a.arcs()) {
        if (b.is_full_circle()) {
            overlaps.push_back(pa);
            continue;
        }
        for (const Arc& pb : b.arcs()) {
            const double blo = pb.lo - tol;
            const double bhi = pb.lo + pb.width + tol;
            for (double shift : {-kFull, 0.0, kFull}) {
                double lo = std::max(pa.lo, blo + shift);
                double hi = std::min(pa.lo + pa.width, bhi + shift);
                if (lo <= hi) overlaps.push_back(Arc{lo, hi - lo});
            }
        }
    }
    return DirectionSet{std::move(overlaps)};
}

std::optional<Direction> pick_witness(const DirectionSet& s) {
    if (s.empty()) return std::nullopt;
    const Arc* best = &s.arcs()[0];
    for (const Arc& a : s.arcs())
        if (a.width > best->width) best = &a;
    return Direction(best->midpoint());
}

}  // namespace expseries

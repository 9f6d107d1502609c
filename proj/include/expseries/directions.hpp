#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

namespace expseries {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Normalize an angle to (-pi, pi].
double normalize_angle(double theta);

// Circular distance |a - b| folded into [0, pi].
double angle_distance(double a, double b);

// A direction of the unit circle, kept normalized to (-pi, pi].
class Direction {
  public:
    Direction() : angle_(0.0) {}
    explicit Direction(double angle) : angle_(normalize_angle(angle)) {}

    double angle() const { return angle_; }
    Complex unit() const { return {std::cos(angle_), std::sin(angle_)}; }

    friend bool operator==(const Direction& a, const Direction& b) {
        return a.angle_ == b.angle_;
    }

  private:
    double angle_;
};

// Closed arc [lo, lo+width] on the circle; lo normalized, width in [0, 2*pi].
struct Arc {
    double lo = 0.0;
    double width = 0.0;

    double hi() const { return lo + width; }
    double midpoint() const { return normalize_angle(lo + width / 2.0); }
    bool is_point() const { return width == 0.0; }
};

// A finite union of closed arcs, kept sorted, disjoint and normalized.
// The full circle is represented by a single arc of width 2*pi.
class DirectionSet {
  public:
    DirectionSet() = default;
    explicit DirectionSet(std::vector<Arc> arcs);

    static DirectionSet full_circle();
    static DirectionSet single(Direction d);

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    bool is_full_circle() const;

    // Membership of a direction, with each arc widened by tol on both sides.
    bool contains(Direction d, double tol = 0.0) const;

    // True if every arc of (*this) fits inside some arc of other widened by tol.
    bool subset_of(const DirectionSet& other, double tol = 0.0) const;

    double total_width() const;

  private:
    std::vector<Arc> arcs_;
};

// Arcs covered by both sets, with the arcs of b widened by tol before
// overlapping.  Touching endpoints count as (point-arc) overlap.
DirectionSet intersect(const DirectionSet& a, const DirectionSet& b, double tol = 0.0);

// Midpoint of the widest arc of a nonempty set.
std::optional<Direction> pick_witness(const DirectionSet& s);

}  // namespace expseries

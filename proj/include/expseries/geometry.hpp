#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "expseries/directions.hpp"
#include "expseries/parallel.hpp"

namespace expseries {

// Open half-plane { z : Re(e^{i*angle} z) < bound }.  bound == +inf means no
// constraint (the whole plane).
struct HalfPlane {
    double angle = 0.0;
    double bound = 0.0;
};

// Open disc { z : |z - center| < radius }.
struct Disc {
    Complex center;
    double radius = 1.0;
};

// In R^2 terms the half-plane constraint is dot(normal(angle), (x,y)) < bound
// with normal(angle) = (cos(angle), -sin(angle)).
Complex direction_normal(double angle);
double dot2(Complex a, Complex b);
double cross2(Complex a, Complex b);

// Nonempty open convex domain given as a finite intersection of open
// half-planes and open discs.  Construction validates openness/nonemptiness
// and records an interior witness point.
class ConvexDomain {
  public:
    ConvexDomain(std::vector<HalfPlane> halfplanes, std::vector<Disc> discs);

    static ConvexDomain whole_plane();

    const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }
    const std::vector<Disc>& discs() const { return discs_; }
    bool is_whole_plane() const { return halfplanes_.empty() && discs_.empty(); }

    // A point strictly inside the domain.
    Complex witness() const { return witness_; }
    // Magnitude scale of the constituents, used to make tolerances relative.
    double scale() const { return scale_; }

  private:
    struct Unchecked {};
    ConvexDomain(Unchecked, std::vector<HalfPlane> halfplanes, std::vector<Disc> discs,
                 Complex witness);

    friend ConvexDomain s_convex_hull(const ConvexDomain&, const DirectionSet&, std::size_t, Exec);
    friend ConvexDomain translate(const ConvexDomain&, Complex);
    friend ConvexDomain conjugate(const ConvexDomain&);

    std::vector<HalfPlane> halfplanes_;
    std::vector<Disc> discs_;
    Complex witness_;
    double scale_ = 1.0;
};

// Support function sup { Re(e^{i*angle} z) : z in D }; +inf when D is
// unbounded in that direction.  Exact (LP duality) for half-plane-only
// domains; certified bisection once discs participate.
double support_value(const ConvexDomain& domain, Direction s);

// Support values over many directions at once (data-parallel kernel).
std::vector<double> support_values(const ConvexDomain& domain, std::span<const double> angles,
                                   Exec exec = Exec::Parallel);

// Strict membership z in D.
bool contains(const ConvexDomain& domain, Complex z);

// Euclidean projection of z onto the closure of D (cyclic corrected
// projections), and the corresponding distance.
Complex project_onto_closure(const ConvexDomain& domain, Complex z);
double distance_to_closure(const ConvexDomain& domain, Complex z);

// Parameter interval { t : point + t*dir in closure(D) } of a line, fattened
// by eps; nullopt when the line misses.  dir must be nonzero.
std::optional<std::pair<double, double>> line_section(const ConvexDomain& domain, Complex point,
                                                      Complex dir, double eps = 0.0);

// Closed section of the real axis, { t real : t in closure(D) }.
std::optional<std::pair<double, double>> real_section(const ConvexDomain& domain);

// Directions whose supporting lines pass through the boundary point p:
// { s : support(s) - Re(e^{is} p) <= tol * scale }.  p must lie on the
// boundary within the scaled tolerance.
DirectionSet contact_directions(const ConvexDomain& domain, Complex p, double tol = 1e-9,
                                Exec exec = Exec::Parallel);

// Intersection of the supporting half-planes of D over the directions in S,
// sampled with `grid` points per arc; direction arcs where D is unbounded
// contribute nothing.  Result contains D.
ConvexDomain s_convex_hull(const ConvexDomain& domain, const DirectionSet& S,
                           std::size_t grid = 257, Exec exec = Exec::Parallel);

// Largest finite axis-aligned width of the domain (0 when none is finite);
// a cheap magnitude proxy for tolerance scaling.
double finite_width_proxy(const ConvexDomain& domain);

// Rigid motions used by the symmetry properties of the solvability
// criterion: translation by h and complex conjugation (mirror in the axis).
ConvexDomain translate(const ConvexDomain& domain, Complex h);
ConvexDomain conjugate(const ConvexDomain& domain);

}  // namespace expseries

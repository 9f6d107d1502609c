#pragma once

#include <cstddef>
#include <optional>

#include "expseries/directions.hpp"
#include "expseries/exponents.hpp"
#include "expseries/geometry.hpp"
#include "expseries/interpolation.hpp"
#include "expseries/parallel.hpp"

namespace expseries {

struct CriterionOptions {
    // Boundary membership and arc-intersection tolerance (relative to the
    // domain/point scale where distances are involved).
    double tol = 1e-9;
    // Direction-sampling grid for contact arcs, hulls, and nesting checks.
    std::size_t grid = 257;
    // Passed through to limit_directions for prefix-only sequences.
    LimitDirectionsOptions limit_options{};
    Exec exec = Exec::Serial;
};

struct SolvabilityReport {
    bool solvable = false;
    // A direction witnessing the intersection, when solvable.
    std::optional<Direction> witness;
    // Accumulation directions of the exponents.
    DirectionSet limit_set{};
    // Contact directions of the domain at the node limit point.
    DirectionSet contact_set{};
    // True when limit_set came from a finite prefix with no tail model, so
    // the decision rests on an estimate rather than an exact direction set.
    bool prefix_estimated = false;
};

// Decides solvability of the interpolation problem: nodes accumulating at a
// boundary point admit an interpolating sum of exponential series if and
// only if some accumulation direction of the exponents is a contact
// direction of the domain at that point.
//
// Throws LimitPointNotOnBoundary when the node limit point is not on the
// domain boundary (within tol), NodesOutsideDomain when a node leaves the
// domain closure, EmptyRealSection when the domain misses the real axis.
SolvabilityReport decide_solvability(const ConvexDomain& domain, const ExponentSequence& seq,
                                     const NodeSet& nodes, const CriterionOptions& opts = {});

struct NecessityReport {
    // Whether the node limit point lies strictly inside the hull.  True
    // makes interpolation impossible; on solvable instances the limit point
    // stays on the hull boundary and this is false.
    bool limit_point_in_hull = false;
    ConvexDomain hull = ConvexDomain::whole_plane();
};

// Necessity-side check: builds the hull of the domain over the exponent
// accumulation directions and asks whether the node limit point is interior
// to it.  Preconditions as decide_solvability.
NecessityReport necessity_check(const ConvexDomain& domain, const ExponentSequence& seq,
                                const NodeSet& nodes, const CriterionOptions& opts = {});

// Checks the monotonicity theorem on one instance: for nested domains
// sharing the node limit point on both boundaries, solvability on the outer
// domain implies solvability on the inner one.  Returns whether the
// implication held.  Throws NotNested when sampled support values show
// inner exceeding outer.
bool domain_monotonicity_check(const ConvexDomain& inner, const ConvexDomain& outer,
                               const ExponentSequence& seq, const NodeSet& nodes,
                               const CriterionOptions& opts = {});

}  // namespace expseries

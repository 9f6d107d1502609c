#include "expseries/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "expseries/errors.hpp"

namespace expseries {

namespace {

// Distance from p to the domain boundary: the closure distance when p is
// outside, the smallest constituent slack when p is inside.  +inf for the
// whole plane, which has no boundary.
double boundary_gap(const ConvexDomain& domain, Complex p) {
    if (!contains(domain, p)) return distance_to_closure(domain, p);
    double gap = kInf;
    for (const HalfPlane& h : domain.halfplanes()) {
        if (!std::isfinite(h.bound)) continue;
        gap = std::min(gap, h.bound - dot2(direction_normal(h.angle), p));
    }
    for (const Disc& d : domain.discs()) gap = std::min(gap, d.radius - std::abs(p - d.center));
    return gap;
}

void validate_instance(const char* where, const ConvexDomain& domain, const NodeSet& nodes,
                       const CriterionOptions& opts) {
    if (!real_section(domain))
        throw Error(ErrorCode::EmptyRealSection,
                    std::string(where) + ": domain does not meet the real axis");
    const Complex limit{nodes.limit_point(), 0.0};
    const double scale = 1.0 + std::abs(limit) + finite_width_proxy(domain);
    if (boundary_gap(domain, limit) > opts.tol * scale)
        throw Error(ErrorCode::LimitPointNotOnBoundary,
                    std::string(where) + ": node limit point is not on the domain boundary");
    for (const Node& node : nodes.nodes()) {
        const Complex mu{node.mu, 0.0};
        if (!contains(domain, mu) && distance_to_closure(domain, mu) > opts.tol * scale)
            throw Error(ErrorCode::NodesOutsideDomain,
                        std::string(where) + ": a node lies outside the domain closure");
    }
}

}  // namespace

SolvabilityReport decide_solvability(const ConvexDomain& domain, const ExponentSequence& seq,
                                     const NodeSet& nodes, const CriterionOptions& opts) {
    validate_instance("decide_solvability", domain, nodes, opts);
    SolvabilityReport report;
    report.limit_set = limit_directions(seq, opts.limit_options);
    report.contact_set =
        contact_directions(domain, Complex{nodes.limit_point(), 0.0}, opts.tol, opts.exec);
    report.prefix_estimated = !seq.has_tail();
    const DirectionSet overlap = intersect(report.limit_set, report.contact_set, opts.tol);
    report.solvable = !overlap.empty();
    if (report.solvable) report.witness = pick_witness(overlap);
    return report;
}

NecessityReport necessity_check(const ConvexDomain& domain, const ExponentSequence& seq,
                                const NodeSet& nodes, const CriterionOptions& opts) {
    validate_instance("necessity_check", domain, nodes, opts);
    NecessityReport report;
    const DirectionSet limit_set = limit_directions(seq, opts.limit_options);
    report.hull = s_convex_hull(domain, limit_set, opts.grid, opts.exec);
    report.limit_point_in_hull = contains(report.hull, Complex{nodes.limit_point(), 0.0});
    return report;
}

bool domain_monotonicity_check(const ConvexDomain& inner, const ConvexDomain& outer,
                               const ExponentSequence& seq, const NodeSet& nodes,
                               const CriterionOptions& opts) {
    const std::size_t n = std::max<std::size_t>(64, opts.grid);
    std::vector<double> angles(n);
    for (std::size_t k = 0; k < n; ++k)
        angles[k] = -kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const std::vector<double> d_inner = support_values(inner, angles, opts.exec);
    const std::vector<double> d_outer = support_values(outer, angles, opts.exec);
    const double slack = opts.tol * (1.0 + finite_width_proxy(inner) + finite_width_proxy(outer));
    for (std::size_t k = 0; k < n; ++k) {
        if (d_inner[k] > d_outer[k] + slack)
            throw Error(ErrorCode::NotNested,
                        "domain_monotonicity_check: inner domain leaves the outer one");
    }
    if (!decide_solvability(outer, seq, nodes, opts).solvable) return true;
    return decide_solvability(inner, seq, nodes, opts).solvable;
}

}  // namespace expseries

#include "expseries/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expseries/errors.hpp"
#include "expseries/kernels.hpp"

namespace expseries {

Complex direction_normal(double angle) { return {std::cos(angle), -std::sin(angle)}; }

double dot2(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

double cross2(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

namespace {

// Worst constraint violation of x; negative iff x is interior.
double violation(const std::vector<HalfPlane>& hps, const std::vector<Disc>& ds, Complex x) {
    double worst = -kInf;
    for (const HalfPlane& h : hps)
        worst = std::max(worst, dot2(direction_normal(h.angle), x) - h.bound);
    for (const Disc& d : ds) worst = std::max(worst, std::abs(x - d.center) - d.radius);
    return worst;
}

double magnitude_scale(const std::vector<HalfPlane>& hps, const std::vector<Disc>& ds) {
    double m = 0.0;
    for (const HalfPlane& h : hps)
        if (std::isfinite(h.bound)) m = std::max(m, std::abs(h.bound));
    for (const Disc& d : ds) m = std::max(m, std::abs(d.center) + d.radius);
    return 1.0 + m;
}

// Interior point search: seed with analytic candidates, then shrink a grid
// around the best one.  The violation function is convex, so this converges
// to its minimum whenever the seeds bracket it.
std::optional<Complex> find_witness(const std::vector<HalfPlane>& hps,
                                    const std::vector<Disc>& ds, double scale) {
    std::vector<Complex> seeds{Complex{0.0, 0.0}};
    for (const Disc& d : ds) seeds.push_back(d.center);
    for (const HalfPlane& h : hps)
        seeds.push_back((h.bound - scale) * direction_normal(h.angle));
    // Pairwise boundary intersections.
    for (std::size_t i = 0; i < hps.size(); ++i) {
        const Complex ni = direction_normal(hps[i].angle);
        for (std::size_t j = i + 1; j < hps.size(); ++j) {
            const Complex nj = direction_normal(hps[j].angle);
            const double det = cross2(ni, nj);
            if (std::abs(det) < 1e-12) continue;
            // Solve dot(ni,x)=bi, dot(nj,x)=bj.
            const double bi = hps[i].bound, bj = hps[j].bound;
            seeds.push_back(Complex{(bi * nj.imag() - bj * ni.imag()) / det,
                                    (bj * ni.real() - bi * nj.real()) / det});
        }
        for (const Disc& d : ds) {
            const double off = hps[i].bound - dot2(ni, d.center);
            if (std::abs(off) > d.radius) continue;
            const double half = std::sqrt(std::max(0.0, d.radius * d.radius - off * off));
            const Complex foot = d.center + off * ni;
            const Complex tang{-ni.imag(), ni.real()};
            seeds.push_back(foot + half * tang);
            seeds.push_back(foot - half * tang);
        }
    }
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            const Complex delta = ds[j].center - ds[i].center;
            const double dist = std::abs(delta);
            if (dist == 0.0 || dist > ds[i].radius + ds[j].radius) continue;
            const double a = (dist * dist + ds[i].radius * ds[i].radius -
                              ds[j].radius * ds[j].radius) /
                             (2.0 * dist);
            const double h2 = ds[i].radius * ds[i].radius - a * a;
            const Complex foot = ds[i].center + (a / dist) * delta;
            const Complex tang = Complex{-delta.imag(), delta.real()} / dist;
            const double h = std::sqrt(std::max(0.0, h2));
            seeds.push_back(foot + h * tang);
            seeds.push_back(foot - h * tang);
        }
    Complex centroid{0.0, 0.0};
    for (Complex s : seeds) centroid += s;
    centroid /= static_cast<double>(seeds.size());
    seeds.push_back(centroid);

    Complex best = seeds[0];
    double best_v = violation(hps, ds, best);
    for (Complex s : seeds) {
        double v = violation(hps, ds, s);
        if (v < best_v) {
            best_v = v;
            best = s;
        }
    }
    if (best_v < -1e-9 * scale) return best;

    double half = 4.0 * scale;
    for (int round = 0; round < 70; ++round) {
        Complex round_best = best;
        double round_v = best_v;
        for (int ix = -10; ix <= 10; ++ix)
            for (int iy = -10; iy <= 10; ++iy) {
                Complex x = best + Complex{half * ix / 10.0, half * iy / 10.0};
                double v = violation(hps, ds, x);
                if (v < round_v) {
                    round_v = v;
                    round_best = x;
                }
            }
        best = round_best;
        best_v = round_v;
        half *= 0.55;
        if (best_v < -1e-9 * scale) return best;
    }
    if (best_v < -1e-11 * scale) return best;
    return std::nullopt;
}

}  // namespace

ConvexDomain::ConvexDomain(std::vector<HalfPlane> halfplanes, std::vector<Disc> discs) {
    for (HalfPlane& h : halfplanes) {
        if (!std::isfinite(h.angle))
            throw Error(ErrorCode::InvalidDomain, "ConvexDomain: half-plane angle must be finite");
        if (std::isnan(h.bound) || h.bound == -kInf)
            throw Error(ErrorCode::InvalidDomain, "ConvexDomain: half-plane bound must be finite or +inf");
        h.angle = normalize_angle(h.angle);
        if (h.bound != kInf) halfplanes_.push_back(h);  // +inf imposes nothing
    }
    for (const Disc& d : discs) {
        if (!(d.radius > 0.0) || !std::isfinite(d.radius) || !std::isfinite(d.center.real()) ||
            !std::isfinite(d.center.imag()))
            throw Error(ErrorCode::InvalidDomain, "ConvexDomain: disc needs finite center and radius > 0");
        discs_.push_back(d);
    }
    scale_ = magnitude_scale(halfplanes_, discs_);

    // Analytic emptiness certificates for pairs.
    for (std::size_t i = 0; i < halfplanes_.size(); ++i) {
        const Complex ni = direction_normal(halfplanes_[i].angle);
        for (std::size_t j = i + 1; j < halfplanes_.size(); ++j) {
            const Complex nj = direction_normal(halfplanes_[j].angle);
            if (std::abs(cross2(ni, nj)) <= 1e-12 && dot2(ni, nj) < 0.0 &&
                halfplanes_[i].bound + halfplanes_[j].bound <= 0.0)
                throw Error(ErrorCode::InvalidDomain,
                            "ConvexDomain: opposing half-planes leave no open slab");
        }
        for (const Disc& d : discs_)
            if (dot2(ni, d.center) - d.radius >= halfplanes_[i].bound)
                throw Error(ErrorCode::InvalidDomain,
                            "ConvexDomain: disc lies outside a half-plane");
    }
    for (std::size_t i = 0; i < discs_.size(); ++i)
        for (std::size_t j = i + 1; j < discs_.size(); ++j)
            if (std::abs(discs_[i].center - discs_[j].center) >=
                discs_[i].radius + discs_[j].radius)
                throw Error(ErrorCode::InvalidDomain, "ConvexDomain: discs do not overlap");

    if (is_whole_plane()) {
        witness_ = 0.0;
        return;
    }
    auto w = find_witness(halfplanes_, discs_, scale_);
    if (!w)
        throw Error(ErrorCode::InvalidDomain,
                    "ConvexDomain: no interior point found; intersection empty or degenerate");
    witness_ = *w;
}

ConvexDomain::ConvexDomain(Unchecked, std::vector<HalfPlane> halfplanes, std::vector<Disc> discs,
                           Complex witness)
    : halfplanes_(std::move(halfplanes)), discs_(std::move(discs)), witness_(witness) {
    scale_ = magnitude_scale(halfplanes_, discs_);
}

ConvexDomain ConvexDomain::whole_plane() { return ConvexDomain({}, {}); }

namespace {

// Exact support of the half-plane-only part in R^2 direction u:
// LP duality with at most two active constraints in the plane.
double halfplane_support(const std::vector<HalfPlane>& hps, Complex u) {
    double best = kInf;
    for (const HalfPlane& h : hps) {
        if (dot2(direction_normal(h.angle), u) >= 1.0 - 1e-12)
            best = std::min(best, h.bound);
    }
    for (std::size_t i = 0; i < hps.size(); ++i) {
        const Complex ni = direction_normal(hps[i].angle);
        for (std::size_t j = i + 1; j < hps.size(); ++j) {
            const Complex nj = direction_normal(hps[j].angle);
            const double det = cross2(ni, nj);
            if (std::abs(det) < 1e-13) continue;
            const double ti = cross2(u, nj) / det;
            const double tj = cross2(ni, u) / det;
            if (ti >= -1e-12 && tj >= -1e-12)
                best = std::min(best, ti * hps[i].bound + tj * hps[j].bound);
        }
    }
    return best;
}

}  // namespace

std::optional<std::pair<double, double>> line_section(const ConvexDomain& domain, Complex point,
                                                      Complex dir, double eps) {
    const double norm = std::abs(dir);
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidDomain, "line_section: zero direction");
    const Complex v = dir / norm;
    double tlo = -kInf, thi = kInf;
    for (const HalfPlane& h : domain.halfplanes()) {
        const Complex n = direction_normal(h.angle);
        const double denom = dot2(n, v);
        const double rhs = h.bound + eps - dot2(n, point);
        if (std::abs(denom) <= 1e-15) {
            if (rhs < 0.0) return std::nullopt;
        } else if (denom > 0.0) {
            thi = std::min(thi, rhs / denom);
        } else {
            tlo = std::max(tlo, rhs / denom);
        }
    }
    for (const Disc& d : domain.discs()) {
        const Complex w = point - d.center;
        const double b = dot2(w, v);
        const double r = d.radius + eps;
        const double disc = b * b - (dot2(w, w) - r * r);
        if (disc < 0.0) return std::nullopt;
        const double root = std::sqrt(disc);
        tlo = std::max(tlo, -b - root);
        thi = std::min(thi, -b + root);
    }
    if (tlo > thi) return std::nullopt;
    return std::make_pair(tlo, thi);
}

std::optional<std::pair<double, double>> real_section(const ConvexDomain& domain) {
    auto sec = line_section(domain, Complex{0.0, 0.0}, Complex{1.0, 0.0},
                            1e-12 * domain.scale());
    return sec;
}

double support_value(const ConvexDomain& domain, Direction s) {
    if (domain.is_whole_plane()) return kInf;
    const Complex u = direction_normal(s.angle());

    double hi = halfplane_support(domain.halfplanes(), u);
    for (const Disc& d : domain.discs()) hi = std::min(hi, dot2(u, d.center) + d.radius);
    if (hi == kInf) return kInf;
    if (domain.discs().empty()) return hi;  // LP value is exact

    double lo = dot2(u, domain.witness());
    if (hi <= lo) return lo;

    // The support line sits at the largest level whose line still meets the
    // closure; bisect on that predicate.
    const Complex perp{-u.imag(), u.real()};
    const double eps = 1e-13 * domain.scale();
    if (line_section(domain, hi * u, perp, eps)) return hi;
    const double stop = 1e-14 * domain.scale();
    for (int iter = 0; iter < 200 && hi - lo > stop; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (line_section(domain, mid * u, perp, eps))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::vector<double> support_values(const ConvexDomain& domain, std::span<const double> angles,
                                   Exec exec) {
    return kernels::map_vec<double>(
        angles.size(), [&](std::size_t i) { return support_value(domain, Direction(angles[i])); },
        exec);
}

bool contains(const ConvexDomain& domain, Complex z) {
    for (const HalfPlane& h : domain.halfplanes())
        if (!(dot2(direction_normal(h.angle), z) < h.bound)) return false;
    for (const Disc& d : domain.discs())
        if (!(std::abs(z - d.center) < d.radius)) return false;
    return true;
}

Complex project_onto_closure(const ConvexDomain& domain, Complex z) {
    if (domain.is_whole_plane()) return z;
    const std::size_t m = domain.halfplanes().size() + domain.discs().size();
    std::vector<Complex> corr(m, Complex{0.0, 0.0});
    Complex x = z;
    const double scale = domain.scale() + std::abs(z);
    for (int cycle = 0; cycle < 600; ++cycle) {
        const Complex start = x;
        std::size_t k = 0;
        for (const HalfPlane& h : domain.halfplanes()) {
            const Complex n = direction_normal(h.angle);
            const Complex y = x + corr[k];
            const double over = dot2(n, y) - h.bound;
            const Complex proj = over > 0.0 ? y - over * n : y;
            corr[k] = y - proj;
            x = proj;
            ++k;
        }
        for (const Disc& d : domain.discs()) {
            const Complex y = x + corr[k];
            const Complex w = y - d.center;
            const double dist = std::abs(w);
            const Complex proj = dist > d.radius ? d.center + (d.radius / dist) * w : y;
            corr[k] = y - proj;
            x = proj;
            ++k;
        }
        if (std::abs(x - start) <= 1e-15 * scale &&
            violation(domain.halfplanes(), domain.discs(), x) <= 1e-12 * scale)
            break;
    }
    return x;
}

double distance_to_closure(const ConvexDomain& domain, Complex z) {
    if (violation(domain.halfplanes(), domain.discs(), z) <= 0.0) return 0.0;
    return std::abs(z - project_onto_closure(domain, z));
}

double finite_width_proxy(const ConvexDomain& domain) {
    double best = 0.0;
    for (double a : {0.0, kPi / 2.0}) {
        const double w1 = support_value(domain, Direction(a));
        const double w2 = support_value(domain, Direction(a + kPi));
        if (std::isfinite(w1) && std::isfinite(w2)) best = std::max(best, w1 + w2);
    }
    return best;
}

DirectionSet contact_directions(const ConvexDomain& domain, Complex p, double tol, Exec exec) {
    if (domain.is_whole_plane())
        throw Error(ErrorCode::PointNotOnBoundary, "contact_directions: domain has no boundary");
    const double scale = 1.0 + std::abs(p) + finite_width_proxy(domain);
    const double tau = tol * scale;

    if (contains(domain, p)) {
        double slack = kInf;
        for (const HalfPlane& h : domain.halfplanes())
            slack = std::min(slack, h.bound - dot2(direction_normal(h.angle), p));
        for (const Disc& d : domain.discs())
            slack = std::min(slack, d.radius - std::abs(p - d.center));
        if (slack > tau)
            throw Error(ErrorCode::PointNotOnBoundary,
                        "contact_directions: point is interior to the domain");
    } else if (distance_to_closure(domain, p) > tau) {
        throw Error(ErrorCode::PointNotOnBoundary,
                    "contact_directions: point is outside the domain closure");
    }

    // Sample the boundary gap g(theta) = support(theta) - Re(e^{i theta} p).
    std::vector<double> angles;
    const std::size_t n_grid = 2048;
    angles.reserve(n_grid + 2 * domain.halfplanes().size() + domain.discs().size());
    for (std::size_t k = 0; k < n_grid; ++k)
        angles.push_back(-kPi + 2.0 * kPi * (static_cast<double>(k) + 1.0) / n_grid);
    for (const HalfPlane& h : domain.halfplanes()) angles.push_back(h.angle);
    for (const Disc& d : domain.discs()) {
        const Complex w = d.center - p;
        if (std::abs(w) > 0.0) angles.push_back(normalize_angle(kPi - std::arg(w)));
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    const auto gap = [&](double theta) {
        const double d = support_value(domain, Direction(theta));
        if (d == kInf) return kInf;
        return d - dot2(direction_normal(theta), p);
    };
    const std::vector<double> g =
        kernels::map_vec<double>(angles.size(), [&](std::size_t i) { return gap(angles[i]); }, exec);

    const std::size_t n = angles.size();
    std::vector<char> in(n);
    std::size_t count_in = 0;
    for (std::size_t i = 0; i < n; ++i) {
        in[i] = g[i] <= tau;
        count_in += in[i];
    }
    if (count_in == 0) {
        // Support is only grazed between samples; locate the global minimum by
        // refining around the smallest sampled gap.
        std::size_t arg = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (g[i] < g[arg]) arg = i;
        double a = angles[(arg + n - 1) % n], b = angles[(arg + 1) % n];
        if (a > angles[arg]) a -= 2.0 * kPi;
        if (b < angles[arg]) b += 2.0 * kPi;
        double mid = angles[arg];
        for (int iter = 0; iter < 80; ++iter) {
            const double l = 0.5 * (a + mid), r = 0.5 * (mid + b);
            const double gl = gap(l), gm = gap(mid), gr = gap(r);
            if (gl <= gm && gl <= gr) {
                b = mid;
                mid = l;
            } else if (gr <= gm && gr <= gl) {
                a = mid;
                mid = r;
            } else {
                a = l;
                b = r;
            }
        }
        if (gap(mid) <= tau) return DirectionSet{{Arc{normalize_angle(mid), 0.0}}};
        return DirectionSet{};
    }
    if (count_in == n) return DirectionSet::full_circle();

    // Circular runs of "in" samples; refine both endpoints by bisection.
    const auto refine = [&](double theta_out, double theta_in) {
        for (int iter = 0; iter < 64; ++iter) {
            const double mid = 0.5 * (theta_out + theta_in);
            if (gap(mid) <= tau)
                theta_in = mid;
            else
                theta_out = mid;
        }
        return theta_in;
    };
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        if (!in[i] || in[prev]) continue;  // run starts at i
        std::size_t j = i;
        while (in[(j + 1) % n]) j = (j + 1) % n;
        // Unrolled neighbor angles for the bisections.
        double left_out = angles[prev];
        if (left_out > angles[i]) left_out -= 2.0 * kPi;
        double right_in = angles[j] + (j < i ? 2.0 * kPi : 0.0);
        double right_out = angles[(j + 1) % n] + ((j + 1) % n <= i ? 2.0 * kPi : 0.0);
        if (right_out < right_in) right_out += 2.0 * kPi;
        const double lo = refine(left_out, angles[i]);
        const double hi = refine(right_out, right_in);
        // Point contacts surface as arcs of width ~sqrt(2 * parallel-dot
        // tolerance) no matter the geometry; collapse below that floor.
        double width = hi - lo;
        if (width < 5e-6)
            arcs.push_back(Arc{normalize_angle(0.5 * (lo + hi)), 0.0});
        else
            arcs.push_back(Arc{normalize_angle(lo), width});
    }
    return DirectionSet{std::move(arcs)};
}

ConvexDomain s_convex_hull(const ConvexDomain& domain, const DirectionSet& S, std::size_t grid,
                           Exec exec) {
    if (S.empty())
        throw Error(ErrorCode::EmptyDirectionSet, "s_convex_hull: direction set is empty");
    if (grid < 2) grid = 2;

    std::vector<double> angles;
    if (S.is_full_circle()) {
        for (std::size_t k = 0; k < grid; ++k)
            angles.push_back(-kPi + 2.0 * kPi * (static_cast<double>(k) + 1.0) / grid);
    } else {
        for (const Arc& a : S.arcs()) {
            if (a.is_point()) {
                angles.push_back(a.lo);
                continue;
            }
            for (std::size_t k = 0; k < grid; ++k)
                angles.push_back(a.lo + a.width * static_cast<double>(k) / (grid - 1));
        }
    }
    const std::vector<double> d = support_values(domain, angles, exec);

    std::vector<HalfPlane> hps;
    for (std::size_t i = 0; i < angles.size(); ++i)
        if (std::isfinite(d[i])) hps.push_back(HalfPlane{normalize_angle(angles[i]), d[i]});
    if (hps.empty()) return ConvexDomain::whole_plane();
    return ConvexDomain(ConvexDomain::Unchecked{}, std::move(hps), {}, domain.witness());
}

ConvexDomain translate(const ConvexDomain& domain, Complex h) {
    std::vector<HalfPlane> hps = domain.halfplanes();
    for (HalfPlane& hp : hps) hp.bound += dot2(direction_normal(hp.angle), h);
    std::vector<Disc> ds = domain.discs();
    for (Disc& d : ds) d.center += h;
    return ConvexDomain(ConvexDomain::Unchecked{}, std::move(hps), std::move(ds),
                        domain.witness() + h);
}

ConvexDomain conjugate(const ConvexDomain& domain) {
    std::vector<HalfPlane> hps = domain.halfplanes();
    for (HalfPlane& hp : hps) hp.angle = normalize_angle(-hp.angle);
    std::vector<Disc> ds = domain.discs();
    for (Disc& d : ds) d.center = std::conj(d.center);
    return ConvexDomain(ConvexDomain::Unchecked{}, std::move(hps), std::move(ds),
                        std::conj(domain.witness()));
}

}  // namespace expseries

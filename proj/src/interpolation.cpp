#include "expseries/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "expseries/errors.hpp"
#include "expseries/kernels.hpp"

namespace expseries {

NodeSet::NodeSet(std::vector<Node> nodes, double limit_point)
    : nodes_(std::move(nodes)), limit_point_(limit_point) {
    if (nodes_.empty())
        throw Error(ErrorCode::InvalidNodeSet, "NodeSet: at least one node required");
    if (!std::isfinite(limit_point_))
        throw Error(ErrorCode::InvalidNodeSet, "NodeSet: limit point must be finite");
    for (const Node& n : nodes_) {
        if (!std::isfinite(n.mu))
            throw Error(ErrorCode::InvalidNodeSet, "NodeSet: node must be finite");
        if (n.multiplicity < 1)
            throw Error(ErrorCode::InvalidNodeSet, "NodeSet: multiplicity must be >= 1");
    }
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k)
        if (!(nodes_[k].mu < nodes_[k + 1].mu))
            throw Error(ErrorCode::InvalidNodeSet, "NodeSet: nodes must be strictly increasing");
    // Finite-data proxy for "limit point is the single accumulation point":
    // every node sits strictly on one side of it.
    const bool below = nodes_.front().mu < limit_point_;
    for (const Node& n : nodes_) {
        if (n.mu == limit_point_ || (n.mu < limit_point_) != below)
            throw Error(ErrorCode::InvalidNodeSet,
                        "NodeSet: nodes must approach the limit point from one side");
    }
}

std::size_t NodeSet::total_multiplicity() const {
    std::size_t m = 0;
    for (const Node& n : nodes_) m += n.multiplicity;
    return m;
}

HermiteData::HermiteData(const NodeSet& nodes, std::vector<std::vector<Complex>> by_node)
    : by_node_(std::move(by_node)) {
    if (by_node_.size() != nodes.nodes().size())
        throw Error(ErrorCode::SizeMismatch, "HermiteData: one value group per node required");
    for (std::size_t k = 0; k < by_node_.size(); ++k)
        if (by_node_[k].size() != nodes.nodes()[k].multiplicity)
            throw Error(ErrorCode::SizeMismatch,
                        "HermiteData: group size must equal the node multiplicity");
}

std::vector<Complex> HermiteData::flat() const {
    std::vector<Complex> out;
    for (const auto& group : by_node_) out.insert(out.end(), group.begin(), group.end());
    return out;
}

namespace {

Complex int_pow(Complex base, std::size_t e) {
    Complex r{1.0, 0.0};
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

ComplexMatrix hermite_matrix(std::span<const Complex> exponents, const NodeSet& nodes) {
    const std::size_t rows = nodes.total_multiplicity();
    ComplexMatrix A(rows, exponents.size());
    std::size_t row = 0;
    for (const Node& node : nodes.nodes()) {
        for (std::size_t j = 0; j < node.multiplicity; ++j, ++row) {
            for (std::size_t n = 0; n < exponents.size(); ++n) {
                const Complex lam = exponents[n];
                A.at(row, n) = int_pow(lam, j) * std::exp(lam * node.mu);
            }
        }
    }
    return A;
}

Complex eval_expsum(const ExpSum& sum, Complex z, std::size_t order) {
    if (sum.exponents.size() != sum.coefficients.size())
        throw Error(ErrorCode::SizeMismatch, "eval_expsum: exponents vs coefficients");
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < sum.exponents.size(); ++n)
        acc += sum.coefficients[n] * int_pow(sum.exponents[n], order) *
               std::exp(sum.exponents[n] * z);
    return acc;
}

SolveResult solve_finite_section(std::span<const Complex> exponents, const NodeSet& nodes,
                                 const HermiteData& data, SolveOptions options) {
    const std::size_t n = exponents.size();
    if (n == 0)
        throw Error(ErrorCode::SizeMismatch, "solve_finite_section: no exponents");
    if (nodes.total_multiplicity() != n)
        throw Error(ErrorCode::SizeMismatch,
                    "solve_finite_section: total multiplicity must equal the exponent count");

    // Column scaling recenters e^{lambda mu} magnitudes around the median node.
    double mu_ref = 0.0;
    if (options.scale_columns) {
        std::vector<double> mus;
        for (const Node& node : nodes.nodes()) mus.push_back(node.mu);
        std::sort(mus.begin(), mus.end());
        mu_ref = mus[(mus.size() - 1) / 2];
    }
    std::vector<Complex> col_scale(n, Complex{1.0, 0.0});
    if (options.scale_columns)
        for (std::size_t c = 0; c < n; ++c) col_scale[c] = std::exp(exponents[c] * mu_ref);

    ComplexMatrix A = hermite_matrix(exponents, nodes);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) A.at(r, c) /= col_scale[c];
    std::vector<Complex> rhs = data.flat();

    double max_initial = 0.0;
    for (const Complex& v : A.data) max_initial = std::max(max_initial, std::abs(v));
    if (max_initial == 0.0)
        throw Error(ErrorCode::NearSingular, "solve_finite_section: zero matrix");

    // Full-pivot elimination with column permutation tracking.
    std::vector<std::size_t> col_of(n);
    std::iota(col_of.begin(), col_of.end(), 0);
    double min_pivot = kInf;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pr = step, pc = step;
        double best = -1.0;
        for (std::size_t r = step; r < n; ++r)
            for (std::size_t c = step; c < n; ++c)
                if (std::abs(A.at(r, c)) > best) {
                    best = std::abs(A.at(r, c));
                    pr = r;
                    pc = c;
                }
        if (best < options.pivot_tol * max_initial) {
            std::ostringstream msg;
            msg << "solve_finite_section: near-singular finite section; condition estimate "
                << (best > 0.0 ? max_initial / best : kInf);
            throw Error(ErrorCode::NearSingular, msg.str());
        }
        min_pivot = std::min(min_pivot, best);
        if (pr != step)
            for (std::size_t c = 0; c < n; ++c) std::swap(A.at(step, c), A.at(pr, c));
        if (pr != step) std::swap(rhs[step], rhs[pr]);
        if (pc != step) {
            for (std::size_t r = 0; r < n; ++r) std::swap(A.at(r, step), A.at(r, pc));
            std::swap(col_of[step], col_of[pc]);
        }
        const Complex pivot = A.at(step, step);
        for (std::size_t r = step + 1; r < n; ++r) {
            const Complex f = A.at(r, step) / pivot;
            if (f == Complex{0.0, 0.0}) continue;
            A.at(r, step) = 0.0;
            for (std::size_t c = step + 1; c < n; ++c) A.at(r, c) -= f * A.at(step, c);
            rhs[r] -= f * rhs[step];
        }
    }
    std::vector<Complex> y(n);
    for (std::size_t ri = n; ri-- > 0;) {
        Complex acc = rhs[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= A.at(ri, c) * y[c];
        y[ri] = acc / A.at(ri, ri);
    }

    SolveResult result;
    result.solution.exponents.assign(exponents.begin(), exponents.end());
    result.solution.coefficients.assign(n, Complex{0.0, 0.0});
    for (std::size_t c = 0; c < n; ++c)
        result.solution.coefficients[col_of[c]] = y[c] / col_scale[col_of[c]];
    result.pivot_ratio = max_initial / min_pivot;

    const std::vector<Complex> targets = data.flat();
    double max_b = 0.0, max_res = 0.0;
    std::size_t row = 0;
    for (const Node& node : nodes.nodes())
        for (std::size_t j = 0; j < node.multiplicity; ++j, ++row) {
            const Complex got = eval_expsum(result.solution, node.mu, j);
            max_res = std::max(max_res, std::abs(got - targets[row]));
            max_b = std::max(max_b, std::abs(targets[row]));
        }
    result.residual_max = max_res;
    result.residual_rel = max_res / std::max(1.0, max_b);
    return result;
}

ConvergenceResult abs_convergence_margin(const ExponentSequence& seq, const CoeffModel& model,
                                         Complex z) {
    if (!seq.has_tail())
        throw Error(ErrorCode::NoTail, "abs_convergence_margin: sequence needs a ray tail");
    if (!(model.amplitude > 0.0) || !std::isfinite(model.amplitude) ||
        !std::isfinite(model.rate))
        throw Error(ErrorCode::UnsupportedCoeffModel,
                    "abs_convergence_margin: amplitude must be positive and rate finite");
    if (model.kind == CoeffGrowth::Geometric && !(model.rate > 0.0))
        throw Error(ErrorCode::UnsupportedCoeffModel,
                    "abs_convergence_margin: geometric rate must be positive");

    const double beta = seq.tail()->angle;
    const double u = z.real() * std::cos(beta) - z.imag() * std::sin(beta);  // Re(e^{i beta} z)
    double margin = u;
    bool tie_converges = false;
    switch (model.kind) {
        case CoeffGrowth::Geometric:
            tie_converges = model.rate < 1.0;
            break;
        case CoeffGrowth::ExpModulus:
            margin = u - model.rate;
            tie_converges = false;
            break;
        case CoeffGrowth::ExpSqrt:
            tie_converges = model.rate > 0.0;
            break;
    }
    const bool converges = margin < 0.0 || (margin == 0.0 && tie_converges);
    return {converges, margin};
}

std::vector<double> margin_grid(const ExponentSequence& seq, const CoeffModel& model, double x0,
                                double x1, double y0, double y1, std::size_t nx, std::size_t ny,
                                Exec exec) {
    if (nx < 1 || ny < 1)
        throw Error(ErrorCode::SizeMismatch, "margin_grid: grid must be at least 1x1");
    return kernels::map_vec<double>(
        nx * ny,
        [&](std::size_t k) {
            const std::size_t iy = k / nx, ix = k % nx;
            const double x = nx == 1 ? x0 : x0 + (x1 - x0) * static_cast<double>(ix) / (nx - 1);
            const double y = ny == 1 ? y0 : y0 + (y1 - y0) * static_cast<double>(iy) / (ny - 1);
            return abs_convergence_margin(seq, model, Complex{x, y}).margin;
        },
        exec);
}

}  // namespace expseries

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "expseries/exponents.hpp"
#include "expseries/parallel.hpp"

namespace expseries {

// Real interpolation node with a derivative-matching multiplicity.
struct Node {
    double mu = 0.0;
    std::size_t multiplicity = 1;
};

// Finite multiple-node configuration accumulating at a real limit point.
class NodeSet {
  public:
    NodeSet(std::vector<Node> nodes, double limit_point);

    const std::vector<Node>& nodes() const { return nodes_; }
    double limit_point() const { return limit_point_; }
    std::size_t total_multiplicity() const;

  private:
    std::vector<Node> nodes_;
    double limit_point_;
};

// Interpolation targets b_{k,j} = f^{(j)}(mu_k), grouped per node in
// derivative order j = 0..multiplicity-1.
class HermiteData {
  public:
    HermiteData(const NodeSet& nodes, std::vector<std::vector<Complex>> by_node);

    const std::vector<std::vector<Complex>>& by_node() const { return by_node_; }
    // Row order used by the linear systems: nodes in their given order,
    // derivative order ascending within each node.
    std::vector<Complex> flat() const;

  private:
    std::vector<std::vector<Complex>> by_node_;
};

struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    Complex& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Confluent (Hermite) system matrix: row (k, j) and column n hold
// lambda_n^j e^{lambda_n mu_k}.
ComplexMatrix hermite_matrix(std::span<const Complex> exponents, const NodeSet& nodes);

// Finite sum c_n e^{lambda_n z}.
struct ExpSum {
    std::vector<Complex> exponents;
    std::vector<Complex> coefficients;
};

// order-th derivative of the sum at z.
Complex eval_expsum(const ExpSum& sum, Complex z, std::size_t order = 0);

struct SolveOptions {
    double pivot_tol = 1e-12;   // relative near-singularity threshold
    bool scale_columns = true;  // rescale columns by e^{lambda * median node}
};

struct SolveResult {
    ExpSum solution;
    double residual_max = 0.0;  // max |f^(j)(mu_k) - b_kj|
    double residual_rel = 0.0;  // residual_max / max(1, max |b|)
    double pivot_ratio = 1.0;   // first pivot / smallest pivot; condition proxy
};

// Solve the square confluent system by column-scaled full-pivot elimination.
// Throws NearSingular (with the pivot-ratio condition estimate in the
// message) when a pivot falls below pivot_tol relative to the largest
// initial entry.
SolveResult solve_finite_section(std::span<const Complex> exponents, const NodeSet& nodes,
                                 const HermiteData& data, SolveOptions options = {});

// Coefficient magnitude models for the convergence scan.
enum class CoeffGrowth {
    Geometric,   // |c_n| = amplitude * rate^n
    ExpModulus,  // |c_n| = amplitude * exp(-rate * |lambda_n|)
    ExpSqrt,     // |c_n| = amplitude * exp(-rate * sqrt(|lambda_n|))
};

struct CoeffModel {
    CoeffGrowth kind = CoeffGrowth::Geometric;
    double amplitude = 1.0;
    double rate = 1.0;
};

struct ConvergenceResult {
    bool converges = false;
    double margin = 0.0;  // negative inside the convergence region
};

// Absolute-convergence margin of sum c_n e^{lambda_n z} for exponents along
// the ray tail: margin = Re(e^{i beta} z) minus the abscissa shift of the
// model; the direction of the strict inequality at margin 0 depends on the
// model.  Requires a ray tail.
ConvergenceResult abs_convergence_margin(const ExponentSequence& seq, const CoeffModel& model,
                                         Complex z);

// Margins over an nx-by-ny grid of the box [x0,x1] x [y0,y1], row-major with
// x fastest (data-parallel kernel).
std::vector<double> margin_grid(const ExponentSequence& seq, const CoeffModel& model, double x0,
                                double x1, double y0, double y1, std::size_t nx, std::size_t ny,
                                Exec exec = Exec::Parallel);

}  // namespace expseries

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expseries/criterion.hpp"
#include "expseries/errors.hpp"
#include "expseries/exppoly.hpp"
#include "expseries/json_io.hpp"
#include "expseries/parallel.hpp"
#include "expseries/product.hpp"

namespace {

using expseries::Complex;
using expseries::Error;
using expseries::ErrorCode;
using Json = expseries::io::Json;

struct CommonArgs {
    std::string input;
    bool csv = false;
    std::optional<std::size_t> grid;
    std::optional<int> jobs;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream file(path);
    if (!file)
        throw Error(ErrorCode::SchemaError, "read_input: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

void emit(const Json& out) { std::cout << out.dump() << "\n"; }

void emit_csv_row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) std::cout << ",";
        first = false;
        if (std::isfinite(v))
            std::cout << Json(v).dump();
        else
            std::cout << (std::isnan(v) ? "nan" : (v > 0.0 ? "inf" : "-inf"));
    }
    std::cout << "\n";
}

double optional_number(const Json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    return expseries::io::finite_number(*it, key);
}

std::size_t optional_index(const Json& j, const char* key, std::size_t fallback) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw Error(ErrorCode::SchemaError, std::string(key) + ": expected a non-negative integer");
    return static_cast<std::size_t>(it->get<long long>());
}

expseries::CriterionOptions criterion_options(const Json& j, const CommonArgs& args) {
    expseries::CriterionOptions opts;
    opts.tol = optional_number(j, "tol", opts.tol);
    opts.grid = optional_index(j, "grid", opts.grid);
    opts.limit_options.radius = optional_number(j, "radius", opts.limit_options.radius);
    opts.limit_options.cluster_tol =
        optional_number(j, "cluster_tol", opts.limit_options.cluster_tol);
    if (args.grid) opts.grid = *args.grid;
    opts.exec = expseries::Exec::Parallel;
    return opts;
}

int run_criterion(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "criterion");
    const expseries::ConvexDomain domain =
        expseries::io::domain_from_json(expseries::io::require_field(in, "domain", "criterion"));
    const expseries::ExponentSequence seq = expseries::io::sequence_from_json(
        expseries::io::require_field(in, "sequence", "criterion"));
    const expseries::NodeSet nodes =
        expseries::io::nodes_from_json(expseries::io::require_field(in, "nodes", "criterion"));
    const expseries::CriterionOptions opts = criterion_options(in, args);

    const expseries::SolvabilityReport report =
        expseries::decide_solvability(domain, seq, nodes, opts);
    const expseries::NecessityReport necessity =
        expseries::necessity_check(domain, seq, nodes, opts);

    Json out;
    out["solvable"] = report.solvable;
    out["witness"] = report.witness ? Json(report.witness->angle()) : Json(nullptr);
    out["P"] = expseries::io::arcs_to_json(report.limit_set);
    out["T"] = expseries::io::arcs_to_json(report.contact_set);
    out["hull_member"] = necessity.limit_point_in_hull;
    out["prefix_estimated"] = report.prefix_estimated;
    emit(out);
    return 0;
}

int run_hull(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "hull");
    const expseries::ConvexDomain domain =
        expseries::io::domain_from_json(expseries::io::require_field(in, "domain", "hull"));
    expseries::DirectionSet directions;
    if (const auto it = in.find("arcs"); it != in.end()) {
        directions = expseries::io::arcs_from_json(*it);
    } else if (const auto seq_it = in.find("sequence"); seq_it != in.end()) {
        expseries::LimitDirectionsOptions lopts;
        lopts.radius = optional_number(in, "radius", lopts.radius);
        lopts.cluster_tol = optional_number(in, "cluster_tol", lopts.cluster_tol);
        directions = expseries::limit_directions(expseries::io::sequence_from_json(*seq_it), lopts);
    } else {
        throw Error(ErrorCode::SchemaError, "hull: needs \"arcs\" or \"sequence\"");
    }
    const std::size_t grid = args.grid ? *args.grid : optional_index(in, "grid", 257);
    const expseries::ConvexDomain hull =
        expseries::s_convex_hull(domain, directions, grid, expseries::Exec::Parallel);

    if (args.csv) {
        std::cout << "theta,support\n";
        const std::size_t n = std::max<std::size_t>(grid, 8);
        for (std::size_t k = 0; k < n; ++k) {
            const double theta =
                -expseries::kPi + 2.0 * expseries::kPi * static_cast<double>(k) / n;
            emit_csv_row({theta, expseries::support_value(hull, expseries::Direction(theta))});
        }
        return 0;
    }
    Json out;
    out["hull"] = expseries::io::domain_to_json(hull);
    out["directions"] = expseries::io::arcs_to_json(directions);
    emit(out);
    return 0;
}

int run_contact(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "contact");
    const expseries::ConvexDomain domain =
        expseries::io::domain_from_json(expseries::io::require_field(in, "domain", "contact"));
    const Complex point = expseries::io::complex_from_json(
        expseries::io::require_field(in, "point", "contact"), "contact");
    const double tol = optional_number(in, "tol", 1e-9);
    const expseries::DirectionSet arcs =
        expseries::contact_directions(domain, point, tol, expseries::Exec::Parallel);

    if (args.csv) {
        if (args.grid) {
            std::cout << "theta,gap\n";
            for (std::size_t k = 0; k < *args.grid; ++k) {
                const double theta =
                    -expseries::kPi + 2.0 * expseries::kPi * static_cast<double>(k) / *args.grid;
                const double gap =
                    expseries::support_value(domain, expseries::Direction(theta)) -
                    expseries::dot2(expseries::direction_normal(theta), point);
                emit_csv_row({theta, gap});
            }
        } else {
            std::cout << "lo,width\n";
            for (const expseries::Arc& a : arcs.arcs()) emit_csv_row({a.lo, a.width});
        }
        return 0;
    }
    Json out;
    out["arcs"] = expseries::io::arcs_to_json(arcs);
    out["total_width"] = arcs.total_width();
    if (args.grid) {
        Json samples = Json::array();
        for (std::size_t k = 0; k < *args.grid; ++k) {
            const double theta =
                -expseries::kPi + 2.0 * expseries::kPi * static_cast<double>(k) / *args.grid;
            Json sample;
            sample["theta"] = theta;
            sample["gap"] = expseries::io::number_to_json(
                expseries::support_value(domain, expseries::Direction(theta)) -
                expseries::dot2(expseries::direction_normal(theta), point));
            samples.push_back(std::move(sample));
        }
        out["samples"] = std::move(samples);
    }
    emit(out);
    return 0;
}

int run_thin(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "thin");
    const expseries::ExponentSequence seq =
        expseries::io::sequence_from_json(expseries::io::require_field(in, "sequence", "thin"));
    const expseries::Angle angle =
        expseries::io::angle_from_json(expseries::io::require_field(in, "angle", "thin"));
    const expseries::ExponentSequence thinned = expseries::thin_sequence(seq, angle);
    if (args.csv) {
        std::cout << "re,im\n";
        for (Complex v : thinned.values()) emit_csv_row({v.real(), v.imag()});
        return 0;
    }
    emit(expseries::io::sequence_to_json(thinned));
    return 0;
}

int run_interpolate(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "interpolate");
    const expseries::ExponentSequence seq = expseries::io::sequence_from_json(
        expseries::io::require_field(in, "sequence", "interpolate"));
    const expseries::NodeSet nodes =
        expseries::io::nodes_from_json(expseries::io::require_field(in, "nodes", "interpolate"));
    const expseries::HermiteData data = expseries::io::data_from_json(
        expseries::io::require_field(in, "data", "interpolate"), nodes);
    const std::size_t m = nodes.total_multiplicity();
    if (seq.available() < m)
        throw Error(ErrorCode::SizeMismatch, "interpolate: fewer exponents than conditions");
    const std::vector<Complex> exponents = seq.materialize(m);
    expseries::SolveOptions opts;
    opts.pivot_tol = optional_number(in, "pivot_tol", opts.pivot_tol);
    const expseries::SolveResult result =
        expseries::solve_finite_section(exponents, nodes, data, opts);

    if (args.csv) {
        std::cout << "re,im\n";
        for (Complex c : result.solution.coefficients) emit_csv_row({c.real(), c.imag()});
        return 0;
    }
    Json coeffs = Json::array();
    for (Complex c : result.solution.coefficients)
        coeffs.push_back(expseries::io::complex_to_json(c));
    Json exps = Json::array();
    for (Complex e : result.solution.exponents) exps.push_back(expseries::io::complex_to_json(e));
    Json out;
    out["coefficients"] = std::move(coeffs);
    out["exponents"] = std::move(exps);
    out["residual_max"] = result.residual_max;
    out["residual_rel"] = result.residual_rel;
    out["pivot_ratio"] = result.pivot_ratio;
    emit(out);
    return 0;
}

int run_gproduct(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "gproduct");
    const expseries::ExponentSequence seq = expseries::io::sequence_from_json(
        expseries::io::require_field(in, "sequence", "gproduct"));
    const std::size_t truncation = optional_index(in, "truncation", 16);
    const expseries::CanonicalProduct product(seq, truncation);

    std::vector<Complex> points;
    if (const auto it = in.find("points"); it != in.end()) {
        if (!it->is_array())
            throw Error(ErrorCode::SchemaError, "gproduct: \"points\" must be an array");
        for (const Json& p : *it)
            points.push_back(expseries::io::complex_from_json(p, "gproduct"));
    }

    if (args.csv) {
        std::cout << "zre,zim,Gre,Gim,tail_bound\n";
        for (Complex z : points) {
            const expseries::GProductValue v = expseries::eval_G(product, z);
            emit_csv_row({z.real(), z.imag(), v.value.real(), v.value.imag(), v.tail_bound});
        }
        return 0;
    }
    Json values = Json::array();
    for (Complex z : points) {
        const expseries::GProductValue v = expseries::eval_G(product, z);
        Json entry;
        entry["z"] = expseries::io::complex_to_json(z);
        entry["G"] = expseries::io::complex_to_json(v.value);
        entry["tail_bound"] = expseries::io::number_to_json(v.tail_bound);
        values.push_back(std::move(entry));
    }
    Json out;
    out["values"] = std::move(values);
    if (const auto it = in.find("condensation_upto"); it != in.end() && !it->is_null()) {
        const std::size_t upto = optional_index(in, "condensation_upto", 0);
        out["condensation_index"] = expseries::io::number_to_json(
            expseries::condensation_index(product, upto, expseries::Exec::Parallel));
    } else {
        out["condensation_index"] = nullptr;
    }
    emit(out);
    return 0;
}

int run_bounds(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "bounds");
    const expseries::ExpPolynomial poly =
        expseries::io::poly_from_json(expseries::io::require_field(in, "poly", "bounds"));
    const expseries::Angle angle =
        expseries::io::angle_from_json(expseries::io::require_field(in, "angle", "bounds"));
    const std::size_t samples = optional_index(in, "samples", 4096);

    double r = 0.0;
    Json certified(nullptr);
    if (const auto it = in.find("r"); it != in.end() && !it->is_null()) {
        r = expseries::io::finite_number(*it, "bounds");
    } else {
        const double r_max = optional_number(in, "r_max", 16.0);
        const expseries::ZeroFreeReport zfr = expseries::zero_free_radius(poly, angle, r_max);
        if (!zfr.certified)
            throw Error(ErrorCode::NotCertified,
                        "bounds: no zero-free radius certified up to r_max");
        r = zfr.radius;
        certified = Json(true);
    }
    const expseries::BoundScanReport report =
        expseries::verify_sector_bound(poly, angle, r, samples, expseries::Exec::Parallel);
    Json out;
    out["r"] = r;
    out["zero_free_certified"] = certified;
    out["ok"] = report.ok;
    out["worst_ratio"] = expseries::io::number_to_json(report.worst_ratio);
    out["worst_log_ratio"] = expseries::io::number_to_json(report.worst_log_ratio);
    out["c3_estimate"] = expseries::io::number_to_json(report.constant_estimate);
    out["worst_point"] = expseries::io::complex_to_json(report.worst_point);
    emit(out);
    return 0;
}

int run_converge(const CommonArgs& args) {
    const Json in = expseries::io::parse_text(read_input(args.input), "converge");
    const expseries::ExponentSequence seq = expseries::io::sequence_from_json(
        expseries::io::require_field(in, "sequence", "converge"));
    const Json& model_json = expseries::io::require_field(in, "model", "converge");
    expseries::CoeffModel model;
    const Json& kind_json = expseries::io::require_field(model_json, "kind", "converge");
    if (!kind_json.is_string())
        throw Error(ErrorCode::SchemaError, "converge: model \"kind\" must be a string");
    const std::string kind = kind_json.get<std::string>();
    if (kind == "geometric")
        model.kind = expseries::CoeffGrowth::Geometric;
    else if (kind == "exp_modulus")
        model.kind = expseries::CoeffGrowth::ExpModulus;
    else if (kind == "exp_sqrt")
        model.kind = expseries::CoeffGrowth::ExpSqrt;
    else
        throw Error(ErrorCode::SchemaError, "converge: unknown coefficient model kind");
    model.amplitude = optional_number(model_json, "amplitude", model.amplitude);
    model.rate = optional_number(model_json, "rate", model.rate);

    const Json& window = expseries::io::require_field(in, "window", "converge");
    const double x0 = expseries::io::finite_number(
        expseries::io::require_field(window, "x0", "converge"), "converge");
    const double x1 = expseries::io::finite_number(
        expseries::io::require_field(window, "x1", "converge"), "converge");
    const double y0 = expseries::io::finite_number(
        expseries::io::require_field(window, "y0", "converge"), "converge");
    const double y1 = expseries::io::finite_number(
        expseries::io::require_field(window, "y1", "converge"), "converge");
    std::size_t nx = optional_index(window, "nx", 41);
    std::size_t ny = optional_index(window, "ny", 41);
    if (args.grid) nx = ny = *args.grid;
    if (nx < 2 || ny < 2)
        throw Error(ErrorCode::SchemaError, "converge: grid must be at least 2x2");

    const std::vector<double> margins =
        expseries::margin_grid(seq, model, x0, x1, y0, y1, nx, ny, expseries::Exec::Parallel);

    if (args.csv) {
        std::cout << "x,y,margin\n";
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double y = y0 + (y1 - y0) * static_cast<double>(iy) / static_cast<double>(ny - 1);
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const double x =
                    x0 + (x1 - x0) * static_cast<double>(ix) / static_cast<double>(nx - 1);
                emit_csv_row({x, y, margins[iy * nx + ix]});
            }
        }
        return 0;
    }
    Json rows = Json::array();
    for (std::size_t iy = 0; iy < ny; ++iy) {
        Json row = Json::array();
        for (std::size_t ix = 0; ix < nx; ++ix)
            row.push_back(expseries::io::number_to_json(margins[iy * nx + ix]));
        rows.push_back(std::move(row));
    }
    Json out;
    out["window"] = Json{{"x0", x0}, {"x1", x1}, {"y0", y0}, {"y1", y1}, {"nx", nx}, {"ny", ny}};
    out["margins"] = std::move(rows);
    emit(out);
    return 0;
}

void apply_environment(const CommonArgs& args) {
    if (const char* seed_text = std::getenv("EXPSERIES_SEED")) {
        char* end = nullptr;
        const unsigned long long seed = std::strtoull(seed_text, &end, 10);
        if (end && *end == '\0') expseries::par::set_sampling_seed(seed);
    }
    if (args.jobs) expseries::par::set_max_threads(*args.jobs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solvability geometry and numerics for sums of exponential series"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* blurb;
        int (*run)(const CommonArgs&);
        bool allow_csv;
        bool allow_grid;
    };
    const std::vector<SubSpec> specs = {
        {"criterion", "Decide interpolation solvability from domain and exponents",
         run_criterion, false, true},
        {"hull", "Intersect supporting half-planes over a direction set", run_hull, true, true},
        {"contact", "Contact directions of a domain at a boundary point", run_contact, true,
         true},
        {"thin", "Extract a sparse modulus-doubling subsequence in a sector", run_thin, true,
         false},
        {"interpolate", "Solve the finite confluent interpolation system", run_interpolate, true,
         false},
        {"gproduct", "Evaluate the canonical product and condensation index", run_gproduct, true,
         false},
        {"bounds", "Certify sector lower bounds for an exponential polynomial", run_bounds,
         false, false},
        {"converge", "Sample the absolute-convergence margin on a grid", run_converge, true,
         true},
    };

    std::vector<CommonArgs> sub_args(specs.size());
    std::vector<const SubSpec*> chosen;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const SubSpec& spec = specs[k];
        CLI::App* sub = app.add_subcommand(spec.name, spec.blurb);
        sub->add_option("--input", sub_args[k].input, "Input JSON file, or - for stdin")
            ->required();
        sub->add_option("--jobs", sub_args[k].jobs, "Worker threads for sampling grids");
        if (spec.allow_csv) sub->add_flag("--csv", sub_args[k].csv, "Emit CSV instead of JSON");
        if (spec.allow_grid) sub->add_option("--grid", sub_args[k].grid, "Sampling grid size");
        sub->callback([&specs, &chosen, k] { chosen.push_back(&specs[k]); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 64;
    }

    const SubSpec* spec = chosen.front();
    const CommonArgs& args = sub_args[spec - specs.data()];
    try {
        apply_environment(args);
        return spec->run(args);
    } catch (const Error& e) {
        Json out;
        out["error"] = e.name();
        out["message"] = e.what();
        emit(out);
        const bool non_certified =
            e.code() == ErrorCode::NearSingular || e.code() == ErrorCode::NotCertified;
        return non_certified ? 3 : 2;
    } catch (const std::exception& e) {
        Json out;
        out["error"] = "Internal";
        out["message"] = e.what();
        emit(out);
        return 2;
    }
}

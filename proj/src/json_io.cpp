#include "expseries/json_io.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "expseries/errors.hpp"

namespace expseries::io {

namespace {

[[noreturn]] void schema_error(const char* where, const std::string& what) {
    throw Error(ErrorCode::SchemaError, std::string(where) + ": " + what);
}

std::size_t require_index(const Json& j, const char* where) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        schema_error(where, "expected a non-negative integer");
    return static_cast<std::size_t>(j.get<long long>());
}

}  // namespace

Json parse_text(const std::string& text, const char* where) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) schema_error(where, "malformed JSON");
    return j;
}

const Json& require_field(const Json& j, const char* key, const char* where) {
    if (!j.is_object()) schema_error(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) schema_error(where, std::string("missing field \"") + key + "\"");
    return *it;
}

double finite_number(const Json& j, const char* where) {
    if (!j.is_number()) schema_error(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema_error(where, "expected a finite number");
    return v;
}

double number_or_inf(const Json& j, const char* where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        schema_error(where, "expected a number or \"inf\"");
    }
    return finite_number(j, where);
}

Json number_to_json(double v) {
    if (std::isfinite(v)) return Json(v);
    return Json(v > 0.0 ? "inf" : "-inf");
}

Complex complex_from_json(const Json& j, const char* where) {
    if (!j.is_array() || j.size() != 2) schema_error(where, "expected [re,im]");
    return {finite_number(j[0], where), finite_number(j[1], where)};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ConvexDomain domain_from_json(const Json& j) {
    const char* where = "domain_from_json";
    if (!j.is_object()) schema_error(where, "expected an object");
    std::vector<HalfPlane> halfplanes;
    std::vector<Disc> discs;
    if (const auto it = j.find("halfplanes"); it != j.end()) {
        if (!it->is_array()) schema_error(where, "\"halfplanes\" must be an array");
        for (const Json& h : *it) {
            HalfPlane hp;
            hp.angle = finite_number(require_field(h, "angle", where), where);
            hp.bound = number_or_inf(require_field(h, "bound", where), where);
            halfplanes.push_back(hp);
        }
    }
    if (const auto it = j.find("discs"); it != j.end()) {
        if (!it->is_array()) schema_error(where, "\"discs\" must be an array");
        for (const Json& d : *it) {
            Disc disc;
            disc.center = {finite_number(require_field(d, "cx", where), where),
                           finite_number(require_field(d, "cy", where), where)};
            disc.radius = finite_number(require_field(d, "r", where), where);
            discs.push_back(disc);
        }
    }
    return ConvexDomain(std::move(halfplanes), std::move(discs));
}

Json domain_to_json(const ConvexDomain& domain) {
    Json halfplanes = Json::array();
    for (const HalfPlane& h : domain.halfplanes()) {
        Json entry;
        entry["angle"] = h.angle;
        entry["bound"] = number_to_json(h.bound);
        halfplanes.push_back(std::move(entry));
    }
    Json discs = Json::array();
    for (const Disc& d : domain.discs()) {
        Json entry;
        entry["cx"] = d.center.real();
        entry["cy"] = d.center.imag();
        entry["r"] = d.radius;
        discs.push_back(std::move(entry));
    }
    Json out;
    out["halfplanes"] = std::move(halfplanes);
    out["discs"] = std::move(discs);
    return out;
}

ExponentSequence sequence_from_json(const Json& j) {
    const char* where = "sequence_from_json";
    if (!j.is_object()) schema_error(where, "expected an object");
    std::vector<Complex> values;
    if (const auto it = j.find("values"); it != j.end()) {
        if (!it->is_array()) schema_error(where, "\"values\" must be an array");
        for (const Json& v : *it) values.push_back(complex_from_json(v, where));
    }
    std::optional<RayTail> tail;
    if (const auto it = j.find("tail"); it != j.end() && !it->is_null()) {
        const Json& t = *it;
        if (require_field(t, "kind", where) != Json("ray"))
            schema_error(where, "tail \"kind\" must be \"ray\"");
        RayTail ray;
        ray.angle = finite_number(require_field(t, "angle", where), where);
        ray.ratio = finite_number(require_field(t, "ratio", where), where);
        ray.start = finite_number(require_field(t, "start", where), where);
        tail = ray;
    }
    return ExponentSequence(std::move(values), tail);
}

Json sequence_to_json(const ExponentSequence& seq) {
    Json values = Json::array();
    for (Complex v : seq.values()) values.push_back(complex_to_json(v));
    Json out;
    out["values"] = std::move(values);
    if (seq.has_tail()) {
        const RayTail& t = *seq.tail();
        Json tail;
        tail["kind"] = "ray";
        tail["angle"] = t.angle;
        tail["ratio"] = t.ratio;
        tail["start"] = t.start;
        out["tail"] = std::move(tail);
    } else {
        out["tail"] = nullptr;
    }
    return out;
}

NodeSet nodes_from_json(const Json& j) {
    const char* where = "nodes_from_json";
    std::vector<Node> nodes;
    const Json& list = require_field(j, "nodes", where);
    if (!list.is_array()) schema_error(where, "\"nodes\" must be an array");
    for (const Json& n : list) {
        Node node;
        node.mu = finite_number(require_field(n, "mu", where), where);
        node.multiplicity = require_index(require_field(n, "m", where), where);
        nodes.push_back(node);
    }
    const double limit = finite_number(require_field(j, "limit", where), where);
    return NodeSet(std::move(nodes), limit);
}

Json nodes_to_json(const NodeSet& nodes) {
    Json list = Json::array();
    for (const Node& n : nodes.nodes()) {
        Json entry;
        entry["mu"] = n.mu;
        entry["m"] = n.multiplicity;
        list.push_back(std::move(entry));
    }
    Json out;
    out["nodes"] = std::move(list);
    out["limit"] = nodes.limit_point();
    return out;
}

HermiteData data_from_json(const Json& j, const NodeSet& nodes) {
    const char* where = "data_from_json";
    const Json& entries = require_field(j, "entries", where);
    if (!entries.is_array()) schema_error(where, "\"entries\" must be an array");
    std::vector<std::vector<Complex>> by_node;
    std::vector<std::vector<bool>> seen;
    for (const Node& n : nodes.nodes()) {
        by_node.emplace_back(n.multiplicity, Complex{0.0, 0.0});
        seen.emplace_back(n.multiplicity, false);
    }
    for (const Json& e : entries) {
        const std::size_t k = require_index(require_field(e, "k", where), where);
        const std::size_t order = require_index(require_field(e, "j", where), where);
        if (k >= by_node.size()) schema_error(where, "entry node index out of range");
        if (order >= by_node[k].size()) schema_error(where, "entry derivative order out of range");
        if (seen[k][order]) schema_error(where, "duplicate entry for a (node, order) pair");
        seen[k][order] = true;
        by_node[k][order] = complex_from_json(require_field(e, "b", where), where);
    }
    for (const auto& flags : seen)
        for (bool s : flags)
            if (!s) schema_error(where, "missing entry for a (node, order) pair");
    return HermiteData(nodes, std::move(by_node));
}

Json data_to_json(const HermiteData& data) {
    Json entries = Json::array();
    const auto& by_node = data.by_node();
    for (std::size_t k = 0; k < by_node.size(); ++k) {
        for (std::size_t order = 0; order < by_node[k].size(); ++order) {
            Json entry;
            entry["k"] = k;
            entry["j"] = order;
            entry["b"] = complex_to_json(by_node[k][order]);
            entries.push_back(std::move(entry));
        }
    }
    Json out;
    out["entries"] = std::move(entries);
    return out;
}

ExpPolynomial poly_from_json(const Json& j) {
    const char* where = "poly_from_json";
    const Json& list = require_field(j, "terms", where);
    if (!list.is_array()) schema_error(where, "\"terms\" must be an array");
    std::vector<ExpTerm> terms;
    for (const Json& t : list) {
        ExpTerm term;
        term.omega = finite_number(require_field(t, "omega", where), where);
        const Json& coeffs = require_field(t, "coeffs", where);
        if (!coeffs.is_array()) schema_error(where, "\"coeffs\" must be an array");
        for (const Json& c : coeffs) term.coeffs.push_back(complex_from_json(c, where));
        terms.push_back(std::move(term));
    }
    return ExpPolynomial(std::move(terms));
}

Json poly_to_json(const ExpPolynomial& p) {
    Json terms = Json::array();
    for (const ExpTerm& t : p.terms()) {
        Json coeffs = Json::array();
        for (Complex c : t.coeffs) coeffs.push_back(complex_to_json(c));
        Json term;
        term["omega"] = t.omega;
        term["coeffs"] = std::move(coeffs);
        terms.push_back(std::move(term));
    }
    Json out;
    out["terms"] = std::move(terms);
    return out;
}

Angle angle_from_json(const Json& j) {
    const char* where = "angle_from_json";
    return Angle(finite_number(require_field(j, "beta", where), where),
                 finite_number(require_field(j, "alpha", where), where));
}

Json angle_to_json(const Angle& angle) {
    Json out;
    out["beta"] = angle.beta();
    out["alpha"] = angle.alpha();
    return out;
}

Json arcs_to_json(const DirectionSet& s) {
    Json arcs = Json::array();
    for (const Arc& a : s.arcs()) {
        Json arc;
        arc["lo"] = a.lo;
        arc["width"] = a.width;
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

DirectionSet arcs_from_json(const Json& j) {
    const char* where = "arcs_from_json";
    if (!j.is_array()) schema_error(where, "expected an array of arcs");
    std::vector<Arc> arcs;
    for (const Json& a : j) {
        Arc arc;
        arc.lo = finite_number(require_field(a, "lo", where), where);
        arc.width = finite_number(require_field(a, "width", where), where);
        if (arc.width < 0.0 || arc.width > 2.0 * kPi)
            schema_error(where, "arc width must lie in [0, 2*pi]");
        arcs.push_back(arc);
    }
    return DirectionSet(std::move(arcs));
}

}  // namespace expseries::io

#pragma once

#include <string>

#include <json.hpp>

#include "expseries/directions.hpp"
#include "expseries/exponents.hpp"
#include "expseries/exppoly.hpp"
#include "expseries/geometry.hpp"
#include "expseries/interpolation.hpp"

namespace expseries::io {

// Ordered so emitted documents keep insertion key order and stay diffable.
using Json = nlohmann::ordered_json;

// Parses a JSON document, converting parse failures into SchemaError.
Json parse_text(const std::string& text, const char* where = "parse_text");

// Fetches a required field of an object; SchemaError names `where`.
const Json& require_field(const Json& j, const char* key, const char* where);

// Scalar helpers.  Non-finite doubles travel as the strings "inf"/"-inf".
double finite_number(const Json& j, const char* where);
double number_or_inf(const Json& j, const char* where);
Json number_to_json(double v);
Complex complex_from_json(const Json& j, const char* where);
Json complex_to_json(Complex z);

// {"halfplanes":[{"angle":a,"bound":b|"inf"}],"discs":[{"cx":x,"cy":y,"r":r}]}
ConvexDomain domain_from_json(const Json& j);
Json domain_to_json(const ConvexDomain& domain);

// {"values":[[re,im],...],"tail":{"kind":"ray","angle":b,"ratio":q,"start":r0}|null}
ExponentSequence sequence_from_json(const Json& j);
Json sequence_to_json(const ExponentSequence& seq);

// {"nodes":[{"mu":m,"m":k}],"limit":l}
NodeSet nodes_from_json(const Json& j);
Json nodes_to_json(const NodeSet& nodes);

// {"entries":[{"k":node_index,"j":derivative_order,"b":[re,im]}]}, 0-based,
// one entry per (node, order) pair.
HermiteData data_from_json(const Json& j, const NodeSet& nodes);
Json data_to_json(const HermiteData& data);

// {"terms":[{"omega":w,"coeffs":[[re,im],...]}]}
ExpPolynomial poly_from_json(const Json& j);
Json poly_to_json(const ExpPolynomial& p);

// {"beta":b,"alpha":a}
Angle angle_from_json(const Json& j);
Json angle_to_json(const Angle& angle);

// [{"lo":l,"width":w},...]
Json arcs_to_json(const DirectionSet& s);
DirectionSet arcs_from_json(const Json& j);

}  // namespace expseries::io

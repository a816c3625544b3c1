#pragma once

#include "npr/certify.hpp"
#include "npr/enumerate.hpp"
#include "npr/extract.hpp"
#include "npr/group.hpp"
#include "npr/lattice.hpp"
#include "npr/structure.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace npr {

/**
 * All machine-readable output is JSON with insertion-ordered keys, so a fixed
 * construction order yields byte-identical documents. Integers that can be
 * arbitrarily large render as decimal strings; rationals as "p/q" in lowest
 * terms; indices and sizes (bounded by container sizes) as plain numbers.
 * Parsers accept both numbers and decimal strings wherever an integer is
 * expected.
 */
using Json = nlohmann::ordered_json;

Json json_int(const Int& v);
Json json_rat(const Rat& v);
Json json_int_vector(const std::vector<Int>& v);
Json json_matrix(const IntMatrix& m);

Int parse_int(const Json& j, const std::string& what);
Rat parse_rat(const Json& j, const std::string& what);
std::size_t parse_size(const Json& j, const std::string& what);
std::vector<Int> parse_int_vector(const Json& j, const std::string& what);
std::vector<std::vector<Int>> parse_int_arrays(const Json& j,
                                               const std::string& what);

/** Rejects non-object input, missing required keys, and unknown keys. */
void check_fields(const Json& obj, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& what);

Json to_json(const GroupSpec& spec);
Json to_json(const Element& e);
Json to_json(const ElementSet& e);
Json to_json(const DualPoint& x);
Json to_json(const RelationLattice& l);
Json to_json(const NprCertificate& c);
Json to_json(const IndependenceCertificate& c);
Json to_json(const InterpolationResult& r);
Json to_json(const KroneckerEstimate& k);
Json to_json(const QuotientMap& q);
Json to_json(const MapSetResult& m);
Json to_json(const ExtractionReport& r);
Json to_json(const CardinalityDiagnostic& d);
Json to_json(const Prop35Decomposition& d);
Json to_json(const DimensionBound& b);
Json to_json(const ComposeResult& r);
Json to_json(const MaxIndependentResult& r);

/** Canonical rendering used by the CLI: two-space indent plus newline. */
std::string dump_json(const Json& j);

}  // namespace npr

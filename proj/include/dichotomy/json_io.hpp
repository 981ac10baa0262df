#pragma once

// JSON forms of complexes, structures, witnesses and results.

#include "dichotomy/classify.hpp"
#include "dichotomy/complex.hpp"
#include "dichotomy/csp.hpp"
#include "dichotomy/homcomplex.hpp"
#include "dichotomy/identities.hpp"
#include "dichotomy/spheres.hpp"
#include "dichotomy/topology.hpp"

#include "json.hpp"

#include <string>

namespace dichotomy {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);

/// {"vertices":[...],"maximal_faces":[[...],...]}
Json to_json(const Complex& c);
/// Strict: the data must pass validate().
Complex complex_from_json(const Json& j);

/// {"domain":[...],"relations":{"R":{"arity":k,"tuples":[[...],...]}}}
Json to_json(const RelStructure& s);
RelStructure structure_from_json(const Json& j);

/// Complex when "maximal_faces" is present, structure when "domain" is.
Carrier carrier_from_json(const Json& j);
Json to_json(const Carrier& c);

/// {"arity":k,"values":[label per argument tuple]}
Json to_json(const WitnessTable& w);
WitnessTable witness_from_json(const Json& j, Carrier carrier);

/// {"betti":[...],"torsion":[[...],...]}
Json to_json(const HomologyResult& h);

Json to_json(const HomComplexResult& h);

Json to_json(const ContractionCertificate& cert);
ContractionCertificate certificate_from_json(const Json& j, const Complex& carrier, const WitnessTable& witness);

/// Loop as a list of vertex labels.
std::vector<int> loop_from_json(const Json& j, const Complex& carrier);

Json to_json(const ClassificationReport& r, const Complex& b);

}  // namespace dichotomy

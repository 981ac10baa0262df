#pragma once

// Named complexes and structures shipped in fixtures/.

#include "dichotomy/complex.hpp"
#include "dichotomy/csp.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dichotomy::fixtures {

/// Six-vertex projective plane with ten triangles.
Complex rp2();
/// Subdivided triangle with vertices b, r, l, p, q: contractible, no Taylor polymorphism.
Complex flap_triangle();
/// Three tetrahedra glued in a ring on a1, a2, b1, b2, c1, c2.
Complex tetra_ring();

/// Domain {1,2,3,4}; unary "1".."4", "WNOT", "WOR".
RelStructure wide_not_or();
/// Domain {0,1}; "NAE" = all triples except 000 and 111.
RelStructure nae();
/// Domain {0,1}; "E" (empty), "N" = {010, 001, 111}, "OR3".
RelStructure controlled_3sat();
/// Domain {0,1}; "ONE_IN_THREE" = {001, 010, 100}.
RelStructure one_in_three_sat();

/// Every fixture complex by file stem ("path0".."path4", "cycle3".."cycle5",
/// "simplex0".."simplex4", "rp2", "flap_triangle", "tetra_ring").
std::vector<std::pair<std::string, Complex>> complexes();
/// Every fixture structure by file stem ("dsat", "wide_not_or", ...).
std::vector<std::pair<std::string, RelStructure>> structures();

}  // namespace dichotomy::fixtures

#pragma once

// Sphere hypercube complexes, the rounding map onto subdivisions, and loop
// contraction certificates.

#include "dichotomy/complex.hpp"
#include "dichotomy/identities.hpp"

#include <string>
#include <vector>

namespace dichotomy {

struct HypercubeMeta {
    int d = 1;
    int n = 3;
    int m = 3;
    /// One representative grid point per vertex: first coordinate in [0, n), others in [0, m].
    std::vector<std::vector<int>> coords;
};

struct Hypercube {
    Complex complex;
    HypercubeMeta meta;

    /// Vertex at a grid point; the first coordinate is taken mod n and layers 0 and m of
    /// each later coordinate are collapsed to the poles.
    int vertex_at(const std::vector<int>& coords) const;
};

/// H^1 = cycle(n); H^d = product(H^{d-1}, path(m)) with layer 0 and layer m each
/// glued to a point, labelled "(*,0)" and "(*,m)".
Hypercube hypercube_complex(int d, int n, int m);

/// Vertex of the subdivision of the unit d-cube approximating a point of {0..2d}^d:
/// the sorted list of compatible 0/1 tuples.
std::vector<std::vector<int>> round_vertex(int d, const std::vector<int>& coords);
/// "{00,01}" style label of a round_vertex result.
std::string cube_face_label(const std::vector<std::vector<int>>& face);

/// Blockwise rounding H^d_{2dn,2dm} -> subdivision(H^d_{n,m}).
SimplicialMap subdivision_approx_map(int d, int n, int m);

struct ContractionCertificate {
    Complex carrier;
    WitnessTable witness;              // cyclic, arity n
    std::vector<int> loop;             // closed walk of length k
    std::vector<int> repeats;          // copies of each loop vertex, summing to n
    std::vector<int> padded;           // length n
    std::vector<std::vector<int>> stages;  // h^0 .. h^{2n}, each of length n
};

/// Contracts a closed walk through the cyclic polymorphism. Requires n >= 3k.
ContractionCertificate contract_loop(const Complex& a, const WitnessTable& c, const std::vector<int>& loop);

struct ContractionCheck {
    bool ok = true;
    std::string violation;
};

ContractionCheck verify_contraction(const ContractionCertificate& cert);

}  // namespace dichotomy

#pragma once

// Bridges between complexes and relational structures.

#include "dichotomy/complex.hpp"
#include "dichotomy/csp.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dichotomy {

struct RealizationMeta {
    Complex source;
    std::vector<std::string> face_symbols;      // F0 .. F{d+1}
    std::map<std::string, int> point_symbols;  // R_<label> -> vertex
};

struct Realization {
    RelStructure structure;
    RealizationMeta meta;
};

std::string face_symbol(int n);
std::string point_symbol(const std::string& vertex_label);

/// Relations F_n (ordered (n+1)-tuples spanning a face, n <= dim+1) and R_x = {x}.
Realization idempotent_realization(const Complex& b);

/// Domain {0,1} with relations "0", "1", "NOT", "3OR".
RelStructure dsat();

/// Instance over the realization signature of b whose homomorphisms are the simplicial
/// maps a -> b extending rho (rho must be defined exactly on alpha_prime).
RelStructure precolored_to_relational(const Complex& a, const std::vector<int>& alpha_prime,
                                      const PartialVertexMap& rho, const Complex& b);

struct PrecoloredInstance {
    Complex a;
    std::vector<int> alpha_prime;
    PartialVertexMap rho;
};

/// nullopt signals the unsatisfiable shortcut (two point relations share an element).
std::optional<PrecoloredInstance> relational_to_precolored(const RelStructure& instance, const Complex& b);

struct HomScStructuresResult {
    Complex complex;
    std::vector<std::vector<int>> maps;  // per vertex, values on alpha
};

/// Hom^SC_alpha for structures: vertices are extendable maps alpha -> B, faces are sets
/// closed under per-element mixing.
HomScStructuresResult hom_sc_structures(const RelStructure& a, const std::vector<int>& alpha, const RelStructure& b);

/// Exhaustive check that every polymorphism of arity <= max_arity is a projection.
/// Throws InputError when more than 10^7 candidate tables would be needed.
bool projections_only_check(const RelStructure& b, int max_arity);

}  // namespace dichotomy

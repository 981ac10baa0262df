#pragma once

// Homomorphism complexes Hom, Hom^SC and their (alpha, rho)-restricted versions.

#include "dichotomy/complex.hpp"
#include "dichotomy/identities.hpp"

#include <vector>

namespace dichotomy {

enum class HomVariant { Hom, HomSC };

struct HomComplexResult {
    Complex complex;
    HomVariant variant = HomVariant::Hom;
    Complex source;
    Complex target;
    std::vector<int> alpha;  // sorted source vertices
    PartialVertexMap rho;
    /// maps[v] = target values on alpha of the restricted map labelling vertex v.
    std::vector<std::vector<int>> maps;
};

/// All simplicial maps a -> b extending rho, as target indices per source vertex, sorted.
std::vector<std::vector<int>> enumerate_homomorphisms(const Complex& a, const Complex& b,
                                                      const PartialVertexMap& rho = {});

/// Restrictions to alpha (sorted) of homomorphisms extending rho, sorted.
std::vector<std::vector<int>> extendable_restrictions(const Complex& a, const std::vector<int>& alpha,
                                                      const PartialVertexMap& rho, const Complex& b);

HomComplexResult hom_complex(const Complex& a, const Complex& b);
HomComplexResult hom_sc_complex(const Complex& a, const Complex& b);
HomComplexResult hom_restricted(const Complex& a, const std::vector<int>& alpha, const PartialVertexMap& rho,
                                const Complex& b);
HomComplexResult hom_sc_restricted(const Complex& a, const std::vector<int>& alpha, const PartialVertexMap& rho,
                                   const Complex& b);

/// "f(a)=x;f(b)=y" in alpha order, "{}" for the empty map.
std::string assignment_label(const Complex& a, const std::vector<int>& alpha, const std::vector<int>& values,
                             const Complex& b);

/// Pointwise lift P(f1..fn)(x) = p(f1(x),...,fn(x)) of a polymorphism of h.target.
/// Throws InternalInconsistency if the lift leaves the vertex set or breaks a face.
WitnessTable lift_polymorphism(const WitnessTable& p, const HomComplexResult& h);

}  // namespace dichotomy

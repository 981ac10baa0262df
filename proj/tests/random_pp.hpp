#pragma once

// Random pp-formulas over a signature, for property tests.

#include "dichotomy/csp.hpp"

#include <random>
#include <string>
#include <vector>

namespace oracle {

// Conjunction of atoms and equalities over free variables x0..x{free-1} plus up to two
// existentially bound variables.
inline dichotomy::PPFormula random_pp(std::mt19937& rng, const std::map<std::string, int>& signature, int free)
{
    using dichotomy::PPFormula;
    std::vector<std::string> names;
    for (const auto& [n, a] : signature)
        names.push_back(n);
    std::uniform_int_distribution<int> bound_count(0, 2), parts(1, 4), coin(0, 5);
    const int bound = bound_count(rng);
    std::vector<std::string> vars;
    for (int i = 0; i < free; ++i)
        vars.push_back("x" + std::to_string(i));
    for (int i = 0; i < bound; ++i)
        vars.push_back("y" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> pick_var(0, vars.size() - 1), pick_rel(0, names.size() - 1);

    std::vector<PPFormula> conj;
    const int k = parts(rng);
    for (int i = 0; i < k; ++i) {
        if (coin(rng) == 0) {
            conj.push_back(PPFormula::eq(vars[pick_var(rng)], vars[pick_var(rng)]));
            continue;
        }
        const auto& rel = names[pick_rel(rng)];
        std::vector<std::string> args;
        for (int j = 0; j < signature.at(rel); ++j)
            args.push_back(vars[pick_var(rng)]);
        conj.push_back(PPFormula::atom(rel, args));
    }
    PPFormula phi = PPFormula::conj(conj);
    for (int i = bound - 1; i >= 0; --i)
        phi = PPFormula::exists("y" + std::to_string(i), phi);
    return phi;
}

inline std::vector<std::string> free_names(int free)
{
    std::vector<std::string> out;
    for (int i = 0; i < free; ++i)
        out.push_back("x" + std::to_string(i));
    return out;
}

}  // namespace oracle

#pragma once

// Finite-domain constraint solver, relational structures and pp-formulas.

#include "dichotomy/complex.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dichotomy {

// ---------------------------------------------------------------------------
// Low-level constraint network. Domains are bitmasks, so at most 64 values.

constexpr int max_domain_size = 64;

enum class SolveMode { First, All, Count };

class Csp {
public:
    explicit Csp(int domain_size);

    int domain_size() const { return domain_size_; }
    int num_vars() const { return static_cast<int>(initial_.size()); }

    int add_var(std::uint64_t mask);
    int add_var() { return add_var(full_mask()); }
    void restrict(int var, std::uint64_t mask) { initial_[var] &= mask; }
    void pin(int var, int value) { initial_[var] &= std::uint64_t{1} << value; }
    std::uint64_t full_mask() const;

    /// Registers a table of allowed tuples; returns its id for add_table_constraint.
    int add_table(int arity, std::vector<std::vector<int>> tuples);
    /// Scope entries may repeat; tuples disagreeing on repeated positions are dropped.
    void add_table_constraint(std::vector<int> scope, int table);
    /// Registers a family of allowed value sets (maximal faces).
    int add_face_family(const std::vector<Face>& maximal_faces);
    /// The set of values taken by `scope` must lie inside one member of the family.
    void add_face_constraint(std::vector<int> scope, int family);
    /// Makes the network unsatisfiable.
    void add_contradiction() { contradiction_ = true; }

    struct Constraint {
        bool face = false;
        std::vector<int> scope;
        int data = 0;
    };

    const std::vector<std::uint64_t>& initial_domains() const { return initial_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<std::vector<std::vector<int>>>& tables() const { return tables_; }
    const std::vector<std::vector<std::uint64_t>>& face_families() const { return families_; }
    bool contradiction() const { return contradiction_; }

private:
    int domain_size_;
    std::vector<std::uint64_t> initial_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<std::vector<int>>> tables_;
    std::vector<int> table_arity_;
    std::vector<std::vector<std::uint64_t>> families_;
    std::map<std::pair<int, std::vector<int>>, int> compressed_;
    bool contradiction_ = false;
};

struct SolveOptions {
    SolveMode mode = SolveMode::First;
    /// 0 means unlimited.
    std::uint64_t node_budget = 0;
    /// When nonempty, solutions are the distinct projections onto these variables
    /// that extend to full solutions.
    std::vector<int> projection;
    int jobs = 1;
};

struct SolveResult {
    /// False when the node budget stopped the search before it finished.
    bool complete = true;
    std::vector<std::vector<int>> solutions;
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;

    bool found() const { return count > 0; }
};

/// Backtracking with generalized arc consistency and MRV ordering (ties by index).
/// All-mode solutions are sorted lexicographically.
SolveResult solve_csp(const Csp& csp, const SolveOptions& options = {});

/// Values left after propagating the initial network (empty vector when a domain wipes out).
std::vector<std::uint64_t> propagate_initial(const Csp& csp);

// ---------------------------------------------------------------------------
// Relational structures.

struct Relation {
    int arity = 1;
    std::vector<std::vector<int>> tuples;
};

struct RelStructure {
    std::vector<std::string> domain;
    std::map<std::string, Relation> relations;

    int size() const { return static_cast<int>(domain.size()); }
    std::optional<int> find(std::string_view label) const;
    int index(std::string_view label) const;
    /// Sorts and deduplicates tuples, checks arities and entry ranges.
    void normalize();
    std::map<std::string, int> signature() const;
};

/// Partial map from instance elements to template elements.
using Precoloring = std::map<int, int>;

struct StructureSolveOptions {
    SolveMode mode = SolveMode::First;
    std::uint64_t node_budget = 0;
    int jobs = 1;
};

/// Network with one variable per instance element and one table constraint per tuple.
Csp structure_network(const RelStructure& instance, const RelStructure& templ, const Precoloring& pre = {});

/// Homomorphisms instance -> templ extending `pre`.
SolveResult solve(const RelStructure& instance, const RelStructure& templ, const Precoloring& pre = {},
                  const StructureSolveOptions& options = {});

// ---------------------------------------------------------------------------
// Primitive positive formulas.

struct PPFormula {
    enum class Kind { Exists, And, Eq, Atom, True, False };
    Kind kind = Kind::True;
    std::string name;                // bound variable (Exists) or relation symbol (Atom)
    std::vector<std::string> vars;   // Eq: two variables; Atom: arguments
    std::vector<PPFormula> children; // Exists: one; And: any number

    static PPFormula truth() { return {}; }
    static PPFormula falsity();
    static PPFormula atom(std::string symbol, std::vector<std::string> args);
    static PPFormula eq(std::string a, std::string b);
    static PPFormula conj(std::vector<PPFormula> parts);
    static PPFormula exists(std::string var, PPFormula body);

    friend bool operator==(const PPFormula&, const PPFormula&) = default;
};

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const PPFormula& phi);
std::string to_sexpr(const PPFormula& phi);
PPFormula parse_pp_formula(std::string_view text);

/// Solution set over the free variables, sorted. `free_order` overrides the default
/// first-occurrence order and may list variables the formula does not mention.
std::vector<std::vector<int>> eval_pp_formula(const PPFormula& phi, const RelStructure& templ,
                                              const std::vector<std::string>& free_order = {});

/// Formula defining a relation symbol: params are its free variables in argument order.
struct PPDefinition {
    std::vector<std::string> params;
    PPFormula body;
};

/// Replaces each atom R(args) by defs[R] with params bound to args. Bound variables of
/// the inserted bodies are renamed apart. Atoms with symbols not in defs are kept.
PPFormula pp_substitute(const PPFormula& theta, const std::map<std::string, PPDefinition>& defs);

}  // namespace dichotomy

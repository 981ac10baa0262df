#pragma once

// Height-1 identity systems, witness tables and polymorphism search.

#include "dichotomy/complex.hpp"
#include "dichotomy/csp.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace dichotomy {

/// lhs = rhs, both sides applications of the system's symbol to variable indices.
/// When rhs_var >= 0 the right side is that bare variable and rhs is empty.
struct Identity {
    std::vector<int> lhs;
    std::vector<int> rhs;
    int rhs_var = -1;

    friend bool operator==(const Identity&, const Identity&) = default;
};

struct IdentitySystem {
    std::string symbol = "f";
    int arity = 1;
    std::vector<std::string> variables;  // in order of first appearance
    std::vector<Identity> identities;
    bool idempotent = false;

    int num_vars() const { return static_cast<int>(variables.size()); }
    friend bool operator==(const IdentitySystem&, const IdentitySystem&) = default;
};

/// DSL: optional "idempotent;" then identities separated by ';' or newlines.
/// Lines starting with '#' are comments. Errors carry line:column.
IdentitySystem parse_identity_system(std::string_view text);
std::string to_dsl(const IdentitySystem& system);

enum class Builtin { Majority, Cyclic, FullySymmetric, NearUnanimity, Siggers6, Siggers4 };

IdentitySystem builtin_system(Builtin which, std::optional<int> n = std::nullopt);
/// Parses "majority", "cyclic:3", "fully_symmetric:2", "near_unanimity:4", "siggers6", "siggers4".
IdentitySystem builtin_system(std::string_view spec);

using Carrier = std::variant<Complex, RelStructure>;

int carrier_size(const Carrier& c);
std::string carrier_label(const Carrier& c, int v);

/// Full value table of a k-ary operation; argument tuples are indexed with the first
/// argument most significant.
struct WitnessTable {
    Carrier carrier;
    int arity = 1;
    std::vector<int> values;

    int size() const { return carrier_size(carrier); }
    std::size_t index(std::span<const int> args) const;
    int at(std::span<const int> args) const { return values.at(index(args)); }
};

struct Verification {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Table maps products of faces to faces (complexes) or preserves every relation.
Verification verify_polymorphism(const WitnessTable& w);
/// Polymorphism, every identity instance, and idempotency when the system demands it.
Verification verify_witness(const WitnessTable& w, const IdentitySystem& system);

struct SearchOptions {
    std::uint64_t node_budget = 0;
    int jobs = 1;
};

struct SearchOutcome {
    std::optional<WitnessTable> witness;
    /// True when absence of a witness is proven (search finished without budget cut).
    bool exhausted = false;
    std::uint64_t nodes = 0;
};

SearchOutcome search_witness(const Complex& carrier, const IdentitySystem& system, const SearchOptions& options = {});
SearchOutcome search_witness(const RelStructure& carrier, const IdentitySystem& system,
                             const SearchOptions& options = {});

/// Identification of argument tuples forced by a system over a domain of size n.
struct TupleClasses {
    std::vector<int> class_of;       // per tuple index
    std::vector<int> representative; // smallest tuple index per class
    std::vector<int> pinned;         // per class: forced value or -1
    bool consistent = true;          // false when two pins conflict
};

TupleClasses tuple_classes(int n, const IdentitySystem& system);

struct IndicatorInstance {
    RelStructure instance;
    Precoloring pre;
    TupleClasses classes;
};

/// CSP instance whose homomorphisms to `templ` extending `pre` are the witness tables.
/// When the identities force conflicting values, `classes.consistent` is false.
IndicatorInstance indicator_instance(const RelStructure& templ, const IdentitySystem& system);

/// 6-ary Siggers operation built from a cyclic one of arity n >= 2.
WitnessTable siggers_from_cyclic(const WitnessTable& c);

/// Table of a given function of the arguments.
template <class F>
WitnessTable make_table(Carrier carrier, int arity, F f)
{
    WitnessTable w{std::move(carrier), arity, {}};
    const int n = w.size();
    std::size_t total = 1;
    for (int i = 0; i < arity; ++i)
        total *= static_cast<std::size_t>(n);
    w.values.resize(total);
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int i = arity - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        w.values[idx] = f(std::as_const(args));
    }
    return w;
}

}  // namespace dichotomy

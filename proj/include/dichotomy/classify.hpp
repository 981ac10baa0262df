#pragma once

// Places a complex on one side of the contractible/universal dichotomy.

#include "dichotomy/complex.hpp"
#include "dichotomy/identities.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dichotomy {

enum class Verdict { ContractibleSide, UniversalSide };

std::string to_string(Verdict v);

struct HomologyObstruction {
    std::vector<int> component;  // vertex indices
    int dimension = 0;
    std::string group;           // e.g. "Z", "Z/2"
};

/// A 4-ary Siggers search that finished without a witness.
struct ExhaustionRecord {
    std::string system;
    std::uint64_t nodes = 0;
};

struct CrossCheck {
    std::string name;
    bool pass = true;
};

struct ClassificationReport {
    Verdict verdict = Verdict::UniversalSide;
    std::optional<WitnessTable> witness;
    std::string witness_system;  // builtin name of the system the witness satisfies
    std::optional<HomologyObstruction> obstruction;
    std::optional<ExhaustionRecord> exhaustion;
    std::vector<CrossCheck> cross_checks;
};

struct ClassifyOptions {
    /// Largest vertex count for which searches are attempted.
    int vertex_bound = 6;
    /// Run the searches even when homology already refutes.
    bool force_search = false;
    /// Node budget of each fast probe (majority, cyclic 2, cyclic 3).
    std::uint64_t probe_budget = 200000;
    int jobs = 1;
};

/// Homology obstruction first, then fast probes, then the exhaustive 4-ary Siggers
/// search. Throws InputError when a search is needed on more than vertex_bound
/// vertices, InternalInconsistency when a witness coexists with an obstruction.
ClassificationReport classify(const Complex& b, const ClassifyOptions& options = {});

}  // namespace dichotomy

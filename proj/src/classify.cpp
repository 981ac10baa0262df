#include "dichotomy/classify.hpp"

#include "dichotomy/topology.hpp"

namespace dichotomy {

std::string to_string(Verdict v)
{
    return v == Verdict::ContractibleSide ? "CONTRACTIBLE_SIDE" : "UNIVERSAL_SIDE";
}

ClassificationReport classify(const Complex& b, const ClassifyOptions& options)
{
    ClassificationReport report;

    for (const auto& comp : component_contractibility(b)) {
        if (comp.verdict != Contractibility::NotContractible)
            continue;
        report.obstruction = HomologyObstruction{comp.vertices, comp.obstruction_dimension, comp.obstruction_group};
        break;
    }
    if (report.obstruction && !options.force_search) {
        report.verdict = Verdict::UniversalSide;
        return report;
    }

    if (b.size() > options.vertex_bound)
        throw InputError("complex has " + std::to_string(b.size()) + " vertices, above the search bound of " +
                         std::to_string(options.vertex_bound));

    for (const char* name : {"majority", "cyclic:2", "cyclic:3"}) {
        SearchOptions so;
        so.node_budget = options.probe_budget;
        so.jobs = options.jobs;
        auto found = search_witness(b, builtin_system(name), so);
        if (found.witness) {
            report.witness = std::move(found.witness);
            report.witness_system = name;
            break;
        }
    }

    std::optional<bool> siggers;
    if (!report.witness || options.force_search) {
        SearchOptions so;
        so.jobs = options.jobs;
        auto found = search_witness(b, builtin_system(Builtin::Siggers4), so);
        if (!found.exhausted && !found.witness)
            throw InternalInconsistency("unbudgeted Siggers search stopped early");
        siggers = found.witness.has_value();
        if (found.witness && !report.witness) {
            report.witness = std::move(found.witness);
            report.witness_system = "siggers4";
        }
        if (!found.witness)
            report.exhaustion = ExhaustionRecord{"siggers4", found.nodes};
    }

    if (report.witness && report.obstruction)
        throw InternalInconsistency("witness for " + report.witness_system + " found on a complex with nonzero H_" +
                                    std::to_string(report.obstruction->dimension) + " = " +
                                    report.obstruction->group);

    if (report.witness) {
        report.verdict = Verdict::ContractibleSide;
        const bool ok = verify_witness(*report.witness, builtin_system(report.witness_system)).ok;
        report.cross_checks.push_back({"witness verifies", ok});
        if (!ok)
            throw InternalInconsistency("search returned a witness that fails verification");
        if (siggers && report.witness_system != "siggers4")
            report.cross_checks.push_back({"probe agrees with siggers4", *siggers});
    }
    else {
        report.verdict = Verdict::UniversalSide;
    }
    if (report.obstruction && siggers)
        report.cross_checks.push_back({"homology agrees with siggers4", !*siggers});
    if (report.witness && !siggers.value_or(true))
        throw InternalInconsistency("probe witness found but 4-ary Siggers search is exhausted");
    return report;
}

}  // namespace dichotomy

#include "dichotomy/cli.hpp"

#include "dichotomy/classify.hpp"
#include "dichotomy/fixtures.hpp"
#include "dichotomy/homcomplex.hpp"
#include "dichotomy/json_io.hpp"
#include "dichotomy/spheres.hpp"
#include "dichotomy/structures.hpp"
#include "dichotomy/topology.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dichotomy {

namespace {

// Negative decisions (no witness, unsatisfiable) leave the command through this.
struct Negative {
    std::string message;
};

std::string word(const HomComplexResult& h, int v)
{
    std::string w;
    for (int x : h.maps[v])
        w += h.target.label(x);
    return w;
}

// Maximal faces as sorted word lists, one per line.
std::string face_lines(const HomComplexResult& h)
{
    std::vector<std::string> lines;
    for (const auto& f : h.complex.maximal_faces()) {
        std::vector<std::string> ws;
        for (int v : f)
            ws.push_back(word(h, v));
        std::sort(ws.begin(), ws.end());
        std::string s = "{";
        for (std::size_t i = 0; i < ws.size(); ++i)
            s += (i ? "," : "") + ws[i];
        lines.push_back(s + "}");
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines)
        out += l + "\n";
    return out;
}

std::string rounding_grid_d2()
{
    std::string out;
    for (int r = 0; r <= 4; ++r) {
        for (int c = 0; c <= 4; ++c)
            out += (c ? " " : "") + cube_face_label(round_vertex(2, {r, c}));
        out += "\n";
    }
    return out;
}

std::string rounding_counts_d3()
{
    auto nailed = [](int x) { return x == 0 || x == 3 || x == 6; };
    std::string out;
    for (int layer = 0; layer <= 3; ++layer) {
        out += "layer " + std::to_string(layer) + "\n";
        for (int r = 0; r <= 6; ++r) {
            for (int c = 0; c <= 6; ++c) {
                const auto n = std::to_string(round_vertex(3, {r, c, layer}).size());
                out += (c ? " " : "") + (nailed(r) && nailed(c) && nailed(layer) ? "(" + n + ")" : n);
            }
            out += "\n";
        }
    }
    return out;
}

std::vector<int> parse_vertex_list(const Complex& a, const std::string& text)
{
    std::vector<int> out;
    if (text == "all") {
        for (int v = 0; v < a.size(); ++v)
            out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(a.index(item));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PartialVertexMap parse_rho(const Complex& a, const Complex& b, const std::string& text)
{
    PartialVertexMap rho;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("rho entries look like vertex=value, got " + item);
        const int v = a.index(item.substr(0, eq));
        const int x = b.index(item.substr(eq + 1));
        if (!rho.emplace(v, x).second)
            throw InputError("rho assigns vertex " + item.substr(0, eq) + " twice");
    }
    return rho;
}

IdentitySystem load_system(const std::string& spec)
{
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in)
            throw InputError("cannot open " + spec.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_identity_system(ss.str());
    }
    return builtin_system(spec);
}

int default_jobs()
{
    if (const char* env = std::getenv("SD_JOBS")) {
        try {
            return std::max(1, std::stoi(env));
        }
        catch (const std::exception&) {
            throw InputError(std::string("SD_JOBS is not a number: ") + env);
        }
    }
    return 1;
}

}  // namespace

std::string default_golden_dir()
{
    return std::string(DICHOTOMY_SOURCE_DIR) + "/fixtures/goldens";
}

std::map<std::string, std::string> golden_files()
{
    std::map<std::string, std::string> out;

    const Complex edge = Complex::from_faces({"1", "2"}, {{"1", "2"}});
    const Complex xyz = Complex::from_faces({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    out["example1_hom.txt"] = face_lines(hom_complex(edge, xyz));
    out["example1_homsc.txt"] = face_lines(hom_sc_complex(edge, xyz));

    const Complex a = path(2);
    const Complex b = cycle(5);
    const PartialVertexMap rho{{a.index("0"), b.index("1")}};
    const std::vector<int> last{a.index("2")};
    const std::vector<int> all{0, 1, 2};
    out["example2_hom_alpha.txt"] = face_lines(hom_restricted(a, last, rho, b));
    out["example2_hom_full.txt"] = face_lines(hom_restricted(a, all, rho, b));
    out["example2_homsc_alpha.txt"] = face_lines(hom_sc_restricted(a, last, rho, b));
    out["example2_homsc_full.txt"] = face_lines(hom_sc_restricted(a, all, rho, b));
    std::string homs;
    for (const auto& f : enumerate_homomorphisms(a, b, rho)) {
        for (int x : f)
            homs += b.label(x);
        homs += "\n";
    }
    out["example2_homomorphisms.txt"] = homs;

    out["rounding_d2.txt"] = rounding_grid_d2();
    out["rounding_d3_counts.txt"] = rounding_counts_d3();
    out["dsat.json"] = to_json(dsat()).dump(2) + "\n";
    out["rp2_homology.json"] = to_json(integral_homology(fixtures::rp2())).dump() + "\n";
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Polymorphisms, Hom complexes and the contractible/universal dichotomy for simplicial complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads for searches (default: SD_JOBS or 1)")->check(CLI::PositiveNumber);

    std::string file_a, file_b, file_c;
    std::string alpha_text, rho_text, system_spec;
    int bound = 6;
    bool force = false;
    std::uint64_t budget = 0;
    int d = 2, n = 3, m = 3;
    std::string golden_dir = default_golden_dir();
    bool update = false;

    auto* classify_cmd = app.add_subcommand("classify", "place a complex on one side of the dichotomy");
    classify_cmd->add_option("complex", file_a, "complex JSON")->required();
    classify_cmd->add_option("--bound", bound, "largest vertex count searched");
    classify_cmd->add_flag("--force-search", force, "search even when homology refutes");

    CLI::App* hom_cmds[2];
    for (int i = 0; i < 2; ++i) {
        auto* cmd = app.add_subcommand(i == 0 ? "hom" : "homsc", i == 0 ? "Hom complex" : "Hom^SC complex");
        cmd->add_option("source", file_a, "source complex JSON")->required();
        cmd->add_option("target", file_b, "target complex JSON")->required();
        cmd->add_option("--alpha", alpha_text, "comma separated source vertices, or 'all'");
        cmd->add_option("--rho", rho_text, "precoloring, e.g. 0=1,2=3");
        hom_cmds[i] = cmd;
    }

    auto* homology_cmd = app.add_subcommand("homology", "integral homology of a complex");
    homology_cmd->add_option("complex", file_a, "complex JSON")->required();

    auto* search_cmd = app.add_subcommand("search", "search a witness for an identity system");
    search_cmd->add_option("--system", system_spec, "builtin NAME[:N] or @file with identities")->required();
    search_cmd->add_option("carrier", file_a, "complex or structure JSON")->required();
    search_cmd->add_option("--budget", budget, "node budget (0 = unlimited)");

    auto* reduce_cmd = app.add_subcommand("reduce", "complex <-> relational CSP reductions");
    reduce_cmd->require_subcommand(1);
    auto* to_rel = reduce_cmd->add_subcommand("to-relational", "precolored complex instance to a structure");
    to_rel->add_option("source", file_a, "source complex JSON")->required();
    to_rel->add_option("target", file_b, "target complex JSON")->required();
    to_rel->add_option("--rho", rho_text, "precoloring, e.g. 0=1,2=3");
    auto* to_pre = reduce_cmd->add_subcommand("to-precolored", "structure instance to a precolored complex");
    to_pre->add_option("instance", file_a, "structure JSON over the realization signature")->required();
    to_pre->add_option("target", file_b, "target complex JSON")->required();

    auto* contract_cmd = app.add_subcommand("contract-loop", "contract a loop through a cyclic polymorphism");
    contract_cmd->add_option("carrier", file_a, "complex JSON")->required();
    contract_cmd->add_option("witness", file_b, "cyclic witness JSON")->required();
    contract_cmd->add_option("loop", file_c, "loop JSON (list of vertex labels)")->required();

    auto* cube_cmd = app.add_subcommand("hypercube", "sphere hypercube complex H^d_{n,m}");
    cube_cmd->add_option("-d", d, "dimension")->check(CLI::PositiveNumber);
    cube_cmd->add_option("-n", n, "cycle length");
    cube_cmd->add_option("-m", m, "path length");

    auto* examples_cmd = app.add_subcommand("examples", "regenerate the worked examples and diff against goldens");
    examples_cmd->add_option("--golden-dir", golden_dir, "directory of golden files");
    examples_cmd->add_flag("--update", update, "rewrite the golden files");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (jobs == 0)
            jobs = default_jobs();

        if (classify_cmd->parsed()) {
            const Complex b = complex_from_json(read_json_file(file_a));
            ClassifyOptions opt;
            opt.vertex_bound = bound;
            opt.force_search = force;
            opt.jobs = jobs;
            out << to_json(classify(b, opt), b).dump(2) << "\n";
        }
        else if (hom_cmds[0]->parsed() || hom_cmds[1]->parsed()) {
            const bool sc = hom_cmds[1]->parsed();
            const Complex a = complex_from_json(read_json_file(file_a));
            const Complex b = complex_from_json(read_json_file(file_b));
            HomComplexResult h;
            if (alpha_text.empty() && rho_text.empty()) {
                h = sc ? hom_sc_complex(a, b) : hom_complex(a, b);
            }
            else {
                const auto alpha = parse_vertex_list(a, alpha_text.empty() ? "all" : alpha_text);
                const auto rho = parse_rho(a, b, rho_text);
                h = sc ? hom_sc_restricted(a, alpha, rho, b) : hom_restricted(a, alpha, rho, b);
            }
            out << to_json(h).dump(2) << "\n";
        }
        else if (homology_cmd->parsed()) {
            out << to_json(integral_homology(complex_from_json(read_json_file(file_a)))).dump() << "\n";
        }
        else if (search_cmd->parsed()) {
            const IdentitySystem system = load_system(system_spec);
            const Carrier carrier = carrier_from_json(read_json_file(file_a));
            SearchOptions opt;
            opt.node_budget = budget;
            opt.jobs = jobs;
            const SearchOutcome found = std::visit([&](const auto& c) { return search_witness(c, system, opt); }, carrier);
            if (!found.witness)
                throw Negative{found.exhausted ? "no witness (exhausted)" : "no witness (budget reached)"};
            if (!verify_witness(*found.witness, system).ok)
                throw InternalInconsistency("search returned a witness that fails verification");
            out << to_json(*found.witness).dump() << "\n";
        }
        else if (to_rel->parsed()) {
            const Complex a = complex_from_json(read_json_file(file_a));
            const Complex b = complex_from_json(read_json_file(file_b));
            const auto rho = parse_rho(a, b, rho_text);
            std::vector<int> alpha_prime;
            for (const auto& [v, x] : rho)
                alpha_prime.push_back(v);
            out << to_json(precolored_to_relational(a, alpha_prime, rho, b)).dump(2) << "\n";
        }
        else if (to_pre->parsed()) {
            const RelStructure inst = structure_from_json(read_json_file(file_a));
            const Complex b = complex_from_json(read_json_file(file_b));
            const auto pre = relational_to_precolored(inst, b);
            if (!pre)
                throw Negative{"UNSAT_SHORTCUT: an element lies in two point relations"};
            Json rho = Json::object();
            for (const auto& [v, x] : pre->rho)
                rho[pre->a.label(v)] = b.label(x);
            out << Json{{"complex", to_json(pre->a)}, {"rho", std::move(rho)}}.dump(2) << "\n";
        }
        else if (contract_cmd->parsed()) {
            const Complex a = complex_from_json(read_json_file(file_a));
            const WitnessTable c = witness_from_json(read_json_file(file_b), a);
            const auto loop = loop_from_json(read_json_file(file_c), a);
            out << to_json(contract_loop(a, c, loop)).dump() << "\n";
        }
        else if (cube_cmd->parsed()) {
            out << to_json(hypercube_complex(d, n, m).complex).dump() << "\n";
        }
        else if (examples_cmd->parsed()) {
            int diffs = 0;
            for (const auto& [name, text] : golden_files()) {
                const auto path = std::filesystem::path(golden_dir) / name;
                if (update) {
                    std::ofstream(path) << text;
                    out << "wrote " << name << "\n";
                    continue;
                }
                std::ifstream in(path);
                std::stringstream ss;
                if (in)
                    ss << in.rdbuf();
                const bool same = in && ss.str() == text;
                diffs += !same;
                out << (same ? "ok   " : (in ? "DIFF " : "MISSING ")) << name << "\n";
            }
            if (diffs)
                throw Negative{std::to_string(diffs) + " golden file(s) differ"};
        }
        return 0;
    }
    catch (const Negative& e) {
        out << e.message << "\n";
        return 1;
    }
    catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace dichotomy

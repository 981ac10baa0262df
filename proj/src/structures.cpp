#include "dichotomy/structures.hpp"

#include "dichotomy/detail/maximal_sets.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dichotomy {

namespace {

// All ordered `len`-tuples with entries in some maximal face.
std::vector<std::vector<int>> face_tuples(const Complex& c, int len)
{
    std::set<std::vector<int>> out;
    for (const auto& f : c.maximal_faces()) {
        const int m = static_cast<int>(f.size());
        std::vector<int> pos(static_cast<std::size_t>(len), 0);
        while (true) {
            std::vector<int> t(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i)
                t[i] = f[pos[i]];
            out.insert(std::move(t));
            int i = len - 1;
            while (i >= 0 && ++pos[i] == m) {
                pos[i] = 0;
                --i;
            }
            if (i < 0)
                break;
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

std::string face_symbol(int n)
{
    return "F" + std::to_string(n);
}

std::string point_symbol(const std::string& vertex_label)
{
    return "R_" + vertex_label;
}

Realization idempotent_realization(const Complex& b)
{
    Realization r;
    r.meta.source = b;
    r.structure.domain = b.labels();
    if (b.empty())
        return r;
    for (int n = 0; n <= b.dimension() + 1; ++n) {
        const std::string sym = face_symbol(n);
        r.meta.face_symbols.push_back(sym);
        r.structure.relations[sym] = Relation{n + 1, face_tuples(b, n + 1)};
    }
    for (int v = 0; v < b.size(); ++v) {
        const std::string sym = point_symbol(b.label(v));
        r.meta.point_symbols[sym] = v;
        r.structure.relations[sym] = Relation{1, {{v}}};
    }
    return r;
}

RelStructure dsat()
{
    RelStructure s;
    s.domain = {"0", "1"};
    s.relations["0"] = Relation{1, {{0}}};
    s.relations["1"] = Relation{1, {{1}}};
    s.relations["NOT"] = Relation{2, {{0, 1}, {1, 0}}};
    Relation three{3, {}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                if (x || y || z)
                    three.tuples.push_back({x, y, z});
    s.relations["3OR"] = three;
    return s;
}

RelStructure precolored_to_relational(const Complex& a, const std::vector<int>& alpha_prime,
                                      const PartialVertexMap& rho, const Complex& b)
{
    std::set<int> domain(alpha_prime.begin(), alpha_prime.end());
    for (const auto& [v, x] : rho) {
        if (!domain.count(v))
            throw InputError("rho is defined outside alpha_prime");
        if (x < 0 || x >= b.size())
            throw InputError("rho value outside the target complex");
    }
    for (int v : domain) {
        if (v < 0 || v >= a.size())
            throw InputError("alpha_prime is not a subset of the source vertices");
        if (!rho.count(v))
            throw InputError("rho is not defined on vertex " + a.label(v));
    }
    RelStructure s;
    s.domain = a.labels();
    for (int n = 0; n <= b.dimension() + 1; ++n)
        s.relations[face_symbol(n)] = Relation{n + 1, face_tuples(a, n + 1)};
    for (int x = 0; x < b.size(); ++x)
        s.relations[point_symbol(b.label(x))] = Relation{1, {}};
    for (const auto& [v, x] : rho)
        s.relations[point_symbol(b.label(x))].tuples.push_back({v});
    s.normalize();
    return s;
}

std::optional<PrecoloredInstance> relational_to_precolored(const RelStructure& instance, const Complex& b)
{
    const auto realization = idempotent_realization(b);
    if (instance.signature() != realization.structure.signature())
        throw InputError("instance signature differs from the realization signature");
    PrecoloredInstance out;
    for (const auto& [sym, x] : realization.meta.point_symbols) {
        for (const auto& t : instance.relations.at(sym).tuples) {
            auto [it, inserted] = out.rho.emplace(t[0], x);
            if (!inserted && it->second != x)
                return std::nullopt;
        }
    }
    std::vector<Face> faces;
    for (const auto& sym : realization.meta.face_symbols)
        for (const auto& t : instance.relations.at(sym).tuples)
            faces.push_back(t);
    // Complex orders vertices by label, so element indices are remapped below.
    auto a = Complex::from_index_faces(instance.domain, std::move(faces));
    PartialVertexMap rho;
    std::vector<int> alpha;
    for (const auto& [v, x] : out.rho) {
        const int w = a.index(instance.domain[v]);
        rho[w] = x;
        alpha.push_back(w);
    }
    std::sort(alpha.begin(), alpha.end());
    out.a = std::move(a);
    out.rho = std::move(rho);
    out.alpha_prime = std::move(alpha);
    return out;
}

HomScStructuresResult hom_sc_structures(const RelStructure& a, const std::vector<int>& alpha_in, const RelStructure& b)
{
    std::vector<int> alpha(alpha_in);
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    for (int v : alpha)
        if (v < 0 || v >= a.size())
            throw InputError("alpha is not a subset of the instance domain");
    const Csp csp = structure_network(a, b);
    std::vector<std::vector<int>> maps;
    SolveOptions opt;
    if (alpha.empty()) {
        opt.mode = SolveMode::First;
        if (solve_csp(csp, opt).found())
            maps.push_back({});
    }
    else {
        opt.mode = SolveMode::All;
        opt.projection = alpha;
        maps = solve_csp(csp, opt).solutions;
    }
    const std::size_t k = alpha.size();
    std::set<std::vector<int>> vertex_set(maps.begin(), maps.end());
    auto extends = [&](const std::vector<int>& current, int v) {
        std::vector<std::vector<int>> coord(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (int f : current)
                coord[i].push_back(maps[f][i]);
            coord[i].push_back(maps[v][i]);
            std::sort(coord[i].begin(), coord[i].end());
            coord[i].erase(std::unique(coord[i].begin(), coord[i].end()), coord[i].end());
        }
        std::vector<std::size_t> pos(k, 0);
        std::vector<int> mix(k);
        while (true) {
            for (std::size_t i = 0; i < k; ++i)
                mix[i] = coord[i][pos[i]];
            if (!vertex_set.count(mix))
                return false;
            std::size_t i = k;
            while (i > 0 && ++pos[i - 1] == coord[i - 1].size()) {
                pos[i - 1] = 0;
                --i;
            }
            if (i == 0)
                return true;
        }
    };
    auto faces = detail::maximal_sets(static_cast<int>(maps.size()), extends);
    std::vector<std::string> labels;
    for (const auto& m : maps) {
        if (k == 0) {
            labels.push_back("{}");
            continue;
        }
        std::string s;
        for (std::size_t i = 0; i < k; ++i)
            s += (i ? ";" : "") + std::string("f(") + a.domain[alpha[i]] + ")=" + b.domain[m[i]];
        labels.push_back(s);
    }
    HomScStructuresResult out;
    out.complex = Complex::from_index_faces(labels, std::move(faces));
    out.maps.resize(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i)
        out.maps[out.complex.index(labels[i])] = maps[i];
    return out;
}

namespace {

bool preserves(const RelStructure& b, const std::vector<std::set<std::vector<int>>>& member_sets, int k,
               const std::vector<int>& table)
{
    const int n = b.size();
    std::size_t r = 0;
    for (const auto& [name, rel] : b.relations) {
        const auto& members = member_sets[r++];
        const int m = static_cast<int>(rel.tuples.size());
        if (m == 0)
            continue;
        std::vector<int> pick(static_cast<std::size_t>(k), 0);
        std::vector<int> image(static_cast<std::size_t>(rel.arity));
        while (true) {
            for (int j = 0; j < rel.arity; ++j) {
                std::size_t idx = 0;
                for (int i = 0; i < k; ++i)
                    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(rel.tuples[pick[i]][j]);
                image[j] = table[idx];
            }
            if (!members.count(image))
                return false;
            int i = k - 1;
            while (i >= 0 && ++pick[i] == m) {
                pick[i] = 0;
                --i;
            }
            if (i < 0)
                break;
        }
    }
    return true;
}

bool is_projection(int n, int k, const std::vector<int>& table)
{
    for (int p = 0; p < k; ++p) {
        bool ok = true;
        for (std::size_t idx = 0; idx < table.size() && ok; ++idx) {
            std::size_t rest = idx;
            for (int i = k - 1; i > p; --i)
                rest /= static_cast<std::size_t>(n);
            ok = table[idx] == static_cast<int>(rest % static_cast<std::size_t>(n));
        }
        if (ok)
            return true;
    }
    return false;
}

}  // namespace

bool projections_only_check(const RelStructure& b, int max_arity)
{
    if (max_arity < 1)
        throw InputError("max_arity must be >= 1");
    const int n = b.size();
    constexpr double guard = 1e7;
    double total = 0;
    for (int k = 1; k <= max_arity; ++k)
        total += std::pow(static_cast<double>(n), std::pow(static_cast<double>(n), k));
    if (total > guard)
        throw InputError("too large for exhaustive check");
    if (n == 0)
        return true;
    std::vector<std::set<std::vector<int>>> member_sets;
    for (const auto& [name, rel] : b.relations)
        member_sets.emplace_back(rel.tuples.begin(), rel.tuples.end());
    for (int k = 1; k <= max_arity; ++k) {
        std::size_t cells = 1;
        for (int i = 0; i < k; ++i)
            cells *= static_cast<std::size_t>(n);
        std::vector<int> table(cells, 0);
        while (true) {
            if (preserves(b, member_sets, k, table) && !is_projection(n, k, table))
                return false;
            std::size_t i = cells;
            while (i > 0 && ++table[i - 1] == n) {
                table[i - 1] = 0;
                --i;
            }
            if (i == 0)
                break;
        }
    }
    return true;
}

}  // namespace dichotomy

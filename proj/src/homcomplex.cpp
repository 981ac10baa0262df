#include "dichotomy/homcomplex.hpp"

#include "dichotomy/csp.hpp"
#include "dichotomy/detail/maximal_sets.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dichotomy {

namespace {

Csp hom_network(const Complex& a, const Complex& b, const PartialVertexMap& rho)
{
    Csp csp(b.size());
    for (int v = 0; v < a.size(); ++v)
        csp.add_var();
    for (const auto& [v, x] : rho) {
        if (v < 0 || v >= a.size())
            throw InputError("precoloring uses a vertex outside the source");
        if (x < 0 || x >= b.size())
            throw InputError("precoloring value outside the target");
        csp.pin(v, x);
    }
    const int family = csp.add_face_family(b.maximal_faces());
    for (const auto& f : a.maximal_faces())
        csp.add_face_constraint(f, family);
    return csp;
}

std::vector<int> normalized_alpha(const Complex& a, std::vector<int> alpha)
{
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    for (int v : alpha)
        if (v < 0 || v >= a.size())
            throw InputError("alpha is not a subset of the source vertices");
    return alpha;
}

std::vector<int> all_vertices(const Complex& a)
{
    std::vector<int> v(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i)
        v[i] = i;
    return v;
}

HomComplexResult build(const Complex& a, std::vector<int> alpha, const PartialVertexMap& rho, const Complex& b,
                       HomVariant variant)
{
    HomComplexResult out;
    out.variant = variant;
    out.source = a;
    out.target = b;
    out.alpha = normalized_alpha(a, std::move(alpha));
    out.rho = rho;
    const auto maps = extendable_restrictions(a, out.alpha, rho, b);
    const int n = static_cast<int>(maps.size());
    const std::size_t k = out.alpha.size();
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
        if (variant == HomVariant::Hom) {
            for (const auto& c : coord)
                if (!b.is_face(c))
                    return false;
            return true;
        }
        // Every per-coordinate mix must again be a vertex.
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
    auto faces = detail::maximal_sets(n, extends);

    std::vector<std::string> labels;
    for (const auto& m : maps)
        labels.push_back(assignment_label(a, out.alpha, m, b));
    out.complex = Complex::from_index_faces(labels, std::move(faces));
    out.maps.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.maps[out.complex.index(labels[i])] = maps[i];
    return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_homomorphisms(const Complex& a, const Complex& b, const PartialVertexMap& rho)
{
    if (a.empty())
        return {{}};
    SolveOptions opt;
    opt.mode = SolveMode::All;
    return solve_csp(hom_network(a, b, rho), opt).solutions;
}

std::vector<std::vector<int>> extendable_restrictions(const Complex& a, const std::vector<int>& alpha,
                                                      const PartialVertexMap& rho, const Complex& b)
{
    const auto al = normalized_alpha(a, alpha);
    const Csp csp = hom_network(a, b, rho);
    SolveOptions opt;
    if (al.empty()) {
        opt.mode = SolveMode::First;
        if (a.empty() || solve_csp(csp, opt).found())
            return {{}};
        return {};
    }
    opt.mode = SolveMode::All;
    opt.projection = al;
    return solve_csp(csp, opt).solutions;
}

std::string assignment_label(const Complex& a, const std::vector<int>& alpha, const std::vector<int>& values,
                             const Complex& b)
{
    if (alpha.empty())
        return "{}";
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i)
            s += ';';
        s += "f(" + a.label(alpha[i]) + ")=" + b.label(values[i]);
    }
    return s;
}

HomComplexResult hom_complex(const Complex& a, const Complex& b)
{
    return build(a, all_vertices(a), {}, b, HomVariant::Hom);
}

HomComplexResult hom_sc_complex(const Complex& a, const Complex& b)
{
    return build(a, all_vertices(a), {}, b, HomVariant::HomSC);
}

HomComplexResult hom_restricted(const Complex& a, const std::vector<int>& alpha, const PartialVertexMap& rho,
                                const Complex& b)
{
    return build(a, alpha, rho, b, HomVariant::Hom);
}

HomComplexResult hom_sc_restricted(const Complex& a, const std::vector<int>& alpha, const PartialVertexMap& rho,
                                   const Complex& b)
{
    return build(a, alpha, rho, b, HomVariant::HomSC);
}

WitnessTable lift_polymorphism(const WitnessTable& p, const HomComplexResult& h)
{
    const auto* base = std::get_if<Complex>(&p.carrier);
    if (!base || !(*base == h.target))
        throw InputError("polymorphism must live on the target complex of the hom complex");
    std::map<std::vector<int>, int> vertex_of;
    for (std::size_t v = 0; v < h.maps.size(); ++v)
        vertex_of.emplace(h.maps[v], static_cast<int>(v));
    const std::size_t k = h.alpha.size();
    const int n = p.arity;
    WitnessTable lifted = make_table(h.complex, n, [&](const std::vector<int>& fs) {
        std::vector<int> image(k);
        std::vector<int> args(static_cast<std::size_t>(n));
        for (std::size_t x = 0; x < k; ++x) {
            for (int i = 0; i < n; ++i)
                args[i] = h.maps[fs[i]][x];
            image[x] = p.at(args);
        }
        auto it = vertex_of.find(image);
        if (it == vertex_of.end())
            throw InternalInconsistency("lifted polymorphism leaves the vertex set of the hom complex");
        return it->second;
    });
    const auto check = verify_polymorphism(lifted);
    if (!check.ok)
        throw InternalInconsistency("lifted polymorphism is not simplicial: " + check.violations.front());
    return lifted;
}

}  // namespace dichotomy

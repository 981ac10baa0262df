#include "catch_amalgamated.hpp"

#include "dichotomy/fixtures.hpp"
#include "dichotomy/homcomplex.hpp"
#include "dichotomy/identities.hpp"
#include "dichotomy/topology.hpp"
#include "oracles.hpp"

using namespace dichotomy;

namespace {

std::string word(const HomComplexResult& h, int v)
{
    std::string s;
    for (int x : h.maps[v])
        s += h.target.label(x);
    return s;
}

std::set<std::set<std::string>> word_faces(const HomComplexResult& h)
{
    std::set<std::set<std::string>> out;
    for (const auto& f : h.complex.maximal_faces()) {
        std::set<std::string> s;
        for (int v : f)
            s.insert(word(h, v));
        out.insert(s);
    }
    return out;
}

bool has_face(const HomComplexResult& h, const std::set<std::string>& words)
{
    std::vector<int> f;
    for (int v = 0; v < h.complex.size(); ++v)
        if (words.count(word(h, v)))
            f.push_back(v);
    return f.size() == words.size() && h.complex.is_face(f);
}

// Restricted maps and maximal faces straight from the definitions.
struct Expected {
    std::vector<std::vector<int>> vertices;
    std::set<std::set<std::vector<int>>> faces;
};

Expected oracle_hom(const Complex& a, const std::vector<int>& alpha, const PartialVertexMap& rho, const Complex& b,
                    bool sc)
{
    Expected e;
    std::set<std::vector<int>> restricted;
    for (const auto& f : oracle::brute_homs(a, b, std::map<int, int>(rho.begin(), rho.end()))) {
        std::vector<int> r;
        for (int v : alpha)
            r.push_back(f[v]);
        restricted.insert(r);
    }
    e.vertices.assign(restricted.begin(), restricted.end());
    const int n = static_cast<int>(e.vertices.size());
    if (n > 14)
        return e;
    std::set<std::uint64_t> fam;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        std::vector<std::set<int>> values(alpha.size());
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1)
                for (std::size_t j = 0; j < alpha.size(); ++j)
                    values[j].insert(e.vertices[i][j]);
        bool ok = true;
        if (!sc) {
            for (const auto& vs : values)
                ok = ok && oracle::is_face(b, std::vector<int>(vs.begin(), vs.end()));
        }
        else {
            // every mix must be a vertex
            std::vector<std::vector<int>> mixes{{}};
            for (const auto& vs : values) {
                std::vector<std::vector<int>> next;
                for (const auto& p : mixes)
                    for (int x : vs) {
                        auto q = p;
                        q.push_back(x);
                        next.push_back(q);
                    }
                mixes = next;
            }
            for (const auto& mix : mixes)
                ok = ok && restricted.count(mix) == 1;
        }
        if (ok)
            fam.insert(m);
    }
    for (auto m : oracle::maximal(fam)) {
        std::set<std::vector<int>> f;
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1)
                f.insert(e.vertices[i]);
        e.faces.insert(f);
    }
    return e;
}

void check_against_oracle(const HomComplexResult& h, const Expected& e)
{
    REQUIRE(h.maps == e.vertices);
    std::set<std::set<std::vector<int>>> got;
    for (const auto& f : h.complex.maximal_faces()) {
        std::set<std::vector<int>> s;
        for (int v : f)
            s.insert(h.maps[v]);
        got.insert(s);
    }
    CHECK(got == e.faces);
}

WitnessTable median(const Complex& c)
{
    return make_table(c, 3, [](const std::vector<int>& x) {
        std::vector<int> s = x;
        std::sort(s.begin(), s.end());
        return s[1];
    });
}

const Complex& xyz()
{
    static const Complex c = Complex::from_faces({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    return c;
}

}  // namespace

TEST_CASE("enumerate_homomorphisms")
{
    const Complex a = path(2), b = cycle(5);
    std::vector<std::string> words;
    for (const auto& f : enumerate_homomorphisms(a, b, {{0, b.index("1")}})) {
        std::string w;
        for (int x : f)
            w += b.label(x);
        words.push_back(w);
    }
    CHECK(words == std::vector<std::string>{"111", "112", "115", "121", "122", "123", "151", "154", "155"});

    const Complex edge = Complex::from_faces({"1", "2"}, {{"1", "2"}});
    CHECK(enumerate_homomorphisms(edge, xyz()).size() == 7);
    // simplicial maps may collapse faces, so every map of a triangle onto an edge qualifies
    CHECK(enumerate_homomorphisms(cycle(3), path(1)).size() == 8);
    CHECK(enumerate_homomorphisms(path(1), Complex::from_faces({"p", "q"}, {{"p"}, {"q"}})).size() == 2);

    std::mt19937 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto x = oracle::random_complex(rng, 4, 3, 3);
        const auto y = oracle::random_complex(rng, 3, 3, 2);
        CHECK(enumerate_homomorphisms(x, y) == oracle::brute_homs(x, y));
    }
}

TEST_CASE("Hom and Hom^SC of an edge into a path of length two")
{
    const Complex edge = Complex::from_faces({"1", "2"}, {{"1", "2"}});
    const auto hom = hom_complex(edge, xyz());
    const auto sc = hom_sc_complex(edge, xyz());
    CHECK(hom.maps == sc.maps);
    CHECK(hom.complex.size() == 7);

    CHECK(has_face(hom, {"xy", "yy", "yz"}));
    CHECK_FALSE(has_face(hom, {"xy", "yy", "zy"}));
    CHECK(has_face(sc, {"xy", "yy", "zy"}));
    CHECK_FALSE(has_face(sc, {"xy", "yy", "yz"}));

    using S = std::set<std::string>;
    CHECK(word_faces(hom) == std::set<S>{{"xx", "xy", "yx", "yy"}, {"xy", "yy", "yz"}, {"yx", "yy", "zy"},
                                         {"yy", "yz", "zy", "zz"}});
    CHECK(word_faces(sc) == std::set<S>{{"xx", "xy", "yx", "yy"}, {"xy", "yy", "zy"}, {"yx", "yy", "yz"},
                                        {"yy", "yz", "zy", "zz"}});
}

TEST_CASE("Hom complexes of small shapes")
{
    const auto onto_simplex = hom_complex(path(1), full_simplex(2));
    CHECK(onto_simplex.complex.size() == 9);
    CHECK(onto_simplex.complex.maximal_faces().size() == 1);

    CHECK(isomorphic(hom_complex(full_simplex(0), cycle(5)).complex, cycle(5)));
    // with a single source vertex every mix is a vertex, so Hom^SC is a full simplex
    CHECK(isomorphic(hom_sc_complex(full_simplex(0), cycle(5)).complex, full_simplex(4)));
}

TEST_CASE("restricted Hom complexes for a path into a pentagon")
{
    const Complex a = path(2), b = cycle(5);
    const PartialVertexMap rho{{0, b.index("1")}};
    const std::vector<int> last{a.index("2")}, all{0, 1, 2};

    const auto alpha = hom_restricted(a, last, rho, b);
    CHECK(isomorphic(alpha.complex, cycle(5)));
    CHECK(has_face(alpha, {"3", "4"}));

    const auto full = hom_restricted(a, all, rho, b);
    CHECK(full.complex.size() == 9);
    CHECK_FALSE(has_face(full, {"123", "154"}));

    const auto sc_alpha = hom_sc_restricted(a, last, rho, b);
    CHECK(isomorphic(sc_alpha.complex, full_simplex(4)));

    const auto sc_full = hom_sc_restricted(a, all, rho, b);
    CHECK(has_face(sc_full, {"151", "121"}));
    CHECK_FALSE(has_face(sc_full, {"123", "154"}));
    CHECK(connected_components(full.complex).size() == 1);

    const auto empty_alpha = hom_restricted(a, {}, rho, b);
    CHECK(empty_alpha.complex.size() == 1);
    CHECK(hom_sc_restricted(a, {}, rho, b).complex.size() == 1);
}

TEST_CASE("restricted Hom complexes match the definitions on random inputs")
{
    std::mt19937 rng(12);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = oracle::random_complex(rng, 3, 2, 2);
        const auto b = oracle::random_complex(rng, 3 + trial % 2, 3, 3);
        std::vector<int> alpha;
        for (int v = 0; v < a.size(); ++v)
            if (rng() % 2)
                alpha.push_back(v);
        PartialVertexMap rho;
        if (trial % 2)
            rho[static_cast<int>(rng() % a.size())] = static_cast<int>(rng() % b.size());
        const auto ex_hom = oracle_hom(a, alpha, rho, b, false);
        if (ex_hom.vertices.size() > 14)
            continue;
        ++checked;
        check_against_oracle(hom_restricted(a, alpha, rho, b), ex_hom);
        check_against_oracle(hom_sc_restricted(a, alpha, rho, b), oracle_hom(a, alpha, rho, b, true));
        if (rho.empty() && alpha.size() == static_cast<std::size_t>(a.size())) {
            check_against_oracle(hom_complex(a, b), ex_hom);
            check_against_oracle(hom_sc_complex(a, b), oracle_hom(a, alpha, rho, b, true));
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("Hom and Hom^SC share vertices; Hom^SC faces are closed downward")
{
    std::mt19937 rng(21);
    for (const auto& [a, b] : std::vector<std::pair<Complex, Complex>>{
             {path(1), path(3)}, {path(2), cycle(4)}, {cycle(3), full_simplex(2)}, {path(1), cycle(5)}}) {
        const auto h = hom_complex(a, b);
        const auto s = hom_sc_complex(a, b);
        CHECK(h.maps == s.maps);
        CHECK(validate(s.complex.data()).empty());
        const std::set<std::vector<int>> vertices(s.maps.begin(), s.maps.end());
        // random subsets of maximal faces still have every mix among the vertices
        for (const auto& f : s.complex.maximal_faces())
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<std::set<int>> values(static_cast<std::size_t>(a.size()));
                for (int v : f)
                    if (rng() % 2)
                        for (int x = 0; x < a.size(); ++x)
                            values[x].insert(s.maps[v][x]);
                if (values[0].empty())
                    continue;
                std::vector<int> mix(static_cast<std::size_t>(a.size()));
                for (int i = 0; i < 10; ++i) {
                    for (int x = 0; x < a.size(); ++x) {
                        auto it = values[x].begin();
                        std::advance(it, rng() % values[x].size());
                        mix[x] = *it;
                    }
                    CHECK(vertices.count(mix) == 1);
                }
            }
    }
}

TEST_CASE("restriction from the full Hom complex to alpha")
{
    const Complex a = path(2), b = cycle(5);
    const PartialVertexMap rho{{0, b.index("1")}};
    const auto full = hom_restricted(a, {0, 1, 2}, rho, b);
    const auto part = hom_restricted(a, {2}, rho, b);
    std::map<std::vector<int>, int> index;
    for (int v = 0; v < part.complex.size(); ++v)
        index[part.maps[v]] = v;
    SimplicialMap r{full.complex, part.complex, {}};
    std::set<int> hit;
    for (int v = 0; v < full.complex.size(); ++v) {
        r.assignment.push_back(index.at({full.maps[v][2]}));
        hit.insert(r.assignment.back());
    }
    CHECK(hit.size() == static_cast<std::size_t>(part.complex.size()));
    CHECK(is_simplicial_map(r));

    // {3,4} is not the image of a face
    const int three = index.at({b.index("3")}), four = index.at({b.index("4")});
    bool covered = false;
    for (const auto& f : full.complex.maximal_faces()) {
        std::set<int> img;
        for (int v : f)
            img.insert(r.assignment[v]);
        covered = covered || (img.count(three) && img.count(four));
    }
    CHECK_FALSE(covered);
}

TEST_CASE("lifting polymorphisms")
{
    const Complex p2 = path(2);
    const auto h = hom_sc_complex(path(1), p2);
    CHECK(h.complex.size() == 7);

    const auto id = lift_polymorphism(make_table(p2, 1, [](const std::vector<int>& x) { return x[0]; }), h);
    for (int v = 0; v < h.complex.size(); ++v)
        CHECK(id.values[v] == v);
    const auto proj = lift_polymorphism(make_table(p2, 3, [](const std::vector<int>& x) { return x[0]; }), h);
    for (std::size_t i = 0; i < proj.values.size(); ++i)
        CHECK(proj.values[i] == static_cast<int>(i / 49));

    const auto maj = lift_polymorphism(median(p2), h);
    CHECK(verify_witness(maj, builtin_system(Builtin::Majority)).ok);

    const PartialVertexMap rho{{0, p2.index("1")}};
    for (const std::vector<int>& alpha : {std::vector<int>{2}, std::vector<int>{0, 1, 2}})
        for (const auto& hr : {hom_restricted(p2, alpha, rho, p2), hom_sc_restricted(p2, alpha, rho, p2)})
            CHECK(verify_witness(lift_polymorphism(median(p2), hr), builtin_system(Builtin::Majority)).ok);

    const auto cyc = search_witness(full_simplex(2), builtin_system(Builtin::Cyclic, 3));
    REQUIRE(cyc.witness);
    const auto hc = hom_sc_complex(path(1), full_simplex(2));
    CHECK(verify_witness(lift_polymorphism(*cyc.witness, hc), builtin_system(Builtin::Cyclic, 3)).ok);
}

TEST_CASE("lifting commutes with restriction")
{
    for (const auto& [name, b] : fixtures::complexes()) {
        if (b.size() > 4)
            continue;
        const auto w = search_witness(b, builtin_system(Builtin::Majority));
        if (!w.witness)
            continue;
        INFO(name);
        const Complex a = path(2);
        const PartialVertexMap rho{{0, 0}};
        const auto full = hom_sc_restricted(a, {0, 1, 2}, rho, b);
        const auto part = hom_sc_restricted(a, {1, 2}, rho, b);
        const auto lf = lift_polymorphism(*w.witness, full);
        const auto lp = lift_polymorphism(*w.witness, part);
        std::map<std::vector<int>, int> index;
        for (int v = 0; v < part.complex.size(); ++v)
            index[part.maps[v]] = v;
        auto restrict = [&](int v) { return index.at({full.maps[v][1], full.maps[v][2]}); };
        const int n = full.complex.size();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    const std::vector<int> args{x, y, z};
                    const std::vector<int> rargs{restrict(x), restrict(y), restrict(z)};
                    CHECK(restrict(lf.at(args)) == lp.at(rargs));
                }
    }
}

#include "catch_amalgamated.hpp"

#include "dichotomy/fixtures.hpp"
#include "dichotomy/identities.hpp"
#include "dichotomy/structures.hpp"
#include "oracles.hpp"
#include "random_pp.hpp"

#include <numeric>

using namespace dichotomy;

namespace {

WitnessTable median(const Complex& c)
{
    return make_table(c, 3, [](const std::vector<int>& x) {
        std::vector<int> s = x;
        std::sort(s.begin(), s.end());
        return s[1];
    });
}

std::size_t tuple_index(const std::vector<int>& t, int n)
{
    std::size_t idx = 0;
    for (int x : t)
        idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
    return idx;
}

std::vector<int> tuple_at(std::size_t idx, int n, int k)
{
    std::vector<int> t(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        t[i] = static_cast<int>(idx % static_cast<std::size_t>(n));
        idx /= static_cast<std::size_t>(n);
    }
    return t;
}

// Union-find over argument tuples with pins, built straight from the identities.
struct Classes {
    std::vector<int> parent;
    std::vector<int> pin;
    bool consistent = true;

    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
};

Classes oracle_classes(int n, const IdentitySystem& sys)
{
    const int k = sys.arity;
    std::size_t total = 1;
    for (int i = 0; i < k; ++i)
        total *= static_cast<std::size_t>(n);
    Classes c;
    c.parent.resize(total);
    std::iota(c.parent.begin(), c.parent.end(), 0);
    std::vector<int> pin(total, -1);
    std::vector<std::pair<int, int>> pins;
    const int vars = sys.num_vars();
    std::vector<int> env(static_cast<std::size_t>(vars), 0);
    std::size_t combos = 1;
    for (int i = 0; i < vars; ++i)
        combos *= static_cast<std::size_t>(n);
    for (std::size_t e = 0; e < combos; ++e) {
        env = tuple_at(e, n, vars);
        for (const auto& id : sys.identities) {
            std::vector<int> l;
            for (int v : id.lhs)
                l.push_back(env[v]);
            const int li = static_cast<int>(tuple_index(l, n));
            if (id.rhs_var >= 0) {
                pins.emplace_back(li, env[id.rhs_var]);
                continue;
            }
            std::vector<int> r;
            for (int v : id.rhs)
                r.push_back(env[v]);
            const int a = c.find(li), b = c.find(static_cast<int>(tuple_index(r, n)));
            if (a != b)
                c.parent[a] = b;
        }
    }
    if (sys.idempotent)
        for (int x = 0; x < n; ++x)
            pins.emplace_back(static_cast<int>(tuple_index(std::vector<int>(static_cast<std::size_t>(k), x), n)), x);
    for (auto [t, x] : pins) {
        const int r = c.find(t);
        if (pin[r] >= 0 && pin[r] != x)
            c.consistent = false;
        pin[r] = x;
    }
    c.pin.resize(total);
    for (std::size_t t = 0; t < total; ++t)
        c.pin[t] = pin[c.find(static_cast<int>(t))];
    return c;
}

// Naive backtracking over the classes of tuples; a partial table is pruned when the images
// of the assigned tuples in some product of maximal faces are not a face.
bool oracle_exists(const Complex& b, const IdentitySystem& sys)
{
    const int n = b.size(), k = sys.arity;
    Classes cls = oracle_classes(n, sys);
    if (!cls.consistent)
        return false;
    const std::size_t total = cls.parent.size();
    std::vector<int> roots;
    for (std::size_t t = 0; t < total; ++t)
        if (cls.find(static_cast<int>(t)) == static_cast<int>(t) && cls.pin[t] < 0)
            roots.push_back(static_cast<int>(t));

    // boxes: every k-tuple of maximal faces, listed as the tuple indices inside
    std::vector<std::vector<std::size_t>> boxes;
    const auto& faces = b.maximal_faces();
    const int nf = static_cast<int>(faces.size());
    std::size_t nboxes = 1;
    for (int i = 0; i < k; ++i)
        nboxes *= static_cast<std::size_t>(nf);
    for (std::size_t bi = 0; bi < nboxes; ++bi) {
        const auto pick = tuple_at(bi, nf, k);
        std::vector<std::size_t> box;
        for (std::size_t t = 0; t < total; ++t) {
            const auto tup = tuple_at(t, n, k);
            bool inside = true;
            for (int i = 0; i < k && inside; ++i)
                inside = std::binary_search(faces[pick[i]].begin(), faces[pick[i]].end(), tup[i]);
            if (inside)
                box.push_back(t);
        }
        boxes.push_back(box);
    }

    std::vector<int> value(total, -1);
    for (std::size_t t = 0; t < total; ++t)
        value[t] = cls.pin[t];
    auto ok = [&] {
        for (const auto& box : boxes) {
            std::vector<int> img;
            for (auto t : box) {
                const int v = value[cls.find(static_cast<int>(t))] >= 0 && cls.pin[t] < 0
                                  ? value[cls.find(static_cast<int>(t))]
                                  : cls.pin[t];
                if (v >= 0)
                    img.push_back(v);
            }
            if (!oracle::is_face(b, img))
                return false;
        }
        return true;
    };
    if (!ok())
        return false;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == roots.size())
            return true;
        for (int x = 0; x < n; ++x) {
            value[roots[i]] = x;
            if (ok() && go(i + 1))
                return true;
        }
        value[roots[i]] = -1;
        return false;
    };
    return go(0);
}

}  // namespace

TEST_CASE("identity DSL")
{
    const auto s6 = parse_identity_system("idempotent; s(x,x,y,y,z,z)=s(z,y,x,z,y,x)");
    CHECK(s6.arity == 6);
    CHECK(s6.idempotent);
    CHECK(s6.identities.size() == 1);
    CHECK(s6.variables == std::vector<std::string>{"x", "y", "z"});
    CHECK(s6.identities[0].lhs == std::vector<int>{0, 0, 1, 1, 2, 2});
    CHECK(s6.identities[0].rhs == std::vector<int>{2, 1, 0, 2, 1, 0});

    const auto s4 = parse_identity_system("idempotent; s(x,y,z,z)=s(z,x,x,y)");
    CHECK(s4 == builtin_system(Builtin::Siggers4));
    CHECK(s6 == builtin_system("siggers6"));

    CHECK_THROWS_AS(parse_identity_system("c(x,y)=c(y,x"), InputError);
    CHECK_THROWS_WITH(parse_identity_system("c(x,y)=c(y,x,z)"), Catch::Matchers::ContainsSubstring("arity mismatch"));
    CHECK_THROWS_WITH(parse_identity_system("c(x,y)=d(y,x)"), Catch::Matchers::ContainsSubstring("undeclared symbol"));
    CHECK_THROWS_WITH(parse_identity_system("f(x)=x\ng(x,"), Catch::Matchers::StartsWith("2:"));

    const auto comments = parse_identity_system("# majority\nm(x,x,y)=x\nm(x,y,x)=x\nm(y,x,x)=x\n");
    CHECK_FALSE(comments.idempotent);
    CHECK(comments.identities.size() == 3);
    for (const auto& sys : {s6, s4, comments, builtin_system("cyclic:4")})
        CHECK(parse_identity_system(to_dsl(sys)) == sys);
}

TEST_CASE("builtin systems")
{
    const auto maj = builtin_system(Builtin::Majority);
    CHECK(maj.arity == 3);
    CHECK(maj.idempotent);
    CHECK(maj.identities.size() == 3);
    for (const auto& id : maj.identities)
        CHECK(id.rhs_var >= 0);
    CHECK(maj == parse_identity_system("idempotent; M(x,x,y)=x; M(x,y,x)=x; M(y,x,x)=x"));

    const auto c5 = builtin_system(Builtin::Cyclic, 5);
    CHECK(c5.arity == 5);
    CHECK(c5.idempotent);
    REQUIRE(c5.identities.size() == 1);
    CHECK(c5.identities[0].lhs == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(c5.identities[0].rhs == std::vector<int>{1, 2, 3, 4, 0});

    CHECK_THROWS_AS(builtin_system(Builtin::NearUnanimity, 2), InputError);
    CHECK_THROWS_AS(builtin_system(Builtin::Cyclic), InputError);
    CHECK_THROWS_AS(builtin_system("cyclic:1"), InputError);
    CHECK_THROWS_AS(builtin_system("weird"), InputError);
    CHECK(builtin_system("near_unanimity:4").arity == 4);
    CHECK(builtin_system("fully_symmetric:3").arity == 3);
}

TEST_CASE("verify_witness examples")
{
    CHECK(verify_witness(median(path(4)), builtin_system(Builtin::Majority)).ok);

    const auto proj = make_table(path(4), 3, [](const std::vector<int>& x) { return x[0]; });
    const auto v = verify_witness(proj, builtin_system(Builtin::Majority));
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.violations.empty());
    CHECK(verify_polymorphism(proj).ok);

    // a valid function that sends the edge pair ((0,1),(1,2)) to {0,2}
    const Complex p2 = path(2);
    const auto bad = make_table(p2, 2, [](const std::vector<int>& x) { return x[0] == 1 && x[1] == 2 ? 2 : x[0]; });
    const auto pv = verify_polymorphism(bad);
    CHECK_FALSE(pv.ok);
    CHECK_FALSE(verify_witness(bad, builtin_system(Builtin::Cyclic, 2)).ok);

    CHECK_THROWS_AS(verify_witness(median(p2), builtin_system(Builtin::Cyclic, 2)), InputError);
}

TEST_CASE("search_witness examples")
{
    const auto r = search_witness(path(2), builtin_system(Builtin::Majority));
    REQUIRE(r.witness);
    CHECK(verify_witness(*r.witness, builtin_system(Builtin::Majority)).ok);

    const auto sym = search_witness(cycle(3), builtin_system(Builtin::FullySymmetric, 2));
    CHECK_FALSE(sym.witness);
    CHECK(sym.exhausted);

    const auto full = search_witness(full_simplex(2), builtin_system(Builtin::Majority));
    REQUIRE(full.witness);
    CHECK(verify_witness(*full.witness, builtin_system(Builtin::Majority)).ok);

    CHECK_THROWS_WITH(search_witness(path(1), parse_identity_system("f(x,y)=f(y,x)")),
                      Catch::Matchers::ContainsSubstring("Polidem"));

    // deterministic
    const auto again = search_witness(path(2), builtin_system(Builtin::Majority));
    CHECK(again.witness->values == r.witness->values);
    SearchOptions par;
    par.jobs = 3;
    CHECK(search_witness(path(2), builtin_system(Builtin::Majority), par).witness->values == r.witness->values);
}

TEST_CASE("every witness found on a fixture verifies")
{
    for (const auto& [name, c] : fixtures::complexes()) {
        if (c.size() > 6)
            continue;
        for (const char* sys : {"majority", "cyclic:2", "cyclic:3", "fully_symmetric:2", "siggers4"}) {
            const auto system = builtin_system(sys);
            SearchOptions opt;
            opt.node_budget = 200000;
            const auto r = search_witness(c, system, opt);
            INFO(name << " " << sys);
            if (r.witness)
                CHECK(verify_witness(*r.witness, system).ok);
            if (r.witness && system.arity > 1 && std::string(sys).rfind("cyclic", 0) == 0)
                CHECK(verify_witness(siggers_from_cyclic(*r.witness), builtin_system(Builtin::Siggers6)).ok);
        }
    }
}

TEST_CASE("tuple classes match a direct union-find")
{
    for (const char* sys : {"majority", "cyclic:2", "cyclic:3", "fully_symmetric:3", "siggers4", "near_unanimity:3"}) {
        for (int n = 1; n <= 4; ++n) {
            const auto system = builtin_system(sys);
            const auto tc = tuple_classes(n, system);
            auto oc = oracle_classes(n, system);
            INFO(sys << " n=" << n);
            CHECK(tc.consistent == oc.consistent);
            for (std::size_t a = 0; a < tc.class_of.size(); ++a) {
                CHECK(tc.pinned[tc.class_of[a]] == oc.pin[a]);
                for (std::size_t b = a + 1; b < tc.class_of.size(); ++b)
                    if ((tc.class_of[a] == tc.class_of[b]) != (oc.find(static_cast<int>(a)) == oc.find(static_cast<int>(b))))
                        FAIL("class mismatch at " << a << "," << b);
            }
        }
    }
}

TEST_CASE("search agrees with naive enumeration on small complexes")
{
    std::mt19937 rng(31);
    std::vector<Complex> cs{path(1), path(2), path(3), cycle(3), cycle(4), full_simplex(2), full_simplex(3)};
    for (int i = 0; i < 14; ++i)
        cs.push_back(oracle::random_complex(rng, 2 + i % 3, 3, 3));
    for (const auto& c : cs) {
        for (const char* sys : {"majority", "cyclic:2", "cyclic:3", "fully_symmetric:2", "fully_symmetric:3"}) {
            const auto system = builtin_system(sys);
            const auto r = search_witness(c, system);
            INFO(sys << " on " << c.size() << " vertices, " << c.maximal_faces().size() << " faces");
            REQUIRE((r.witness || r.exhausted));
            CHECK(r.witness.has_value() == oracle_exists(c, system));
        }
    }
}

TEST_CASE("siggers_from_cyclic")
{
    const Complex k2 = full_simplex(2);
    const auto min_of = [&](int arity) {
        return make_table(k2, arity, [](const std::vector<int>& x) { return *std::min_element(x.begin(), x.end()); });
    };
    const auto s2 = siggers_from_cyclic(min_of(2));
    CHECK(verify_witness(s2, builtin_system(Builtin::Siggers6)).ok);
    CHECK(s2.at(std::vector<int>{0, 0, 1, 1, 2, 2}) == 0);
    CHECK(s2.at(std::vector<int>{2, 1, 0, 2, 1, 0}) == 0);

    const auto s3 = siggers_from_cyclic(min_of(3));
    CHECK(verify_witness(s3, builtin_system(Builtin::Siggers6)).ok);
    CHECK(s3.at(std::vector<int>{0, 1, 2, 0, 1, 2}) == 0);
    // s(x1..x6) = c(x1,x5,x3)
    CHECK(s3.at(std::vector<int>{2, 0, 2, 0, 1, 0}) == 1);

    for (int n : {4, 5, 6, 7})
        CHECK(verify_witness(siggers_from_cyclic(min_of(n)), builtin_system(Builtin::Siggers6)).ok);

    // the first projection is not cyclic
    CHECK_THROWS_AS(siggers_from_cyclic(make_table(k2, 2, [](const std::vector<int>& x) { return x[0]; })),
                    InputError);
}

TEST_CASE("polymorphisms preserve pp-definable relations")
{
    std::mt19937 rng(8);
    std::vector<RelStructure> templates{idempotent_realization(path(2)).structure,
                                        idempotent_realization(full_simplex(2)).structure, fixtures::wide_not_or(),
                                        dsat()};
    for (const auto& t : templates) {
        std::vector<WitnessTable> polys;
        for (const char* sys : {"majority", "cyclic:2", "cyclic:3"}) {
            const auto r = search_witness(t, builtin_system(sys));
            if (r.witness)
                polys.push_back(*r.witness);
        }
        polys.push_back(make_table(t, 2, [](const std::vector<int>& x) { return x[1]; }));
        for (int trial = 0; trial < 25; ++trial) {
            const int free = 1 + trial % 3;
            const auto phi = oracle::random_pp(rng, t.signature(), free);
            const auto sols = eval_pp_formula(phi, t, oracle::free_names(free));
            const std::set<std::vector<int>> rel(sols.begin(), sols.end());
            for (const auto& p : polys) {
                if (sols.empty())
                    continue;
                std::uniform_int_distribution<std::size_t> pick(0, sols.size() - 1);
                for (int s = 0; s < 30; ++s) {
                    std::vector<int> image(static_cast<std::size_t>(free));
                    std::vector<std::vector<int>> rows;
                    for (int j = 0; j < p.arity; ++j)
                        rows.push_back(sols[pick(rng)]);
                    for (int i = 0; i < free; ++i) {
                        std::vector<int> col;
                        for (const auto& row : rows)
                            col.push_back(row[i]);
                        image[i] = p.at(col);
                    }
                    CHECK(rel.count(image) == 1);
                }
            }
        }
    }
}

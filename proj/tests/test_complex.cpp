#include "catch_amalgamated.hpp"

#include "dichotomy/complex.hpp"
#include "dichotomy/json_io.hpp"
#include "oracles.hpp"

using namespace dichotomy;

namespace {

std::vector<std::string> faces_of(const Complex& c)
{
    std::vector<std::string> out;
    for (const auto& f : c.data().maximal_faces) {
        std::string s;
        for (const auto& v : f)
            s += (s.empty() ? "" : ",") + v;
        out.push_back("{" + s + "}");
    }
    return out;
}

}  // namespace

TEST_CASE("validate reports each broken invariant")
{
    CHECK(validate(path(2).data()).empty());

    ComplexData uncovered{{"a", "b", "c"}, {{"a", "b"}}};
    CHECK(validate(uncovered) == std::vector<std::string>{"vertex c in no face"});

    ComplexData subsumed{{"a", "b"}, {{"a"}, {"a", "b"}}};
    CHECK(validate(subsumed) == std::vector<std::string>{"{a} subset of {a,b}"});

    ComplexData unknown{{"a"}, {{"a", "z"}}};
    CHECK_FALSE(validate(unknown).empty());
    CHECK_THROWS_AS(Complex::from_data(unknown), InputError);
}

TEST_CASE("empty complex has dimension -1")
{
    Complex e;
    CHECK(e.dimension() == -1);
    CHECK(e.empty());
    CHECK(validate(e.data()).empty());
}

TEST_CASE("paths, cycles and simplices")
{
    CHECK(path(2).labels() == std::vector<std::string>{"0", "1", "2"});
    CHECK(faces_of(path(2)) == std::vector<std::string>{"{0,1}", "{1,2}"});
    CHECK(faces_of(path(0)) == std::vector<std::string>{"{0}"});
    CHECK(faces_of(path(1)) == std::vector<std::string>{"{0,1}"});

    const Complex c5 = cycle(5);
    CHECK(c5.size() == 5);
    CHECK(c5.maximal_faces().size() == 5);
    CHECK(c5.is_face(std::vector<int>{c5.index("1"), c5.index("5")}));
    CHECK(cycle(3).dimension() == 1);
    CHECK_THROWS_WITH(cycle(2), Catch::Matchers::ContainsSubstring(">=3"));

    CHECK(full_simplex(2).maximal_faces().size() == 1);
    CHECK(full_simplex(0).size() == 1);
    CHECK(full_simplex(3).dimension() == 3);
}

TEST_CASE("labels order by length then content")
{
    CHECK(label_less("9", "10"));
    CHECK(label_less("a", "b"));
    CHECK_FALSE(label_less("10", "9"));
    CHECK(path(11).labels().back() == "11");
}

TEST_CASE("product matches brute-force enumeration")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex a = oracle::random_complex(rng, 3, 3, 2);
        const Complex b = oracle::random_complex(rng, 3, 3, 3);
        const Complex p = product(a, b);
        // Oracle: a set of pairs is a face iff both projections are faces.
        std::vector<std::pair<int, int>> pairs;
        for (int x = 0; x < a.size(); ++x)
            for (int y = 0; y < b.size(); ++y)
                pairs.emplace_back(x, y);
        std::set<std::set<std::string>> fam;
        const int n = static_cast<int>(pairs.size());
        for (std::uint32_t m = 1; m < (1U << n); ++m) {
            std::vector<int> pa, pb;
            std::set<std::string> labels;
            for (int i = 0; i < n; ++i)
                if ((m >> i) & 1) {
                    pa.push_back(pairs[i].first);
                    pb.push_back(pairs[i].second);
                    labels.insert("(" + a.label(pairs[i].first) + "," + b.label(pairs[i].second) + ")");
                }
            if (oracle::is_face(a, pa) && oracle::is_face(b, pb))
                fam.insert(labels);
        }
        std::set<std::set<std::string>> top;
        for (const auto& f : fam) {
            bool maximal = true;
            for (const auto& g : fam)
                if (f != g && std::includes(g.begin(), g.end(), f.begin(), f.end()))
                    maximal = false;
            if (maximal)
                top.insert(f);
        }
        CHECK(oracle::labelled_faces(p) == top);
    }
}

TEST_CASE("product examples")
{
    CHECK(isomorphic(product(path(1), path(1)), full_simplex(3)));
    CHECK(isomorphic(product(cycle(4), full_simplex(0)), cycle(4)));
    CHECK(product(full_simplex(1), full_simplex(1)).dimension() == 3);
    // dimension bound (dim a + 1)(dim b + 1) - 1
    CHECK(product(full_simplex(2), full_simplex(1)).dimension() == 5);
}

TEST_CASE("skeleton")
{
    const Complex k4 = skeleton(full_simplex(3), 1);
    CHECK(k4.maximal_faces().size() == 6);
    CHECK(k4.dimension() == 1);
    CHECK(skeleton(cycle(4), 1) == cycle(4));
    const Complex pts = skeleton(full_simplex(2), 0);
    CHECK(pts.size() == 3);
    CHECK(pts.dimension() == 0);
}

TEST_CASE("subdivision is the chain complex of faces")
{
    CHECK(isomorphic(subdivision(path(1)), path(2)));
    CHECK(subdivision(full_simplex(2)).size() == 7);
    CHECK(isomorphic(subdivision(cycle(3)), cycle(6)));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex c = oracle::random_complex(rng, 4);
        const Complex s = subdivision(c);
        const auto faces = oracle::face_masks(c);
        CHECK(s.size() == static_cast<int>(faces.size()));
        // Every edge of the subdivision joins two comparable faces.
        std::map<std::string, std::uint64_t> mask_of;
        for (auto m : faces) {
            std::string l = "{";
            bool first = true;
            for (int v = 0; v < c.size(); ++v)
                if ((m >> v) & 1) {
                    l += (first ? "" : ",") + c.label(v);
                    first = false;
                }
            mask_of[l + "}"] = m;
        }
        for (const auto& f : s.maximal_faces())
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j) {
                    const auto x = mask_of.at(s.label(f[i]));
                    const auto y = mask_of.at(s.label(f[j]));
                    CHECK((((x & y) == x) || ((x & y) == y)));
                }
        // The longest chain of faces has dim + 1 members.
        CHECK(s.dimension() == c.dimension());
    }
}

TEST_CASE("quotient keeps images of faces")
{
    const Complex p = path(2);
    const Complex q = quotient(p, {{p.index("0"), p.index("2")}, {p.index("1")}});
    CHECK(q.size() == 2);
    CHECK(q.maximal_faces().size() == 1);
    CHECK(q.dimension() == 1);

    CHECK(isomorphic(quotient(cycle(4), {{0}, {1}, {2}, {3}}), cycle(4)));

    const Complex c4 = cycle(4);
    const Complex g = quotient(c4, {{c4.index("1"), c4.index("3")}, {c4.index("2")}, {c4.index("4")}}, {"13", "2", "4"});
    CHECK(faces_of(g) == std::vector<std::string>{"{2,13}", "{4,13}"});
    CHECK_THROWS_AS(quotient(c4, {{0, 1}, {1, 2, 3}}), InputError);
    CHECK_THROWS_AS(quotient(c4, {{0, 1}}), InputError);
}

TEST_CASE("quotient composes")
{
    const Complex c = cycle(6);
    // {1,2},{3},{4,5},{6} then {12,3},{45,6}
    const Complex once = quotient(c, {{0, 1}, {2}, {3, 4}, {5}});
    const Complex twice = quotient(once, {{once.index("[1,2]"), once.index("3")}, {once.index("[4,5]"), once.index("6")}});
    const Complex direct = quotient(c, {{0, 1, 2}, {3, 4, 5}});
    CHECK(isomorphic(twice, direct));
}

TEST_CASE("simplicial maps")
{
    const Complex p2 = path(2);
    CHECK(is_simplicial_map(SimplicialMap::from_labels(p2, p2, {{"0", "1"}, {"1", "1"}, {"2", "1"}})));
    const Complex xyz = Complex::from_faces({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    CHECK_FALSE(is_simplicial_map(SimplicialMap::from_labels(path(1), xyz, {{"0", "x"}, {"1", "z"}})));
    const Complex c5 = cycle(5);
    std::map<std::string, std::string> id;
    for (const auto& l : c5.labels())
        id[l] = l;
    CHECK(is_simplicial_map(SimplicialMap::from_labels(c5, c5, id)));
    CHECK_THROWS_AS(SimplicialMap::from_labels(path(1), xyz, {{"0", "x"}}), InputError);
}

TEST_CASE("truncated face check agrees with the full check")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex a = oracle::random_complex(rng, 5, 3, 4);
        const Complex b = oracle::random_complex(rng, 4, 3, 3);
        SimplicialMap m{a, b, {}};
        std::uniform_int_distribution<int> pick(0, b.size() - 1);
        for (int v = 0; v < a.size(); ++v)
            m.assignment.push_back(pick(rng));
        // Oracle: every face image is a face.
        bool expected = true;
        for (auto mask : oracle::face_masks(a)) {
            std::vector<int> img;
            for (int v = 0; v < a.size(); ++v)
                if ((mask >> v) & 1)
                    img.push_back(m.assignment[v]);
            expected = expected && oracle::is_face(b, img);
        }
        CHECK(is_simplicial_map(m) == expected);
        CHECK(is_simplicial_map_truncated(m) == expected);
    }
}

TEST_CASE("downward closure of constructed complexes")
{
    std::vector<Complex> cs{path(3), cycle(4), full_simplex(3), product(path(1), cycle(3)), subdivision(full_simplex(2)),
                            skeleton(full_simplex(4), 2)};
    for (const auto& c : cs) {
        for (auto m : oracle::face_masks(c)) {
            std::vector<int> f;
            for (int v = 0; v < c.size(); ++v)
                if ((m >> v) & 1)
                    f.push_back(v);
            CHECK(c.is_face(f));
        }
        CHECK(validate(c.data()).empty());
    }
}

TEST_CASE("product projections are simplicial")
{
    const Complex a = path(2), b = cycle(3);
    const Complex p = product(a, b);
    SimplicialMap pa{p, a, {}}, pb{p, b, {}};
    for (int v = 0; v < p.size(); ++v) {
        const auto& l = p.label(v);
        const auto comma = l.find(',');
        pa.assignment.push_back(a.index(l.substr(1, comma - 1)));
        pb.assignment.push_back(b.index(l.substr(comma + 1, l.size() - comma - 2)));
    }
    CHECK(is_simplicial_map(pa));
    CHECK(is_simplicial_map(pb));
}

TEST_CASE("complex JSON round trip and strictness")
{
    for (const auto& c : {path(3), cycle(5), full_simplex(2), Complex()})
        CHECK(complex_from_json(to_json(c)) == c);
    CHECK(to_json(path(1)).dump() == R"({"vertices":["0","1"],"maximal_faces":[["0","1"]]})");
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"vertices":["1","0"],"maximal_faces":[["0","1"]]})")),
                    InputError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"vertices":["0"]})")), InputError);
}

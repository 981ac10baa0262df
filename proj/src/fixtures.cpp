#include "dichotomy/fixtures.hpp"

#include "dichotomy/structures.hpp"

namespace dichotomy::fixtures {

namespace {

std::vector<std::vector<std::string>> split_faces(const std::vector<std::string>& words)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& w : words) {
        std::vector<std::string> f;
        for (char ch : w)
            f.emplace_back(1, ch);
        out.push_back(std::move(f));
    }
    return out;
}

RelStructure boolean(std::string name, int arity, std::vector<std::vector<int>> tuples)
{
    RelStructure s;
    s.domain = {"0", "1"};
    s.relations[std::move(name)] = Relation{arity, std::move(tuples)};
    s.normalize();
    return s;
}

std::vector<std::vector<int>> cube(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && ++t[i] == n) {
            t[i] = 0;
            --i;
        }
        if (i < 0)
            return out;
    }
}

}  // namespace

Complex rp2()
{
    return Complex::from_faces({"1", "2", "3", "4", "5", "6"},
                               split_faces({"123", "134", "145", "156", "162", "235", "346", "452", "563", "624"}));
}

Complex flap_triangle()
{
    return Complex::from_faces({"b", "l", "p", "q", "r"}, split_faces({"brp", "blp", "prq", "plq", "qrl"}));
}

Complex tetra_ring()
{
    return Complex::from_faces({"a1", "a2", "b1", "b2", "c1", "c2"},
                               {{"a1", "a2", "b1", "b2"}, {"b1", "b2", "c1", "c2"}, {"a1", "a2", "c1", "c2"}});
}

RelStructure wide_not_or()
{
    RelStructure s;
    s.domain = {"1", "2", "3", "4"};
    for (int v = 0; v < 4; ++v)
        s.relations[s.domain[v]] = Relation{1, {{v}}};
    Relation wnot{2, {}};
    for (const auto& t : cube(4, 2))
        if ((t[0] < 2) == (t[1] >= 2))
            wnot.tuples.push_back(t);
    Relation wor{3, {}};
    for (const auto& t : cube(4, 3))
        if (t[0] >= 2 || t[1] >= 2 || t[2] >= 2)
            wor.tuples.push_back(t);
    s.relations["WNOT"] = std::move(wnot);
    s.relations["WOR"] = std::move(wor);
    s.normalize();
    return s;
}

RelStructure nae()
{
    std::vector<std::vector<int>> t;
    for (const auto& x : cube(2, 3))
        if (!(x[0] == x[1] && x[1] == x[2]))
            t.push_back(x);
    return boolean("NAE", 3, std::move(t));
}

RelStructure controlled_3sat()
{
    RelStructure s = boolean("N", 3, {{0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    s.relations["E"] = Relation{3, {}};
    Relation three{3, {}};
    for (const auto& x : cube(2, 3))
        if (x[0] || x[1] || x[2])
            three.tuples.push_back(x);
    s.relations["OR3"] = std::move(three);
    s.normalize();
    return s;
}

RelStructure one_in_three_sat()
{
    return boolean("ONE_IN_THREE", 3, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
}

std::vector<std::pair<std::string, Complex>> complexes()
{
    std::vector<std::pair<std::string, Complex>> out;
    for (int n = 0; n <= 4; ++n)
        out.emplace_back("path" + std::to_string(n), path(n));
    for (int n = 3; n <= 5; ++n)
        out.emplace_back("cycle" + std::to_string(n), cycle(n));
    for (int k = 0; k <= 4; ++k)
        out.emplace_back("simplex" + std::to_string(k), full_simplex(k));
    out.emplace_back("rp2", rp2());
    out.emplace_back("flap_triangle", flap_triangle());
    out.emplace_back("tetra_ring", tetra_ring());
    return out;
}

std::vector<std::pair<std::string, RelStructure>> structures()
{
    return {{"dsat", dsat()},
            {"wide_not_or", wide_not_or()},
            {"nae", nae()},
            {"controlled_3sat", controlled_3sat()},
            {"one_in_three_sat", one_in_three_sat()}};
}

}  // namespace dichotomy::fixtures

#include "dichotomy/complex.hpp"

#include "dichotomy/detail/maximal_sets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace dichotomy {

namespace {

std::string brace(const std::vector<std::string>& labels)
{
    std::string s = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i)
            s += ',';
        s += labels[i];
    }
    return s + "}";
}

bool face_less(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const std::string& x, const std::string& y) { return label_less(x, y); });
}

// Sorts, drops subsumed faces and duplicates.
std::vector<Face> reduce_to_maximal(std::vector<Face> faces)
{
    for (auto& f : faces) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Face> kept;
    for (auto& f : faces) {
        if (f.empty())
            continue;
        bool subsumed = false;
        for (const auto& k : kept) {
            if (k.size() > f.size() && std::includes(k.begin(), k.end(), f.begin(), f.end())) {
                subsumed = true;
                break;
            }
        }
        if (!subsumed)
            kept.push_back(std::move(f));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

bool label_less(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

std::vector<std::string> validate(const ComplexData& data)
{
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& v : data.vertices) {
        if (v.empty())
            out.push_back("empty vertex label");
        if (!seen.insert(v).second)
            out.push_back("duplicate vertex " + v);
    }
    for (std::size_t i = 1; i < data.vertices.size(); ++i)
        if (!label_less(data.vertices[i - 1], data.vertices[i]) && data.vertices[i - 1] != data.vertices[i])
            out.push_back("vertices not in canonical order at " + data.vertices[i]);

    std::set<std::string> covered;
    std::vector<std::vector<std::string>> faces;
    for (const auto& f : data.maximal_faces) {
        if (f.empty()) {
            out.push_back("empty maximal face");
            continue;
        }
        bool ok = true;
        for (const auto& v : f) {
            if (!seen.count(v)) {
                out.push_back("face " + brace(f) + " uses unknown vertex " + v);
                ok = false;
            }
            covered.insert(v);
        }
        for (std::size_t i = 1; i < f.size(); ++i) {
            if (f[i - 1] == f[i]) {
                out.push_back("face " + brace(f) + " repeats vertex " + f[i]);
                ok = false;
            }
            else if (!label_less(f[i - 1], f[i])) {
                out.push_back("face " + brace(f) + " not sorted");
                ok = false;
            }
        }
        if (ok)
            faces.push_back(f);
    }
    for (const auto& v : data.vertices)
        if (!covered.count(v))
            out.push_back("vertex " + v + " in no face");

    for (std::size_t i = 0; i < faces.size(); ++i) {
        for (std::size_t j = 0; j < faces.size(); ++j) {
            if (i == j)
                continue;
            const auto& a = faces[i];
            const auto& b = faces[j];
            auto lt = [](const std::string& x, const std::string& y) { return label_less(x, y); };
            if (a == b) {
                if (i < j)
                    out.push_back(brace(a) + " listed twice");
            }
            else if (a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end(), lt)) {
                out.push_back(brace(a) + " subset of " + brace(b));
            }
        }
    }
    for (std::size_t i = 1; i < faces.size(); ++i)
        if (!face_less(faces[i - 1], faces[i]) && faces[i - 1] != faces[i])
            out.push_back("maximal faces not sorted at " + brace(faces[i]));
    return out;
}

Complex Complex::from_index_faces(std::vector<std::string> vertices, std::vector<Face> faces)
{
    const int n = static_cast<int>(vertices.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return label_less(vertices[a], vertices[b]); });
    std::vector<int> rank(static_cast<std::size_t>(n));
    Complex c;
    c.labels_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rank[order[i]] = i;
        c.labels_.push_back(std::move(vertices[order[i]]));
        if (i > 0 && c.labels_[i] == c.labels_[i - 1])
            throw InputError("duplicate vertex label " + c.labels_[i]);
        if (c.labels_[i].empty())
            throw InputError("empty vertex label");
    }
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (auto& f : faces) {
        for (auto& v : f) {
            if (v < 0 || v >= n)
                throw InputError("face uses vertex index out of range");
            v = rank[v];
            covered[v] = 1;
        }
    }
    for (int v = 0; v < n; ++v)
        if (!covered[v])
            faces.push_back({v});
    c.maximal_ = reduce_to_maximal(std::move(faces));
    for (int i = 0; i < n; ++i)
        c.index_.emplace(c.labels_[i], i);
    return c;
}

Complex Complex::from_faces(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& faces)
{
    std::unordered_map<std::string, int> pos;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        pos.emplace(vertices[i], static_cast<int>(i));
    std::vector<Face> idx;
    idx.reserve(faces.size());
    for (const auto& f : faces) {
        Face g;
        for (const auto& v : f) {
            auto it = pos.find(v);
            if (it == pos.end())
                throw InputError("face uses unknown vertex " + v);
            g.push_back(it->second);
        }
        idx.push_back(std::move(g));
    }
    return from_index_faces(std::move(vertices), std::move(idx));
}

Complex Complex::from_data(const ComplexData& data)
{
    auto violations = validate(data);
    if (!violations.empty()) {
        std::string msg = "invalid complex:";
        for (const auto& v : violations)
            msg += " " + v + ";";
        throw InputError(msg);
    }
    return from_faces(data.vertices, data.maximal_faces);
}

int Complex::dimension() const
{
    int d = -1;
    for (const auto& f : maximal_)
        d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

std::optional<int> Complex::find(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

int Complex::index(std::string_view label) const
{
    auto v = find(label);
    if (!v)
        throw InputError("unknown vertex " + std::string(label));
    return *v;
}

bool Complex::is_face(std::span<const int> face) const
{
    if (face.empty())
        return true;
    for (const auto& m : maximal_)
        if (m.size() >= face.size() && std::includes(m.begin(), m.end(), face.begin(), face.end()))
            return true;
    return false;
}

bool Complex::contains_face(std::vector<int> vertices) const
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return is_face(vertices);
}

std::vector<Face> Complex::all_faces() const
{
    std::set<Face> faces;
    for (const auto& m : maximal_) {
        const std::size_t k = m.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            Face f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1U)
                    f.push_back(m[i]);
            faces.insert(std::move(f));
        }
    }
    std::vector<Face> out(faces.begin(), faces.end());
    std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.size() < b.size(); });
    return out;
}

std::vector<std::size_t> Complex::face_counts() const
{
    std::vector<std::size_t> counts(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& f : all_faces())
        ++counts[f.size() - 1];
    return counts;
}

ComplexData Complex::data() const
{
    ComplexData d;
    d.vertices = labels_;
    for (const auto& f : maximal_) {
        std::vector<std::string> g;
        for (int v : f)
            g.push_back(labels_[v]);
        d.maximal_faces.push_back(std::move(g));
    }
    return d;
}

SimplicialMap SimplicialMap::from_labels(Complex source, Complex target, const std::map<std::string, std::string>& labels)
{
    SimplicialMap m;
    m.assignment.resize(static_cast<std::size_t>(source.size()));
    for (int v = 0; v < source.size(); ++v) {
        auto it = labels.find(source.label(v));
        if (it == labels.end())
            throw InputError("assignment not total: vertex " + source.label(v) + " unmapped");
        m.assignment[v] = target.index(it->second);
    }
    m.source = std::move(source);
    m.target = std::move(target);
    return m;
}

Complex path(int n)
{
    if (n < 0)
        throw InputError("path needs n >= 0");
    std::vector<std::string> v;
    std::vector<Face> f;
    for (int i = 0; i <= n; ++i)
        v.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
        f.push_back({i, i + 1});
    return Complex::from_index_faces(std::move(v), std::move(f));
}

Complex cycle(int n)
{
    if (n < 3)
        throw InputError("cycle needs >=3 vertices");
    std::vector<std::string> v;
    std::vector<Face> f;
    for (int i = 1; i <= n; ++i)
        v.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
        f.push_back({i, (i + 1) % n});
    return Complex::from_index_faces(std::move(v), std::move(f));
}

Complex full_simplex(int k)
{
    if (k < 0)
        throw InputError("full_simplex needs k >= 0");
    std::vector<std::string> v;
    Face all;
    for (int i = 0; i <= k; ++i) {
        v.push_back(std::to_string(i));
        all.push_back(i);
    }
    return Complex::from_index_faces(std::move(v), {all});
}

Complex product(const Complex& a, const Complex& b)
{
    std::vector<std::string> v;
    const int nb = b.size();
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < nb; ++j)
            v.push_back("(" + a.label(i) + "," + b.label(j) + ")");
    std::vector<Face> faces;
    for (const auto& fa : a.maximal_faces()) {
        for (const auto& fb : b.maximal_faces()) {
            Face f;
            for (int x : fa)
                for (int y : fb)
                    f.push_back(x * nb + y);
            faces.push_back(std::move(f));
        }
    }
    return Complex::from_index_faces(std::move(v), std::move(faces));
}

Complex skeleton(const Complex& c, int n)
{
    if (n < 0)
        throw InputError("skeleton needs n >= 0");
    const std::size_t k = static_cast<std::size_t>(n) + 1;
    std::vector<Face> faces;
    for (const auto& m : c.maximal_faces()) {
        if (m.size() <= k) {
            faces.push_back(m);
            continue;
        }
        std::vector<char> pick(m.size(), 0);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
        do {
            Face f;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (pick[i])
                    f.push_back(m[i]);
            faces.push_back(std::move(f));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return Complex::from_index_faces(c.labels(), std::move(faces));
}

Complex subdivision(const Complex& c)
{
    auto faces = c.all_faces();
    std::vector<std::string> labels;
    for (const auto& f : faces) {
        std::vector<std::string> l;
        for (int v : f)
            l.push_back(c.label(v));
        labels.push_back(brace(l));
    }
    auto comparable = [&](int i, int j) {
        const auto& a = faces[i];
        const auto& b = faces[j];
        return a.size() <= b.size() ? std::includes(b.begin(), b.end(), a.begin(), a.end())
                                    : std::includes(a.begin(), a.end(), b.begin(), b.end());
    };
    auto chains = detail::maximal_sets(static_cast<int>(faces.size()), [&](const std::vector<int>& cur, int v) {
        return std::all_of(cur.begin(), cur.end(), [&](int u) { return comparable(u, v); });
    });
    return Complex::from_index_faces(std::move(labels), std::move(chains));
}

Complex induced_subcomplex(const Complex& c, const std::vector<int>& vertices)
{
    std::vector<int> keep(vertices);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> pos(static_cast<std::size_t>(c.size()), -1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        pos[keep[i]] = static_cast<int>(i);
        labels.push_back(c.label(keep[i]));
    }
    std::vector<Face> faces;
    for (const auto& m : c.maximal_faces()) {
        Face f;
        for (int v : m)
            if (pos[v] >= 0)
                f.push_back(pos[v]);
        if (!f.empty())
            faces.push_back(std::move(f));
    }
    return Complex::from_index_faces(std::move(labels), std::move(faces));
}

Complex disjoint_union(const Complex& a, const Complex& b)
{
    std::vector<std::string> labels;
    for (const auto& l : a.labels())
        labels.push_back("0:" + l);
    for (const auto& l : b.labels())
        labels.push_back("1:" + l);
    std::vector<Face> faces = a.maximal_faces();
    for (auto f : b.maximal_faces()) {
        for (auto& v : f)
            v += a.size();
        faces.push_back(std::move(f));
    }
    return Complex::from_index_faces(std::move(labels), std::move(faces));
}

Complex quotient(const Complex& c, const std::vector<std::vector<int>>& classes,
                 const std::vector<std::string>& class_labels)
{
    std::vector<int> cls(static_cast<std::size_t>(c.size()), -1);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].empty())
            throw InputError("quotient: empty class");
        for (int v : classes[i]) {
            if (v < 0 || v >= c.size())
                throw InputError("quotient: vertex out of range");
            if (cls[v] != -1)
                throw InputError("quotient: vertex " + c.label(v) + " in two classes");
            cls[v] = static_cast<int>(i);
        }
    }
    for (int v = 0; v < c.size(); ++v)
        if (cls[v] == -1)
            throw InputError("quotient: vertex " + c.label(v) + " in no class");
    if (!class_labels.empty() && class_labels.size() != classes.size())
        throw InputError("quotient: label count mismatch");

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!class_labels.empty()) {
            labels.push_back(class_labels[i]);
            continue;
        }
        std::vector<int> members(classes[i]);
        std::sort(members.begin(), members.end());
        if (members.size() == 1) {
            labels.push_back(c.label(members[0]));
            continue;
        }
        std::string s = "[";
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (j)
                s += ',';
            s += c.label(members[j]);
        }
        labels.push_back(s + "]");
    }
    std::vector<Face> faces;
    for (const auto& m : c.maximal_faces()) {
        Face f;
        for (int v : m)
            f.push_back(cls[v]);
        faces.push_back(std::move(f));
    }
    return Complex::from_index_faces(std::move(labels), std::move(faces));
}

bool is_simplicial_map(const SimplicialMap& m)
{
    if (static_cast<int>(m.assignment.size()) != m.source.size())
        throw InputError("assignment not total");
    for (int t : m.assignment)
        if (t < 0 || t >= m.target.size())
            throw InputError("assignment not total");
    for (const auto& f : m.source.maximal_faces()) {
        std::vector<int> img;
        for (int v : f)
            img.push_back(m.assignment[v]);
        if (!m.target.contains_face(std::move(img)))
            return false;
    }
    return true;
}

bool is_simplicial_map_truncated(const SimplicialMap& m)
{
    if (static_cast<int>(m.assignment.size()) != m.source.size())
        throw InputError("assignment not total");
    const std::size_t bound = static_cast<std::size_t>(m.target.dimension() + 2);
    for (const auto& f : m.source.all_faces()) {
        if (f.size() > bound)
            break;
        std::vector<int> img;
        for (int v : f)
            img.push_back(m.assignment[v]);
        if (!m.target.contains_face(std::move(img)))
            return false;
    }
    return true;
}

bool isomorphic(const Complex& a, const Complex& b)
{
    if (a.size() != b.size() || a.maximal_faces().size() != b.maximal_faces().size())
        return false;
    auto profile = [](const Complex& c) {
        std::vector<std::vector<std::size_t>> p(static_cast<std::size_t>(c.size()));
        for (const auto& f : c.maximal_faces())
            for (int v : f)
                p[v].push_back(f.size());
        for (auto& x : p)
            std::sort(x.begin(), x.end());
        return p;
    };
    const auto pa = profile(a), pb = profile(b);
    {
        auto sa = pa, sb = pb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return false;
    }
    std::set<Face> target(b.maximal_faces().begin(), b.maximal_faces().end());
    const int n = a.size();
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    // A partial map is viable if every maximal face of a that is fully mapped lands on
    // a face of b.
    auto viable = [&](int upto) {
        for (const auto& f : a.maximal_faces()) {
            if (f.back() > upto)
                continue;
            std::vector<int> img;
            for (int v : f)
                img.push_back(map[v]);
            if (!b.contains_face(img))
                return false;
        }
        return true;
    };
    std::function<bool(int)> go = [&](int v) -> bool {
        if (v == n) {
            for (const auto& f : a.maximal_faces()) {
                Face img;
                for (int x : f)
                    img.push_back(map[x]);
                std::sort(img.begin(), img.end());
                if (!target.count(img))
                    return false;
            }
            return true;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || pa[v] != pb[w])
                continue;
            map[v] = w;
            used[w] = 1;
            if (viable(v) && go(v + 1))
                return true;
            used[w] = 0;
            map[v] = -1;
        }
        return false;
    };
    return go(0);
}

}  // namespace dichotomy

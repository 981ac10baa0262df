#include "dichotomy/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dichotomy {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0)
{
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw InputError("ragged matrix literal");
        for (long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw InputError("matrix shapes do not match");
    IntMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0)
                continue;
            for (int j = 0; j < b.cols_; ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const mpz_class& x) { return x == 0; });
}

mpz_class determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw InputError("determinant of a non-square matrix");
    const int n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

int SmithForm::rank() const
{
    return static_cast<int>(std::count_if(diagonal.begin(), diagonal.end(), [](const mpz_class& x) { return x != 0; }));
}

namespace {

class SmithReducer {
public:
    SmithReducer(const IntMatrix& m, bool track)
        : a_(m), track_(track), u_(track ? IntMatrix::identity(m.rows()) : IntMatrix()),
          v_(track ? IntMatrix::identity(m.cols()) : IntMatrix())
    {
    }

    SmithForm run()
    {
        const int r = a_.rows(), c = a_.cols();
        const int n = std::min(r, c);
        for (int t = 0; t < n; ++t) {
            int pi = -1, pj = -1;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j)
                    if (a_(i, j) != 0 && (pi < 0 || abs(a_(i, j)) < abs(a_(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0)
                break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            reduce_at(t);
            if (a_(t, t) < 0)
                negate_row(t);
        }
        SmithForm out;
        for (int i = 0; i < n; ++i)
            out.diagonal.push_back(a_(i, i));
        out.u = std::move(u_);
        out.v = std::move(v_);
        return out;
    }

private:
    void reduce_at(int t)
    {
        const int r = a_.rows(), c = a_.cols();
        while (true) {
            bool clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (a_(i, t) == 0)
                    continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (a_(i, t) != 0)
                    clean = false;
            }
            for (int j = t + 1; j < c; ++j) {
                if (a_(t, j) == 0)
                    continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (a_(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // A nonzero remainder is smaller than the pivot: move it into place.
                int bi = t, bj = t;
                for (int i = t + 1; i < r; ++i)
                    if (a_(i, t) != 0 && abs(a_(i, t)) < abs(a_(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (int j = t + 1; j < c; ++j)
                    if (a_(t, j) != 0 && abs(a_(t, j)) < abs(a_(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            int bad = -1;
            for (int i = t + 1; i < r && bad < 0; ++i)
                for (int j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad < 0)
                return;
            add_row(t, bad, 1);
        }
    }

    void swap_rows(int i, int j)
    {
        if (i == j)
            return;
        for (int k = 0; k < a_.cols(); ++k)
            std::swap(a_(i, k), a_(j, k));
        if (track_)
            for (int k = 0; k < u_.cols(); ++k)
                std::swap(u_(i, k), u_(j, k));
    }

    void swap_cols(int i, int j)
    {
        if (i == j)
            return;
        for (int k = 0; k < a_.rows(); ++k)
            std::swap(a_(k, i), a_(k, j));
        if (track_)
            for (int k = 0; k < v_.rows(); ++k)
                std::swap(v_(k, i), v_(k, j));
    }

    // row_dst += f * row_src
    void add_row(int dst, int src, const mpz_class& f)
    {
        for (int k = 0; k < a_.cols(); ++k)
            if (a_(src, k) != 0)
                a_(dst, k) += f * a_(src, k);
        if (track_)
            for (int k = 0; k < u_.cols(); ++k)
                if (u_(src, k) != 0)
                    u_(dst, k) += f * u_(src, k);
    }

    void add_col(int dst, int src, const mpz_class& f)
    {
        for (int k = 0; k < a_.rows(); ++k)
            if (a_(k, src) != 0)
                a_(k, dst) += f * a_(k, src);
        if (track_)
            for (int k = 0; k < v_.rows(); ++k)
                if (v_(k, src) != 0)
                    v_(k, dst) += f * v_(k, src);
    }

    void negate_row(int i)
    {
        for (int k = 0; k < a_.cols(); ++k)
            a_(i, k) = -a_(i, k);
        if (track_)
            for (int k = 0; k < u_.cols(); ++k)
                u_(i, k) = -u_(i, k);
    }

    IntMatrix a_;
    bool track_;
    IntMatrix u_;
    IntMatrix v_;
};

std::int64_t to_int64(const mpz_class& x)
{
    if (!x.fits_slong_p())
        throw InternalInconsistency("homology coefficient does not fit in 64 bits");
    return x.get_si();
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    return SmithReducer(m, true).run();
}

ChainComplexData boundary_matrices(const Complex& c)
{
    ChainComplexData out;
    const int dim = c.dimension();
    out.bases.resize(static_cast<std::size_t>(dim + 1));
    for (auto& f : c.all_faces())
        out.bases[f.size() - 1].push_back(std::move(f));
    for (auto& b : out.bases)
        std::sort(b.begin(), b.end());
    if (dim < 0)
        return out;
    out.boundaries.emplace_back(0, static_cast<int>(out.bases[0].size()));
    for (int k = 1; k <= dim; ++k) {
        const auto& lower = out.bases[k - 1];
        const auto& upper = out.bases[k];
        std::map<Face, int> row_of;
        for (std::size_t i = 0; i < lower.size(); ++i)
            row_of.emplace(lower[i], static_cast<int>(i));
        IntMatrix m(static_cast<int>(lower.size()), static_cast<int>(upper.size()));
        for (std::size_t j = 0; j < upper.size(); ++j) {
            for (std::size_t i = 0; i < upper[j].size(); ++i) {
                Face sub = upper[j];
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
                m(row_of.at(sub), static_cast<int>(j)) = i % 2 == 0 ? 1 : -1;
            }
        }
        out.boundaries.push_back(std::move(m));
    }
    return out;
}

std::vector<std::vector<int>> connected_components(const Complex& c)
{
    std::vector<int> parent(static_cast<std::size_t>(c.size()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& f : c.maximal_faces())
        for (int v : f) {
            const int a = find(f[0]), b = find(v);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < c.size(); ++v)
        groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups)
        out.push_back(std::move(members));
    return out;
}

bool HomologyResult::trivial() const
{
    for (auto b : betti)
        if (b)
            return false;
    for (const auto& t : torsion)
        if (!t.empty())
            return false;
    return true;
}

HomologyResult integral_homology(const Complex& c)
{
    const auto chain = boundary_matrices(c);
    const int dim = c.dimension();
    HomologyResult out;
    if (dim < 0)
        return out;
    std::vector<int> rank(static_cast<std::size_t>(dim + 2), 0);
    std::vector<std::vector<std::int64_t>> torsion_from(static_cast<std::size_t>(dim + 2));
    for (int k = 1; k <= dim; ++k) {
        const auto snf = SmithReducer(chain.boundaries[k], false).run();
        rank[k] = snf.rank();
        for (const auto& d : snf.diagonal)
            if (d > 1)
                torsion_from[k].push_back(to_int64(d));
    }
    for (int k = 0; k <= dim; ++k) {
        const auto n = static_cast<std::int64_t>(chain.bases[k].size());
        out.betti.push_back(n - rank[k] - rank[k + 1]);
        auto t = torsion_from[k + 1];
        std::sort(t.begin(), t.end());
        out.torsion.push_back(std::move(t));
    }
    return out;
}

HomologyResult reduced_homology(const Complex& c)
{
    auto h = integral_homology(c);
    if (!h.betti.empty())
        --h.betti[0];
    return h;
}

std::int64_t euler_characteristic(const Complex& c)
{
    std::int64_t chi = 0;
    const auto counts = c.face_counts();
    for (std::size_t k = 0; k < counts.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(counts[k]);
    return chi;
}

CollapseResult collapse(const Complex& c)
{
    auto faces_vec = c.all_faces();
    std::set<Face> faces(faces_vec.begin(), faces_vec.end());
    // cofaces[f] = number of faces strictly containing f
    std::map<Face, int> cofaces;
    for (const auto& f : faces)
        cofaces[f] = 0;
    auto for_proper_subsets = [](const Face& f, auto fn) {
        const std::size_t k = f.size();
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
            Face s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1U)
                    s.push_back(f[i]);
            fn(s);
        }
    };
    for (const auto& f : faces)
        for_proper_subsets(f, [&](const Face& s) { ++cofaces[s]; });

    // Faces ordered by decreasing size, then lexicographically.
    auto order = [](const Face& a, const Face& b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a < b;
    };
    while (true) {
        std::vector<Face> candidates;
        for (const auto& [f, n] : cofaces)
            if (n == 1)
                candidates.push_back(f);
        if (candidates.empty())
            break;
        std::sort(candidates.begin(), candidates.end(), order);
        const Face sigma = candidates.front();
        Face tau;
        for (const auto& f : faces) {
            if (f.size() == sigma.size() + 1 && std::includes(f.begin(), f.end(), sigma.begin(), sigma.end())) {
                tau = f;
                break;
            }
        }
        for (const Face* g : {static_cast<const Face*>(&tau), &sigma}) {
            for_proper_subsets(*g, [&](const Face& s) { --cofaces[s]; });
            faces.erase(*g);
            cofaces.erase(*g);
        }
    }
    std::set<int> remaining;
    std::vector<Face> remaining_faces;
    bool only_points = true;
    for (const auto& f : faces) {
        remaining.insert(f.begin(), f.end());
        remaining_faces.push_back(f);
        if (f.size() > 1)
            only_points = false;
    }
    std::vector<int> keep(remaining.begin(), remaining.end());
    std::vector<int> pos(static_cast<std::size_t>(c.size()), -1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        pos[keep[i]] = static_cast<int>(i);
        labels.push_back(c.label(keep[i]));
    }
    for (auto& f : remaining_faces)
        for (auto& v : f)
            v = pos[v];
    CollapseResult out;
    out.reduced = Complex::from_index_faces(std::move(labels), std::move(remaining_faces));
    out.fully_collapsed =
        only_points && static_cast<std::size_t>(out.reduced.size()) == connected_components(c).size();
    return out;
}

std::vector<ComponentReport> component_contractibility(const Complex& c)
{
    std::vector<ComponentReport> out;
    for (const auto& comp : connected_components(c)) {
        ComponentReport r;
        r.vertices = comp;
        const Complex sub = induced_subcomplex(c, comp);
        if (collapse(sub).fully_collapsed) {
            r.verdict = Contractibility::Contractible;
        }
        else {
            const auto h = reduced_homology(sub);
            r.verdict = Contractibility::Inconclusive;
            for (std::size_t k = 0; k < h.betti.size(); ++k) {
                if (h.betti[k] == 0 && h.torsion[k].empty())
                    continue;
                std::string g;
                if (h.betti[k] == 1)
                    g = "Z";
                else if (h.betti[k] > 1)
                    g = "Z^" + std::to_string(h.betti[k]);
                for (auto t : h.torsion[k])
                    g += (g.empty() ? "" : "+") + std::string("Z/") + std::to_string(t);
                r.verdict = Contractibility::NotContractible;
                r.obstruction_dimension = static_cast<int>(k);
                r.obstruction_group = g;
                break;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string to_string(Contractibility c)
{
    switch (c) {
    case Contractibility::Contractible:
        return "CONTRACTIBLE";
    case Contractibility::NotContractible:
        return "NOT_CONTRACTIBLE";
    case Contractibility::Inconclusive:
        return "INCONCLUSIVE";
    }
    return {};
}

}  // namespace dichotomy

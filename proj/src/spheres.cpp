#include "dichotomy/spheres.hpp"

#include <algorithm>
#include <map>

namespace dichotomy {

namespace {

int mod(int a, int n)
{
    return ((a % n) + n) % n;
}

std::string level_label(const std::vector<int>& coords, int level, int n, int m)
{
    if (level == 0)
        return std::to_string(mod(coords[0], n) + 1);
    const int x = coords[level];
    if (x == 0)
        return "(*,0)";
    if (x == m)
        return "(*," + std::to_string(m) + ")";
    return "(" + level_label(coords, level - 1, n, m) + "," + std::to_string(x) + ")";
}

}  // namespace

int Hypercube::vertex_at(const std::vector<int>& coords) const
{
    if (static_cast<int>(coords.size()) != meta.d)
        throw InputError("grid point has wrong dimension");
    for (int i = 1; i < meta.d; ++i)
        if (coords[i] < 0 || coords[i] > meta.m)
            throw InputError("grid coordinate out of range");
    return complex.index(level_label(coords, meta.d - 1, meta.n, meta.m));
}

Hypercube hypercube_complex(int d, int n, int m)
{
    if (d < 1 || n < 3 || m < 3)
        throw InputError("hypercube needs d >= 1, n >= 3, m >= 3");
    Complex h = cycle(n);
    const Complex p = path(m);
    for (int level = 2; level <= d; ++level) {
        const Complex prod = product(h, p);
        std::vector<std::vector<int>> classes;
        std::vector<std::string> class_labels;
        std::vector<int> bottom, top;
        for (int a = 0; a < h.size(); ++a) {
            for (int t = 0; t <= m; ++t) {
                const int v = prod.index("(" + h.label(a) + "," + std::to_string(t) + ")");
                if (t == 0) {
                    bottom.push_back(v);
                }
                else if (t == m) {
                    top.push_back(v);
                }
                else {
                    classes.push_back({v});
                    class_labels.push_back(prod.label(v));
                }
            }
        }
        classes.push_back(bottom);
        class_labels.push_back("(*,0)");
        classes.push_back(top);
        class_labels.push_back("(*," + std::to_string(m) + ")");
        h = quotient(prod, classes, class_labels);
    }
    Hypercube out{std::move(h), {d, n, m, {}}};
    out.meta.coords.assign(static_cast<std::size_t>(out.complex.size()), {});
    std::vector<int> x(static_cast<std::size_t>(d), 0);
    while (true) {
        const int v = out.vertex_at(x);
        if (out.meta.coords[v].empty())
            out.meta.coords[v] = x;
        int i = d - 1;
        while (i >= 0 && ++x[i] == (i == 0 ? n : m + 1)) {
            x[i] = 0;
            --i;
        }
        if (i < 0)
            break;
    }
    return out;
}

std::vector<std::vector<int>> round_vertex(int d, const std::vector<int>& coords)
{
    if (static_cast<int>(coords.size()) != d)
        throw InputError("round_vertex: wrong number of coordinates");
    for (int x : coords)
        if (x < 0 || x > 2 * d)
            throw InputError("round_vertex: coordinate outside [0, 2d]");
    std::vector<char> ambiguous(static_cast<std::size_t>(d), 0);
    for (int t = 0; t <= d; ++t) {
        int count = 0;
        for (int x : coords)
            count += (x >= d - t && x <= d + t);
        if (count <= t) {
            for (int i = 0; i < d; ++i)
                ambiguous[i] = coords[i] >= d - t && coords[i] <= d + t;
            break;
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> e(static_cast<std::size_t>(d));
    for (int mask = 0; mask < (1 << d); ++mask) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            e[i] = (mask >> (d - 1 - i)) & 1;
            if (!ambiguous[i])
                ok = e[i] == (coords[i] > d ? 1 : 0);
        }
        if (ok)
            out.push_back(e);
    }
    return out;
}

std::string cube_face_label(const std::vector<std::vector<int>>& face)
{
    std::string s = "{";
    for (std::size_t i = 0; i < face.size(); ++i) {
        if (i)
            s += ',';
        for (int b : face[i])
            s += std::to_string(b);
    }
    return s + "}";
}

SimplicialMap subdivision_approx_map(int d, int n, int m)
{
    const Hypercube fine = hypercube_complex(d, 2 * d * n, 2 * d * m);
    const Hypercube coarse = hypercube_complex(d, n, m);
    const Complex sub = subdivision(coarse.complex);
    const int step = 2 * d;

    std::vector<int> assignment(static_cast<std::size_t>(fine.complex.size()), -1);
    std::vector<int> y(static_cast<std::size_t>(d), 0);
    std::vector<int> block(static_cast<std::size_t>(d)), offset(static_cast<std::size_t>(d));
    while (true) {
        for (int i = 0; i < d; ++i) {
            const int blocks = i == 0 ? n : m;
            block[i] = std::min(y[i] / step, blocks - 1);
            offset[i] = y[i] - step * block[i];
        }
        std::vector<int> image;
        for (const auto& e : round_vertex(d, offset)) {
            std::vector<int> x(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                x[i] = block[i] + e[i];
            image.push_back(coarse.vertex_at(x));
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::string label = "{";
        for (std::size_t i = 0; i < image.size(); ++i)
            label += (i ? "," : "") + coarse.complex.label(image[i]);
        const int target = sub.index(label + "}");
        const int v = fine.vertex_at(y);
        if (assignment[v] >= 0 && assignment[v] != target)
            throw InternalInconsistency("rounding map is not well defined on glued vertices");
        assignment[v] = target;

        int i = d - 1;
        while (i >= 0 && ++y[i] == (i == 0 ? 2 * d * n : 2 * d * m + 1)) {
            y[i] = 0;
            --i;
        }
        if (i < 0)
            break;
    }
    return SimplicialMap{fine.complex, sub, std::move(assignment)};
}

ContractionCertificate contract_loop(const Complex& a, const WitnessTable& c, const std::vector<int>& loop)
{
    const auto* carrier = std::get_if<Complex>(&c.carrier);
    if (!carrier || !(*carrier == a))
        throw InputError("witness must be defined on the carrier complex");
    const int n = c.arity;
    const int k = static_cast<int>(loop.size());
    if (k < 1)
        throw InputError("loop must visit at least one vertex");
    for (int v : loop)
        if (v < 0 || v >= a.size())
            throw InputError("loop vertex outside the carrier");
    for (int i = 0; i < k; ++i)
        if (!a.contains_face({loop[i], loop[(i + 1) % k]}))
            throw InputError("loop is not simplicial at position " + std::to_string(i));
    if (n < 3 * k)
        throw InputError("insufficient arity for padding");
    const auto check = verify_witness(c, builtin_system(Builtin::Cyclic, n));
    if (!check.ok)
        throw InputError("witness is not an idempotent cyclic polymorphism: " + check.violations.front());

    ContractionCertificate cert{a, c, loop, {}, {}, {}};
    for (int i = 0; i < k; ++i)
        cert.repeats.push_back(n / k + (i < n % k ? 1 : 0));
    for (int i = 0; i < k; ++i)
        for (int r = 0; r < cert.repeats[i]; ++r)
            cert.padded.push_back(loop[i]);
    const auto& f = cert.padded;
    std::vector<char> equality(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        equality[x] = f[x] == f[mod(x - 1, n)];

    // even stage 2i: g_j(x) = f(x + min(j, i)), j = 1..n
    auto even = [&](int i, int j, int x) { return f[mod(x + std::min(j, i), n)]; };
    std::vector<int> args(static_cast<std::size_t>(n));
    for (int s = 0; s <= 2 * n; ++s) {
        std::vector<int> h(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            for (int j = 1; j <= n; ++j) {
                if (s % 2 == 0)
                    args[j - 1] = even(s / 2, j, x);
                else
                    args[j - 1] = equality[x] ? even(s / 2 + 1, j, x) : even(s / 2, j, x);
            }
            h[x] = c.at(args);
        }
        cert.stages.push_back(std::move(h));
    }
    const auto verdict = verify_contraction(cert);
    if (!verdict.ok)
        throw InternalInconsistency("generated contraction fails verification: " + verdict.violation);
    return cert;
}

ContractionCheck verify_contraction(const ContractionCertificate& cert)
{
    const Complex& a = cert.carrier;
    const int n = cert.witness.arity;
    auto fail = [](std::string msg) { return ContractionCheck{false, std::move(msg)}; };
    auto lbl = [&](int v) { return v >= 0 && v < a.size() ? a.label(v) : std::string("?"); };

    if (static_cast<int>(cert.stages.size()) != 2 * n + 1)
        return fail("expected " + std::to_string(2 * n + 1) + " stages, found " + std::to_string(cert.stages.size()));
    for (std::size_t s = 0; s < cert.stages.size(); ++s) {
        if (static_cast<int>(cert.stages[s].size()) != n)
            return fail("stage " + std::to_string(s) + " has wrong length");
        for (int v : cert.stages[s])
            if (v < 0 || v >= a.size())
                return fail("stage " + std::to_string(s) + " leaves the carrier");
    }

    // (iii) h^0 is the padded loop, and the padding only repeats loop vertices.
    if (cert.repeats.size() != cert.loop.size() || static_cast<int>(cert.padded.size()) != n)
        return fail("padding record inconsistent with the loop");
    std::size_t pos = 0;
    for (std::size_t i = 0; i < cert.loop.size(); ++i) {
        if (cert.repeats[i] < 1)
            return fail("padding drops a loop vertex");
        for (int r = 0; r < cert.repeats[i]; ++r, ++pos)
            if (pos >= cert.padded.size() || cert.padded[pos] != cert.loop[i])
                return fail("padded loop does not repeat the loop at position " + std::to_string(pos));
    }
    if (pos != cert.padded.size())
        return fail("padding length mismatch");
    if (cert.stages.front() != cert.padded)
        return fail("first stage differs from the padded loop");

    // (i) every stage is a simplicial loop on cycle(n); (ii) consecutive stages are adjacent.
    for (std::size_t s = 0; s < cert.stages.size(); ++s) {
        const auto& h = cert.stages[s];
        for (int x = 0; x < n; ++x) {
            const int y = (x + 1) % n;
            if (!a.contains_face({h[x], h[y]}))
                return fail("stage " + std::to_string(s) + ", edge {" + std::to_string(x) + "," + std::to_string(y) +
                            "}: {" + lbl(h[x]) + "," + lbl(h[y]) + "} is not a face");
            if (s + 1 < cert.stages.size()) {
                const auto& g = cert.stages[s + 1];
                if (!a.contains_face({h[x], h[y], g[x], g[y]}))
                    return fail("stages " + std::to_string(s) + "-" + std::to_string(s + 1) + ", edge {" +
                                std::to_string(x) + "," + std::to_string(y) + "}: {" + lbl(h[x]) + "," + lbl(h[y]) +
                                "," + lbl(g[x]) + "," + lbl(g[y]) + "} is not a face");
            }
        }
    }
    // (iv) the last stage is constant.
    const auto& last = cert.stages.back();
    for (int x = 1; x < n; ++x)
        if (last[x] != last[0])
            return fail("final stage is not constant: positions 0 and " + std::to_string(x) + " take " +
                        lbl(last[0]) + " and " + lbl(last[x]));
    return {};
}

}  // namespace dichotomy

#include "dichotomy/csp.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>
#include <thread>

namespace dichotomy {

namespace {

constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

Csp::Csp(int domain_size) : domain_size_(domain_size)
{
    if (domain_size < 0 || domain_size > max_domain_size)
        throw InputError("template domain exceeds " + std::to_string(max_domain_size) + " elements");
}

std::uint64_t Csp::full_mask() const
{
    return domain_size_ == 64 ? ~std::uint64_t{0} : bit(domain_size_) - 1;
}

int Csp::add_var(std::uint64_t mask)
{
    initial_.push_back(mask & full_mask());
    return num_vars() - 1;
}

int Csp::add_table(int arity, std::vector<std::vector<int>> tuples)
{
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != arity)
            throw InputError("table tuple has wrong arity");
        for (int v : t)
            if (v < 0 || v >= domain_size_)
                throw InputError("table value out of range");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    tables_.push_back(std::move(tuples));
    table_arity_.push_back(arity);
    return static_cast<int>(tables_.size()) - 1;
}

void Csp::add_table_constraint(std::vector<int> scope, int table)
{
    if (static_cast<int>(scope.size()) != table_arity_.at(table))
        throw InputError("constraint scope does not match table arity");
    // pattern[i] = first position holding the same variable as position i
    std::vector<int> pattern(scope.size());
    std::vector<int> distinct;
    std::vector<int> keep;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        pattern[i] = static_cast<int>(i);
        for (std::size_t j = 0; j < i; ++j) {
            if (scope[j] == scope[i]) {
                pattern[i] = static_cast<int>(j);
                break;
            }
        }
        if (pattern[i] == static_cast<int>(i)) {
            distinct.push_back(scope[i]);
            keep.push_back(static_cast<int>(i));
        }
    }
    if (distinct.size() == scope.size()) {
        if (tables_[table].empty())
            contradiction_ = true;
        constraints_.push_back({false, std::move(scope), table});
        return;
    }
    auto key = std::make_pair(table, pattern);
    auto it = compressed_.find(key);
    int id;
    if (it != compressed_.end()) {
        id = it->second;
    }
    else {
        std::vector<std::vector<int>> rows;
        for (const auto& t : tables_[table]) {
            bool ok = true;
            for (std::size_t i = 0; i < t.size() && ok; ++i)
                ok = t[i] == t[pattern[i]];
            if (!ok)
                continue;
            std::vector<int> r;
            for (int p : keep)
                r.push_back(t[p]);
            rows.push_back(std::move(r));
        }
        id = add_table(static_cast<int>(keep.size()), std::move(rows));
        compressed_.emplace(key, id);
    }
    if (tables_[id].empty())
        contradiction_ = true;
    constraints_.push_back({false, std::move(distinct), id});
}

int Csp::add_face_family(const std::vector<Face>& maximal_faces)
{
    std::vector<std::uint64_t> masks;
    for (const auto& f : maximal_faces) {
        std::uint64_t m = 0;
        for (int v : f) {
            if (v < 0 || v >= domain_size_)
                throw InputError("face value out of range");
            m |= bit(v);
        }
        masks.push_back(m);
    }
    families_.push_back(std::move(masks));
    return static_cast<int>(families_.size()) - 1;
}

void Csp::add_face_constraint(std::vector<int> scope, int family)
{
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    if (families_.at(family).empty() && !scope.empty())
        contradiction_ = true;
    constraints_.push_back({true, std::move(scope), family});
}

namespace {

class Searcher {
public:
    Searcher(const Csp& csp, const SolveOptions& options) : csp_(csp), opt_(options)
    {
        watchers_.resize(static_cast<std::size_t>(csp.num_vars()));
        const auto& cons = csp.constraints();
        for (std::size_t c = 0; c < cons.size(); ++c)
            for (int v : cons[c].scope)
                watchers_[v].push_back(static_cast<int>(c));
        in_projection_.assign(static_cast<std::size_t>(csp.num_vars()), 0);
        for (int v : opt_.projection)
            in_projection_[v] = 1;
        queued_.assign(cons.size(), 0);
        weight_.assign(cons.size(), 1);
        wdeg_.assign(static_cast<std::size_t>(csp.num_vars()), 0);
        for (int v = 0; v < csp.num_vars(); ++v)
            wdeg_[v] = watchers_[v].size();
    }

    // Full propagation from scratch; false on wipe-out.
    bool propagate_all(std::vector<std::uint64_t>& dom)
    {
        if (csp_.contradiction())
            return false;
        for (auto d : dom)
            if (!d)
                return false;
        std::vector<int> queue(csp_.constraints().size());
        std::iota(queue.begin(), queue.end(), 0);
        std::fill(queued_.begin(), queued_.end(), 1);
        return run_queue(dom, queue);
    }

    bool propagate_from(std::vector<std::uint64_t>& dom, int var)
    {
        std::vector<int> queue;
        for (int c : watchers_[var]) {
            queue.push_back(c);
            queued_[c] = 1;
        }
        return run_queue(dom, queue);
    }

    void run(std::vector<std::uint64_t> dom) { search(dom); }

    // Root-split worker: fix `var` to `value` before searching.
    void run_branch(std::vector<std::uint64_t> dom, int var, int value)
    {
        ++nodes_;
        dom[var] = bit(value);
        if (propagate_from(dom, var))
            search(dom);
    }

    // Smallest domain size / weighted degree, ties by index.
    int choose(const std::vector<std::uint64_t>& dom, bool projecting) const
    {
        int best = -1;
        std::uint64_t best_size = 0, best_w = 1;
        for (int v = 0; v < csp_.num_vars(); ++v) {
            if (projecting && !in_projection_[v])
                continue;
            const std::uint64_t s = static_cast<std::uint64_t>(std::popcount(dom[v]));
            if (s < 2)
                continue;
            const std::uint64_t w = std::max<std::uint64_t>(wdeg_[v], 1);
            if (best < 0 || s * best_w < best_size * w) {
                best = v;
                best_size = s;
                best_w = w;
            }
        }
        return best;
    }
    int choose(const std::vector<std::uint64_t>& dom) const { return choose(dom, !opt_.projection.empty()); }

    std::vector<std::vector<int>> solutions;
    std::uint64_t count = 0;
    std::uint64_t nodes_ = 0;
    bool budget_hit = false;
    bool stop = false;

private:
    bool run_queue(std::vector<std::uint64_t>& dom, std::vector<int>& queue)
    {
        const auto& cons = csp_.constraints();
        bool ok = true;
        while (!queue.empty()) {
            const int c = queue.back();
            queue.pop_back();
            queued_[c] = 0;
            if (!ok)
                continue;
            changed_.clear();
            if (!(cons[c].face ? revise_face(dom, cons[c]) : revise_table(dom, cons[c]))) {
                ok = false;
                ++weight_[c];
                for (int v : cons[c].scope)
                    ++wdeg_[v];
                continue;
            }
            for (int v : changed_) {
                for (int d : watchers_[v]) {
                    if (d != c && !queued_[d]) {
                        queued_[d] = 1;
                        queue.push_back(d);
                    }
                }
            }
        }
        return ok;
    }

    bool revise_table(std::vector<std::uint64_t>& dom, const Csp::Constraint& con)
    {
        const auto& scope = con.scope;
        const std::size_t k = scope.size();
        support_.assign(k, 0);
        for (const auto& t : csp_.tables()[con.data]) {
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                ok = (dom[scope[i]] >> t[i]) & 1U;
            if (!ok)
                continue;
            for (std::size_t i = 0; i < k; ++i)
                support_[i] |= bit(t[i]);
        }
        return narrow(dom, scope);
    }

    bool revise_face(std::vector<std::uint64_t>& dom, const Csp::Constraint& con)
    {
        const auto& scope = con.scope;
        const std::size_t k = scope.size();
        support_.assign(k, 0);
        for (std::uint64_t m : csp_.face_families()[con.data]) {
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                ok = (dom[scope[i]] & m) != 0;
            if (!ok)
                continue;
            for (std::size_t i = 0; i < k; ++i)
                support_[i] |= dom[scope[i]] & m;
        }
        return narrow(dom, scope);
    }

    bool narrow(std::vector<std::uint64_t>& dom, const std::vector<int>& scope)
    {
        for (std::size_t i = 0; i < scope.size(); ++i) {
            const std::uint64_t nd = dom[scope[i]] & support_[i];
            if (nd != dom[scope[i]]) {
                dom[scope[i]] = nd;
                if (!nd)
                    return false;
                changed_.push_back(scope[i]);
            }
        }
        return true;
    }

    bool tick()
    {
        ++nodes_;
        if (opt_.node_budget && nodes_ > opt_.node_budget) {
            budget_hit = true;
            stop = true;
        }
        return !stop;
    }

    void record(const std::vector<std::uint64_t>& dom)
    {
        ++count;
        if (opt_.mode != SolveMode::Count) {
            std::vector<int> sol;
            if (opt_.projection.empty()) {
                for (auto d : dom)
                    sol.push_back(std::countr_zero(d));
            }
            else {
                for (int v : opt_.projection)
                    sol.push_back(std::countr_zero(dom[v]));
            }
            solutions.push_back(std::move(sol));
        }
        if (opt_.mode == SolveMode::First)
            stop = true;
    }

    // Existence of a completion (used once all projection variables are fixed).
    bool exists(std::vector<std::uint64_t>& dom)
    {
        if (!tick())
            return false;
        const int best = choose(dom, false);
        if (best < 0)
            return true;
        for (std::uint64_t rest = dom[best]; rest; rest &= rest - 1) {
            const int value = std::countr_zero(rest);
            std::vector<std::uint64_t> next(dom);
            next[best] = bit(value);
            if (propagate_from(next, best) && exists(next))
                return true;
            if (stop)
                return false;
        }
        return false;
    }

    void search(std::vector<std::uint64_t>& dom)
    {
        if (!tick())
            return;
        const int var = choose(dom);
        if (var < 0) {
            if (opt_.projection.empty()) {
                record(dom);
            }
            else {
                std::vector<std::uint64_t> copy(dom);
                if (exists(copy))
                    record(dom);
            }
            return;
        }
        for (std::uint64_t rest = dom[var]; rest; rest &= rest - 1) {
            const int value = std::countr_zero(rest);
            std::vector<std::uint64_t> next(dom);
            next[var] = bit(value);
            if (propagate_from(next, var))
                search(next);
            if (stop)
                return;
        }
    }

    const Csp& csp_;
    const SolveOptions& opt_;
    std::vector<std::vector<int>> watchers_;
    std::vector<char> in_projection_;
    std::vector<char> queued_;
    std::vector<std::uint64_t> support_;
    std::vector<int> changed_;
    std::vector<std::uint64_t> weight_;
    std::vector<std::uint64_t> wdeg_;
};

}  // namespace

std::vector<std::uint64_t> propagate_initial(const Csp& csp)
{
    SolveOptions opt;
    Searcher s(csp, opt);
    auto dom = csp.initial_domains();
    if (!s.propagate_all(dom))
        return {};
    return dom;
}

SolveResult solve_csp(const Csp& csp, const SolveOptions& options)
{
    for (int v : options.projection)
        if (v < 0 || v >= csp.num_vars())
            throw InputError("projection variable out of range");
    SolveResult result;
    Searcher root(csp, options);
    auto dom = csp.initial_domains();
    if (!root.propagate_all(dom)) {
        result.nodes = 1;
        return result;
    }
    const int split = options.jobs > 1 ? root.choose(dom) : -1;
    if (split < 0) {
        root.run(std::move(dom));
        result.complete = !root.budget_hit;
        result.solutions = std::move(root.solutions);
        result.count = root.count;
        result.nodes = root.nodes_;
    }
    else {
        std::vector<int> values;
        for (std::uint64_t rest = dom[split]; rest; rest &= rest - 1)
            values.push_back(std::countr_zero(rest));
        std::vector<std::unique_ptr<Searcher>> workers;
        for (std::size_t i = 0; i < values.size(); ++i)
            workers.push_back(std::make_unique<Searcher>(csp, options));
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < values.size(); i = next++)
                workers[i]->run_branch(dom, split, values[i]);
        };
        std::vector<std::thread> threads;
        const int n = std::min<int>(options.jobs, static_cast<int>(values.size()));
        for (int t = 0; t < n; ++t)
            threads.emplace_back(work);
        for (auto& t : threads)
            t.join();
        result.complete = true;
        for (auto& w : workers) {
            result.nodes += w->nodes_;
            if (w->budget_hit)
                result.complete = false;
            if (options.mode == SolveMode::First && result.count > 0)
                continue;
            result.count += w->count;
            for (auto& s : w->solutions)
                result.solutions.push_back(std::move(s));
        }
        if (options.mode == SolveMode::First && result.count > 0)
            result.complete = true;
    }
    if (options.mode == SolveMode::First && result.count > 0)
        result.complete = true;
    if (options.mode == SolveMode::All)
        std::sort(result.solutions.begin(), result.solutions.end());
    return result;
}

// ---------------------------------------------------------------------------

std::optional<int> RelStructure::find(std::string_view label) const
{
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == label)
            return static_cast<int>(i);
    return std::nullopt;
}

int RelStructure::index(std::string_view label) const
{
    auto i = find(label);
    if (!i)
        throw InputError("unknown element " + std::string(label));
    return *i;
}

void RelStructure::normalize()
{
    std::set<std::string> seen;
    for (const auto& d : domain)
        if (!seen.insert(d).second)
            throw InputError("duplicate element " + d);
    for (auto& [name, rel] : relations) {
        if (rel.arity < 1)
            throw InputError("relation " + name + " needs arity >= 1");
        for (const auto& t : rel.tuples) {
            if (static_cast<int>(t.size()) != rel.arity)
                throw InputError("relation " + name + " has a tuple of wrong arity");
            for (int v : t)
                if (v < 0 || v >= size())
                    throw InputError("relation " + name + " uses an element outside the domain");
        }
        std::sort(rel.tuples.begin(), rel.tuples.end());
        rel.tuples.erase(std::unique(rel.tuples.begin(), rel.tuples.end()), rel.tuples.end());
    }
}

std::map<std::string, int> RelStructure::signature() const
{
    std::map<std::string, int> sig;
    for (const auto& [name, rel] : relations)
        sig.emplace(name, rel.arity);
    return sig;
}

Csp structure_network(const RelStructure& instance, const RelStructure& templ, const Precoloring& pre)
{
    if (instance.signature() != templ.signature())
        throw InputError("signature mismatch between instance and template");
    Csp csp(templ.size());
    for (int i = 0; i < instance.size(); ++i)
        csp.add_var();
    for (const auto& [a, b] : pre) {
        if (a < 0 || a >= instance.size() || b < 0 || b >= templ.size())
            throw InputError("precoloring out of range");
        csp.pin(a, b);
    }
    for (const auto& [name, rel] : templ.relations) {
        const auto& inst = instance.relations.at(name);
        if (inst.tuples.empty())
            continue;
        const int table = csp.add_table(rel.arity, rel.tuples);
        for (const auto& t : inst.tuples)
            csp.add_table_constraint(t, table);
    }
    return csp;
}

SolveResult solve(const RelStructure& instance, const RelStructure& templ, const Precoloring& pre,
                  const StructureSolveOptions& options)
{
    const Csp csp = structure_network(instance, templ, pre);
    SolveOptions opt;
    opt.mode = options.mode;
    opt.node_budget = options.node_budget;
    opt.jobs = options.jobs;
    return solve_csp(csp, opt);
}

// ---------------------------------------------------------------------------
// pp-formulas

PPFormula PPFormula::falsity()
{
    PPFormula f;
    f.kind = Kind::False;
    return f;
}

PPFormula PPFormula::atom(std::string symbol, std::vector<std::string> args)
{
    PPFormula f;
    f.kind = Kind::Atom;
    f.name = std::move(symbol);
    f.vars = std::move(args);
    return f;
}

PPFormula PPFormula::eq(std::string a, std::string b)
{
    PPFormula f;
    f.kind = Kind::Eq;
    f.vars = {std::move(a), std::move(b)};
    return f;
}

PPFormula PPFormula::conj(std::vector<PPFormula> parts)
{
    PPFormula f;
    f.kind = Kind::And;
    f.children = std::move(parts);
    return f;
}

PPFormula PPFormula::exists(std::string var, PPFormula body)
{
    PPFormula f;
    f.kind = Kind::Exists;
    f.name = std::move(var);
    f.children.push_back(std::move(body));
    return f;
}

namespace {

void collect_free(const PPFormula& phi, std::vector<std::string>& bound, std::vector<std::string>& out)
{
    using K = PPFormula::Kind;
    auto note = [&](const std::string& v) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    };
    switch (phi.kind) {
    case K::Exists:
        bound.push_back(phi.name);
        collect_free(phi.children.at(0), bound, out);
        bound.pop_back();
        break;
    case K::And:
        for (const auto& c : phi.children)
            collect_free(c, bound, out);
        break;
    case K::Eq:
    case K::Atom:
        for (const auto& v : phi.vars)
            note(v);
        break;
    case K::True:
    case K::False:
        break;
    }
}

void collect_names(const PPFormula& phi, std::set<std::string>& out)
{
    if (phi.kind == PPFormula::Kind::Exists)
        out.insert(phi.name);
    for (const auto& v : phi.vars)
        out.insert(v);
    for (const auto& c : phi.children)
        collect_names(c, out);
}

}  // namespace

std::vector<std::string> free_variables(const PPFormula& phi)
{
    std::vector<std::string> bound, out;
    collect_free(phi, bound, out);
    return out;
}

std::string to_sexpr(const PPFormula& phi)
{
    using K = PPFormula::Kind;
    switch (phi.kind) {
    case K::True:
        return "true";
    case K::False:
        return "false";
    case K::Eq:
        return "(eq " + phi.vars.at(0) + " " + phi.vars.at(1) + ")";
    case K::Atom: {
        std::string s = "(atom " + phi.name;
        for (const auto& v : phi.vars)
            s += " " + v;
        return s + ")";
    }
    case K::Exists:
        return "(exists " + phi.name + " " + to_sexpr(phi.children.at(0)) + ")";
    case K::And: {
        std::string s = "(and";
        for (const auto& c : phi.children)
            s += " " + to_sexpr(c);
        return s + ")";
    }
    }
    return {};
}

namespace {

class SexprParser {
public:
    explicit SexprParser(std::string_view text) : text_(text) {}

    PPFormula parse()
    {
        PPFormula f = formula();
        skip();
        if (pos_ != text_.size())
            fail("trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError("pp-formula parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string word()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
               !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c)
    {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    PPFormula formula()
    {
        if (!peek('(')) {
            const std::string w = word();
            if (w == "true")
                return PPFormula::truth();
            if (w == "false")
                return PPFormula::falsity();
            fail("unexpected token " + w);
        }
        expect('(');
        const std::string head = word();
        PPFormula f;
        if (head == "exists") {
            std::string var = word();
            f = PPFormula::exists(std::move(var), formula());
        }
        else if (head == "and") {
            std::vector<PPFormula> parts;
            while (!peek(')'))
                parts.push_back(formula());
            f = PPFormula::conj(std::move(parts));
        }
        else if (head == "eq" || head == "=") {
            std::string a = word();
            std::string b = word();
            f = PPFormula::eq(std::move(a), std::move(b));
        }
        else if (head == "atom") {
            std::string sym = word();
            std::vector<std::string> args;
            while (!peek(')'))
                args.push_back(word());
            if (args.empty())
                fail("atom without arguments");
            f = PPFormula::atom(std::move(sym), std::move(args));
        }
        else if (head == "true") {
            f = PPFormula::truth();
        }
        else if (head == "false") {
            f = PPFormula::falsity();
        }
        else {
            fail("unknown form " + head);
        }
        expect(')');
        return f;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

struct Compiler {
    const RelStructure& templ;
    Csp& csp;
    std::map<std::string, int> free_ids;
    std::vector<int> parent;
    std::vector<std::pair<std::string, std::vector<int>>> atoms;
    bool contradiction = false;

    int fresh()
    {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }

    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }

    int lookup(const std::string& v, const std::map<std::string, int>& scope)
    {
        auto it = scope.find(v);
        if (it != scope.end())
            return it->second;
        auto jt = free_ids.find(v);
        if (jt != free_ids.end())
            return jt->second;
        const int id = fresh();
        free_ids.emplace(v, id);
        return id;
    }

    void walk(const PPFormula& phi, std::map<std::string, int> scope)
    {
        using K = PPFormula::Kind;
        switch (phi.kind) {
        case K::True:
            break;
        case K::False:
            contradiction = true;
            break;
        case K::Eq: {
            const int a = find(lookup(phi.vars.at(0), scope));
            const int b = find(lookup(phi.vars.at(1), scope));
            parent[std::max(a, b)] = std::min(a, b);
            break;
        }
        case K::Atom: {
            auto it = templ.relations.find(phi.name);
            if (it == templ.relations.end())
                throw InputError("unknown relation symbol " + phi.name);
            if (static_cast<int>(phi.vars.size()) != it->second.arity)
                throw InputError("arity mismatch for " + phi.name);
            std::vector<int> args;
            for (const auto& v : phi.vars)
                args.push_back(lookup(v, scope));
            atoms.emplace_back(phi.name, std::move(args));
            break;
        }
        case K::Exists:
            scope[phi.name] = fresh();
            walk(phi.children.at(0), std::move(scope));
            break;
        case K::And:
            for (const auto& c : phi.children)
                walk(c, scope);
            break;
        }
    }
};

}  // namespace

PPFormula parse_pp_formula(std::string_view text)
{
    return SexprParser(text).parse();
}

std::vector<std::vector<int>> eval_pp_formula(const PPFormula& phi, const RelStructure& templ,
                                              const std::vector<std::string>& free_order)
{
    const auto free = free_variables(phi);
    std::vector<std::string> order = free_order.empty() ? free : free_order;
    for (const auto& v : free)
        if (std::find(order.begin(), order.end(), v) == order.end())
            throw InputError("free variable " + v + " missing from the requested order");

    Csp csp(templ.size());
    Compiler comp{templ, csp, {}, {}, {}, false};
    for (const auto& v : order)
        comp.free_ids.emplace(v, comp.fresh());
    comp.walk(phi, {});

    std::vector<int> var_of(comp.parent.size(), -1);
    auto csp_var = [&](int id) {
        const int r = comp.find(id);
        if (var_of[r] < 0)
            var_of[r] = csp.add_var();
        return var_of[r];
    };
    for (std::size_t id = 0; id < comp.parent.size(); ++id)
        csp_var(static_cast<int>(id));
    std::map<std::string, int> table_of;
    for (const auto& [sym, args] : comp.atoms) {
        auto it = table_of.find(sym);
        if (it == table_of.end()) {
            const auto& rel = templ.relations.at(sym);
            it = table_of.emplace(sym, csp.add_table(rel.arity, rel.tuples)).first;
        }
        std::vector<int> scope;
        for (int a : args)
            scope.push_back(csp_var(a));
        csp.add_table_constraint(std::move(scope), it->second);
    }
    if (comp.contradiction)
        csp.add_contradiction();

    std::vector<int> columns;
    for (const auto& v : order)
        columns.push_back(csp_var(comp.free_ids.at(v)));
    std::vector<int> projection(columns);
    std::sort(projection.begin(), projection.end());
    projection.erase(std::unique(projection.begin(), projection.end()), projection.end());

    SolveOptions opt;
    if (projection.empty()) {
        opt.mode = SolveMode::First;
        return solve_csp(csp, opt).found() ? std::vector<std::vector<int>>{{}} : std::vector<std::vector<int>>{};
    }
    opt.mode = SolveMode::All;
    opt.projection = projection;
    auto res = solve_csp(csp, opt);
    std::vector<std::vector<int>> out;
    for (const auto& s : res.solutions) {
        std::vector<int> row;
        for (int c : columns) {
            const auto pos = std::lower_bound(projection.begin(), projection.end(), c) - projection.begin();
            row.push_back(s[static_cast<std::size_t>(pos)]);
        }
        out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Substituter {
    const std::map<std::string, PPDefinition>& defs;
    std::set<std::string> used;
    int counter = 0;

    std::string fresh(const std::string& base)
    {
        std::string name;
        do {
            name = base + "_" + std::to_string(++counter);
        } while (used.count(name));
        used.insert(name);
        return name;
    }

    // Renames variables via `env`; bound variables always get fresh names.
    PPFormula rename(const PPFormula& phi, std::map<std::string, std::string> env)
    {
        using K = PPFormula::Kind;
        PPFormula out = phi;
        switch (phi.kind) {
        case K::Exists: {
            const std::string n = fresh(phi.name);
            env[phi.name] = n;
            out.name = n;
            out.children[0] = rename(phi.children[0], std::move(env));
            break;
        }
        case K::And:
            for (std::size_t i = 0; i < phi.children.size(); ++i)
                out.children[i] = rename(phi.children[i], env);
            break;
        case K::Eq:
        case K::Atom:
            for (auto& v : out.vars) {
                auto it = env.find(v);
                if (it != env.end())
                    v = it->second;
            }
            break;
        default:
            break;
        }
        return out;
    }

    PPFormula apply(const PPFormula& phi)
    {
        using K = PPFormula::Kind;
        if (phi.kind == K::Atom) {
            auto it = defs.find(phi.name);
            if (it == defs.end())
                return phi;
            const auto& def = it->second;
            if (def.params.size() != phi.vars.size())
                throw InputError("arity mismatch substituting " + phi.name);
            for (const auto& v : free_variables(def.body))
                if (std::find(def.params.begin(), def.params.end(), v) == def.params.end())
                    throw InputError("definition of " + phi.name + " has undeclared free variable " + v);
            std::map<std::string, std::string> env;
            for (std::size_t i = 0; i < def.params.size(); ++i)
                env[def.params[i]] = phi.vars[i];
            return rename(def.body, env);
        }
        PPFormula out = phi;
        for (auto& c : out.children)
            c = apply(c);
        return out;
    }
};

}  // namespace

PPFormula pp_substitute(const PPFormula& theta, const std::map<std::string, PPDefinition>& defs)
{
    Substituter s{defs, {}, 0};
    collect_names(theta, s.used);
    for (const auto& [name, def] : defs) {
        collect_names(def.body, s.used);
        s.used.insert(def.params.begin(), def.params.end());
    }
    return s.apply(theta);
}

}  // namespace dichotomy

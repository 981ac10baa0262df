#include "dichotomy/identities.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dichotomy {

namespace {

constexpr std::size_t max_tuples = 5'000'000;

std::size_t power(std::size_t base, int exp, std::size_t limit, const char* what)
{
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw InputError(std::string(what) + " too large");
        r *= base;
    }
    return r;
}

// Iterates over all vectors in {0..n-1}^len in lexicographic order.
template <class F>
void for_each_vector(int n, int len, F f)
{
    std::vector<int> v(static_cast<std::size_t>(len), 0);
    if (len > 0 && n == 0)
        return;
    while (true) {
        f(std::as_const(v));
        int i = len - 1;
        while (i >= 0 && ++v[i] == n) {
            v[i] = 0;
            --i;
        }
        if (i < 0)
            return;
    }
}

std::size_t encode(std::span<const int> args, int n)
{
    std::size_t idx = 0;
    for (int a : args)
        idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
    return idx;
}

std::string render(const std::string& sym, const std::vector<int>& args, const std::vector<std::string>& names)
{
    std::string s = sym + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            s += ',';
        s += names[args[i]];
    }
    return s + ")";
}

}  // namespace

int carrier_size(const Carrier& c)
{
    return std::visit([](const auto& x) { return x.size(); }, c);
}

std::string carrier_label(const Carrier& c, int v)
{
    if (const auto* cx = std::get_if<Complex>(&c))
        return cx->label(v);
    return std::get<RelStructure>(c).domain.at(static_cast<std::size_t>(v));
}

std::size_t WitnessTable::index(std::span<const int> args) const
{
    if (static_cast<int>(args.size()) != arity)
        throw InputError("wrong number of arguments");
    return encode(args, size());
}

// ---------------------------------------------------------------------------
// DSL

namespace {

struct Token {
    enum Kind { Ident, LParen, RParen, Comma, Equals, Sep, End } kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto err = [&](const std::string& msg) {
        throw InputError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            out.push_back({Token::Sep, "\\n", line, col});
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            const int start_col = col;
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Ident, std::string(text.substr(i, j - i)), line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
        case '(':
            k = Token::LParen;
            break;
        case ')':
            k = Token::RParen;
            break;
        case ',':
            k = Token::Comma;
            break;
        case '=':
            k = Token::Equals;
            break;
        case ';':
            k = Token::Sep;
            break;
        default:
            err(std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), line, col});
        ++i;
        ++col;
    }
    out.push_back({Token::End, "end of input", line, col});
    return out;
}

class DslParser {
public:
    explicit DslParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    IdentitySystem parse()
    {
        skip_seps();
        if (peek().kind == Token::Ident && peek().text == "idempotent" &&
            (toks_[pos_ + 1].kind == Token::Sep || toks_[pos_ + 1].kind == Token::End)) {
            sys_.idempotent = true;
            ++pos_;
        }
        skip_seps();
        while (peek().kind != Token::End) {
            sys_.identities.push_back(identity());
            if (peek().kind != Token::Sep && peek().kind != Token::End)
                fail(peek(), "expected ';' or newline");
            skip_seps();
        }
        if (sys_.identities.empty())
            fail(peek(), "no identities");
        return std::move(sys_);
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const
    {
        throw InputError(std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
    }

    const Token& peek() const { return toks_[pos_]; }

    const Token& expect(Token::Kind k, const char* what)
    {
        if (peek().kind != k)
            fail(peek(), std::string("expected ") + what + ", found '" + peek().text + "'");
        return toks_[pos_++];
    }

    void skip_seps()
    {
        while (peek().kind == Token::Sep)
            ++pos_;
    }

    int variable(const Token& t)
    {
        auto it = std::find(sys_.variables.begin(), sys_.variables.end(), t.text);
        if (it != sys_.variables.end())
            return static_cast<int>(it - sys_.variables.begin());
        sys_.variables.push_back(t.text);
        return sys_.num_vars() - 1;
    }

    std::vector<int> term(const Token& head)
    {
        if (!have_symbol_) {
            sys_.symbol = head.text;
            have_symbol_ = true;
        }
        else if (head.text != sys_.symbol) {
            fail(head, "undeclared symbol " + head.text + " (system uses " + sys_.symbol + ")");
        }
        expect(Token::LParen, "'('");
        std::vector<int> args;
        args.push_back(variable(expect(Token::Ident, "variable")));
        while (peek().kind == Token::Comma) {
            ++pos_;
            args.push_back(variable(expect(Token::Ident, "variable")));
        }
        expect(Token::RParen, "')'");
        if (!have_arity_) {
            sys_.arity = static_cast<int>(args.size());
            have_arity_ = true;
        }
        else if (static_cast<int>(args.size()) != sys_.arity) {
            fail(head, "arity mismatch: " + head.text + " applied to " + std::to_string(args.size()) +
                           " arguments, expected " + std::to_string(sys_.arity));
        }
        return args;
    }

    Identity identity()
    {
        Identity id;
        const Token head = expect(Token::Ident, "function symbol");
        if (peek().kind != Token::LParen)
            fail(peek(), "left side must be an application");
        id.lhs = term(head);
        expect(Token::Equals, "'='");
        const Token rhs = expect(Token::Ident, "term or variable");
        if (peek().kind == Token::LParen)
            id.rhs = term(rhs);
        else
            id.rhs_var = variable(rhs);
        return id;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    IdentitySystem sys_;
    bool have_symbol_ = false;
    bool have_arity_ = false;
};

}  // namespace

IdentitySystem parse_identity_system(std::string_view text)
{
    return DslParser(lex(text)).parse();
}

std::string to_dsl(const IdentitySystem& system)
{
    std::string s;
    if (system.idempotent)
        s += "idempotent;\n";
    for (const auto& id : system.identities) {
        s += render(system.symbol, id.lhs, system.variables) + " = ";
        s += id.rhs_var >= 0 ? system.variables[id.rhs_var] : render(system.symbol, id.rhs, system.variables);
        s += "\n";
    }
    return s;
}

IdentitySystem builtin_system(Builtin which, std::optional<int> n)
{
    auto need = [&](int lo, const char* name) {
        if (!n)
            throw InputError(std::string(name) + " needs an arity");
        if (*n < lo)
            throw InputError(std::string(name) + " needs arity >= " + std::to_string(lo));
        if (*n > 32)
            throw InputError(std::string(name) + " arity too large");
        return *n;
    };
    IdentitySystem s;
    s.idempotent = true;
    switch (which) {
    case Builtin::Majority:
        s.symbol = "M";
        s.arity = 3;
        s.variables = {"x", "y"};
        s.identities = {{{0, 0, 1}, {}, 0}, {{0, 1, 0}, {}, 0}, {{1, 0, 0}, {}, 0}};
        break;
    case Builtin::Cyclic: {
        const int k = need(2, "cyclic");
        s.symbol = "c";
        s.arity = k;
        Identity id;
        for (int i = 0; i < k; ++i) {
            s.variables.push_back("x" + std::to_string(i));
            id.lhs.push_back(i);
            id.rhs.push_back((i + 1) % k);
        }
        s.identities.push_back(id);
        break;
    }
    case Builtin::FullySymmetric: {
        const int k = need(2, "fully_symmetric");
        s.symbol = "f";
        s.arity = k;
        Identity swap, rot;
        for (int i = 0; i < k; ++i) {
            s.variables.push_back("x" + std::to_string(i));
            swap.lhs.push_back(i);
            rot.lhs.push_back(i);
            rot.rhs.push_back((i + 1) % k);
        }
        swap.rhs = swap.lhs;
        std::swap(swap.rhs[0], swap.rhs[1]);
        s.identities.push_back(swap);
        if (rot.rhs != swap.rhs)
            s.identities.push_back(rot);
        break;
    }
    case Builtin::NearUnanimity: {
        const int k = need(3, "near_unanimity");
        s.symbol = "N";
        s.arity = k;
        s.variables = {"x", "y"};
        for (int i = 0; i < k; ++i) {
            Identity id;
            id.lhs.assign(static_cast<std::size_t>(k), 0);
            id.lhs[i] = 1;
            id.rhs_var = 0;
            s.identities.push_back(id);
        }
        break;
    }
    case Builtin::Siggers6:
        s = parse_identity_system("idempotent; s(x,x,y,y,z,z)=s(z,y,x,z,y,x)");
        break;
    case Builtin::Siggers4:
        s = parse_identity_system("idempotent; s(x,y,z,z)=s(z,x,x,y)");
        break;
    }
    return s;
}

IdentitySystem builtin_system(std::string_view spec)
{
    std::string name(spec);
    std::optional<int> n;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        const std::string num = name.substr(colon + 1);
        name = name.substr(0, colon);
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw InputError("invalid arity '" + num + "'");
        n = std::stoi(num);
    }
    if (name == "majority")
        return builtin_system(Builtin::Majority, n);
    if (name == "cyclic")
        return builtin_system(Builtin::Cyclic, n);
    if (name == "fully_symmetric")
        return builtin_system(Builtin::FullySymmetric, n);
    if (name == "near_unanimity")
        return builtin_system(Builtin::NearUnanimity, n);
    if (name == "siggers6")
        return builtin_system(Builtin::Siggers6, n);
    if (name == "siggers4")
        return builtin_system(Builtin::Siggers4, n);
    throw InputError("unknown identity system " + name);
}

// ---------------------------------------------------------------------------
// Verification

Verification verify_polymorphism(const WitnessTable& w)
{
    Verification out;
    const int n = w.size();
    const std::size_t total = power(static_cast<std::size_t>(n), w.arity, max_tuples, "table");
    auto add = [&](std::string msg) {
        out.ok = false;
        if (out.violations.size() < 10)
            out.violations.push_back(std::move(msg));
    };
    if (w.values.size() != total) {
        add("table has " + std::to_string(w.values.size()) + " entries, expected " + std::to_string(total));
        return out;
    }
    for (int v : w.values) {
        if (v < 0 || v >= n) {
            add("table value out of range");
            return out;
        }
    }
    const int k = w.arity;
    auto label_tuple = [&](const std::vector<int>& t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            s += (i ? "," : "") + carrier_label(w.carrier, t[i]);
        return s + ")";
    };

    if (const auto* cx = std::get_if<Complex>(&w.carrier)) {
        const auto& faces = cx->maximal_faces();
        const int m = static_cast<int>(faces.size());
        for_each_vector(m, k, [&](const std::vector<int>& pick) {
            std::vector<int> image;
            std::vector<int> pos(static_cast<std::size_t>(k), 0);
            std::vector<int> args(static_cast<std::size_t>(k));
            while (true) {
                for (int i = 0; i < k; ++i)
                    args[i] = faces[pick[i]][pos[i]];
                image.push_back(w.at(args));
                int i = k - 1;
                while (i >= 0 && ++pos[i] == static_cast<int>(faces[pick[i]].size())) {
                    pos[i] = 0;
                    --i;
                }
                if (i < 0)
                    break;
            }
            if (!cx->contains_face(image)) {
                std::string msg = "face product";
                for (int i = 0; i < k; ++i) {
                    msg += i ? " x {" : " {";
                    for (std::size_t j = 0; j < faces[pick[i]].size(); ++j)
                        msg += (j ? "," : "") + cx->label(faces[pick[i]][j]);
                    msg += "}";
                }
                add(msg + " maps to a non-face");
            }
        });
        return out;
    }

    const auto& st = std::get<RelStructure>(w.carrier);
    for (const auto& [name, rel] : st.relations) {
        std::set<std::vector<int>> members(rel.tuples.begin(), rel.tuples.end());
        const int m = static_cast<int>(rel.tuples.size());
        power(static_cast<std::size_t>(m), k, 50'000'000, "relation product");
        for_each_vector(m, k, [&](const std::vector<int>& pick) {
            std::vector<int> image(static_cast<std::size_t>(rel.arity));
            std::vector<int> args(static_cast<std::size_t>(k));
            for (int j = 0; j < rel.arity; ++j) {
                for (int i = 0; i < k; ++i)
                    args[i] = rel.tuples[pick[i]][j];
                image[j] = w.at(args);
            }
            if (!members.count(image)) {
                std::string msg = "relation " + name + ":";
                for (int i = 0; i < k; ++i)
                    msg += " " + label_tuple(rel.tuples[pick[i]]);
                add(msg + " map to " + label_tuple(image));
            }
        });
    }
    return out;
}

Verification verify_witness(const WitnessTable& w, const IdentitySystem& system)
{
    if (w.arity != system.arity)
        throw InputError("arity mismatch between table and identity system");
    Verification out = verify_polymorphism(w);
    if (!out.violations.empty() && w.values.size() != power(static_cast<std::size_t>(w.size()), w.arity, max_tuples, "table"))
        return out;
    const int n = w.size();
    auto add = [&](std::string msg) {
        out.ok = false;
        if (out.violations.size() < 20)
            out.violations.push_back(std::move(msg));
    };
    auto show = [&](const std::vector<int>& args) {
        std::string s = system.symbol + "(";
        for (std::size_t i = 0; i < args.size(); ++i)
            s += (i ? "," : "") + carrier_label(w.carrier, args[i]);
        return s + ")";
    };
    if (system.idempotent) {
        for (int x = 0; x < n; ++x) {
            std::vector<int> args(static_cast<std::size_t>(w.arity), x);
            if (w.at(args) != x)
                add("not idempotent: " + show(args) + " = " + carrier_label(w.carrier, w.at(args)));
        }
    }
    power(static_cast<std::size_t>(n), system.num_vars(), max_tuples, "identity instantiation");
    for (const auto& id : system.identities) {
        for_each_vector(n, system.num_vars(), [&](const std::vector<int>& val) {
            std::vector<int> l, r;
            for (int v : id.lhs)
                l.push_back(val[v]);
            const int lv = w.at(l);
            int rv;
            std::string rs;
            if (id.rhs_var >= 0) {
                rv = val[id.rhs_var];
                rs = carrier_label(w.carrier, rv);
            }
            else {
                for (int v : id.rhs)
                    r.push_back(val[v]);
                rv = w.at(r);
                rs = show(r) + " = " + carrier_label(w.carrier, rv);
            }
            if (lv != rv)
                add("identity fails: " + show(l) + " = " + carrier_label(w.carrier, lv) + " but " + rs);
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Search

TupleClasses tuple_classes(int n, const IdentitySystem& system)
{
    const std::size_t total = power(static_cast<std::size_t>(n), system.arity, max_tuples, "argument tuple space");
    power(static_cast<std::size_t>(n), system.num_vars(), max_tuples, "identity instantiation");
    std::vector<int> parent(total);
    for (std::size_t i = 0; i < total; ++i)
        parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::pair<int, int>> pins;  // (tuple, value)
    for (const auto& id : system.identities) {
        for_each_vector(n, system.num_vars(), [&](const std::vector<int>& val) {
            std::vector<int> l;
            for (int v : id.lhs)
                l.push_back(val[v]);
            const int li = static_cast<int>(encode(l, n));
            if (id.rhs_var >= 0) {
                pins.emplace_back(li, val[id.rhs_var]);
                return;
            }
            std::vector<int> r;
            for (int v : id.rhs)
                r.push_back(val[v]);
            const int a = find(li);
            const int b = find(static_cast<int>(encode(r, n)));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        });
    }
    if (system.idempotent) {
        for (int x = 0; x < n; ++x) {
            std::vector<int> d(static_cast<std::size_t>(system.arity), x);
            pins.emplace_back(static_cast<int>(encode(d, n)), x);
        }
    }
    TupleClasses tc;
    tc.class_of.assign(total, -1);
    std::vector<int> class_of_root(total, -1);
    for (std::size_t t = 0; t < total; ++t) {
        const int r = find(static_cast<int>(t));
        if (class_of_root[r] < 0) {
            class_of_root[r] = static_cast<int>(tc.representative.size());
            tc.representative.push_back(static_cast<int>(t));
        }
        tc.class_of[t] = class_of_root[r];
    }
    tc.pinned.assign(tc.representative.size(), -1);
    for (const auto& [t, v] : pins) {
        int& p = tc.pinned[tc.class_of[t]];
        if (p >= 0 && p != v)
            tc.consistent = false;
        p = v;
    }
    return tc;
}

namespace {

WitnessTable expand(Carrier carrier, int arity, const TupleClasses& tc, const std::vector<int>& class_values)
{
    WitnessTable w{std::move(carrier), arity, {}};
    w.values.reserve(tc.class_of.size());
    for (int c : tc.class_of)
        w.values.push_back(class_values[c]);
    return w;
}

}  // namespace

SearchOutcome search_witness(const Complex& carrier, const IdentitySystem& system, const SearchOptions& options)
{
    if (!system.idempotent)
        throw InputError("complex searches use Polidem only");
    const int n = carrier.size();
    const int k = system.arity;
    SearchOutcome out;
    const TupleClasses tc = tuple_classes(n, system);
    if (!tc.consistent) {
        out.exhausted = true;
        return out;
    }
    Csp csp(n);
    for (std::size_t c = 0; c < tc.representative.size(); ++c) {
        csp.add_var();
        if (tc.pinned[c] >= 0)
            csp.pin(static_cast<int>(c), tc.pinned[c]);
    }
    const auto& faces = carrier.maximal_faces();
    const int family = csp.add_face_family(faces);
    power(faces.size(), k, max_tuples, "face product family");
    std::set<std::vector<int>> scopes;
    for_each_vector(static_cast<int>(faces.size()), k, [&](const std::vector<int>& pick) {
        std::vector<int> scope;
        std::vector<int> pos(static_cast<std::size_t>(k), 0);
        std::vector<int> args(static_cast<std::size_t>(k));
        while (true) {
            for (int i = 0; i < k; ++i)
                args[i] = faces[pick[i]][pos[i]];
            scope.push_back(tc.class_of[encode(args, n)]);
            int i = k - 1;
            while (i >= 0 && ++pos[i] == static_cast<int>(faces[pick[i]].size())) {
                pos[i] = 0;
                --i;
            }
            if (i < 0)
                break;
        }
        std::sort(scope.begin(), scope.end());
        scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
        if (scope.size() > 1)
            scopes.insert(std::move(scope));
    });
    for (const auto& s : scopes)
        csp.add_face_constraint(s, family);

    SolveOptions opt;
    opt.mode = SolveMode::First;
    opt.node_budget = options.node_budget;
    opt.jobs = options.jobs;
    auto res = solve_csp(csp, opt);
    out.nodes = res.nodes;
    if (res.found())
        out.witness = expand(carrier, k, tc, res.solutions.front());
    else
        out.exhausted = res.complete;
    return out;
}

IndicatorInstance indicator_instance(const RelStructure& templ, const IdentitySystem& system)
{
    const int n = templ.size();
    const int k = system.arity;
    IndicatorInstance ind;
    ind.classes = tuple_classes(n, system);
    const auto& tc = ind.classes;
    for (int rep : tc.representative) {
        std::string label = "(";
        std::size_t rest = static_cast<std::size_t>(rep);
        std::vector<int> args(static_cast<std::size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            args[i] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        for (int i = 0; i < k; ++i)
            label += (i ? "," : "") + templ.domain[args[i]];
        ind.instance.domain.push_back(label + ")");
    }
    for (std::size_t c = 0; c < tc.pinned.size(); ++c)
        if (tc.pinned[c] >= 0)
            ind.pre[static_cast<int>(c)] = tc.pinned[c];
    for (const auto& [name, rel] : templ.relations) {
        Relation r{rel.arity, {}};
        const int m = static_cast<int>(rel.tuples.size());
        power(static_cast<std::size_t>(m), k, max_tuples, "relation product");
        for_each_vector(m, k, [&](const std::vector<int>& pick) {
            std::vector<int> tuple(static_cast<std::size_t>(rel.arity));
            std::vector<int> args(static_cast<std::size_t>(k));
            for (int j = 0; j < rel.arity; ++j) {
                for (int i = 0; i < k; ++i)
                    args[i] = rel.tuples[pick[i]][j];
                tuple[j] = tc.class_of[encode(args, n)];
            }
            r.tuples.push_back(std::move(tuple));
        });
        ind.instance.relations.emplace(name, std::move(r));
    }
    ind.instance.normalize();
    return ind;
}

SearchOutcome search_witness(const RelStructure& carrier, const IdentitySystem& system, const SearchOptions& options)
{
    SearchOutcome out;
    const auto ind = indicator_instance(carrier, system);
    if (!ind.classes.consistent) {
        out.exhausted = true;
        return out;
    }
    StructureSolveOptions opt;
    opt.mode = SolveMode::First;
    opt.node_budget = options.node_budget;
    opt.jobs = options.jobs;
    auto res = solve(ind.instance, carrier, ind.pre, opt);
    out.nodes = res.nodes;
    if (res.found())
        out.witness = expand(carrier, system.arity, ind.classes, res.solutions.front());
    else
        out.exhausted = res.complete;
    return out;
}

WitnessTable siggers_from_cyclic(const WitnessTable& c)
{
    if (c.arity < 2)
        throw InputError("cyclic witness needs arity >= 2");
    const auto check = verify_witness(c, builtin_system(Builtin::Cyclic, c.arity));
    if (!check.ok)
        throw InputError("witness is not an idempotent cyclic polymorphism: " +
                         (check.violations.empty() ? std::string("?") : check.violations.front()));
    const int n = c.arity;
    if (n % 2 == 0) {
        // Even arity: c2(x,y) = c(x,y,x,y,...) is cyclic of arity 2; s = c2(x2,x3).
        return make_table(c.carrier, 6, [&](const std::vector<int>& x) {
            std::vector<int> args(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                args[i] = i % 2 == 0 ? x[1] : x[2];
            return c.at(args);
        });
    }
    // n = 2k+3: s(x1..x6) = c(x1, x2 (k times), x5, x3 (k+1 times)).
    const int k = (n - 3) / 2;
    return make_table(c.carrier, 6, [&](const std::vector<int>& x) {
        std::vector<int> args;
        args.push_back(x[0]);
        for (int i = 0; i < k; ++i)
            args.push_back(x[1]);
        args.push_back(x[4]);
        for (int i = 0; i <= k; ++i)
            args.push_back(x[2]);
        return c.at(args);
    });
}

}  // namespace dichotomy

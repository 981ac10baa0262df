#include "dichotomy/json_io.hpp"

#include <fstream>

namespace dichotomy {

namespace {

template <class T>
T get_field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception&) {
        throw InputError(std::string("field \"") + key + "\" has the wrong type");
    }
}

Json labels_of(const Carrier& c, const std::vector<int>& vs)
{
    Json out = Json::array();
    for (int v : vs)
        out.push_back(carrier_label(c, v));
    return out;
}

std::vector<int> indices_of(const Complex& c, const Json& j)
{
    if (!j.is_array())
        throw InputError("expected a list of vertex labels");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_string())
            throw InputError("vertex labels must be strings");
        out.push_back(c.index(x.get<std::string>()));
    }
    return out;
}

}  // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Json to_json(const Complex& c)
{
    const auto d = c.data();
    return Json{{"vertices", d.vertices}, {"maximal_faces", d.maximal_faces}};
}

Complex complex_from_json(const Json& j)
{
    ComplexData d;
    d.vertices = get_field<std::vector<std::string>>(j, "vertices");
    d.maximal_faces = get_field<std::vector<std::vector<std::string>>>(j, "maximal_faces");
    return Complex::from_data(d);
}

Json to_json(const RelStructure& s)
{
    Json rels = Json::object();
    for (const auto& [name, rel] : s.relations) {
        Json tuples = Json::array();
        for (const auto& t : rel.tuples) {
            Json row = Json::array();
            for (int v : t)
                row.push_back(s.domain[v]);
            tuples.push_back(std::move(row));
        }
        rels[name] = Json{{"arity", rel.arity}, {"tuples", std::move(tuples)}};
    }
    return Json{{"domain", s.domain}, {"relations", std::move(rels)}};
}

RelStructure structure_from_json(const Json& j)
{
    RelStructure s;
    s.domain = get_field<std::vector<std::string>>(j, "domain");
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < s.domain.size(); ++i)
        pos.emplace(s.domain[i], static_cast<int>(i));
    const Json rels = get_field<Json>(j, "relations");
    if (!rels.is_object())
        throw InputError("\"relations\" must be an object");
    for (const auto& [name, r] : rels.items()) {
        Relation rel;
        rel.arity = get_field<int>(r, "arity");
        for (const auto& row : get_field<std::vector<std::vector<std::string>>>(r, "tuples")) {
            std::vector<int> t;
            for (const auto& x : row) {
                auto it = pos.find(x);
                if (it == pos.end())
                    throw InputError("relation " + name + " uses unknown element " + x);
                t.push_back(it->second);
            }
            rel.tuples.push_back(std::move(t));
        }
        s.relations[name] = std::move(rel);
    }
    s.normalize();
    return s;
}

Carrier carrier_from_json(const Json& j)
{
    if (j.is_object() && j.contains("maximal_faces"))
        return complex_from_json(j);
    if (j.is_object() && j.contains("domain"))
        return structure_from_json(j);
    throw InputError("expected a complex or a relational structure");
}

Json to_json(const Carrier& c)
{
    return std::visit([](const auto& x) { return to_json(x); }, c);
}

Json to_json(const WitnessTable& w)
{
    return Json{{"arity", w.arity}, {"values", labels_of(w.carrier, w.values)}};
}

WitnessTable witness_from_json(const Json& j, Carrier carrier)
{
    WitnessTable w{std::move(carrier), get_field<int>(j, "arity"), {}};
    if (w.arity < 1)
        throw InputError("witness arity must be >= 1");
    const auto values = get_field<std::vector<std::string>>(j, "values");
    std::size_t expected = 1;
    for (int i = 0; i < w.arity; ++i)
        expected *= static_cast<std::size_t>(w.size());
    if (values.size() != expected)
        throw InputError("witness table has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(expected));
    std::map<std::string, int> pos;
    for (int v = 0; v < w.size(); ++v)
        pos.emplace(carrier_label(w.carrier, v), v);
    for (const auto& x : values) {
        auto it = pos.find(x);
        if (it == pos.end())
            throw InputError("witness value " + x + " is not a carrier element");
        w.values.push_back(it->second);
    }
    return w;
}

Json to_json(const HomologyResult& h)
{
    return Json{{"betti", h.betti}, {"torsion", h.torsion}};
}

Json to_json(const HomComplexResult& h)
{
    Json assignments = Json::object();
    for (int v = 0; v < h.complex.size(); ++v) {
        Json m = Json::object();
        for (std::size_t i = 0; i < h.alpha.size(); ++i)
            m[h.source.label(h.alpha[i])] = h.target.label(h.maps[v][i]);
        assignments[h.complex.label(v)] = std::move(m);
    }
    return Json{{"variant", h.variant == HomVariant::Hom ? "Hom" : "HomSC"},
                {"complex", to_json(h.complex)},
                {"assignments", std::move(assignments)}};
}

Json to_json(const ContractionCertificate& cert)
{
    Json stages = Json::array();
    for (const auto& s : cert.stages)
        stages.push_back(labels_of(cert.carrier, s));
    return Json{{"arity", cert.witness.arity},
                {"loop", labels_of(cert.carrier, cert.loop)},
                {"repeats", cert.repeats},
                {"padded", labels_of(cert.carrier, cert.padded)},
                {"stages", std::move(stages)}};
}

ContractionCertificate certificate_from_json(const Json& j, const Complex& carrier, const WitnessTable& witness)
{
    ContractionCertificate cert{carrier, witness, {}, {}, {}, {}};
    cert.loop = indices_of(carrier, get_field<Json>(j, "loop"));
    cert.repeats = get_field<std::vector<int>>(j, "repeats");
    cert.padded = indices_of(carrier, get_field<Json>(j, "padded"));
    for (const auto& s : get_field<Json>(j, "stages"))
        cert.stages.push_back(indices_of(carrier, s));
    return cert;
}

std::vector<int> loop_from_json(const Json& j, const Complex& carrier)
{
    if (j.is_object())
        return indices_of(carrier, get_field<Json>(j, "loop"));
    return indices_of(carrier, j);
}

Json to_json(const ClassificationReport& r, const Complex& b)
{
    Json out{{"verdict", to_string(r.verdict)}};
    if (r.witness)
        out["witness"] = Json{{"system", r.witness_system}, {"table", to_json(*r.witness)}};
    else
        out["witness"] = nullptr;
    if (r.obstruction)
        out["obstruction"] = Json{{"component", labels_of(b, r.obstruction->component)},
                                  {"dimension", r.obstruction->dimension},
                                  {"group", r.obstruction->group}};
    else
        out["obstruction"] = nullptr;
    if (r.exhaustion)
        out["exhaustion"] = Json{{"system", r.exhaustion->system}, {"nodes", r.exhaustion->nodes}};
    else
        out["exhaustion"] = nullptr;
    Json checks = Json::array();
    for (const auto& c : r.cross_checks)
        checks.push_back(Json{{"name", c.name}, {"pass", c.pass}});
    out["cross_checks"] = std::move(checks);
    return out;
}

}  // namespace dichotomy

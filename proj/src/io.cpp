#include "ccf/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ccf {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

// JSON pointer after the file name: "file.json#/moments/a,a".
std::string field(const std::string& where, const std::string& key) {
    return where + (where.find('#') == std::string::npos ? "#/" : "/") + key;
}

Alphabet alphabet_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of letter names");
    Alphabet a;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string at = field(where, std::to_string(i));
        if (!j[i].is_string()) fail(at, "letter names must be strings");
        std::string name = j[i].get<std::string>();
        if (name.empty() || name.find(',') != std::string::npos) fail(at, "letter name '" + name + "' is empty or has a comma");
        if (a.find(name) >= 0) fail(at, "duplicate letter '" + name + "'");
        a.add(name);
    }
    return a;
}

// Rotation class representative present in the map, if any.
const Q* lookup(const std::map<Word, Q>& given, const Word& w, bool tracial) {
    auto it = given.find(w);
    if (it != given.end()) return &it->second;
    if (!tracial) return nullptr;
    for (size_t k = 1; k < w.size(); ++k) {
        it = given.find(rotate_word(w, static_cast<int>(k)));
        if (it != given.end()) return &it->second;
    }
    return nullptr;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::string msg = e.what();
        auto p = msg.find("parse error");
        throw InputError(source + ": " + (p == std::string::npos ? msg : msg.substr(p)));
    }
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

Q rational_from_json(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Q(v.dump());
    if (!v.is_string()) fail(where, "expected a rational string \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
        fail(where, "malformed rational '" + v.get<std::string>() + "'");
    }
}

Json rational_to_json(const Q& q) { return to_string(q); }

Json rationals_to_json(const std::vector<Q>& v) {
    Json a = Json::array();
    for (const Q& q : v) a.push_back(to_string(q));
    return a;
}

MomentFunctional functional_from_json(const Json& j, const std::string& where, int order, const Alphabet* alphabet) {
    if (!j.is_object()) fail(where, "expected an object with unit and moments");
    Alphabet al;
    if (j.contains("alphabet"))
        al = alphabet_from_json(j["alphabet"], field(where, "alphabet"));
    else if (alphabet)
        al = *alphabet;
    else
        fail(where, "missing field 'alphabet'");
    if (alphabet && !(al == *alphabet)) fail(field(where, "alphabet"), "differs from the enclosing alphabet");
    if (!j.contains("unit")) fail(where, "missing field 'unit'");
    Q unit = rational_from_json(j["unit"], field(where, "unit"));
    bool tracial = false;
    if (j.contains("tracial")) {
        if (!j["tracial"].is_boolean()) fail(field(where, "tracial"), "expected true or false");
        tracial = j["tracial"].get<bool>();
    }
    if (!j.contains("moments") || !j["moments"].is_object()) fail(where, "missing object 'moments'");

    std::map<Word, Q> given;
    int top = 0;
    for (const auto& [key, value] : j["moments"].items()) {
        const std::string at = field(field(where, "moments"), key);
        Word w;
        try {
            w = parse_word(al, key);
        } catch (const std::exception& e) {
            fail(at, e.what());
        }
        if (w.empty()) fail(at, "the empty word is given by 'unit'");
        int d = al.degree(w);
        if (d > kOrderCap) fail(at, "degree " + std::to_string(d) + " exceeds the hard cap " + std::to_string(kOrderCap));
        if (!given.emplace(w, rational_from_json(value, at)).second) fail(at, "word listed twice");
        top = std::max(top, d);
    }

    int degree = 0;
    Word missing;
    for (int d = 1; d <= std::min(order, top) && missing.empty(); ++d) {
        for (const Word& w : all_words(al, d))
            if (al.degree(w) == d && !lookup(given, w, tracial)) {
                missing = w;
                break;
            }
        if (missing.empty()) degree = d;
    }
    if (degree == 0) {
        if (missing.empty()) missing = Word{0};
        fail(field(where, "moments"), "no value for word '" + word_key(al, missing) + "'");
    }

    MomentFunctional f(al, degree, unit, tracial);
    for (const Word& w : all_words(al, degree)) {
        const Q* v = lookup(given, w, tracial);
        if (tracial)
            for (size_t k = 1; k < w.size(); ++k) {
                auto it = given.find(rotate_word(w, static_cast<int>(k)));
                if (it != given.end() && it->second != *v)
                    fail(field(field(where, "moments"), word_key(al, w)), "tracial functional differs on a rotation");
            }
        f.set(w, *v);
    }
    return f;
}

FunctionalFile functional_file_from_json(const Json& j, const std::string& source, int order) {
    if (!j.is_object()) fail(source, "expected a JSON object");
    FunctionalFile f;
    f.source = source;
    f.keyed = j.contains("psi") || j.contains("phi") || j.contains("omega");
    if (!f.keyed) {
        f.psi = functional_from_json(j, source, order);
        f.alphabet = f.psi.alphabet();
        return f;
    }
    if (!j.contains("alphabet")) fail(source, "missing field 'alphabet'");
    f.alphabet = alphabet_from_json(j["alphabet"], field(source, "alphabet"));
    if (j.contains("psi")) f.psi = functional_from_json(j["psi"], field(source, "psi"), order, &f.alphabet);
    if (j.contains("phi")) f.phi = functional_from_json(j["phi"], field(source, "phi"), order, &f.alphabet);
    if (j.contains("omega")) f.omega = functional_from_json(j["omega"], field(source, "omega"), order, &f.alphabet);
    return f;
}

std::vector<std::string> mode_roles(Mode mode) {
    switch (mode) {
        case Mode::free: return {"psi"};
        case Mode::boolean:
        case Mode::monotone: return {"phi"};
        case Mode::conditional: return {"psi", "phi"};
        case Mode::infinitesimal:
        case Mode::cyclic_free: return {"psi", "omega"};
        case Mode::cyclic_conditional: return {"psi", "phi", "omega"};
        case Mode::cyclic_boolean:
        case Mode::cyclic_monotone: return {"phi", "omega"};
    }
    return {};
}

std::vector<std::string> family_roles(Family family) {
    switch (family) {
        case Family::free: return {"psi"};
        case Family::boolean:
        case Family::monotone: return {"phi"};
        case Family::conditional: return {"psi", "phi"};
        case Family::infinitesimal:
        case Family::cyclic_free: return {"psi", "omega"};
        case Family::cyclic_conditional: return {"psi", "phi", "omega"};
        case Family::cyclic_boolean: return {"phi", "omega"};
    }
    return {};
}

const MomentFunctional& role(const FunctionalFile& f, const std::string& name, size_t requested) {
    if (!f.keyed) {
        if (requested != 1)
            fail(f.source, "this command needs several functionals; give them as 'psi', 'phi' and 'omega'");
        return f.psi;
    }
    const MomentFunctional& m = name == "psi" ? f.psi : name == "phi" ? f.phi : f.omega;
    if (!m.valid()) fail(f.source, "missing functional '" + name + "'");
    return m;
}

Marginal marginal_from_file(const FunctionalFile& f, const std::vector<std::string>& roles) {
    Marginal m;
    m.alphabet = f.alphabet;
    for (const std::string& r : roles) {
        const MomentFunctional& v = role(f, r, roles.size());
        (r == "psi" ? m.psi : r == "phi" ? m.phi : m.omega) = v;
    }
    return m;
}

Distribution distribution_from_file(const FunctionalFile& f, const std::vector<std::string>& roles, int order) {
    if (f.alphabet.size() != 1) fail(f.source, "expected a single-letter alphabet");
    Distribution d;
    for (const std::string& r : roles) {
        const MomentFunctional& v = role(f, r, roles.size());
        if (v.max_degree() < order)
            fail(f.source, r + " is given only up to degree " + std::to_string(v.max_degree()) + ", order " +
                               std::to_string(order) + " requested");
        (r == "psi" ? d.psi : r == "phi" ? d.phi : d.omega) = MomentSeries{v.sequence(0, order)};
    }
    return d;
}

RootedGraph graph_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object with vertices, edges and root");
    for (const char* k : {"vertices", "edges", "root"})
        if (!j.contains(k)) fail(where, std::string("missing field '") + k + "'");
    if (!j["vertices"].is_number_integer()) fail(field(where, "vertices"), "expected an integer");
    if (!j["root"].is_number_integer()) fail(field(where, "root"), "expected an integer");
    if (!j["edges"].is_array()) fail(field(where, "edges"), "expected an array of [u, v] pairs");
    long n = j["vertices"].get<long>();
    if (n < 1 || n > 100000) fail(field(where, "vertices"), "vertex count out of range");
    std::vector<Edge> edges;
    for (size_t i = 0; i < j["edges"].size(); ++i) {
        const Json& e = j["edges"][i];
        const std::string at = field(field(where, "edges"), std::to_string(i));
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            fail(at, "expected [u, v]");
        long u = e[0].get<long>(), v = e[1].get<long>();
        if (u < 0 || v < 0 || u >= n || v >= n) fail(at, "vertex out of range");
        edges.push_back({static_cast<int>(u), static_cast<int>(v), 1});
    }
    try {
        return RootedGraph(static_cast<int>(n), edges, static_cast<int>(j["root"].get<long>()));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Json table_to_json(const WordTable& t, int degree) {
    Json o = Json::object();
    for (const Word& w : all_words(t.alphabet(), degree)) o[word_key(t.alphabet(), w)] = to_string(t(w));
    return o;
}

}  // namespace ccf

#include <fstream>
#include <iostream>
#include <random>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ccf/cumulants.hpp"
#include "ccf/graphs.hpp"
#include "ccf/io.hpp"
#include "ccf/joint.hpp"
#include "ccf/limits.hpp"
#include "ccf/series.hpp"

using namespace ccf;

namespace {

struct Job {
    int order = 10;
    std::string format = "json";
    std::string out;
    unsigned long seed = 1;
};

struct Output {
    Json json;
    std::vector<std::vector<std::string>> rows;  // csv, first row is the header
    int code = 0;
    std::string summary;  // one line for stderr
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    for (const auto& r : rows) {
        if (r.empty()) {
            s += "\n";
            continue;
        }
        for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + csv_field(r[i]);
        s += "\n";
    }
    return s;
}

std::vector<FunctionalFile> load_functionals(const std::vector<std::string>& paths, int order) {
    std::vector<FunctionalFile> out;
    for (const auto& p : paths) out.push_back(functional_file_from_json(load_json(p), p, order));
    return out;
}

template <class Parse>
auto parse_name(Parse parse, const std::string& s) {
    try {
        return parse(s);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json series_json(const Distribution& d) {
    Json o = Json::object();
    if (!d.psi.empty()) o["psi"] = rationals_to_json(d.psi.m);
    if (!d.phi.empty()) o["phi"] = rationals_to_json(d.phi.m);
    if (!d.omega.empty()) o["omega"] = rationals_to_json(d.omega.m);
    return o;
}

void series_rows(Output& o, const std::string& kind, const std::string& name, const std::vector<Q>& v) {
    for (size_t k = 0; k < v.size(); ++k) o.rows.push_back({kind, name, std::to_string(k), to_string(v[k])});
}

Output run_cumulants(const Job& job, const std::string& family_s, const std::string& path) {
    Family fam = parse_name(parse_family, family_s);
    FunctionalFile f = load_functionals({path}, job.order).front();
    std::vector<std::string> roles = family_roles(fam);
    Marginal m = marginal_from_file(f, roles);
    int degree = job.order;
    for (const auto& r : roles) degree = std::min(degree, (r == "psi" ? m.psi : r == "phi" ? m.phi : m.omega).max_degree());

    std::vector<std::pair<std::string, CumulantTable>> tables;
    switch (fam) {
        case Family::free: tables = {{"free", free_cumulants(m.psi)}}; break;
        case Family::boolean: tables = {{"boolean", boolean_cumulants(m.phi)}}; break;
        case Family::monotone: tables = {{"monotone", monotone_cumulants(m.phi)}}; break;
        case Family::conditional:
            tables = {{"free", free_cumulants(m.psi)}, {"conditional", conditional_cumulants(m.psi, m.phi)}};
            break;
        case Family::infinitesimal:
            tables = {{"free", free_cumulants(m.psi)}, {"infinitesimal", infinitesimal_cumulants_general(m.psi, m.omega)}};
            break;
        case Family::cyclic_free:
            tables = {{"free", free_cumulants(m.psi)}, {"cyclic_free", cyclic_free_cumulants_general(m.psi, m.omega)}};
            break;
        case Family::cyclic_conditional:
            tables = {{"free", free_cumulants(m.psi)},
                      {"conditional", conditional_cumulants(m.psi, m.phi)},
                      {"cyclic_conditional", cyclic_conditional_cumulants(m.psi, m.phi, m.omega)}};
            break;
        case Family::cyclic_boolean:
            tables = {{"boolean", boolean_cumulants(m.phi)}, {"cyclic_boolean", cyclic_boolean_cumulants(m.phi, m.omega)}};
            break;
    }

    Output o;
    o.json["family"] = family_name(fam);
    o.json["alphabet"] = f.alphabet.names;
    o.json["degree"] = degree;
    o.json["cumulants"] = Json::object();
    o.rows.push_back({"table", "word", "value"});
    for (auto& [name, t] : tables) {
        o.json["cumulants"][name] = table_to_json(t, degree);
        for (const Word& w : all_words(f.alphabet, degree)) o.rows.push_back({name, word_key(f.alphabet, w), to_string(t(w))});
    }
    o.summary = family_name(fam) + " cumulants up to degree " + std::to_string(degree);
    return o;
}

Output run_convolve(const Job& job, const std::string& mode_s, const std::string& op, const std::vector<std::string>& paths) {
    Mode mode = parse_name(parse_mode, mode_s);
    if (op != "add" && op != "mul") throw InputError("operation must be 'add' or 'mul', got '" + op + "'");
    if (paths.size() != 2) throw InputError("convolve takes exactly two marginal files");
    std::vector<FunctionalFile> files = load_functionals(paths, job.order);
    std::vector<std::string> roles = mode_roles(mode);
    Distribution a = distribution_from_file(files[0], roles, job.order);
    Distribution b = distribution_from_file(files[1], roles, job.order);

    Output o;
    o.json["mode"] = mode_name(mode);
    o.json["operation"] = op;
    o.json["order"] = job.order;
    o.rows.push_back({"kind", "name", "index", "value"});
    std::vector<Certificate> certs;
    try {
        if (op == "add") {
            AdditiveResult r = additive_convolve(mode, a, b);
            o.json["result"] = series_json(r.sum);
            o.json["subordination"] = {{"u_a", rationals_to_json(r.u_a.coefficients())},
                                       {"u_b", rationals_to_json(r.u_b.coefficients())}};
            for (const auto& [k, v] : o.json["result"].items())
                series_rows(o, "moment", k, k == "psi" ? r.sum.psi.m : k == "phi" ? r.sum.phi.m : r.sum.omega.m);
            series_rows(o, "subordination", "u_a", r.u_a.coefficients());
            series_rows(o, "subordination", "u_b", r.u_b.coefficients());
            certs = additive_certificates(mode, a, b, r);
        } else {
            MultiplicativeResult r = multiplicative_convolve(mode, a, b);
            o.json["result"] = series_json(r.product);
            o.json["subordination"] = {{"omega_x", rationals_to_json(r.omega_x.coefficients())},
                                       {"omega_y", rationals_to_json(r.omega_y.coefficients())}};
            for (const auto& [k, v] : o.json["result"].items())
                series_rows(o, "moment", k, k == "psi" ? r.product.psi.m : k == "phi" ? r.product.phi.m : r.product.omega.m);
            series_rows(o, "subordination", "omega_x", r.omega_x.coefficients());
            series_rows(o, "subordination", "omega_y", r.omega_y.coefficients());
            certs = multiplicative_certificates(mode, a, b, r);
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Json cj = Json::array();
    int failed = 0;
    for (const Certificate& c : certs) {
        cj.push_back({{"identity", c.identity}, {"holds", c.holds}, {"order", c.order}});
        o.rows.push_back({"certificate", c.identity, std::to_string(c.order), c.holds ? "holds" : "fails"});
        failed += !c.holds;
    }
    o.json["certificates"] = cj;
    o.code = failed ? 1 : 0;
    o.summary = mode_name(mode) + " " + op + ": " + std::to_string(certs.size()) + " certificates, " +
                std::to_string(failed) + " failed";
    return o;
}

Output run_transform(const Job& job, const std::string& name, const std::string& path, const std::string& role_name) {
    FunctionalFile f = load_functionals({path}, job.order).front();
    if (role_name != "psi" && role_name != "phi" && role_name != "omega")
        throw InputError("--role must be psi, phi or omega");
    const MomentFunctional& m = f.keyed ? role(f, role_name, 3) : f.psi;
    if (f.alphabet.size() != 1) throw InputError(path + ": expected a single-letter alphabet");
    if (m.max_degree() < job.order)
        throw InputError(path + ": moments are given only up to degree " + std::to_string(m.max_degree()));
    std::vector<std::string> names = transform_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string all;
        for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
        throw InputError("unknown transform '" + name + "'; known: " + all);
    }
    TransformView v;
    try {
        v = transform(MomentSeries{m.sequence(0, job.order)}, name);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Output o;
    o.json["transform"] = v.name;
    o.json["variable"] = v.at_infinity ? "z" : "t";
    o.json["lead"] = v.lead;
    o.json["coefficients"] = rationals_to_json(v.coefficients);
    o.rows.push_back({"power", "coefficient"});
    for (size_t k = 0; k < v.coefficients.size(); ++k) {
        int p = v.at_infinity ? v.lead - static_cast<int>(k) : static_cast<int>(k);
        o.rows.push_back({std::to_string(p), to_string(v.coefficients[k])});
    }
    o.summary = v.name + ": " + std::to_string(v.coefficients.size()) + " coefficients";
    return o;
}

Output run_jointcheck(const Job& job, const std::string& mode_s, const std::vector<std::string>& paths) {
    Mode mode = parse_name(parse_mode, mode_s);
    if (paths.empty()) throw InputError("jointcheck needs at least one marginal file");
    std::vector<FunctionalFile> files = load_functionals(paths, job.order);
    std::vector<std::string> roles = mode_roles(mode);
    std::vector<Marginal> marginals;
    std::set<std::string> letters;
    int degree = job.order;
    for (const auto& f : files) {
        for (const auto& n : f.alphabet.names)
            if (!letters.insert(n).second) throw InputError(f.source + ": letter '" + n + "' already used by another marginal");
        marginals.push_back(marginal_from_file(f, roles));
        for (const auto& r : roles)
            degree = std::min(degree, role(f, r, roles.size()).max_degree());
    }
    JointTriple jt;
    try {
        jt = build_joint(mode, marginals, degree);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Report r = verify_defining_conditions(jt, degree);

    Output o;
    o.json["mode"] = mode_name(mode);
    o.json["degree"] = degree;
    o.json["checked"] = r.checked;
    Json vs = Json::array();
    o.rows.push_back({"condition", "sequence", "lhs", "rhs"});
    for (const Violation& v : r.violations) {
        Json seq = Json::array();
        std::string s;
        for (const Word& w : v.sequence) {
            seq.push_back(word_key(jt.alphabet, w));
            s += (s.empty() ? "" : " | ") + word_key(jt.alphabet, w);
        }
        vs.push_back({{"condition", v.condition}, {"sequence", seq}, {"lhs", to_string(v.lhs)}, {"rhs", to_string(v.rhs)}});
        o.rows.push_back({v.condition, s, to_string(v.lhs), to_string(v.rhs)});
    }
    o.json["violations"] = vs;
    o.summary = r.summary(jt.alphabet, 0);
    o.json["summary"] = o.summary;
    o.code = r.ok() ? 0 : 1;
    return o;
}

Json check_json(const GraphCheck& c) {
    return {{"name", c.name}, {"holds", c.holds}, {"checked", c.checked}, {"witness", c.witness}};
}

Output run_graph(const Job& job, const std::string& kind, const std::vector<std::string>& paths) {
    std::vector<RootedGraph> gs;
    for (const auto& p : paths) gs.push_back(graph_from_json(load_json(p), p));
    int d = job.order;
    Output o;
    o.json["product"] = kind;
    o.json["degree"] = d;
    std::vector<GraphCheck> checks;
    RootedGraph g;
    auto compare = [&](const std::string& name, const std::vector<Q>& expect) {
        GraphCheck c{name, true, d + 1, {}};
        std::vector<Q> got = root_moments(g, d);
        for (int k = 0; k <= d && c.holds; ++k)
            if (got[k] != expect[k]) {
                c.holds = false;
                c.witness = "degree " + std::to_string(k) + ": " + to_string(got[k]) + " != " + to_string(expect[k]);
            }
        checks.push_back(c);
    };
    auto series = [&](const RootedGraph& x) { return MomentSeries{root_moments(x, d)}; };

    if (kind == "conditional") {
        if (gs.size() != 4) throw InputError("graph conditional takes four files: H1 H2 G1 G2");
        g = conditional_product(gs[0], gs[1], gs[2], gs[3], d / 2 + 1);
        GraphReport r = verify_conditional_product(g, gs[0], gs[1], gs[2], gs[3], d);
        checks = r.checks;
        std::vector<Q> w;
        for (int n = 0; n <= d; ++n) w.push_back(w_trace(g, std::vector<int>(n, 0)));
        o.json["w_trace_moments"] = rationals_to_json(w);
    } else {
        if (gs.size() != 2) throw InputError("graph " + kind + " takes two files");
        if (kind == "free") {
            g = free_product_truncated(gs[0], gs[1], d / 2 + 1);
            compare("free additive convolution",
                    additive_convolve(Mode::free, {series(gs[0]), {}, {}}, {series(gs[1]), {}, {}}).sum.psi.m);
        } else {
            ProductKind pk = parse_name(parse_product, kind);
            g = product(pk, gs[0], gs[1]);
            if (pk == ProductKind::star)
                compare("boolean additive convolution",
                        additive_convolve(Mode::boolean, {{}, series(gs[0]), {}}, {{}, series(gs[1]), {}}).sum.phi.m);
            if (pk == ProductKind::comb)
                compare("monotone additive convolution",
                        additive_convolve(Mode::monotone, {{}, series(gs[0]), {}}, {{}, series(gs[1]), {}}).sum.phi.m);
        }
    }
    std::vector<Q> m = root_moments(g, d);
    o.json["vertices"] = g.size();
    o.json["root_moments"] = rationals_to_json(m);
    Json cj = Json::array();
    int failed = 0;
    for (const auto& c : checks) {
        cj.push_back(check_json(c));
        failed += !c.holds;
    }
    o.json["checks"] = cj;
    o.rows.push_back({"kind", "name", "index", "value"});
    series_rows(o, "moment", "root", m);
    if (o.json.contains("w_trace_moments")) {
        std::vector<Q> w;
        for (int n = 0; n <= d; ++n) w.push_back(w_trace(g, std::vector<int>(n, 0)));
        series_rows(o, "moment", "w_trace", w);
    }
    for (const auto& c : checks) o.rows.push_back({"check", c.name, std::to_string(c.checked), c.holds ? "holds" : "fails"});
    o.code = failed ? 1 : 0;
    o.summary = kind + " product, " + std::to_string(g.size()) + " vertices: " + std::to_string(checks.size()) +
                " checks, " + std::to_string(failed) + " failed";
    return o;
}

LimitParams parse_params(const std::vector<std::string>& kv) {
    LimitParams p;
    std::map<std::string, Q*> slots{{"alpha2", &p.alpha2},         {"beta2", &p.beta2},
                                    {"gamma2", &p.gamma2},         {"alpha_prime", &p.alpha_prime},
                                    {"omega_unit", &p.omega_unit}, {"lambda_psi", &p.lambda_psi},
                                    {"lambda_phi", &p.lambda_phi}, {"lambda_omega", &p.lambda_omega},
                                    {"lambda_prime", &p.lambda_prime}, {"alpha", &p.alpha}};
    for (const auto& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw InputError("--param expects name=value, got '" + s + "'");
        auto it = slots.find(s.substr(0, eq));
        if (it == slots.end()) throw InputError("unknown parameter '" + s.substr(0, eq) + "'");
        try {
            *it->second = parse_rational(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("malformed rational in --param " + s);
        }
    }
    return p;
}

// Symmetric marginal: odd moments vanish, higher even moments are random.
MomentSeries symmetric(std::mt19937_64& rng, int order, const Q& m2, const Q& unit = 1) {
    MomentSeries s{std::vector<Q>(order + 1)};
    s.m[0] = unit;
    if (order >= 2) s.m[2] = m2;
    for (int k = 4; k <= order; k += 2) s.m[k] = random_rational(rng);
    return s;
}

Json params_json(const LimitParams& p) {
    return {{"alpha2", to_string(p.alpha2)},         {"beta2", to_string(p.beta2)},
            {"gamma2", to_string(p.gamma2)},         {"alpha_prime", to_string(p.alpha_prime)},
            {"omega_unit", to_string(p.omega_unit)}, {"lambda_psi", to_string(p.lambda_psi)},
            {"lambda_phi", to_string(p.lambda_phi)}, {"lambda_omega", to_string(p.lambda_omega)},
            {"lambda_prime", to_string(p.lambda_prime)}, {"alpha", to_string(p.alpha)}};
}

Output run_limits(const Job& job, const std::string& law_s, const std::vector<std::string>& kv, const std::vector<int>& ns) {
    Law law = parse_name(parse_law, law_s);
    LimitParams p = parse_params(kv);
    bool boolean = law == Law::cyclic_boolean_clt || law == Law::cyclic_boolean_poisson ||
                   law == Law::cyclic_boolean_poisson_variant;
    if (boolean && law != Law::cyclic_boolean_clt) {
        if (p.omega_unit != 0) throw InputError(law_name(law) + " is stated for omega_unit = 0");
        p.lambda_psi = 0;
    }
    LimitLaw L;
    try {
        L = limit_law(law, p, job.order);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    int kmax = std::min(6, job.order);
    MomentSeries head{std::vector<Q>(L.moments.m.begin(), L.moments.m.begin() + kmax + 1)};

    Output o;
    o.json["law"] = law_name(law);
    o.json["params"] = params_json(p);
    o.json["moments"] = rationals_to_json(L.moments.m);
    o.rows.push_back({"k", "moment"});
    for (size_t k = 0; k < L.moments.m.size(); ++k) o.rows.push_back({std::to_string(k), to_string(L.moments.m[k])});

    std::mt19937_64 rng(job.seed);
    int K = kmax;
    Distribution x{symmetric(rng, K, p.alpha2), symmetric(rng, K, p.beta2), symmetric(rng, K, p.gamma2, p.omega_unit)};
    std::optional<NfoldReport> rep;
    try {
        switch (law) {
            case Law::free_clt: rep = clt_check(Mode::free, x, head, "psi", ns, kmax); break;
            case Law::conditional_clt: rep = clt_check(Mode::conditional, x, head, "phi", ns, kmax); break;
            case Law::infinitesimal_clt:
                x.omega = symmetric(rng, K, p.alpha_prime + 2 * p.omega_unit * p.alpha2, p.omega_unit);
                rep = clt_check(Mode::cyclic_free, {x.psi, {}, x.omega}, head, "dpsi", ns, kmax);
                break;
            case Law::cyclic_conditional_clt:
            case Law::cyclic_conditional_clt_variant:
                rep = clt_check(Mode::cyclic_conditional, x, head, "omega", ns, kmax);
                break;
            case Law::cyclic_boolean_clt: rep = clt_check(Mode::cyclic_boolean, {{}, x.phi, x.omega}, head, "omega", ns, kmax); break;
            case Law::free_poisson: rep = poisson_check(Mode::free, p, head, "psi", ns, kmax); break;
            case Law::conditional_poisson: rep = poisson_check(Mode::conditional, p, head, "phi", ns, kmax); break;
            case Law::infinitesimal_poisson: break;
            case Law::cyclic_conditional_poisson:
                rep = poisson_check(Mode::cyclic_conditional, p, head, "omega", ns, kmax);
                break;
            case Law::cyclic_boolean_poisson:
            case Law::cyclic_boolean_poisson_variant:
                rep = poisson_check(Mode::cyclic_boolean, p, head, "omega", ns, kmax);
                break;
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }

    bool ok = true;
    o.summary = law_name(law) + ": " + std::to_string(L.moments.m.size()) + " moments";
    if (rep) {
        Json rows = Json::array();
        o.rows.push_back({});
        o.rows.push_back({"N", "k", "gap"});
        for (size_t i = 0; i < rep->ns.size(); ++i)
            for (size_t k = 0; k < rep->gaps[i].size(); ++k) {
                rows.push_back({{"N", rep->ns[i]}, {"k", k}, {"gap", to_string(rep->gaps[i][k])}});
                o.rows.push_back({std::to_string(rep->ns[i]), std::to_string(k), to_string(rep->gaps[i][k])});
            }
        o.json["convergence"] = {{"functional", rep->functional},
                                 {"rows", rows},
                                 {"shrinking", rep->shrinking},
                                 {"richardson", rep->richardson}};
        ok = ok && rep->ok();
        o.summary += std::string(", N-fold convergence ") + (rep->ok() ? "holds" : "fails");
    }
    if (law == Law::cyclic_conditional_poisson || law == Law::cyclic_boolean_poisson ||
        law == Law::cyclic_boolean_poisson_variant) {
        std::vector<Q> res = poisson_relation_residual(p, L.moments);
        bool zero = std::all_of(res.begin(), res.end(), [](const Q& r) { return r == 0; });
        o.json["relation_residual"] = rationals_to_json(res);
        o.json["relation_holds"] = zero;
        ok = ok && zero;
        o.summary += std::string(", transform relation ") + (zero ? "holds" : "fails");
    }
    o.code = ok ? 0 : 1;
    return o;
}

void emit(const Job& job, const Output& o) {
    std::string text = job.format == "csv" ? render_csv(o.rows) : o.json.dump(2) + "\n";
    if (job.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(job.out, std::ios::binary);
        if (!f) throw InputError(job.out + ": cannot open for writing");
        f << text;
    }
    if (!o.summary.empty()) std::cerr << o.summary << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cumulants, convolutions, limit laws and graph products for cyclic-conditional freeness"};
    app.fallthrough();
    app.require_subcommand(1);
    Job job;
    app.add_option("--order", job.order, "Truncation order (max " + std::to_string(kOrderCap) + ")");
    app.add_option("--format", job.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", job.out, "Write output to this path");
    app.add_option("--seed", job.seed, "Seed for randomized marginals");

    std::string a1, a2, a3, role_name = "psi";
    std::vector<std::string> files, params;
    std::vector<int> ns{4, 16, 64};

    auto* cum = app.add_subcommand("cumulants", "Cumulant tables of a functional file");
    cum->add_option("family", a1)->required();
    cum->add_option("file", a2)->required();

    auto* conv = app.add_subcommand("convolve", "Additive or multiplicative convolution of two marginals");
    conv->add_option("mode", a1)->required();
    conv->add_option("op", a2)->required();
    conv->add_option("files", files)->required()->expected(2);

    auto* tr = app.add_subcommand("transform", "Transform coefficients of a univariate functional");
    tr->add_option("name", a1)->required();
    tr->add_option("file", a2)->required();
    tr->add_option("--role", role_name, "Functional of a keyed file");

    auto* jc = app.add_subcommand("jointcheck", "Build the joint of independent marginals and verify its defining conditions");
    jc->add_option("mode", a1)->required();
    jc->add_option("files", files)->required();

    auto* gr = app.add_subcommand("graph", "Rooted graph products: star, comb, orthogonal, free, conditional");
    gr->add_option("product", a1)->required();
    gr->add_option("files", files)->required();

    auto* lim = app.add_subcommand("limits", "Limit law moments and N-fold convergence");
    lim->add_option("law", a1)->required();
    lim->add_option("--param", params, "name=value, e.g. alpha2=1/2");
    lim->add_option("--n", ns, "N values of the convergence table")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (job.order < 1) throw InputError("--order must be at least 1");
        if (job.order > kOrderCap)
            throw InputError("--order " + std::to_string(job.order) + " exceeds the hard cap " + std::to_string(kOrderCap));
        Output o;
        if (*cum) o = run_cumulants(job, a1, a2);
        if (*conv) o = run_convolve(job, a1, a2, files);
        if (*tr) o = run_transform(job, a1, a2, role_name);
        if (*jc) o = run_jointcheck(job, a1, files);
        if (*gr) o = run_graph(job, a1, files);
        if (*lim) o = run_limits(job, a1, params, ns);
        emit(job, o);
        return o.code;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

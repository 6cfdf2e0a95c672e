#include "ccf/joint.hpp"

#include <sstream>
#include <stdexcept>

#include "ccf/multiext.hpp"

namespace ccf {

namespace {

template <class T>
Evaluator ev(const T& t) {
    return [t](const Word& w) -> Q { return t(w); };
}

MomentFunctional delta_zero(const Alphabet& al, int deg) {
    return MomentFunctional(al, deg, 1, true, [](const Word&) -> Q { return 0; });
}

struct Layout {
    std::vector<int> algebra, local;
    std::vector<int> colors(const Word& w) const {
        std::vector<int> c;
        for (int x : w) c.push_back(algebra[x]);
        return c;
    }
    Word localize(const Word& w) const {
        Word out;
        for (int x : w) out.push_back(local[x]);
        return out;
    }
};

// Joint evaluator vanishing on mixed words and reading the marginal tables otherwise.
Evaluator mono(std::vector<Evaluator> per, Layout lay) {
    return [per, lay](const Word& w) -> Q {
        for (int x : w)
            if (lay.algebra[x] != lay.algebra[w.front()]) return 0;
        return per[lay.algebra[w.front()]](lay.localize(w));
    };
}

bool has(const MomentFunctional& f) { return f.valid(); }

Word concat(const std::vector<Word>& seq, const std::vector<bool>& keep) {
    Word out;
    for (size_t j = 0; j < seq.size(); ++j)
        if (keep[j]) out.insert(out.end(), seq[j].begin(), seq[j].end());
    return out;
}

Word concat_all(const std::vector<Word>& seq) { return concat(seq, std::vector<bool>(seq.size(), true)); }

// f((u_1 - c_1)(u_2 - c_2)...) with c_j = psi(u_j), expanded over subsets.
Q centred(const MomentFunctional& f, const MomentFunctional& psi, const std::vector<Word>& seq) {
    size_t k = seq.size();
    std::vector<Q> c;
    for (const auto& u : seq) c.push_back(psi(u));
    Q total = 0;
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        Q coef = 1;
        std::vector<bool> keep(k);
        for (size_t j = 0; j < k; ++j) {
            keep[j] = mask >> j & 1UL;
            if (!keep[j]) coef *= -c[j];
        }
        if (coef == 0) continue;
        total += coef * f(concat(seq, keep));
    }
    return total;
}

int color_of(const Alphabet& al, const Word& u) { return al.algebra[u.front()]; }

void record(Report& r, const std::string& cond, const std::vector<Word>& seq, const Q& lhs, const Q& rhs) {
    ++r.checked;
    if (lhs != rhs) r.violations.push_back({cond, seq, lhs, rhs});
}

std::vector<std::vector<Word>> monomials_by_algebra(const Alphabet& al, int max_degree) {
    int k = 0;
    for (int a : al.algebra) k = std::max(k, a + 1);
    std::vector<std::vector<Word>> out(k);
    for (const auto& w : all_words(al, max_degree))
        if (al.monochromatic(w)) out[al.algebra[w.front()]].push_back(w);
    return out;
}

}  // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::free: return "free";
        case Mode::boolean: return "boolean";
        case Mode::monotone: return "monotone";
        case Mode::conditional: return "conditional";
        case Mode::infinitesimal: return "infinitesimal";
        case Mode::cyclic_free: return "cyclic_free";
        case Mode::cyclic_conditional: return "cyclic_conditional";
        case Mode::cyclic_boolean: return "cyclic_boolean";
        case Mode::cyclic_monotone: return "cyclic_monotone";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::free, Mode::boolean, Mode::monotone, Mode::conditional, Mode::infinitesimal, Mode::cyclic_free,
                   Mode::cyclic_conditional, Mode::cyclic_boolean, Mode::cyclic_monotone})
        if (mode_name(m) == s) return m;
    throw std::invalid_argument("unknown independence mode: " + s);
}

bool mode_has_omega(Mode m) {
    return m == Mode::infinitesimal || m == Mode::cyclic_free || m == Mode::cyclic_conditional ||
           m == Mode::cyclic_boolean || m == Mode::cyclic_monotone;
}

JointTriple build_joint(Mode mode, const std::vector<Marginal>& marginals, int max_degree) {
    if (marginals.empty()) throw std::invalid_argument("build_joint: no marginals");
    bool monotone = mode == Mode::monotone || mode == Mode::cyclic_monotone;
    if (monotone && marginals.size() != 2) throw std::invalid_argument("monotone modes take exactly two marginals");
    bool uses_psi = mode != Mode::boolean && mode != Mode::cyclic_boolean && !monotone;
    bool uses_phi = mode == Mode::boolean || mode == Mode::monotone || mode == Mode::conditional ||
                    mode == Mode::cyclic_conditional || mode == Mode::cyclic_boolean || monotone;
    bool uses_omega = mode_has_omega(mode);

    JointTriple jt;
    jt.mode = mode;
    Layout lay;
    std::vector<MomentFunctional> psis, phis, omegas;
    for (size_t i = 0; i < marginals.size(); ++i) {
        const auto& m = marginals[i];
        for (int x = 0; x < m.alphabet.size(); ++x) {
            jt.alphabet.add(m.alphabet.names[x], static_cast<int>(i), m.alphabet.weight[x]);
            lay.algebra.push_back(static_cast<int>(i));
            lay.local.push_back(x);
        }
        auto need = [&](const MomentFunctional& f, const char* what) {
            if (!has(f)) throw std::invalid_argument(std::string("marginal ") + std::to_string(i) + " lacks " + what);
            if (f.max_degree() < max_degree)
                throw std::invalid_argument(std::string("marginal ") + std::to_string(i) + " " + what +
                                            " is declared only up to degree " + std::to_string(f.max_degree()));
        };
        MomentFunctional psi, phi;
        if (uses_psi) need(m.psi, "psi");
        if (uses_phi) need(m.phi, "phi");
        if (uses_omega) need(m.omega, "omega");
        if (uses_psi)
            psi = m.psi;
        else if (monotone && i == 1)
            psi = m.phi;
        else
            psi = delta_zero(m.alphabet, max_degree);
        phi = uses_phi ? m.phi : psi;
        psis.push_back(psi);
        phis.push_back(phi);
        if (uses_omega) {
            if (i > 0 && m.omega.unit() != omegas.front().unit())
                throw std::invalid_argument("inconsistent omega(1) across marginals");
            omegas.push_back(m.omega);
        }
    }
    if (uses_omega) jt.delta = omegas.front().unit();

    std::vector<Evaluator> k, kc, dk;
    for (size_t i = 0; i < psis.size(); ++i) {
        k.push_back(ev(free_cumulants(psis[i])));
        kc.push_back(ev(conditional_cumulants(psis[i], phis[i])));
        if (mode == Mode::infinitesimal)
            dk.push_back(ev(infinitesimal_cumulants_general(psis[i], omegas[i])));
        else if (mode == Mode::cyclic_free)
            dk.push_back(ev(cyclic_free_cumulants_general(psis[i], omegas[i])));
        else if (uses_omega)
            dk.push_back(ev(cyclic_conditional_cumulants(psis[i], phis[i], omegas[i])));
    }
    Evaluator K = mono(k, lay), KC = mono(kc, lay);

    jt.psi = MomentFunctional(jt.alphabet, max_degree, 1, false, [K, lay](const Word& w) -> Q {
        Q s = 0;
        for_each_nc_colored(lay.colors(w), [&](const std::vector<Block>& b) { s += product_over(b, w, K); });
        return s;
    });
    jt.phi = MomentFunctional(jt.alphabet, max_degree, 1, false, [K, KC, lay](const Word& w) -> Q {
        Q s = 0;
        for_each_nc_colored(lay.colors(w),
                            [&](const std::vector<Block>& b) { s += cfree_over(b, nesting_parent(b), w, KC, K); });
        return s;
    });
    if (!uses_omega) return jt;

    Evaluator DK = mono(dk, lay);
    Q delta = jt.delta;
    Evaluator extra;
    if (mode == Mode::infinitesimal) {
        if (delta != 0) {
            auto soul = soul_transform(jt.psi);
            extra = [soul, delta](const Word& w) -> Q { return delta * soul(w); };
        }
    } else if (mode == Mode::cyclic_free) {
        if (delta != 0) {
            auto mk = mk_transform(jt.psi);
            extra = [mk, delta](const Word& w) -> Q { return delta * mk(w); };
        }
    } else {
        auto mkphi = mk_transform(jt.phi), mkpsi = mk_transform(jt.psi);
        extra = [mkphi, mkpsi, delta](const Word& w) -> Q {
            Q s = mkphi(w);
            if (delta != 1) s += (delta - 1) * mkpsi(w);
            return s;
        };
    }
    bool leibniz = mode == Mode::infinitesimal;
    jt.omega = MomentFunctional(jt.alphabet, max_degree, delta, !leibniz, [K, DK, lay, extra, leibniz](const Word& w) -> Q {
        Q s = extra ? extra(w) : Q(0);
        for_each_nc_colored(lay.colors(w), [&](const std::vector<Block>& b) {
            s += leibniz ? leibniz_over(b, w, K, DK) : cyclic_over(b, w, K, DK);
        });
        return s;
    });
    return jt;
}

std::string Report::summary(const Alphabet& alphabet, size_t max_listed) const {
    std::ostringstream os;
    os << checked << " checks, " << violations.size() << " violations";
    for (size_t i = 0; i < violations.size() && i < max_listed; ++i) {
        const auto& v = violations[i];
        os << "\n  " << v.condition << " on (";
        for (size_t j = 0; j < v.sequence.size(); ++j) os << (j ? " | " : "") << word_key(alphabet, v.sequence[j]);
        os << "): " << to_string(v.lhs) << " != " << to_string(v.rhs);
    }
    return os.str();
}

std::vector<std::vector<Word>> alternating_sequences(const Alphabet& alphabet, int max_degree, bool cyclic) {
    auto mons = monomials_by_algebra(alphabet, max_degree);
    std::vector<std::vector<Word>> out;
    std::vector<Word> cur;
    std::function<void(int, int)> rec = [&](int last, int deg) {
        if (!cur.empty()) {
            int first = color_of(alphabet, cur.front());
            if (!cyclic || (cur.size() >= 2 && first != last)) out.push_back(cur);
        }
        for (int a = 0; a < static_cast<int>(mons.size()); ++a) {
            if (a == last) continue;
            for (const auto& u : mons[a]) {
                int d = alphabet.degree(u);
                if (deg + d > max_degree) continue;
                cur.push_back(u);
                rec(a, deg + d);
                cur.pop_back();
            }
        }
    };
    rec(-1, 0);
    return out;
}

Report verify_defining_conditions(const JointTriple& jt, int max_degree) {
    Report r;
    const auto& al = jt.alphabet;
    Mode m = jt.mode;
    bool free_psi = m == Mode::free || m == Mode::conditional || m == Mode::infinitesimal || m == Mode::cyclic_free ||
                    m == Mode::cyclic_conditional;
    bool cond_phi = m == Mode::conditional || m == Mode::cyclic_conditional;
    bool bool_phi = m == Mode::boolean || m == Mode::cyclic_boolean;
    bool mono_phi = m == Mode::monotone || m == Mode::cyclic_monotone;

    // Infinitesimal freeness does not ask omega to be tracial.
    if (mode_has_omega(m) && m != Mode::infinitesimal) {
        for (const auto& w : all_words(al, max_degree)) {
            Q v = jt.omega(w);
            for (size_t k = 1; k < w.size(); ++k) record(r, "tracial", {w, rotate_word(w, static_cast<int>(k))}, v,
                                                         jt.omega(rotate_word(w, static_cast<int>(k))));
        }
    }

    for (const auto& seq : alternating_sequences(al, max_degree, false)) {
        size_t n = seq.size();
        if (free_psi && n >= 2) record(r, "psi centred alternating", seq, centred(jt.psi, jt.psi, seq), 0);
        if (cond_phi && n >= 2) {
            Q rhs = 1;
            for (const auto& u : seq) rhs *= jt.phi(u) - jt.psi(u);
            record(r, "phi factorises", seq, centred(jt.phi, jt.psi, seq), rhs);
        }
        if (bool_phi && n >= 2) {
            Q rhs = 1;
            for (const auto& u : seq) rhs *= jt.phi(u);
            record(r, "boolean factorisation", seq, jt.phi(concat_all(seq)), rhs);
        }
        if (mono_phi && n >= 2) {
            for (size_t p = 0; p < n; ++p) {
                if (color_of(al, seq[p]) != 1) continue;
                std::vector<bool> keep(n, true);
                keep[p] = false;
                record(r, "monotone peak", seq, jt.phi(concat_all(seq)), jt.phi(seq[p]) * jt.phi(concat(seq, keep)));
            }
        }
        if (m == Mode::infinitesimal) {
            Q rhs = 0;
            for (size_t i = 0; i < n; ++i) {
                std::vector<Word> rest;
                for (size_t j = 0; j < n; ++j)
                    if (j != i) rest.push_back(seq[j]);
                Q wi = jt.omega(seq[i]) - jt.psi(seq[i]) * jt.delta;
                rhs += wi * (rest.empty() ? Q(1) : centred(jt.psi, jt.psi, rest));
            }
            record(r, "infinitesimal Leibniz rule", seq, centred(jt.omega, jt.psi, seq), rhs);
        }
        if (m == Mode::cyclic_monotone && n >= 3 && n % 2 == 1 && color_of(al, seq.front()) == 1) {
            std::vector<Word> as;
            Q rhs = 1;
            for (size_t j = 0; j < n; ++j) {
                if (j % 2 == 1)
                    as.push_back(seq[j]);
                else if (j != 0 && j != n - 1)
                    rhs *= jt.phi(seq[j]);
            }
            Word wrap = seq.back();
            wrap.insert(wrap.end(), seq.front().begin(), seq.front().end());
            rhs *= jt.omega(concat_all(as)) * jt.phi(wrap);
            record(r, "cyclic monotone", seq, jt.omega(concat_all(seq)), rhs);
        }
    }
    for (const auto& seq : alternating_sequences(al, max_degree, true)) {
        if (m == Mode::cyclic_free) record(r, "omega centred cyclically alternating", seq, centred(jt.omega, jt.psi, seq), 0);
        if (m == Mode::cyclic_conditional) {
            Q rhs = 1;
            for (const auto& u : seq) rhs *= jt.phi(u) - jt.psi(u);
            record(r, "omega factorises", seq, centred(jt.omega, jt.psi, seq), rhs);
        }
        if (m == Mode::cyclic_boolean)
            record(r, "cyclic boolean", seq, jt.omega(concat_all(seq)), jt.phi(concat_all(seq)));
    }
    return r;
}

Report verify_pairing(const JointTriple& jt, Pairing kind, int max_degree) {
    Report r;
    for (const auto& seq : alternating_sequences(jt.alphabet, max_degree, false)) {
        size_t n = seq.size();
        Q rhs = 0;
        if (n % 2 == 1) {
            rhs = jt.omega(seq[n / 2]) - jt.psi(seq[n / 2]) * jt.delta;
            for (size_t k = 0; k < n / 2; ++k) {
                const Word& x = kind == Pairing::infinitesimal ? seq[k] : seq[n - 1 - k];
                const Word& y = kind == Pairing::infinitesimal ? seq[n - 1 - k] : seq[k];
                rhs *= centred(jt.psi, jt.psi, {x, y});
            }
        }
        record(r, kind == Pairing::infinitesimal ? "infinitesimal pairing" : "cyclic pairing", seq,
               centred(jt.omega, jt.psi, seq), rhs);
    }
    return r;
}

Report verify_mixed_cumulants(const JointTriple& jt, int max_degree) {
    Report r;
    std::vector<std::pair<std::string, CumulantTable>> tables;
    Mode m = jt.mode;
    if (m == Mode::boolean || m == Mode::cyclic_boolean) {
        tables.push_back({"boolean", boolean_cumulants(jt.phi)});
        if (m == Mode::cyclic_boolean) tables.push_back({"cyclic boolean", cyclic_boolean_cumulants(jt.phi, jt.omega)});
    } else {
        tables.push_back({"free", free_cumulants(jt.psi)});
        if (m != Mode::free && m != Mode::infinitesimal && m != Mode::cyclic_free)
            tables.push_back({"conditional", conditional_cumulants(jt.psi, jt.phi)});
        if (m == Mode::infinitesimal)
            tables.push_back({"infinitesimal", infinitesimal_cumulants_general(jt.psi, jt.omega)});
        if (m == Mode::cyclic_free) tables.push_back({"cyclic free", cyclic_free_cumulants_general(jt.psi, jt.omega)});
        if (m == Mode::cyclic_conditional || m == Mode::cyclic_monotone)
            tables.push_back({"cyclic-conditional", cyclic_conditional_cumulants(jt.psi, jt.phi, jt.omega)});
    }
    for (const auto& w : all_words(jt.alphabet, max_degree)) {
        if (jt.alphabet.monochromatic(w)) continue;
        for (const auto& [name, t] : tables) record(r, "mixed " + name + " cumulant", {w}, t(w), 0);
    }
    return r;
}

CompanionTriple cyclic_companion(const JointTriple& base, CompanionKind kind, int base_degree) {
    CompanionTriple ct;
    ct.companion = make_companion(base.alphabet, base_degree);
    auto& t = ct.triple;
    t.alphabet = ct.companion.alphabet;
    t.psi = lift(base.psi, ct.companion);
    t.phi = lift(base.phi.valid() ? base.phi : base.psi, ct.companion);
    switch (kind) {
        case CompanionKind::soul:
            t.mode = Mode::infinitesimal;
            t.omega = soul_transform(t.psi);
            break;
        case CompanionKind::mk_free:
            t.mode = Mode::cyclic_free;
            t.omega = mk_transform(t.psi);
            break;
        case CompanionKind::w_transform:
            t.mode = Mode::cyclic_free;
            t.omega = w_transform(base.phi, ct.companion);
            break;
        case CompanionKind::mk_conditional:
            t.mode = Mode::cyclic_conditional;
            t.omega = mk_transform(t.phi);
            break;
        case CompanionKind::mk_boolean:
            t.mode = Mode::cyclic_boolean;
            t.omega = mk_transform(t.phi);
            break;
        case CompanionKind::mk_monotone:
            t.mode = Mode::cyclic_monotone;
            t.omega = mk_transform(t.phi);
            break;
    }
    t.delta = t.omega.unit();
    return ct;
}

JointTriple difference_triple(const JointTriple& a, const JointTriple& b) {
    if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("difference_triple: alphabets differ");
    if (!a.omega.valid() || !b.omega.valid()) throw std::invalid_argument("difference_triple: missing omega");
    JointTriple d;
    d.mode = Mode::cyclic_free;
    d.alphabet = a.alphabet;
    d.psi = a.psi;
    d.phi = a.psi;
    d.delta = a.delta - b.delta;
    d.omega = linear_combination({{1, a.omega}, {-1, b.omega}}, d.delta);
    d.omega.set_tracial(true);
    return d;
}

Report difference_reduction(const JointTriple& a, const JointTriple& b, int max_degree) {
    return verify_defining_conditions(difference_triple(a, b), max_degree);
}

ProductCheck product_cumulant_check(const JointTriple& jt, const Word& a, const Word& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("product_cumulant_check: need |a| = |b| >= 1");
    if (!jt.omega.valid() || jt.delta != 0)
        throw std::invalid_argument("product_cumulant_check: needs omega with omega(1) = 0");
    int n = static_cast<int>(a.size());
    Alphabet pal;
    std::vector<Word> prod;
    for (int i = 0; i < n; ++i) {
        pal.add("p" + std::to_string(i + 1), 0, jt.alphabet.weight[a[i]] + jt.alphabet.weight[b[i]]);
        prod.push_back({a[i], b[i]});
    }
    auto flat = [prod](const Word& w) {
        Word out;
        for (int x : w) out.insert(out.end(), prod[x].begin(), prod[x].end());
        return out;
    };
    auto psi = jt.psi, omega = jt.omega;
    Word pw(n);
    for (int i = 0; i < n; ++i) pw[i] = i;
    int deg = pal.degree(pw);
    MomentFunctional ppsi(pal, deg, 1, false, [psi, flat](const Word& w) -> Q { return psi(flat(w)); });
    MomentFunctional pom(pal, deg, 0, true, [omega, flat](const Word& w) -> Q { return omega(flat(w)); });

    ProductCheck pc;
    pc.lhs = cyclic_free_cumulants(ppsi, pom)(pw);
    MultiSeq k{ev(free_cumulants(jt.psi)), false};
    MultiSeq dk{ev(cyclic_free_cumulants(jt.psi, jt.omega)), true};
    pc.rhs = 0;
    for (const auto& tb : enumerate_typeB(n))
        pc.rhs += extend_typeB(TypeBStyle::cyclic, k, dk, tb, a) *
                  extend_typeB(TypeBStyle::cyclic, k, dk, typeB_kreweras(tb), b);
    return pc;
}

}  // namespace ccf

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ccf/joint.hpp"

using namespace ccf;

namespace {

Marginal random_marginal(std::mt19937_64& rng, const std::vector<std::string>& names, int deg, bool tracial_psi,
                         const Q& delta) {
    Marginal m;
    for (const auto& s : names) m.alphabet.add(s);
    m.psi = random_functional(m.alphabet, deg, rng, tracial_psi);
    m.phi = random_functional(m.alphabet, deg, rng, false);
    m.omega = random_functional(m.alphabet, deg, rng, true, delta);
    return m;
}

// Recursive centring on maximal monochromatic runs, straight from the moment definitions.
class Oracle {
public:
    Oracle(Mode mode, std::vector<Marginal> ms, Q delta) : mode_(mode), delta_(delta) {
        for (size_t i = 0; i < ms.size(); ++i) {
            for (int x = 0; x < ms[i].alphabet.size(); ++x) {
                alg_.push_back(static_cast<int>(i));
                loc_.push_back(x);
            }
            bool one_state = mode == Mode::boolean || mode == Mode::cyclic_boolean || mode == Mode::monotone ||
                             mode == Mode::cyclic_monotone;
            bool uses_phi = mode == Mode::conditional || mode == Mode::cyclic_conditional || one_state;
            if (one_state) {
                bool inner = (mode == Mode::monotone || mode == Mode::cyclic_monotone) && i == 1;
                ms[i].psi = inner ? ms[i].phi
                                  : tabulate(ms[i].alphabet, ms[i].phi.max_degree(), 1, true,
                                             [](const Word&) -> Q { return 0; });
            }
            if (!uses_phi) ms[i].phi = ms[i].psi;
        }
        m_ = ms;
    }

    Q psi(const Word& w) { return eval(w, 0); }
    Q phi(const Word& w) { return eval(w, 1); }
    Q omega(const Word& w) { return eval(w, 2); }

private:
    Mode mode_;
    Q delta_;
    std::vector<Marginal> m_;
    std::vector<int> alg_, loc_;
    std::map<std::pair<int, Word>, Q> memo_;

    std::vector<Word> runs(const Word& w) const {
        std::vector<Word> r;
        for (int x : w) {
            if (r.empty() || alg_[r.back().front()] != alg_[x]) r.push_back({});
            r.back().push_back(x);
        }
        return r;
    }
    Q marginal(const Word& u, int which) const {
        const auto& m = m_[alg_[u.front()]];
        Word l;
        for (int x : u) l.push_back(loc_[x]);
        return which == 0 ? m.psi(l) : which == 1 ? m.phi(l) : m.omega(l);
    }
    static Word join(const std::vector<Word>& r, unsigned long mask) {
        Word out;
        for (size_t j = 0; j < r.size(); ++j)
            if (mask >> j & 1UL) out.insert(out.end(), r[j].begin(), r[j].end());
        return out;
    }
    // sum over proper subsets S of prod_{j not in S} (-c_j) f(u_S)
    Q lower(const std::vector<Word>& r, int which) {
        size_t k = r.size();
        Q s = 0;
        for (unsigned long mask = 0; mask + 1 < (1UL << k); ++mask) {
            Q coef = 1;
            for (size_t j = 0; j < k; ++j)
                if (!(mask >> j & 1UL)) coef *= -psi(r[j]);
            if (coef != 0) s += coef * eval(join(r, mask), which);
        }
        return s;
    }
    Q centred_psi(const std::vector<Word>& r) {
        Q s = 0;
        for (unsigned long mask = 0; mask < (1UL << r.size()); ++mask) {
            Q coef = 1;
            for (size_t j = 0; j < r.size(); ++j)
                if (!(mask >> j & 1UL)) coef *= -psi(r[j]);
            s += coef * psi(join(r, mask));
        }
        return s;
    }

    Q eval(const Word& w, int which) {
        if (w.empty()) return which == 2 ? delta_ : Q(1);
        auto key = std::make_pair(which, w);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto r = runs(w);
        Q v;
        if (r.size() == 1) {
            v = marginal(w, which);
        } else if (which == 0) {
            v = -lower(r, 0);
        } else if (which == 1) {
            Q target = 1;
            for (const auto& u : r) target *= marginal(u, 1) - psi(u);
            v = target - lower(r, 1);
        } else if (mode_ != Mode::infinitesimal && alg_[w.front()] == alg_[w.back()]) {
            v = eval(rotate_word(w, static_cast<int>(r.front().size())), 2);
        } else {
            Q target = 0;
            if (mode_ == Mode::infinitesimal) {
                for (size_t i = 0; i < r.size(); ++i) {
                    std::vector<Word> rest;
                    for (size_t j = 0; j < r.size(); ++j)
                        if (j != i) rest.push_back(r[j]);
                    target += (omega(r[i]) - delta_ * psi(r[i])) * centred_psi(rest);
                }
            } else if (mode_ != Mode::cyclic_free) {
                target = 1;
                for (const auto& u : r) target *= phi(u) - psi(u);
            }
            v = target - lower(r, 2);
        }
        memo_.emplace(key, v);
        return v;
    }
};

const std::vector<Mode> all_modes{Mode::free,          Mode::boolean,           Mode::monotone,
                                  Mode::conditional,   Mode::infinitesimal,     Mode::cyclic_free,
                                  Mode::cyclic_conditional, Mode::cyclic_boolean, Mode::cyclic_monotone};

}  // namespace

TEST_CASE("free product moments") {
    std::mt19937_64 rng(1);
    auto ma = random_marginal(rng, {"a1", "a2"}, 4, false, 0), mb = random_marginal(rng, {"b1", "b2"}, 4, false, 0);
    auto jt = build_joint(Mode::free, {ma, mb}, 4);
    auto P = [&](const Marginal& m, Word w) { return m.psi(w); };
    Q expected = P(ma, {0, 1}) * P(mb, {0}) * P(mb, {1}) + P(ma, {0}) * P(ma, {1}) * P(mb, {0, 1}) -
                 P(ma, {0}) * P(ma, {1}) * P(mb, {0}) * P(mb, {1});
    CHECK(jt.psi(Word{0, 2, 1, 3}) == expected);
}

TEST_CASE("cyclic free example") {
    std::mt19937_64 rng(2);
    Q delta(3, 2);
    auto ma = random_marginal(rng, {"a"}, 4, false, delta), mb = random_marginal(rng, {"b"}, 4, false, delta);
    auto jt = build_joint(Mode::cyclic_free, {ma, mb}, 4);
    Word aba{0, 1, 0};
    Q expected = -delta * mb.psi(Word{0}) * ma.psi(Word{0, 0}) + mb.omega(Word{0}) * ma.psi(Word{0, 0}) +
                 mb.psi(Word{0}) * ma.omega(Word{0, 0});
    CHECK(jt.omega(aba) == expected);
    CHECK(jt.omega(Word{1, 0, 0}) == expected);
    CHECK_THROWS(build_joint(Mode::cyclic_free, {ma, random_marginal(rng, {"c"}, 4, false, 2)}, 4));
    CHECK_THROWS(build_joint(Mode::cyclic_free, {ma, mb}, 5));
}

TEST_CASE("single marginal collapses") {
    std::mt19937_64 rng(3);
    auto ma = random_marginal(rng, {"a", "c"}, 4, false, 1);
    for (Mode mode : all_modes) {
        if (mode == Mode::monotone || mode == Mode::cyclic_monotone) continue;
        auto jt = build_joint(mode, {ma}, 4);
        for (const auto& w : all_words(ma.alphabet, 4)) {
            bool one_state = mode == Mode::boolean || mode == Mode::cyclic_boolean;
            if (!one_state) CHECK(jt.psi(w) == ma.psi(w));
            if (mode == Mode::conditional || mode == Mode::cyclic_conditional || one_state) CHECK(jt.phi(w) == ma.phi(w));
            if (mode_has_omega(mode)) CHECK(jt.omega(w) == ma.omega(w));
        }
    }
}

TEST_CASE("joint moments agree with recursive centring") {
    std::mt19937_64 rng(4);
    struct Shape {
        std::vector<std::string> a, b;
        int deg;
    };
    for (const auto& sh : {Shape{{"a"}, {"b"}, 6}, Shape{{"a", "c"}, {"b", "d"}, 4}}) {
        for (Mode mode : all_modes) {
            Q delta = mode == Mode::infinitesimal ? Q(2, 3) : Q(-1, 2);
            auto ma = random_marginal(rng, sh.a, sh.deg, false, delta);
            auto mb = random_marginal(rng, sh.b, sh.deg, false, delta);
            auto jt = build_joint(mode, {ma, mb}, sh.deg);
            Oracle o(mode, {ma, mb}, delta);
            int bad = 0;
            for (const auto& w : all_words(jt.alphabet, sh.deg)) {
                if (jt.psi(w) != o.psi(w)) ++bad;
                if (jt.phi(w) != o.phi(w)) ++bad;
                if (mode_has_omega(mode) && jt.omega(w) != o.omega(w)) ++bad;
            }
            INFO(mode_name(mode), " letters per algebra ", sh.a.size());
            CHECK(bad == 0);
        }
    }
}

TEST_CASE("defining conditions and mixed cumulants") {
    std::mt19937_64 rng(5);
    for (Mode mode : all_modes) {
        for (int letters : {1, 2}) {
            int deg = letters == 1 ? 6 : 4;
            std::vector<std::string> a{"a"}, b{"b"};
            if (letters == 2) {
                a.push_back("c");
                b.push_back("d");
            }
            auto jt = build_joint(mode, {random_marginal(rng, a, deg, false, Q(5, 4)),
                                         random_marginal(rng, b, deg, false, Q(5, 4))},
                                  deg);
            auto rep = verify_defining_conditions(jt, deg);
            INFO(mode_name(mode), ": ", rep.summary(jt.alphabet));
            CHECK(rep.ok());
            CHECK(rep.checked > 0);
            auto mixed = verify_mixed_cumulants(jt, deg);
            INFO(mixed.summary(jt.alphabet));
            CHECK(mixed.ok());
        }
    }
}

TEST_CASE("fault injection is reported") {
    std::mt19937_64 rng(6);
    auto jt = build_joint(Mode::cyclic_conditional,
                          {random_marginal(rng, {"a"}, 5, false, 1), random_marginal(rng, {"b"}, 5, false, 1)}, 5);
    Word bad{0, 1, 0, 1};
    jt.phi.set(bad, jt.phi(bad) + 1);
    auto rep = verify_defining_conditions(jt, 5);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations) {
        Word flat;
        for (const auto& u : v.sequence) flat.insert(flat.end(), u.begin(), u.end());
        found = found || flat == bad;
    }
    CHECK(found);
    jt.omega.set(Word{0, 1}, jt.omega(Word{0, 1}) + 1);
    auto rep2 = verify_defining_conditions(jt, 5);
    bool tracial_flagged = false;
    for (const auto& v : rep2.violations) tracial_flagged = tracial_flagged || v.condition == "tracial";
    CHECK(tracial_flagged);
}

TEST_CASE("pairing characterisations") {
    std::mt19937_64 rng(7);
    Q delta(1, 3);
    auto ta = random_marginal(rng, {"a"}, 6, true, delta), tb = random_marginal(rng, {"b"}, 6, true, delta);
    auto cyc = build_joint(Mode::cyclic_free, {ta, tb}, 6);
    auto inf = build_joint(Mode::infinitesimal, {ta, tb}, 6);
    CHECK(verify_pairing(cyc, Pairing::cyclic, 6).ok());
    CHECK(verify_pairing(cyc, Pairing::infinitesimal, 6).ok());
    for (const auto& w : all_words(cyc.alphabet, 6)) CHECK(cyc.omega(w) == inf.omega(w));

    auto na = random_marginal(rng, {"a", "c"}, 4, false, delta), nb = random_marginal(rng, {"b", "d"}, 4, false, delta);
    auto cyc2 = build_joint(Mode::cyclic_free, {na, nb}, 4);
    auto inf2 = build_joint(Mode::infinitesimal, {na, nb}, 4);
    CHECK(verify_pairing(cyc2, Pairing::cyclic, 4).ok());
    CHECK_FALSE(verify_pairing(cyc2, Pairing::infinitesimal, 4).ok());
    CHECK(verify_pairing(inf2, Pairing::infinitesimal, 4).ok());
}

TEST_CASE("companion constructions") {
    std::mt19937_64 rng(8);
    // W(phi) reads one letter past the word, hence the extra degree.
    auto ma = random_marginal(rng, {"a"}, 8, false, 1), mb = random_marginal(rng, {"b"}, 8, false, 1);
    auto freej = build_joint(Mode::free, {ma, mb}, 8);
    auto condj = build_joint(Mode::conditional, {ma, mb}, 8);
    auto boolj = build_joint(Mode::boolean, {ma, mb}, 8);
    auto monoj = build_joint(Mode::monotone, {ma, mb}, 8);
    struct Case {
        const JointTriple* base;
        CompanionKind kind;
        const char* name;
    };
    for (const auto& c : {Case{&freej, CompanionKind::soul, "soul"}, Case{&freej, CompanionKind::mk_free, "[Psi]"},
                          Case{&condj, CompanionKind::w_transform, "W(phi)"},
                          Case{&condj, CompanionKind::mk_conditional, "[phi]"},
                          Case{&boolj, CompanionKind::mk_boolean, "boolean [phi]"},
                          Case{&monoj, CompanionKind::mk_monotone, "monotone [phi]"}}) {
        auto ct = cyclic_companion(*c.base, c.kind, 2);
        auto rep = verify_defining_conditions(ct.triple, 5);
        INFO(c.name, ": ", rep.summary(ct.triple.alphabet));
        CHECK(rep.ok());
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("difference of two cyclic-conditional omegas") {
    std::mt19937_64 rng(9);
    auto ma = random_marginal(rng, {"a"}, 5, false, 1), mb = random_marginal(rng, {"b"}, 5, false, 1);
    auto j1 = build_joint(Mode::cyclic_conditional, {ma, mb}, 5);
    CHECK(difference_reduction(j1, j1, 5).ok());
    auto zero = difference_triple(j1, j1);
    for (const auto& w : all_words(zero.alphabet, 5)) CHECK(zero.omega(w) == 0);

    auto ma2 = ma, mb2 = mb;
    ma2.omega = random_functional(ma.alphabet, 5, rng, true, Q(7, 2));
    mb2.omega = random_functional(mb.alphabet, 5, rng, true, Q(7, 2));
    auto j2 = build_joint(Mode::cyclic_conditional, {ma2, mb2}, 5);
    auto rep = difference_reduction(j1, j2, 5);
    INFO(rep.summary(j1.alphabet));
    CHECK(rep.ok());

    auto ma3 = ma, mb3 = mb;
    ma3.omega = mk_transform(ma.phi);
    mb3.omega = mk_transform(mb.phi);
    auto j3 = build_joint(Mode::cyclic_conditional, {ma3, mb3}, 5);
    auto d = difference_triple(j1, j3);
    auto dpsi = cyclic_conditional_part(j1.psi, j1.phi, j1.omega);
    for (const auto& w : all_words(d.alphabet, 5)) CHECK(d.omega(w) == dpsi(w));
}

TEST_CASE("cumulants of cyclically alternating products") {
    std::mt19937_64 rng(10);
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::string> an, bn;
        for (int i = 1; i <= n; ++i) {
            an.push_back("a" + std::to_string(i));
            bn.push_back("b" + std::to_string(i));
        }
        auto ma = random_marginal(rng, an, n, false, 0), mb = random_marginal(rng, bn, n, false, 0);
        auto jt = build_joint(Mode::cyclic_free, {ma, mb}, n);
        Word a, b;
        for (int i = 0; i < n; ++i) {
            a.push_back(i);
            b.push_back(n + i);
        }
        auto pc = product_cumulant_check(jt, a, b);
        CHECK(pc.lhs == pc.rhs);
        if (n == 1)
            CHECK(pc.lhs == ma.omega(Word{0}) * mb.psi(Word{0}) + ma.psi(Word{0}) * mb.omega(Word{0}));
    }
}

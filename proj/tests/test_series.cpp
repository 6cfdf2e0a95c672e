#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccf/series.hpp"

using namespace ccf;

namespace {

using Poly = std::vector<std::pair<Q, Word>>;

std::vector<Q> qs(std::initializer_list<long> v) {
    std::vector<Q> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

MomentSeries random_series(std::mt19937_64& rng, int N, const Q& unit = 1) {
    MomentSeries s;
    s.m.push_back(unit);
    for (int n = 1; n <= N; ++n) s.m.push_back(random_rational(rng, 4));
    return s;
}

Distribution random_distribution(std::mt19937_64& rng, int N, const Q& delta) {
    return {random_series(rng, N), random_series(rng, N), random_series(rng, N, delta)};
}

MomentSeries truncate(const MomentSeries& s, int N) { return {std::vector<Q>(s.m.begin(), s.m.begin() + N + 1)}; }

Distribution truncate(const Distribution& d, int N) {
    Distribution r;
    if (!d.psi.empty()) r.psi = truncate(d.psi, N);
    if (!d.phi.empty()) r.phi = truncate(d.phi, N);
    if (!d.omega.empty()) r.omega = truncate(d.omega, N);
    return r;
}

// Moments of 1 + a from those of a (the unit of f stays f(1)).
MomentSeries shifted(const MomentSeries& s) {
    MomentSeries r;
    for (int n = 0; n <= s.order(); ++n) {
        Q v = 0;
        for (int k = 0; k <= n; ++k) v += binomial(n, k) * s.m[k];
        r.m.push_back(v);
    }
    return r;
}

Distribution shifted(const Distribution& d) {
    Distribution r;
    if (!d.psi.empty()) r.psi = shifted(d.psi);
    if (!d.phi.empty()) r.phi = shifted(d.phi);
    if (!d.omega.empty()) r.omega = shifted(d.omega);
    return r;
}

Marginal marginal(const std::string& name, const Distribution& d) {
    Marginal m;
    m.alphabet = Alphabet::single(name);
    if (!d.psi.empty()) m.psi = MomentFunctional::univariate(d.psi.m, name);
    if (!d.phi.empty()) m.phi = MomentFunctional::univariate(d.phi.m, name);
    if (!d.omega.empty()) m.omega = MomentFunctional::univariate(d.omega.m, name);
    return m;
}

// (f(1), f(p), ..., f(p^N)) by expanding the powers of p into words.
MomentSeries moments_of(const MomentFunctional& f, const Poly& p, int N) {
    MomentSeries r;
    std::vector<std::pair<Q, Word>> terms = {{Q(1), Word{}}};
    for (int n = 0; n <= N; ++n) {
        Q v = 0;
        for (const auto& [c, w] : terms) v += c * f(w);
        r.m.push_back(v);
        std::vector<std::pair<Q, Word>> next;
        for (const auto& [c, w] : terms)
            for (const auto& [d, x] : p) {
                Word y = w;
                y.insert(y.end(), x.begin(), x.end());
                next.push_back({c * d, y});
            }
        terms = std::move(next);
    }
    return r;
}

const Poly kSum = {{1, {0}}, {1, {1}}};
const Poly kProduct = {{1, {0, 1}}};
const Poly kShiftedProduct = {{1, {}}, {1, {0}}, {1, {1}}, {1, {0, 1}}};  // (1 + a)(1 + b)
const Poly kLeftShiftedProduct = {{1, {1}}, {1, {0, 1}}};                // (1 + a) b

Distribution joint_moments(Mode mode, const Distribution& a, const Distribution& b, const Poly& p, int N, int deg) {
    JointTriple jt = build_joint(mode, {marginal("a", a), marginal("b", b)}, deg);
    Distribution r;
    bool uses_psi = mode == Mode::free || mode == Mode::conditional || mode == Mode::infinitesimal ||
                    mode == Mode::cyclic_free || mode == Mode::cyclic_conditional;
    bool uses_phi = mode != Mode::free && mode != Mode::infinitesimal && mode != Mode::cyclic_free;
    if (uses_psi) r.psi = moments_of(jt.psi, p, N);
    if (uses_phi) r.phi = moments_of(jt.phi, p, N);
    if (mode_has_omega(mode)) r.omega = moments_of(jt.omega, p, N);
    return r;
}

void check_certificates(const std::vector<Certificate>& cs) {
    REQUIRE_FALSE(cs.empty());
    for (const auto& c : cs) {
        INFO(c.identity);
        CHECK(c.holds);
    }
}

Series generating(const std::vector<Q>& c) { return Series(c); }

}  // namespace

TEST_CASE("series arithmetic") {
    Series t = Series::variable(8);
    Series geo = (-t + Q(1)).inverse();
    for (int k = 0; k <= 8; ++k) CHECK(geo[k] == 1);
    Series f = t * geo;  // t/(1 - t)
    Series g = f.reversion();  // t/(1 + t)
    for (int k = 1; k <= 8; ++k) CHECK(g[k] == (k % 2 ? 1 : -1));
    CHECK(f.compose(g).agrees(t));
    Series lg = geo.log();  // -ln(1 - t)
    for (int k = 1; k <= 8; ++k) CHECK(lg[k] == Q(1, k));
    CHECK(geo.derivative().order() == 7);
    CHECK(f.over_t().order() == 7);
    CHECK(geo.power(2)[5] == 6);
    CHECK_THROWS(t.inverse());
    CHECK_THROWS(geo.compose(geo));
    CHECK_THROWS(Series::constant(1, 4).reversion());
}

TEST_CASE("transforms of simple laws") {
    MomentSeries zero = MomentSeries::point_mass(0, 8);
    CHECK(eta_transform(zero).valuation() > 8);
    TransformView G = transform(zero, "G");
    CHECK(G.at_infinity);
    CHECK(G.lead == -1);
    CHECK(G.coefficients[0] == 1);
    for (int k = 1; k <= 8; ++k) CHECK(G.coefficients[k] == 0);
    CHECK(mk_series(zero) == zero);

    for (Q c : {Q(0), Q(2), Q(-3, 2)}) {
        MomentSeries pm = MomentSeries::point_mass(c, 10);
        CHECK(mk_series(pm) == pm);
        TransformView F = transform(pm, "F");  // F(z) = z - c
        CHECK(F.coefficients[0] == 1);
        CHECK(F.coefficients[1] == -c);
        for (int k = 2; k <= 10; ++k) CHECK(F.coefficients[k] == 0);
    }

    MomentSeries semicircle;
    for (int n = 0; n <= 10; ++n) semicircle.m.push_back(n % 2 ? Q(0) : catalan(n / 2));
    Series R = R_transform(semicircle);
    for (int n = 0; n <= 10; ++n) CHECK(R[n] == (n == 2 ? 1 : 0));

    MomentSeries arcsine = mk_series(semicircle);
    CHECK(arcsine.m == qs({1, 0, 2, 0, 6, 0, 20, 0, 70, 0, 252}));

    MomentSeries poisson;  // free Poisson of rate 1: S(z) = 1/(1 + z)
    for (int n = 0; n <= 10; ++n) poisson.m.push_back(catalan(n));
    Series S = S_transform(poisson);
    CHECK(S.agrees((Series::variable(9) + Q(1)).inverse()));
    CHECK(S.order() == 9);
    CHECK_THROWS(S_transform(semicircle));

    for (const auto& name : transform_names()) {
        if (name == "S" || name == "inverse") continue;
        CHECK_NOTHROW(transform(semicircle, name));
    }
    CHECK_THROWS(transform(semicircle, "nope"));
}

TEST_CASE("series transforms agree with word-level cumulants") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        MomentSeries psi = random_series(rng, 10), phi = random_series(rng, 10);
        MomentFunctional fpsi = MomentFunctional::univariate(psi.m), fphi = MomentFunctional::univariate(phi.m);
        auto k = free_cumulants(fpsi).sequence(0, 10);
        auto b = boolean_cumulants(fpsi).sequence(0, 10);
        auto c = conditional_cumulants(fpsi, fphi).sequence(0, 10);
        Series R = R_transform(psi), eta = eta_transform(psi), CR = conditional_R_transform(psi, phi);
        for (int n = 1; n <= 10; ++n) {
            CHECK(R[n] == k[n]);
            CHECK(eta[n] == b[n]);
            CHECK(CR[n] == c[n]);
        }
        MomentSeries mk = mk_series(psi);
        for (int n = 1; n <= 10; ++n) CHECK(mk.m[n] == mk_power(fpsi, 0, n));
    }
}

TEST_CASE("free additive convolution") {
    MomentSeries bern = MomentSeries{qs({1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1})};
    AdditiveResult r = additive_convolve(Mode::free, {bern, {}, {}}, {bern, {}, {}});
    CHECK(r.sum.psi.m == qs({1, 0, 2, 0, 6, 0, 20, 0, 70, 0, 252}));
    CHECK(r.iterations == 10);
    check_certificates(additive_certificates(Mode::free, {bern, {}, {}}, {bern, {}, {}}, r));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        MomentSeries a = random_series(rng, 12), b = random_series(rng, 12);
        AdditiveResult r10 = additive_convolve(Mode::free, {truncate(a, 10), {}, {}}, {truncate(b, 10), {}, {}});
        AdditiveResult r12 = additive_convolve(Mode::free, {a, {}, {}}, {b, {}, {}});
        CHECK(truncate(r12.sum.psi, 10) == r10.sum.psi);
        CHECK(r12.u_a.truncated(r10.u_a.order()).agrees(r10.u_a));
        Series ka = R_transform(truncate(a, 10)), kb = R_transform(truncate(b, 10));
        CHECK(R_transform(r10.sum.psi).agrees(ka + kb));
        check_certificates(additive_certificates(Mode::free, {truncate(a, 10), {}, {}}, {truncate(b, 10), {}, {}}, r10));
    }
    CHECK_THROWS(additive_convolve(Mode::free, {truncate(bern, 8), {}, {}}, {bern, {}, {}}));
    CHECK_THROWS(additive_convolve(Mode::conditional, {bern, {}, {}}, {bern, {}, {}}));
}

TEST_CASE("additive convolutions match the joint distribution of a + b") {
    std::mt19937_64 rng(21);
    const int N = 8;
    for (Mode mode : {Mode::boolean, Mode::monotone, Mode::conditional, Mode::infinitesimal, Mode::cyclic_free,
                      Mode::cyclic_conditional, Mode::cyclic_boolean, Mode::cyclic_monotone}) {
        for (Q delta : {Q(0), Q(3, 2)}) {
            if (!mode_has_omega(mode) && delta != 0) continue;
            CAPTURE(mode_name(mode));
            CAPTURE(delta);
            Distribution a = random_distribution(rng, N, delta), b = random_distribution(rng, N, delta);
            Distribution want = joint_moments(mode, a, b, kSum, N, N);
            AdditiveResult r = additive_convolve(mode, a, b);
            if (!want.psi.empty()) CHECK(r.sum.psi == want.psi);
            if (!want.phi.empty()) CHECK(r.sum.phi == want.phi);
            if (!want.omega.empty()) CHECK(r.sum.omega == want.omega);
            check_certificates(additive_certificates(mode, a, b, r));
        }
    }
}

TEST_CASE("cyclic-conditional additive formula is affine in omega(1)") {
    std::mt19937_64 rng(8);
    Distribution a = random_distribution(rng, 8, 0), b = random_distribution(rng, 8, 0);
    std::vector<MomentSeries> outs;
    for (int d = 0; d <= 2; ++d) {
        Distribution ad = a, bd = b;
        ad.omega.m[0] = bd.omega.m[0] = d;
        outs.push_back(additive_convolve(Mode::cyclic_conditional, ad, bd).sum.omega);
    }
    for (int n = 0; n <= 8; ++n) CHECK(outs[2].m[n] - outs[1].m[n] == outs[1].m[n] - outs[0].m[n]);
}

TEST_CASE("printed Cauchy-transform relations") {
    std::mt19937_64 rng(31);
    Distribution a = random_distribution(rng, 8, Q(1, 3));
    Series gw = moment_generating(a.omega), gp = moment_generating(a.psi), gf = moment_generating(a.phi);
    auto mk = [](const Series& g) { return g.log_derivative().times_t() + Q(1); };  // -G'/G
    Q c = 1 - a.omega.unit();
    Series dpsi = moment_generating(d_psi(a.psi, a.phi, a.omega));
    // The form substituted in the derivation: G^omega - (1 - omega(1)) G'/G [psi] + G'/G [phi].
    CHECK(dpsi.agrees(gw + c * mk(gp) - mk(gf)));
    // The displayed lemma flips both log-derivative signs.
    CHECK_FALSE(dpsi.agrees(gw - c * mk(gp) + mk(gf)));

    Distribution x = random_distribution(rng, 8, 0), y = random_distribution(rng, 8, 0);
    for (Q delta : {Q(0), Q(2)}) {
        x.omega.m[0] = y.omega.m[0] = delta;
        AdditiveResult r = additive_convolve(Mode::cyclic_boolean, x, y);
        Series printed = moment_generating(x.omega) + moment_generating(y.omega) - mk(moment_generating(x.phi)) -
                         mk(moment_generating(y.phi)) + mk(moment_generating(r.sum.phi)) - Q(1);
        // The printed -1/z term holds only for omega(1) = 2; omega(1) = 0 needs +1/z.
        CHECK(moment_generating(r.sum.omega).agrees(printed) == (delta == 2));
        AdditiveResult m = additive_convolve(Mode::cyclic_monotone, x, y);
        Series mono = pullback(m.u_a, moment_generating(x.omega)) + moment_generating(y.omega);
        CHECK(moment_generating(m.sum.omega).agrees(mono) == (delta == 0));
    }
}

TEST_CASE("free multiplicative convolution") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 6; ++trial) {
        // shifted Bernoulli laws p delta_{c1} + (1 - p) delta_{c2}
        auto bern = [&](int N) {
            Q p = Q(1 + static_cast<int>(rng() % 4), 5), c1 = 1 + static_cast<int>(rng() % 3), c2 = Q(1, 2);
            MomentSeries s;
            for (int n = 0; n <= N; ++n) s.m.push_back(p * pow(c1, n) + (1 - p) * pow(c2, n));
            return s;
        };
        MomentSeries x = bern(10), y = bern(10);
        MultiplicativeResult r = multiplicative_convolve(Mode::free, {x, {}, {}}, {y, {}, {}});
        CHECK(r.iterations == 10);
        Series sxy = S_transform(r.product.psi);
        CHECK(sxy.order() == 9);
        CHECK(sxy.agrees(S_transform(x) * S_transform(y)));
        check_certificates(multiplicative_certificates(Mode::free, {x, {}, {}}, {y, {}, {}}, r));

        // The recursion with the two rho's in the other order solves a different equation.
        Series w(10);
        Series rx = rho_transform(x), ry = rho_transform(y);
        for (int it = 0; it < 10; ++it) w = rx.compose(ry.compose(w).times_t()).times_t();
        CHECK_FALSE(eta_transform(x).compose(w).agrees(eta_transform(r.product.psi)));
    }
    std::mt19937_64 rng2(9);
    for (int trial = 0; trial < 5; ++trial) {
        MomentSeries x = random_series(rng2, 12), y = random_series(rng2, 12);
        x.m[1] = 0;  // no S-transform; the fixed point still works
        auto r10 = multiplicative_convolve(Mode::free, {truncate(x, 10), {}, {}}, {truncate(y, 10), {}, {}});
        auto r12 = multiplicative_convolve(Mode::free, {x, {}, {}}, {y, {}, {}});
        CHECK(truncate(r12.product.psi, 10) == r10.product.psi);
        check_certificates(multiplicative_certificates(Mode::free, {truncate(x, 10), {}, {}}, {truncate(y, 10), {}, {}}, r10));
        JointTriple jt = build_joint(Mode::free, {marginal("a", {truncate(x, 8), {}, {}}), marginal("b", {truncate(y, 8), {}, {}})}, 8);
        auto r4 = multiplicative_convolve(Mode::free, {truncate(x, 4), {}, {}}, {truncate(y, 4), {}, {}});
        CHECK(r4.product.psi == moments_of(jt.psi, kProduct, 4));
    }
}

TEST_CASE("multiplicative convolutions match the joint distribution of products") {
    std::mt19937_64 rng(77);
    const int N = 4;
    for (Mode mode : {Mode::boolean, Mode::monotone, Mode::conditional, Mode::infinitesimal, Mode::cyclic_free,
                      Mode::cyclic_conditional, Mode::cyclic_boolean, Mode::cyclic_monotone}) {
        for (Q delta : {Q(0), Q(-2, 3)}) {
            if (!mode_has_omega(mode) && delta != 0) continue;
            CAPTURE(mode_name(mode));
            CAPTURE(delta);
            Distribution a = random_distribution(rng, 2 * N, delta), b = random_distribution(rng, 2 * N, delta);
            bool both_shifted = mode == Mode::boolean || mode == Mode::cyclic_boolean;
            bool left_shifted = mode == Mode::monotone || mode == Mode::cyclic_monotone;
            const Poly& p = both_shifted ? kShiftedProduct : left_shifted ? kLeftShiftedProduct : kProduct;
            Distribution want = joint_moments(mode, a, b, p, N, 2 * N);
            Distribution x = truncate(a, N), y = truncate(b, N);
            if (both_shifted || left_shifted) x = shifted(x);
            if (both_shifted) y = shifted(y);
            MultiplicativeResult r = multiplicative_convolve(mode, x, y);
            if (!want.psi.empty()) CHECK(r.product.psi == want.psi);
            if (!want.phi.empty()) CHECK(r.product.phi == want.phi);
            if (!want.omega.empty()) CHECK(r.product.omega == want.omega);
            check_certificates(multiplicative_certificates(mode, x, y, r));
        }
    }
}

TEST_CASE("multiplicative identities at order 8") {
    std::mt19937_64 rng(123);
    for (Mode mode : {Mode::conditional, Mode::infinitesimal, Mode::cyclic_conditional, Mode::cyclic_boolean,
                      Mode::cyclic_monotone, Mode::boolean, Mode::monotone}) {
        for (Q delta : {Q(0), Q(5, 2)}) {
            CAPTURE(mode_name(mode));
            Distribution x = random_distribution(rng, 8, delta), y = random_distribution(rng, 8, delta);
            x.psi.m[1] = 1 + x.psi.m[1] * x.psi.m[1];
            y.psi.m[1] = 2 + y.psi.m[1] * y.psi.m[1];
            auto r = multiplicative_convolve(mode, x, y);
            auto cs = multiplicative_certificates(mode, x, y, r);
            check_certificates(cs);
            for (const auto& c : cs) CHECK(c.order >= 7);
        }
    }
}

TEST_CASE("printed multiplicative relations") {
    std::mt19937_64 rng(55);
    Distribution x = random_distribution(rng, 8, 0), y = random_distribution(rng, 8, 0);
    auto r = multiplicative_convolve(Mode::cyclic_conditional, x, y);
    auto lp = [](const Series& w, const Series& f) { return w.derivative().times_t() * f.over_t().compose(w); };
    auto om = [](const Series& s) { return -s + Q(1); };
    Series logs = (om(eta_transform(r.product.phi)).log() - om(eta_transform(x.phi).compose(r.omega_x)).log() -
                   om(eta_transform(y.phi).compose(r.omega_y)).log())
                      .derivative()
                      .times_t();
    Series tail = -logs - om(eta_transform(r.product.psi)).log_derivative().times_t();
    Series own = lp(r.omega_x, M_transform(x.omega)) + lp(r.omega_y, M_transform(y.omega)) + tail;
    Series crossed = lp(r.omega_x, M_transform(y.omega)) + lp(r.omega_y, M_transform(x.omega)) + tail;
    CHECK(M_transform(r.product.omega).agrees(own));
    CHECK_FALSE(M_transform(r.product.omega).agrees(crossed));

    // cyclic Boolean: closed form and its N-fold iterate
    const int N = 8;
    Series t = Series::variable(N), geo = t / (-t + Q(1));
    for (Q delta : {Q(0), Q(2)}) {
        Distribution u = random_distribution(rng, N, delta), v = random_distribution(rng, N, delta);
        auto b = multiplicative_convolve(Mode::cyclic_boolean, u, v);
        Series ru = rho_transform(u.phi), rv = rho_transform(v.phi);
        auto lg = [](const Series& s) { return (-s.times_t() + Q(1)).log(); };
        Series printed = M_transform(u.omega) + M_transform(v.omega) - (lg(ru * rv) - lg(ru) - lg(rv)).derivative().times_t() - geo;
        CHECK(M_transform(b.product.omega).agrees(printed) == (delta == 2));

        Distribution acc = u;
        for (int k = 2; k <= 3; ++k) {
            auto step = multiplicative_convolve(Mode::cyclic_boolean, acc, u);
            acc = step.product;
            Series rk = ru.power(k);
            Series corrected = Q(k) * M_transform(u.omega) - (lg(rk) - Q(k) * lg(ru)).derivative().times_t() +
                               Q(k - 1) * (1 - delta) * geo;
            Series printed_n = Q(k) * M_transform(u.omega) + (lg(rk) - Q(k) * lg(ru)).derivative().times_t() + Q(k) * geo;
            CHECK(M_transform(acc.omega).agrees(corrected));
            CHECK_FALSE(M_transform(acc.omega).agrees(printed_n));
        }
    }
}

TEST_CASE("cyclic Boolean transforms") {
    std::mt19937_64 rng(66);
    for (int trial = 0; trial < 10; ++trial) {
        MomentSeries phi = random_series(rng, 8), omega = random_series(rng, 8, trial % 3);
        auto t = cyclic_boolean_transforms(phi, omega);
        auto fphi = MomentFunctional::univariate(phi.m), fom = MomentFunctional::univariate(omega.m);
        auto c = cyclic_boolean_cumulants(fphi, fom).sequence(0, 8);
        CHECK(t.c[0] == omega.unit());
        for (int n = 1; n <= 8; ++n) CHECK(t.c[n] == c[n]);
    }
    MomentSeries zero = MomentSeries::point_mass(0, 8), om = MomentSeries::point_mass(0, 8, 3);
    auto t = cyclic_boolean_transforms(zero, om);
    CHECK(t.h[0] == 3);
    for (int k = 1; k <= 8; ++k) CHECK(t.h[k] == 0);

    // additive linearisation: h_{a+b} = h_a + h_b when omega(1) = 0
    Distribution a = random_distribution(rng, 8, 0), b = random_distribution(rng, 8, 0);
    auto r = additive_convolve(Mode::cyclic_boolean, a, b);
    auto hab = generating(cyclic_boolean_transforms(r.sum.phi, r.sum.omega).h);
    auto ha = generating(cyclic_boolean_transforms(a.phi, a.omega).h), hb = generating(cyclic_boolean_transforms(b.phi, b.omega).h);
    CHECK(hab.agrees(ha + hb));
}

TEST_CASE("trivial factor") {
    std::mt19937_64 rng(3);
    const int N = 8;
    MomentSeries one = MomentSeries::point_mass(1, N), zero = MomentSeries::point_mass(0, N);
    for (Mode mode : {Mode::free, Mode::conditional, Mode::infinitesimal, Mode::cyclic_free, Mode::cyclic_conditional,
                      Mode::boolean, Mode::monotone, Mode::cyclic_boolean, Mode::cyclic_monotone}) {
        CAPTURE(mode_name(mode));
        Q delta = mode_has_omega(mode) ? Q(1, 2) : Q(0);
        Distribution x = random_distribution(rng, N, delta);
        bool psi_free = mode == Mode::boolean || mode == Mode::monotone || mode == Mode::cyclic_boolean ||
                        mode == Mode::cyclic_monotone;
        if (psi_free) x.psi = {};
        if (!mode_has_omega(mode)) x.omega = {};
        if (mode == Mode::free || mode == Mode::infinitesimal || mode == Mode::cyclic_free) x.phi = {};
        // the unit: y = 1 in every functional, omega(y^n) = omega(1)
        Distribution y{psi_free ? MomentSeries{} : one, x.phi.empty() ? MomentSeries{} : one,
                       x.omega.empty() ? MomentSeries{} : MomentSeries::point_mass(1, N, delta)};
        auto r = multiplicative_convolve(mode, x, y);
        if (!x.psi.empty()) CHECK(r.product.psi == x.psi);
        if (!x.phi.empty()) CHECK(r.product.phi == x.phi);
        if (!x.omega.empty()) CHECK(r.product.omega == x.omega);
        Distribution z{psi_free ? MomentSeries{} : zero, x.phi.empty() ? MomentSeries{} : zero,
                       x.omega.empty() ? MomentSeries{} : MomentSeries::point_mass(0, N, delta)};
        auto s = additive_convolve(mode, x, z);
        if (!x.psi.empty()) CHECK(s.sum.psi == x.psi);
        if (!x.phi.empty()) CHECK(s.sum.phi == x.phi);
        if (!x.omega.empty()) CHECK(s.sum.omega == x.omega);
    }
}

#include "ccf/limits.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ccf {

namespace {

// t^shift * s(t) with t = 1/z.
struct Laurent {
    int shift = 0;
    Series s;
};

Laurent operator+(const Laurent& a, const Laurent& b) {
    int m = std::min(a.shift, b.shift);
    return {m, a.s.times_t(a.shift - m) + b.s.times_t(b.shift - m)};
}

Laurent operator-(const Laurent& a) { return {a.shift, -a.s}; }
Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
Laurent operator*(const Laurent& a, const Laurent& b) { return {a.shift + b.shift, a.s * b.s}; }
Laurent operator*(const Q& c, const Laurent& a) { return {a.shift, c * a.s}; }

Laurent operator/(const Laurent& a, const Laurent& b) {
    int v = b.s.valuation();
    if (v > b.s.order()) throw std::domain_error("division by a vanishing Laurent series");
    return {a.shift - b.shift - v, a.s / b.s.over_t(v)};
}

Laurent constant(const Q& c, int order) { return {0, Series::constant(c, order)}; }
Laurent z_power(int k, int order) { return {-k, Series::constant(1, order)}; }

// Square root of a series with constant term 1.
Series sqrt_series(const Series& f) {
    if (f.order() < 0 || f[0] != 1) throw std::domain_error("square root needs constant term 1");
    Series r(f.order());
    r[0] = 1;
    for (int n = 1; n <= f.order(); ++n) {
        Q acc = f[n];
        for (int k = 1; k < n; ++k) acc -= r[k] * r[n - k];
        r[n] = acc / 2;
    }
    return r;
}

// sqrt(z^2 + b z + c) = z sqrt(1 + b t + c t^2).
Laurent sqrt_quadratic(const Q& b, const Q& c, int order) {
    Series f = Series::constant(1, order);
    if (order >= 1) f[1] = b;
    if (order >= 2) f[2] = c;
    return {-1, sqrt_series(f)};
}

// Coefficients of z^{-1-n}, n = 0..order.
MomentSeries cauchy_moments(const Laurent& g, int order) {
    MomentSeries out;
    out.m.resize(order + 1);
    for (int k = 0; k <= g.s.order() && k + g.shift < 1; ++k)
        if (g.s[k] != 0) throw std::domain_error("transform is not O(1/z)");
    for (int n = 0; n <= order; ++n) {
        int idx = n + 1 - g.shift;
        if (idx > g.s.order()) throw std::domain_error("insufficient precision in Laurent expansion");
        out.m[n] = idx < 0 ? Q(0) : g.s[idx];
    }
    return out;
}

Laurent conditional_clt_transform(const LimitParams& p, int W) {
    Laurent z = z_power(1, W), root = sqrt_quadratic(0, -4 * p.alpha2, W);
    Q h = p.beta2 / 2;
    Laurent num = Q(h - p.alpha2) * z + h * root;
    Laurent den = Q(p.beta2 - p.alpha2) * z_power(2, W) - constant(p.beta2 * p.beta2, W);
    return num / den;
}

// (G^phi)'/G^phi written out as N'/N - D'/D.
Laurent conditional_clt_log_derivative(const LimitParams& p, int W) {
    Laurent z = z_power(1, W), root = sqrt_quadratic(0, -4 * p.alpha2, W);
    Q h = p.beta2 / 2, d = p.beta2 - p.alpha2;
    Laurent num = Q(h - p.alpha2) * z + h * root;
    Laurent dnum = constant(h - p.alpha2, W) + h * (z / root);
    Laurent den = d * z_power(2, W) - constant(p.beta2 * p.beta2, W);
    Laurent dden = Q(2 * d) * z;
    return dnum / num - dden / den;
}

// (1/sqrt(z^2 - 4 a) - G_semicircle)/a, polynomial in a.
std::vector<Q> infinitesimal_semicircle(const Q& a, int order) {
    std::vector<Q> m(order + 1);
    for (int n = 2; n <= order; n += 2) {
        long k = n / 2;
        m[n] = (binomial(2 * k, k) - catalan(k)) * pow(a, k - 1);
    }
    return m;
}

MomentSeries cyclic_conditional_clt(const LimitParams& p, const Q& variance, int order) {
    int W = order + 8;
    MomentSeries lg = cauchy_moments(conditional_clt_log_derivative(p, W), order);
    std::vector<Q> inf = infinitesimal_semicircle(p.alpha2, order);
    MomentSeries out;
    out.m.resize(order + 1);
    for (int n = 0; n <= order; ++n) {
        Q inv_root = n % 2 ? Q(0) : binomial(n, n / 2) * pow(p.alpha2, n / 2);
        out.m[n] = variance * inf[n] - (1 - p.omega_unit) * inv_root - lg.m[n];
    }
    return out;
}

// Free Poisson with jump 1 and the given rate, as a Laurent series.
Laurent free_poisson_laurent(const Q& alpha, const Q& lambda, int W) {
    if (alpha == 0) throw std::domain_error("free Poisson needs a nonzero jump");
    Laurent z = z_power(1, W);
    Laurent root = sqrt_quadratic(-2 * alpha * (1 + lambda), alpha * alpha * ((1 + lambda) * (1 + lambda) - 4 * lambda), W);
    return (z + constant(alpha * (1 - lambda), W) - root) / (Q(2 * alpha) * z);
}

// 1/(z - lambda_phi/(1 - P_{lambda_psi})).
Laurent conditional_poisson_laurent(const LimitParams& p, int W) {
    Laurent P = free_poisson_laurent(1, p.lambda_psi, W);
    Laurent one = constant(1, W);
    return one / (z_power(1, W) - p.lambda_phi * (one / (one - P)));
}

MomentSeries infinitesimal_poisson(const Q& lambda, const Q& lambda_prime, int order) {
    MomentSeries out;
    out.m.assign(order + 1, Q(0));
    for (int n = 1; n <= order; ++n)
        for (int k = 1; k <= n; ++k) {
            Q nar = binomial(n, k) * binomial(n, k - 1) / n;
            out.m[n] += nar * (k * pow(lambda, k - 1) * lambda_prime + n * pow(lambda, k));
        }
    return out;
}

MomentSeries cyclic_conditional_poisson(const LimitParams& p, int order) {
    int W = order + 8;
    MomentSeries P = cauchy_moments(free_poisson_laurent(1, p.lambda_psi, W), order);
    MomentSeries Pc = cauchy_moments(conditional_poisson_laurent(p, W), order);
    MomentSeries dP = infinitesimal_poisson(p.lambda_psi, p.lambda_omega, order);
    MomentSeries mp = mk_series(P), mc = mk_series(Pc);
    MomentSeries out;
    out.m.resize(order + 1);
    out.m[0] = p.omega_unit;
    for (int n = 1; n <= order; ++n) out.m[n] = dP.m[n] - (1 - p.omega_unit) * mp.m[n] + mc.m[n];
    return out;
}

const std::vector<std::pair<Law, const char*>>& law_table() {
    static const std::vector<std::pair<Law, const char*>> t = {
        {Law::free_clt, "free_clt"},
        {Law::conditional_clt, "conditional_clt"},
        {Law::infinitesimal_clt, "infinitesimal_clt"},
        {Law::cyclic_conditional_clt, "cyclic_conditional_clt"},
        {Law::cyclic_conditional_clt_variant, "cyclic_conditional_clt_variant"},
        {Law::cyclic_boolean_clt, "cyclic_boolean_clt"},
        {Law::free_poisson, "free_poisson"},
        {Law::conditional_poisson, "conditional_poisson"},
        {Law::infinitesimal_poisson, "infinitesimal_poisson"},
        {Law::cyclic_conditional_poisson, "cyclic_conditional_poisson"},
        {Law::cyclic_boolean_poisson, "cyclic_boolean_poisson"},
        {Law::cyclic_boolean_poisson_variant, "cyclic_boolean_poisson_variant"},
    };
    return t;
}

bool is_perfect_square(int n, int& root) {
    root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return root >= 1 && root * root == n;
}

const MomentSeries& pick(const Distribution& d, const std::string& functional, MomentSeries& scratch) {
    if (functional == "psi") return d.psi;
    if (functional == "phi") return d.phi;
    if (functional == "omega") return d.omega;
    if (functional == "dpsi") {
        const MomentSeries& phi = d.phi.empty() ? d.psi : d.phi;
        scratch = d_psi(d.psi, phi, d.omega);
        return scratch;
    }
    throw std::invalid_argument("unknown functional: " + functional);
}

Q abs_q(const Q& q) { return q < 0 ? Q(-q) : q; }

void assess(NfoldReport& r) {
    size_t K = r.gaps.empty() ? 0 : r.gaps[0].size();
    r.shrinking = r.richardson = true;
    for (size_t i = 0; i + 1 < r.ns.size(); ++i) {
        std::vector<Q> ext(K);
        Q n1 = r.ns[i], n2 = r.ns[i + 1];
        for (size_t k = 0; k < K; ++k) ext[k] = (n2 * r.gaps[i + 1][k] - n1 * r.gaps[i][k]) / (n2 - n1);
        r.extrapolated.push_back(ext);
    }
    for (size_t k = 0; k < K; ++k) {
        for (size_t i = 0; i + 1 < r.ns.size(); ++i) {
            const Q &g1 = r.gaps[i][k], &g2 = r.gaps[i + 1][k];
            if (g1 == 0 ? g2 != 0 : abs_q(g2) >= abs_q(g1)) r.shrinking = false;
            const Q& e = r.extrapolated[i][k];
            if (g2 == 0 ? e != 0 : abs_q(e) >= abs_q(g2)) r.richardson = false;
            if (i > 0 && abs_q(e) > abs_q(r.extrapolated[i - 1][k])) r.richardson = false;
        }
    }
}

}  // namespace

std::string law_name(Law law) {
    for (const auto& [l, n] : law_table())
        if (l == law) return n;
    throw std::invalid_argument("unknown law");
}

Law parse_law(const std::string& s) {
    for (const auto& [l, n] : law_table())
        if (s == n) return l;
    throw std::invalid_argument("unknown law: " + s);
}

std::vector<Law> all_laws() {
    std::vector<Law> out;
    for (const auto& e : law_table()) out.push_back(e.first);
    return out;
}

MomentSeries free_poisson_closed_form(const Q& alpha, const Q& lambda, int order) {
    return cauchy_moments(free_poisson_laurent(alpha, lambda, order + 4), order);
}

MomentSeries free_poisson_narayana(const Q& alpha, const Q& lambda, int order) {
    MomentSeries out;
    out.m.assign(order + 1, Q(0));
    out.m[0] = 1;
    for (int n = 1; n <= order; ++n)
        for (int k = 1; k <= n; ++k) out.m[n] += binomial(n, k) * binomial(n, k - 1) / n * pow(lambda, k) * pow(alpha, n);
    return out;
}

LimitLaw limit_law(Law law, const LimitParams& p, int order) {
    if (order < 0) throw std::invalid_argument("order must be nonnegative");
    int W = order + 8;
    LimitLaw out{law, p, {}};
    switch (law) {
    case Law::free_clt:
        out.moments.m.assign(order + 1, Q(0));
        for (int n = 0; n <= order; n += 2) out.moments.m[n] = catalan(n / 2) * pow(p.alpha2, n / 2);
        break;
    case Law::conditional_clt:
        out.moments = cauchy_moments(conditional_clt_transform(p, W), order);
        break;
    case Law::infinitesimal_clt: {
        std::vector<Q> m = infinitesimal_semicircle(p.alpha2, order);
        for (auto& x : m) x *= p.alpha_prime;
        out.moments.m = m;
        break;
    }
    case Law::cyclic_conditional_clt:
        out.moments = cyclic_conditional_clt(p, 2 * (1 - p.omega_unit) * p.alpha2 - 2 * p.beta2 + p.gamma2, order);
        break;
    case Law::cyclic_conditional_clt_variant:
        out.moments = cyclic_conditional_clt(p, (1 - p.omega_unit) * p.alpha2 - p.beta2 + p.gamma2, order);
        break;
    case Law::cyclic_boolean_clt: {
        Laurent z = z_power(1, W);
        Laurent g = (p.omega_unit - 2) * z_power(-1, W) +
                    Q(2) * (z / (z_power(2, W) - constant(p.beta2, W))) + (p.gamma2 - 2 * p.beta2) * z_power(-3, W);
        out.moments = cauchy_moments(g, order);
        break;
    }
    case Law::free_poisson:
        out.moments = cauchy_moments(free_poisson_laurent(p.alpha, p.lambda_psi, W), order);
        break;
    case Law::conditional_poisson:
        out.moments = cauchy_moments(conditional_poisson_laurent(p, W), order);
        break;
    case Law::infinitesimal_poisson:
        out.moments = infinitesimal_poisson(p.lambda_psi, p.lambda_prime, order);
        break;
    case Law::cyclic_conditional_poisson:
        out.moments = cyclic_conditional_poisson(p, order);
        break;
    case Law::cyclic_boolean_poisson:
    case Law::cyclic_boolean_poisson_variant: {
        Laurent z = z_power(1, W), one = constant(1, W);
        Laurent g = p.lambda_omega * (one / (z * (z - one)));
        if (law == Law::cyclic_boolean_poisson)
            g = g + p.lambda_phi * (one / ((z - one) * (z - constant(1 + p.lambda_phi, W))));
        else
            g = g + one / (z * (z - constant(1 - p.lambda_phi, W)));
        out.moments = cauchy_moments(g, order);
        break;
    }
    }
    return out;
}

std::vector<Q> poisson_relation_residual(const LimitParams& p, const MomentSeries& g_omega) {
    int order = g_omega.order();
    int W = order + 8;
    MomentSeries P = cauchy_moments(free_poisson_laurent(1, p.lambda_psi, W), order);
    MomentSeries Pc = cauchy_moments(conditional_poisson_laurent(p, W), order);
    MomentSeries dP = infinitesimal_poisson(p.lambda_psi, p.lambda_omega, order);
    MomentSeries mp = mk_series(P), mc = mk_series(Pc);
    // G'/G has z^{-1-n} coefficient -[G](a^n).
    std::vector<Q> r(order + 1);
    for (int n = 0; n <= order; ++n) r[n] = dP.m[n] - g_omega.m[n] - (1 - p.omega_unit) * mp.m[n] + mc.m[n];
    return r;
}

Distribution scaled(const Distribution& x, const Q& c) {
    Distribution out = x;
    for (MomentSeries* s : {&out.psi, &out.phi, &out.omega}) {
        Q f = 1;
        for (auto& m : s->m) {
            m *= f;
            f *= c;
        }
    }
    return out;
}

Distribution nfold_sum(Mode mode, const Distribution& x, int n) {
    if (n < 1) throw std::invalid_argument("number of summands must be positive");
    Distribution acc, pw = x;
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            acc = have ? additive_convolve(mode, acc, pw).sum : pw;
            have = true;
        }
        n >>= 1;
        if (n > 0) pw = additive_convolve(mode, pw, pw).sum;
    }
    return acc;
}

Distribution poisson_bernoulli(const LimitParams& p, int n, int order) {
    Distribution d;
    d.psi.m.assign(order + 1, Q(p.lambda_psi / n));
    d.phi.m.assign(order + 1, Q(p.lambda_phi / n));
    d.psi.m[0] = d.phi.m[0] = 1;
    MomentSeries mp = mk_series(d.psi), mf = mk_series(d.phi);
    d.omega.m.resize(order + 1);
    d.omega.m[0] = p.omega_unit;
    for (int k = 1; k <= order; ++k)
        d.omega.m[k] = (p.lambda_omega + k * p.lambda_psi) / n + mf.m[k] + (p.omega_unit - 1) * mp.m[k];
    return d;
}

namespace {

NfoldReport run_check(const std::string& functional, const std::vector<int>& ns, int kmax, const MomentSeries& limit,
                      const std::function<Distribution(int)>& sum_of) {
    if (limit.order() < kmax) throw std::invalid_argument("limit law has too few moments");
    NfoldReport r;
    r.functional = functional;
    r.ns = ns;
    for (int n : ns) {
        Distribution s = sum_of(n);
        MomentSeries scratch;
        const MomentSeries& m = pick(s, functional, scratch);
        if (m.order() < kmax) throw std::invalid_argument("functional not available for this mode");
        std::vector<Q> g(kmax + 1);
        for (int k = 0; k <= kmax; ++k) g[k] = m.m[k] - limit.m[k];
        r.gaps.push_back(g);
    }
    assess(r);
    return r;
}

}  // namespace

NfoldReport clt_check(Mode mode, const Distribution& marginal, const MomentSeries& limit, const std::string& functional,
                      const std::vector<int>& ns, int kmax) {
    return run_check(functional, ns, kmax, limit, [&](int n) {
        int root = 0;
        if (!is_perfect_square(n, root)) throw std::invalid_argument("CLT scaling needs a perfect square N");
        return nfold_sum(mode, scaled(marginal, Q(1, root)), n);
    });
}

NfoldReport poisson_check(Mode mode, const LimitParams& p, const MomentSeries& limit, const std::string& functional,
                          const std::vector<int>& ns, int kmax) {
    return run_check(functional, ns, kmax, limit,
                     [&](int n) { return nfold_sum(mode, poisson_bernoulli(p, n, kmax), n); });
}

}  // namespace ccf

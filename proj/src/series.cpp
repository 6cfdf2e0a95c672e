#include "ccf/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccf {

namespace {

std::vector<Q> mul_trunc(const std::vector<Q>& a, const std::vector<Q>& b, int order) {
    std::vector<Q> r(order + 1);
    for (size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

}  // namespace

Series::Series(int order) : c_(std::max(order, -1) + 1) {}

Series::Series(std::vector<Q> c) : c_(std::move(c)) {}

Series Series::constant(const Q& c, int order) {
    Series s(order);
    if (order >= 0) s.c_[0] = c;
    return s;
}

Series Series::variable(int order) {
    Series s(order);
    if (order >= 1) s.c_[1] = 1;
    return s;
}

int Series::valuation() const {
    for (int k = 0; k <= order(); ++k)
        if (c_[k] != 0) return k;
    return order() + 1;
}

Series Series::truncated(int order) const {
    Series s(std::min(order, this->order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[k] = c_[k];
    return s;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
}

Series operator+(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    int order = std::min(a.order() + b.valuation(), b.order() + a.valuation());
    return Series(mul_trunc(a.c_, b.c_, order));
}

Series operator*(const Q& s, const Series& a) {
    Series r = a;
    for (auto& x : r.c_) x *= s;
    return r;
}

Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

Series Series::operator+(const Q& s) const {
    Series r = *this;
    if (r.order() >= 0) r.c_[0] += s;
    return r;
}

Series Series::operator-(const Q& s) const { return *this + Q(-s); }

Series Series::inverse() const {
    if (order() < 0 || c_[0] == 0) throw std::domain_error("series inverse needs a nonzero constant term");
    Series r(order());
    r.c_[0] = 1 / c_[0];
    for (int n = 1; n <= order(); ++n) {
        Q acc = 0;
        for (int k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
        r.c_[n] = -acc * r.c_[0];
    }
    return r;
}

Series Series::derivative() const {
    Series r(order() - 1);
    for (int k = 0; k <= r.order(); ++k) r.c_[k] = Q(k + 1) * c_[k + 1];
    return r;
}

Series Series::times_t(int k) const {
    Series r(order() + k);
    for (int i = 0; i <= order(); ++i) r.c_[i + k] = c_[i];
    return r;
}

Series Series::over_t(int k) const {
    for (int i = 0; i < k && i <= order(); ++i)
        if (c_[i] != 0) throw std::domain_error("series is not divisible by t^k");
    Series r(order() - k);
    for (int i = 0; i <= r.order(); ++i) r.c_[i] = c_[i + k];
    return r;
}

Series Series::compose(const Series& inner) const {
    if (inner.order() >= 0 && inner.c_[0] != 0) throw std::domain_error("composition needs inner(0) = 0");
    int v = inner.valuation();
    int order = std::min<long>(inner.order(), static_cast<long>(v) * (this->order() + 1) - 1);
    if (this->order() < 0) order = -1;
    std::vector<Q> r(order + 1);
    for (int k = this->order(); k >= 0; --k) {
        r = mul_trunc(r, inner.c_, order);
        if (order >= 0) r[0] += c_[k];
    }
    return Series(std::move(r));
}

Series Series::reversion() const {
    if (order() < 1 || c_[0] != 0 || c_[1] == 0)
        throw std::domain_error("compositional inverse needs c_0 = 0 and c_1 != 0");
    Series g(order());
    g.c_[1] = 1 / c_[1];
    for (int n = 2; n <= order(); ++n) {
        Series fg = compose(g);
        g.c_[n] -= fg.c_[n] / c_[1];
    }
    return g;
}

Series Series::log_derivative() const { return derivative() / truncated(order() - 1); }

Series Series::log() const {
    if (order() < 0 || c_[0] != 1) throw std::domain_error("series log needs constant term 1");
    Series d = log_derivative();
    Series r(order());
    for (int k = 1; k <= order(); ++k) r.c_[k] = d.c_[k - 1] / k;
    return r;
}

Series Series::power(int e) const {
    if (e < 0) return inverse().power(-e);
    Series r = constant(1, order());
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

int Series::common_order(const Series& other) const { return std::min(order(), other.order()); }

bool Series::agrees(const Series& other) const {
    for (int k = 0; k <= common_order(other); ++k)
        if (c_[k] != other.c_[k]) return false;
    return true;
}

MomentSeries MomentSeries::from_generating(const Series& g) { return MomentSeries{g.coefficients()}; }

MomentSeries MomentSeries::point_mass(const Q& c, int order, const Q& unit) {
    MomentSeries s;
    s.m.assign(order + 1, unit);
    for (int n = 1; n <= order; ++n) s.m[n] = unit * pow(c, n);
    return s;
}

Series moment_generating(const MomentSeries& s) { return Series(s.m); }

Series M_transform(const MomentSeries& s) {
    Series r(s.m);
    if (r.order() >= 0) r[0] = 0;
    return r;
}

Series eta_transform(const MomentSeries& s) {
    Series M = M_transform(s);
    return M / (M + Q(1));
}

Series rho_transform(const MomentSeries& s) { return eta_transform(s).over_t(); }

Series Mtilde_transform(const MomentSeries& s) { return M_transform(s).over_t(); }

Series F_series(const MomentSeries& s) { return -eta_transform(s) + Q(1); }

Series R_transform(const MomentSeries& s) {
    Series M = M_transform(s);
    Series h = (M + Q(1)).times_t();
    return M.compose(h.reversion());
}

Series S_transform(const MomentSeries& s) {
    if (s.order() < 1 || s.m[1] == 0) throw std::domain_error("S-transform needs a nonzero first moment");
    Series inv = M_transform(s).reversion();
    return (Series::variable(inv.order()) + Q(1)) * inv.over_t();
}

Series conditional_R_transform(const MomentSeries& psi, const MomentSeries& phi) {
    Series Mpsi = M_transform(psi);
    Series h = (Mpsi + Q(1)).times_t();
    return (eta_transform(phi) * (Mpsi + Q(1))).compose(h.reversion());
}

namespace {

// Generating series of [f] from that of f: 1 + t g'/g.
Series mk_generating(const Series& g) { return g.log_derivative().times_t() + Q(1); }

void require_same_order(std::initializer_list<const MomentSeries*> list) {
    int order = -2;
    for (const MomentSeries* s : list) {
        if (s->empty()) throw std::invalid_argument("missing moment series for this mode");
        if (order != -2 && s->order() != order) throw std::invalid_argument("truncation orders differ");
        order = s->order();
    }
}

MomentSeries from_eta(const Series& eta) { return MomentSeries::from_generating((-eta + Q(1)).inverse()); }

MomentSeries all_ones(int order) { return MomentSeries::point_mass(1, order); }

void clip(MomentSeries& s, int N) {
    if (s.order() > N) s.m.resize(N + 1);
}

void clip(Distribution& d, int N) {
    clip(d.psi, N);
    clip(d.phi, N);
    clip(d.omega, N);
}

int input_order(const Distribution& d) {
    for (const MomentSeries* s : {&d.psi, &d.phi, &d.omega})
        if (!s->empty()) return s->order();
    throw std::invalid_argument("empty distribution");
}

}  // namespace

MomentSeries mk_series(const MomentSeries& s) { return MomentSeries::from_generating(mk_generating(moment_generating(s))); }

Series partial_M(const MomentSeries& ell) { return M_transform(ell); }

Series partial_eta(const MomentSeries& psi, const MomentSeries& ell) {
    Series onep = M_transform(psi) + Q(1);
    return partial_M(ell) / (onep * onep);
}

Series partial_S(const MomentSeries& psi, const MomentSeries& ell) {
    if (psi.order() < 1 || psi.m[1] == 0) throw std::domain_error("infinitesimal S-transform needs a nonzero first moment");
    Series inv = M_transform(psi).reversion();
    return -(partial_M(ell).compose(inv) * inv.derivative());
}

MomentSeries d_psi(const MomentSeries& psi, const MomentSeries& phi, const MomentSeries& omega) {
    require_same_order({&psi, &phi, &omega});
    MomentSeries mp = mk_series(psi), mf = mk_series(phi);
    Q c = omega.unit() - 1;
    MomentSeries r;
    r.m.resize(omega.m.size());
    for (int n = 1; n <= omega.order(); ++n) r.m[n] = omega.m[n] - mf.m[n] - c * mp.m[n];
    return r;
}

std::vector<std::string> transform_names() {
    return {"G", "F", "M", "Mtilde", "eta", "rho", "R", "S", "mk", "inverse"};
}

Series inverse_compose(const Series& s) { return s.reversion(); }

TransformView transform(const MomentSeries& s, const std::string& which) {
    TransformView v;
    v.name = which;
    auto take = [&](const Series& x) { v.coefficients = x.coefficients(); };
    if (which == "G") {
        v.at_infinity = true;
        v.lead = -1;
        v.coefficients = s.m;
    } else if (which == "F") {
        v.at_infinity = true;
        v.lead = 1;
        take(F_series(s));
    } else if (which == "M") take(M_transform(s));
    else if (which == "Mtilde") take(Mtilde_transform(s));
    else if (which == "eta") take(eta_transform(s));
    else if (which == "rho") take(rho_transform(s));
    else if (which == "R") take(R_transform(s));
    else if (which == "S") take(S_transform(s));
    else if (which == "mk") {
        v.at_infinity = true;
        v.lead = -1;
        v.coefficients = mk_series(s).m;
    } else if (which == "inverse") take(inverse_compose(M_transform(s)));
    else throw std::invalid_argument("unknown transform: " + which);
    return v;
}

Series pullback(const Series& u, const Series& g) {
    Series v = u.over_t();
    Series factor = (v + v.derivative().times_t()) / v;
    return factor * g.compose(u);
}

std::vector<Q> subordination_laurent(const Series& u) { return u.over_t().inverse().coefficients(); }

AdditiveResult free_additive_subordination(const MomentSeries& a, const MomentSeries& b) {
    require_same_order({&a, &b});
    int N = a.order();
    Series ra = rho_transform(a), rb = rho_transform(b);
    Series ea(N - 1), eb(N - 1);
    auto recip = [](const Series& e) { return (e.times_t() + Q(1)).inverse().times_t(); };
    AdditiveResult r;
    for (int it = 0; it < N; ++it) {
        Series na = -rb.compose(recip(eb));
        Series nb = -ra.compose(recip(ea));
        ea = na;
        eb = nb;
        ++r.iterations;
    }
    r.u_a = recip(ea);
    r.u_b = recip(eb);
    Series ga = moment_generating(a);
    r.sum.psi = MomentSeries::from_generating((r.u_a * ga.compose(r.u_a)).over_t());
    return r;
}

namespace {

// phi of a + b under conditional freeness, given the free subordination of psi.
MomentSeries conditional_phi(const AdditiveResult& fr, const MomentSeries& phi_a, const MomentSeries& phi_b) {
    Series sa = fr.u_a.over_t().inverse(), sb = fr.u_b.over_t().inverse();
    Series f = (-eta_transform(phi_a).compose(fr.u_a) + Q(1)) * sa + (-eta_transform(phi_b).compose(fr.u_b) + Q(1)) * sb -
               F_series(fr.sum.psi);
    return MomentSeries::from_generating(f.inverse());
}

AdditiveResult cyclic_conditional_additive(const Distribution& a, const Distribution& b) {
    require_same_order({&a.psi, &a.phi, &a.omega, &b.psi, &b.phi, &b.omega});
    if (a.omega.unit() != b.omega.unit()) throw std::invalid_argument("omega(1) differs between the inputs");
    Q delta = a.omega.unit();
    AdditiveResult r = free_additive_subordination(a.psi, b.psi);
    r.sum.phi = conditional_phi(r, a.phi, b.phi);
    Series da = moment_generating(d_psi(a.psi, a.phi, a.omega));
    Series db = moment_generating(d_psi(b.psi, b.phi, b.omega));
    Series d = pullback(r.u_a, da) + pullback(r.u_b, db);
    MomentSeries mp = mk_series(r.sum.psi), mf = mk_series(r.sum.phi);
    MomentSeries om;
    om.m.resize(d.order() + 1);
    om.m[0] = delta;
    for (int n = 1; n <= d.order(); ++n) om.m[n] = d[n] + mf.m[n] + (delta - 1) * mp.m[n];
    r.sum.omega = om;
    return r;
}

}  // namespace

namespace {

AdditiveResult additive_impl(Mode mode, const Distribution& a, const Distribution& b) {
    AdditiveResult r;
    switch (mode) {
    case Mode::free:
        return free_additive_subordination(a.psi, b.psi);
    case Mode::boolean: {
        require_same_order({&a.phi, &b.phi});
        int N = a.phi.order();
        r.sum.phi = from_eta(eta_transform(a.phi) + eta_transform(b.phi));
        r.u_a = r.u_b = Series::variable(N + 1);
        return r;
    }
    case Mode::monotone: {
        require_same_order({&a.phi, &b.phi});
        int N = a.phi.order();
        r.u_a = moment_generating(b.phi).times_t();
        r.u_b = Series::variable(N + 1);
        r.sum.phi = MomentSeries::from_generating((r.u_a * moment_generating(a.phi).compose(r.u_a)).over_t());
        return r;
    }
    case Mode::conditional: {
        require_same_order({&a.psi, &a.phi, &b.psi, &b.phi});
        r = free_additive_subordination(a.psi, b.psi);
        r.sum.phi = conditional_phi(r, a.phi, b.phi);
        return r;
    }
    case Mode::infinitesimal:
    case Mode::cyclic_free: {
        r = cyclic_conditional_additive({a.psi, a.psi, a.omega}, {b.psi, b.psi, b.omega});
        r.sum.phi = {};
        return r;
    }
    case Mode::cyclic_conditional:
        return cyclic_conditional_additive(a, b);
    case Mode::cyclic_boolean:
    case Mode::cyclic_monotone: {
        require_same_order({&a.phi, &a.omega, &b.phi, &b.omega});
        int N = a.phi.order();
        MomentSeries zero = MomentSeries::point_mass(0, N);
        MomentSeries psi_b = mode == Mode::cyclic_boolean ? zero : b.phi;
        r = cyclic_conditional_additive({zero, a.phi, a.omega}, {psi_b, b.phi, b.omega});
        r.sum.psi = {};
        return r;
    }
    }
    throw std::invalid_argument("unknown mode");
}

}  // namespace

AdditiveResult additive_convolve(Mode mode, const Distribution& a, const Distribution& b) {
    AdditiveResult r = additive_impl(mode, a, b);
    clip(r.sum, input_order(a));
    return r;
}

MultiplicativeResult free_multiplicative_subordination(const MomentSeries& x, const MomentSeries& y) {
    require_same_order({&x, &y});
    int N = x.order();
    Series rx = rho_transform(x), ry = rho_transform(y);
    MultiplicativeResult r;
    Series w(N);
    for (int it = 0; it < N; ++it) {
        w = ry.compose(rx.compose(w).times_t()).times_t();
        ++r.iterations;
    }
    r.omega_x = w;
    r.omega_y = rx.compose(w).times_t();
    r.product.psi = from_eta(eta_transform(x).compose(w));
    return r;
}

namespace {

// t omega'(t) (f/t)(omega(t)) = t d/dt ln(omega) f(omega) for f(0) = 0.
Series log_pullback(const Series& omega, const Series& f) {
    return omega.derivative().times_t() * f.over_t().compose(omega);
}

MultiplicativeResult cyclic_conditional_multiplicative(const Distribution& x, const Distribution& y) {
    require_same_order({&x.psi, &x.phi, &x.omega, &y.psi, &y.phi, &y.omega});
    if (x.omega.unit() != y.omega.unit()) throw std::invalid_argument("omega(1) differs between the inputs");
    Q delta = x.omega.unit();
    MultiplicativeResult r = free_multiplicative_subordination(x.psi, y.psi);
    r.product.phi = from_eta((rho_transform(x.phi).compose(r.omega_x) * rho_transform(y.phi).compose(r.omega_y)).times_t());
    Series px = partial_eta(x.psi, d_psi(x.psi, x.phi, x.omega));
    Series py = partial_eta(y.psi, d_psi(y.psi, y.phi, y.omega));
    Series pe = log_pullback(r.omega_x, px) + log_pullback(r.omega_y, py);
    Series onep = M_transform(r.product.psi) + Q(1);
    Series d = pe * onep * onep;
    MomentSeries mp = mk_series(r.product.psi), mf = mk_series(r.product.phi);
    MomentSeries om;
    om.m.resize(d.order() + 1);
    om.m[0] = delta;
    for (int n = 1; n <= d.order(); ++n) om.m[n] = d[n] + mf.m[n] + (delta - 1) * mp.m[n];
    r.product.omega = om;
    return r;
}

}  // namespace

namespace {

MultiplicativeResult multiplicative_impl(Mode mode, const Distribution& x, const Distribution& y) {
    MultiplicativeResult r;
    switch (mode) {
    case Mode::free:
        return free_multiplicative_subordination(x.psi, y.psi);
    case Mode::boolean: {
        require_same_order({&x.phi, &y.phi});
        int N = x.phi.order();
        r.product.phi = from_eta((rho_transform(x.phi) * rho_transform(y.phi)).times_t());
        r.omega_x = r.omega_y = Series::variable(N);
        return r;
    }
    case Mode::monotone: {
        require_same_order({&x.phi, &y.phi});
        int N = x.phi.order();
        r.omega_x = eta_transform(y.phi);
        r.omega_y = Series::variable(N);
        r.product.phi = from_eta(eta_transform(x.phi).compose(r.omega_x));
        return r;
    }
    case Mode::conditional: {
        require_same_order({&x.psi, &x.phi, &y.psi, &y.phi});
        r = free_multiplicative_subordination(x.psi, y.psi);
        r.product.phi =
            from_eta((rho_transform(x.phi).compose(r.omega_x) * rho_transform(y.phi).compose(r.omega_y)).times_t());
        return r;
    }
    case Mode::infinitesimal:
    case Mode::cyclic_free: {
        r = cyclic_conditional_multiplicative({x.psi, x.psi, x.omega}, {y.psi, y.psi, y.omega});
        r.product.phi = {};
        return r;
    }
    case Mode::cyclic_conditional:
        return cyclic_conditional_multiplicative(x, y);
    case Mode::cyclic_boolean:
    case Mode::cyclic_monotone: {
        require_same_order({&x.phi, &x.omega, &y.phi, &y.omega});
        int N = x.phi.order();
        MomentSeries one = all_ones(N);
        MomentSeries psi_y = mode == Mode::cyclic_boolean ? one : y.phi;
        r = cyclic_conditional_multiplicative({one, x.phi, x.omega}, {psi_y, y.phi, y.omega});
        r.product.psi = {};
        return r;
    }
    }
    throw std::invalid_argument("unknown mode");
}

}  // namespace

MultiplicativeResult multiplicative_convolve(Mode mode, const Distribution& x, const Distribution& y) {
    MultiplicativeResult r = multiplicative_impl(mode, x, y);
    clip(r.product, input_order(x));
    return r;
}

namespace {

Certificate cert(const std::string& identity, const Series& lhs, const Series& rhs) {
    return {identity, lhs.agrees(rhs), lhs.common_order(rhs)};
}

bool uses_free_subordination(Mode m) {
    return m == Mode::free || m == Mode::conditional || m == Mode::infinitesimal || m == Mode::cyclic_free ||
           m == Mode::cyclic_conditional;
}

}  // namespace

std::vector<Certificate> additive_certificates(Mode mode, const Distribution& a, const Distribution& b,
                                               const AdditiveResult& r) {
    std::vector<Certificate> out;
    if (uses_free_subordination(mode)) {
        Series g = moment_generating(r.sum.psi);
        out.push_back(cert("G_a(omega_a) = G_{a+b}", (r.u_a * moment_generating(a.psi).compose(r.u_a)).over_t(), g));
        out.push_back(cert("G_b(omega_b) = G_{a+b}", (r.u_b * moment_generating(b.psi).compose(r.u_b)).over_t(), g));
        Series sa = r.u_a.over_t().inverse(), sb = r.u_b.over_t().inverse();
        out.push_back(cert("omega_a + omega_b - z = F_{a+b}", sa + sb - Q(1), F_series(r.sum.psi)));
    }
    bool has_phi = mode == Mode::conditional || mode == Mode::cyclic_conditional;
    if (has_phi) {
        Series sa = r.u_a.over_t().inverse(), sb = r.u_b.over_t().inverse();
        Series lhs = F_series(r.sum.psi) - (F_series(a.phi).compose(r.u_a) * sa + F_series(b.phi).compose(r.u_b) * sb);
        out.push_back(cert("F^psi_{a+b} - F^phi_a(omega_a) - F^phi_b(omega_b) = -F^phi_{a+b}", lhs, -F_series(r.sum.phi)));
    }
    if (mode == Mode::infinitesimal || mode == Mode::cyclic_free || mode == Mode::cyclic_conditional) {
        const MomentSeries& pa = mode == Mode::cyclic_conditional ? a.phi : a.psi;
        const MomentSeries& pb = mode == Mode::cyclic_conditional ? b.phi : b.psi;
        const MomentSeries& pab = mode == Mode::cyclic_conditional ? r.sum.phi : r.sum.psi;
        Series dab = moment_generating(d_psi(r.sum.psi, pab, r.sum.omega));
        Series rhs = pullback(r.u_a, moment_generating(d_psi(a.psi, pa, a.omega))) +
                     pullback(r.u_b, moment_generating(d_psi(b.psi, pb, b.omega)));
        out.push_back(cert("G^DPsi_{a+b} = G^DPsi_a(omega_a) omega_a' + G^DPsi_b(omega_b) omega_b'", dab, rhs));

        Q delta = a.omega.unit();
        Series ga = moment_generating(pa), gb = moment_generating(pb);
        Series g = pullback(r.u_a, moment_generating(a.omega)) + pullback(r.u_b, moment_generating(b.omega)) +
                   (1 - delta) * mk_generating(moment_generating(r.sum.psi)) - pullback(r.u_a, mk_generating(ga)) -
                   pullback(r.u_b, mk_generating(gb)) + mk_generating(moment_generating(pab));
        out.push_back(cert("G^omega_{a+b} subordination formula", moment_generating(r.sum.omega), g));
    }
    if (mode == Mode::boolean) {
        out.push_back(cert("eta_{a+b} = eta_a + eta_b", eta_transform(r.sum.phi),
                           eta_transform(a.phi) + eta_transform(b.phi)));
    }
    if (mode == Mode::monotone) {
        Series sa = r.u_a.over_t().inverse();
        out.push_back(cert("F_{a+b} = F_a(F_b)", F_series(r.sum.phi), F_series(a.phi).compose(r.u_a) * sa));
    }
    if (mode == Mode::cyclic_boolean) {
        Q delta = a.omega.unit();
        Series g = moment_generating(a.omega) + moment_generating(b.omega) - mk_generating(moment_generating(a.phi)) -
                   mk_generating(moment_generating(b.phi)) + mk_generating(moment_generating(r.sum.phi)) + (1 - delta);
        out.push_back(cert("G^omega_{a+b} = G^omega_a + G^omega_b + (ln G^phi_a)' + (ln G^phi_b)' - (ln G^phi_{a+b})' + (1 - omega(1))/z",
                           moment_generating(r.sum.omega), g));
    }
    if (mode == Mode::cyclic_monotone) {
        Q delta = a.omega.unit();
        Series g = pullback(r.u_a, moment_generating(a.omega)) + moment_generating(b.omega) -
                   delta * mk_generating(moment_generating(b.phi));
        out.push_back(cert("G^omega_{a+b} = G^omega_a(F_b) F_b' + G^omega_b + omega(1) (ln G^phi_b)'",
                           moment_generating(r.sum.omega), g));
    }
    return out;
}

std::vector<Certificate> multiplicative_certificates(Mode mode, const Distribution& x, const Distribution& y,
                                                     const MultiplicativeResult& r) {
    std::vector<Certificate> out;
    if (uses_free_subordination(mode)) {
        Series e = eta_transform(r.product.psi);
        out.push_back(cert("eta_x(omega_x) = eta_xy", eta_transform(x.psi).compose(r.omega_x), e));
        out.push_back(cert("eta_y(omega_y) = eta_xy", eta_transform(y.psi).compose(r.omega_y), e));
        out.push_back(cert("omega_x omega_y = z eta_xy", r.omega_x * r.omega_y, e.times_t()));
        if (x.psi.m[1] != 0 && y.psi.m[1] != 0)
            out.push_back(cert("S_xy = S_x S_y", S_transform(r.product.psi), S_transform(x.psi) * S_transform(y.psi)));
    }
    if (mode == Mode::conditional || mode == Mode::cyclic_conditional) {
        out.push_back(cert("rho^phi_xy = rho^phi_x(omega_x) rho^phi_y(omega_y)", rho_transform(r.product.phi),
                           rho_transform(x.phi).compose(r.omega_x) * rho_transform(y.phi).compose(r.omega_y)));
    }
    if (mode == Mode::boolean) {
        out.push_back(cert("rho_xy = rho_x rho_y", rho_transform(r.product.phi),
                           rho_transform(x.phi) * rho_transform(y.phi)));
    }
    if (mode == Mode::monotone) {
        out.push_back(cert("eta_xy = eta_x(eta_y)", eta_transform(r.product.phi),
                           eta_transform(x.phi).compose(eta_transform(y.phi))));
    }
    if (mode == Mode::infinitesimal || mode == Mode::cyclic_free || mode == Mode::cyclic_conditional) {
        const MomentSeries& px = mode == Mode::cyclic_conditional ? x.phi : x.psi;
        const MomentSeries& py = mode == Mode::cyclic_conditional ? y.phi : y.psi;
        const MomentSeries& pxy = mode == Mode::cyclic_conditional ? r.product.phi : r.product.psi;
        MomentSeries dx = d_psi(x.psi, px, x.omega), dy = d_psi(y.psi, py, y.omega);
        MomentSeries dxy = d_psi(r.product.psi, pxy, r.product.omega);
        out.push_back(cert("partial eta_xy = z (ln omega_x)' partial eta_x(omega_x) + z (ln omega_y)' partial eta_y(omega_y)",
                           partial_eta(r.product.psi, dxy),
                           log_pullback(r.omega_x, partial_eta(x.psi, dx)) + log_pullback(r.omega_y, partial_eta(y.psi, dy))));
        if (x.psi.m[1] != 0 && y.psi.m[1] != 0) {
            out.push_back(cert("partial S_xy = partial S_x S_y + S_x partial S_y", partial_S(r.product.psi, dxy),
                               partial_S(x.psi, dx) * S_transform(y.psi) + S_transform(x.psi) * partial_S(y.psi, dy)));
        }
        Q delta = x.omega.unit();
        auto one_minus = [](const Series& s) { return -s + Q(1); };
        Series rhs = log_pullback(r.omega_x, M_transform(x.omega)) + log_pullback(r.omega_y, M_transform(y.omega)) -
                     (one_minus(eta_transform(pxy)).log() - one_minus(eta_transform(px).compose(r.omega_x)).log() -
                      one_minus(eta_transform(py).compose(r.omega_y)).log())
                         .derivative()
                         .times_t() -
                     (1 - delta) * one_minus(eta_transform(r.product.psi)).log_derivative().times_t();
        out.push_back(cert("M^omega_xy subordination formula", M_transform(r.product.omega), rhs));
    }
    if (mode == Mode::cyclic_boolean) {
        Q delta = x.omega.unit();
        int N = x.phi.order();
        Series rx = rho_transform(x.phi), ry = rho_transform(y.phi);
        auto lg = [](const Series& s) { return (-s.times_t() + Q(1)).log(); };
        Series geo = Series::variable(N) / (-Series::variable(N) + Q(1));
        Series rhs = M_transform(x.omega) + M_transform(y.omega) - (lg(rx * ry) - lg(rx) - lg(ry)).derivative().times_t() +
                     (1 - delta) * geo;
        out.push_back(cert("M^omega_xy = M^omega_x + M^omega_y - z (ln((1 - z rho_x rho_y)/((1 - z rho_x)(1 - z rho_y))))' + (1 - omega(1)) z/(1 - z)",
                           M_transform(r.product.omega), rhs));
        Series sxy = cyclic_boolean_transforms(r.product.phi, r.product.omega).sigma;
        Series sx = cyclic_boolean_transforms(x.phi, x.omega).sigma, sy = cyclic_boolean_transforms(y.phi, y.omega).sigma;
        out.push_back(cert("Sigma_xy = Sigma_x + Sigma_y - omega(1) z/(1 - z)", sxy, sx + sy - delta * geo));
    }
    if (mode == Mode::cyclic_monotone) {
        Q delta = x.omega.unit();
        Series ey = eta_transform(y.phi);
        Series rhs = M_transform(y.omega) + log_pullback(ey, M_transform(x.omega)) +
                     delta * (-ey + Q(1)).log_derivative().times_t();
        out.push_back(cert("M^omega_xy = M^omega_y + z eta_y' Mtilde^omega_x(eta_y) + omega(1) z (ln(1 - eta_y))'",
                           M_transform(r.product.omega), rhs));
    }
    return out;
}

CyclicBooleanTransforms cyclic_boolean_transforms(const MomentSeries& phi, const MomentSeries& omega) {
    require_same_order({&phi, &omega});
    int N = phi.order();
    CyclicBooleanTransforms t;
    Series g = moment_generating(phi);
    Series gw = moment_generating(omega);
    t.h = (gw - g.log_derivative().times_t()).coefficients();
    Series eta = eta_transform(phi);
    Series mk = mk_generating(g) - Q(1);
    t.c = gw - mk + eta.derivative().times_t();
    Series geo = Series::variable(N) / (-Series::variable(N) + Q(1));
    t.sigma = M_transform(omega) + (-eta + Q(1)).log_derivative().times_t() + geo;
    return t;
}

}  // namespace ccf

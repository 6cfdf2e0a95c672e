#pragma once

#include <string>
#include <vector>

#include "ccf/joint.hpp"
#include "ccf/rational.hpp"

namespace ccf {

// Truncated power series c_0 + c_1 t + ... + c_N t^N. Every operation tracks how many coefficients
// are exact, so results never claim more than their inputs determine.
class Series {
public:
    Series() = default;
    explicit Series(int order);
    explicit Series(std::vector<Q> c);
    static Series constant(const Q& c, int order);
    static Series variable(int order);  // t

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Q>& coefficients() const { return c_; }
    const Q& operator[](int k) const { return c_[k]; }
    Q& operator[](int k) { return c_[k]; }
    // First nonzero index; order()+1 when all known coefficients vanish.
    int valuation() const;
    Series truncated(int order) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Q& s, const Series& a);
    friend Series operator/(const Series& a, const Series& b);
    Series operator+(const Q& s) const;
    Series operator-(const Q& s) const;

    Series inverse() const;  // needs c_0 != 0
    Series derivative() const;
    Series times_t(int k = 1) const;
    Series over_t(int k = 1) const;  // needs c_0 = ... = c_{k-1} = 0
    Series compose(const Series& inner) const;  // needs inner c_0 = 0
    Series reversion() const;  // needs c_0 = 0, c_1 != 0
    Series log_derivative() const;  // f'/f
    Series log() const;  // needs c_0 = 1
    Series power(int e) const;

    // Coefficientwise equality on the common exact range.
    bool agrees(const Series& other) const;
    int common_order(const Series& other) const;

private:
    std::vector<Q> c_;
};

// Moments m_0 = f(1), m_1 = f(a), ..., m_N = f(a^N) of one variable.
struct MomentSeries {
    std::vector<Q> m;

    int order() const { return static_cast<int>(m.size()) - 1; }
    bool empty() const { return m.empty(); }
    const Q& unit() const { return m[0]; }
    bool operator==(const MomentSeries&) const = default;

    static MomentSeries from_generating(const Series& g);  // g = sum m_n t^n
    static MomentSeries point_mass(const Q& c, int order, const Q& unit = 1);
};

// Generating series in t: for the Cauchy transform read t = 1/z, G(z) = t g(t).
Series moment_generating(const MomentSeries& s);  // g = m_0 + m_1 t + ...
Series M_transform(const MomentSeries& s);        // M = m_1 t + m_2 t^2 + ...
Series eta_transform(const MomentSeries& s);      // M / (1 + M)
Series rho_transform(const MomentSeries& s);      // eta / t
Series Mtilde_transform(const MomentSeries& s);   // M / t
Series F_series(const MomentSeries& s);           // F(z) = z f(1/z), f = 1 - eta
Series R_transform(const MomentSeries& s);        // C = sum kappa_n t^n, C(t(1 + M)) = M
Series S_transform(const MomentSeries& s);        // (1 + t)/t M^{<-1>}; needs m_1 != 0
// C^{phi|psi} with C(t(1 + M^psi))(1 + M^phi) = M^phi (1 + M^psi).
Series conditional_R_transform(const MomentSeries& psi, const MomentSeries& phi);

// Moments of [psi]: G^{[psi]} = -G'/G, equivalently M^{[psi]} = t M'/(1 + M).
MomentSeries mk_series(const MomentSeries& s);

// Infinitesimal transforms of a second functional ell (its unit is ignored).
Series partial_M(const MomentSeries& ell);                                 // sum_{n>=1} ell(a^n) t^n
Series partial_eta(const MomentSeries& psi, const MomentSeries& ell);      // partial_M / (1 + M^psi)^2
Series partial_S(const MomentSeries& psi, const MomentSeries& ell);        // needs psi m_1 != 0

// DPsi = omega - [phi] - (omega(1) - 1)[psi] on powers of one variable; the unit is 0.
MomentSeries d_psi(const MomentSeries& psi, const MomentSeries& phi, const MomentSeries& omega);

// Generic dispatcher. Power series views list the coefficient of t^k; views at infinity list the
// coefficient of z^{lead - k}.
struct TransformView {
    std::string name;
    bool at_infinity = false;
    int lead = 0;
    std::vector<Q> coefficients;
};
TransformView transform(const MomentSeries& s, const std::string& which);
std::vector<std::string> transform_names();
Series inverse_compose(const Series& s);

// Subordination for additive convolutions is stored as u = 1/omega(z) in t = 1/z; then
// G(omega(z)) omega'(z) becomes pullback(u, g) on generating series.
Series pullback(const Series& u, const Series& g);
// Laurent coefficients of omega(z) = z (s_0 + s_1/z + ...), s = t/u.
std::vector<Q> subordination_laurent(const Series& u);

struct Distribution {
    MomentSeries psi, phi, omega;  // unused ones stay empty; see Marginal for the per-mode roles
};

struct AdditiveResult {
    Distribution sum;
    Series u_a, u_b;
    int iterations = 0;
};
AdditiveResult additive_convolve(Mode mode, const Distribution& a, const Distribution& b);

struct MultiplicativeResult {
    Distribution product;
    Series omega_x, omega_y;  // power series in z
    int iterations = 0;
};
// Boolean and cyclic Boolean modes read x, y as 1 + (independent parts); monotone modes read x - 1
// as the outer variable.
MultiplicativeResult multiplicative_convolve(Mode mode, const Distribution& x, const Distribution& y);

struct Certificate {
    std::string identity;
    bool holds = false;
    int order = 0;  // coefficients compared
};
std::vector<Certificate> additive_certificates(Mode mode, const Distribution& a, const Distribution& b,
                                               const AdditiveResult& r);
std::vector<Certificate> multiplicative_certificates(Mode mode, const Distribution& x, const Distribution& y,
                                                     const MultiplicativeResult& r);

// Free subordination pieces, exposed for checks.
AdditiveResult free_additive_subordination(const MomentSeries& a, const MomentSeries& b);
MultiplicativeResult free_multiplicative_subordination(const MomentSeries& x, const MomentSeries& y);

// Cyclic Boolean transforms of (phi, omega):
//   h(z) = G^omega + G^phi'/G^phi + 1/z, listed as coefficients of z^{-1-k};
//   c(t) = omega(1) + M^omega - M^{[phi]} + t eta', whose t^n coefficients are cyclic Boolean cumulants;
//   sigma(t) = M^omega + t d/dt ln(1 - t rho) + t/(1 - t).
struct CyclicBooleanTransforms {
    std::vector<Q> h;
    Series c, sigma;
};
CyclicBooleanTransforms cyclic_boolean_transforms(const MomentSeries& phi, const MomentSeries& omega);

}  // namespace ccf

#pragma once

#include <string>
#include <vector>

#include "ccf/series.hpp"

namespace ccf {

// alpha2 = Psi(X^2), beta2 = phi(X^2), gamma2 = omega(X^2); omega_unit = omega(1).
// Poisson laws use rates lambda_* and jump size alpha.
struct LimitParams {
    Q alpha2 = 1, beta2 = 1, gamma2 = 1, alpha_prime = 0, omega_unit = 0;
    Q lambda_psi = 1, lambda_phi = 1, lambda_omega = 0, lambda_prime = 0, alpha = 1;
};

enum class Law {
    free_clt,                // semicircle of variance alpha2
    conditional_clt,         // phi-law of the c-free CLT
    infinitesimal_clt,       // derivative part with parameter alpha_prime
    cyclic_conditional_clt,  // omega-law, variance parameter 2(1 - omega(1)) alpha2 - 2 beta2 + gamma2
    cyclic_conditional_clt_variant,  // same with (1 - omega(1)) alpha2 - beta2 + gamma2
    cyclic_boolean_clt,      // (omega(1) - 2)/z + 2z/(z^2 - beta2) + (gamma2 - 2 beta2)/z^3
    free_poisson,            // rate lambda_psi, jump alpha
    conditional_poisson,     // phi-law with rates lambda_psi, lambda_phi
    infinitesimal_poisson,   // d/du at u = 0 of the free Poisson with jump 1 + u, rate lambda_psi + lambda_prime u
    cyclic_conditional_poisson,
    cyclic_boolean_poisson,          // lambda_omega/(z(z - 1)) + lambda_phi/((z - 1)(z - 1 - lambda_phi))
    cyclic_boolean_poisson_variant   // lambda_omega/(z(z - 1)) + 1/(z(z - (1 - lambda_phi)))
};

std::string law_name(Law law);
Law parse_law(const std::string& s);
std::vector<Law> all_laws();

struct LimitLaw {
    Law law;
    LimitParams params;
    MomentSeries moments;  // coefficients of z^{-1-n} of the transform
};

// Moments from the closed-form transforms; square roots are expanded as formal binomial series in 1/z.
LimitLaw limit_law(Law law, const LimitParams& p, int order);

// Free Poisson closed form (z + alpha(1 - lambda) - sqrt((z - alpha(1 + lambda))^2 - 4 lambda alpha^2))/(2 alpha z).
MomentSeries free_poisson_closed_form(const Q& alpha, const Q& lambda, int order);
// The same law from Narayana numbers: m_n = sum_k N(n, k) lambda^k alpha^n.
MomentSeries free_poisson_narayana(const Q& alpha, const Q& lambda, int order);

// Residual of d/du P_{1+u, lambda_psi + lambda_omega u} = G^omega - (1 - omega(1)) P'/P + (P^c)'/P^c, as
// coefficients of z^{-1-n}; all zero when g_omega satisfies the relation.
std::vector<Q> poisson_relation_residual(const LimitParams& p, const MomentSeries& g_omega);

// N-fold sums via repeated doubling of the mode's additive convolution.
Distribution nfold_sum(Mode mode, const Distribution& x, int n);
Distribution scaled(const Distribution& x, const Q& c);  // law of c X

// Bernoulli element of the cyclic-conditional Poisson scheme at size n: jump 1, rates lambda/n,
// DPsi(a^k) = (lambda_omega + k lambda_psi)/n.
Distribution poisson_bernoulli(const LimitParams& p, int n, int order);

struct NfoldReport {
    std::string functional;
    std::vector<int> ns;
    std::vector<std::vector<Q>> gaps;         // gaps[i][k] = m_k(ns[i]) - m_k(limit), k <= kmax
    std::vector<std::vector<Q>> extrapolated;  // Richardson residuals from consecutive pairs
    bool shrinking = false;   // |gap| strictly decreasing in N wherever nonzero
    bool richardson = false;  // extrapolation beats the raw gap and improves with N
    bool ok() const { return shrinking && richardson; }
};

// CLT scheme: S_N = N^{-1/2}(X_1 + ... + X_N); N must be a perfect square.
NfoldReport clt_check(Mode mode, const Distribution& marginal, const MomentSeries& limit, const std::string& functional,
                      const std::vector<int>& ns, int kmax = 6);
NfoldReport poisson_check(Mode mode, const LimitParams& p, const MomentSeries& limit, const std::string& functional,
                          const std::vector<int>& ns, int kmax = 6);

}  // namespace ccf

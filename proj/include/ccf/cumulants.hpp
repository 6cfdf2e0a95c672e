#pragma once

#include "ccf/functional.hpp"

namespace ccf {

// Conversions are lazy: tables evaluate and memoize on demand, so they can be queried past
// their declared max degree. Call materialize() for an eager table.

CumulantTable free_cumulants(const MomentFunctional& psi);
MomentFunctional moments_from_free(const CumulantTable& kappa, const Q& unit = 1);

CumulantTable boolean_cumulants(const MomentFunctional& phi);
MomentFunctional moments_from_boolean(const CumulantTable& beta, const Q& unit = 1);
CumulantTable boolean_from_free(const CumulantTable& kappa);

CumulantTable monotone_cumulants(const MomentFunctional& phi);
MomentFunctional moments_from_monotone(const CumulantTable& k, const Q& unit = 1);

CumulantTable conditional_cumulants(const MomentFunctional& psi, const MomentFunctional& phi);
MomentFunctional moments_from_conditional(const CumulantTable& kappa_psi, const CumulantTable& kappa_cond,
                                          const Q& unit = 1);

// Boolean double-sum definition and the weighted form sum (n+1-|pi|) kappa_pi.
MomentFunctional soul_transform(const MomentFunctional& psi);
MomentFunctional soul_weighted(const MomentFunctional& psi);

// Cyclic sum of Boolean-cumulant products over cyclic interval partitions.
MomentFunctional mk_transform(const MomentFunctional& psi);
// sum_{k<n} (n-k) psi(a^k) beta_{n-k}, for powers of one letter.
Q mk_power(const MomentFunctional& psi, int letter, int n);

// Letters x_u indexed by monochromatic base words u.
struct Companion {
    Alphabet base;
    Alphabet alphabet;
    std::vector<Word> letters;
    Word flatten(const Word& w) const;
};
Companion make_companion(const Alphabet& base, int max_base_degree);
MomentFunctional lift(const MomentFunctional& f, const Companion& c);
MomentFunctional w_transform(const MomentFunctional& phi, const Companion& c);

CumulantTable infinitesimal_cumulants(const MomentFunctional& psi, const MomentFunctional& dpsi);
// dPsi := omega - omega(1) * soul(psi)
MomentFunctional infinitesimal_part(const MomentFunctional& psi, const MomentFunctional& omega);
CumulantTable infinitesimal_cumulants_general(const MomentFunctional& psi, const MomentFunctional& omega);
MomentFunctional moments_from_infinitesimal(const CumulantTable& kappa, const CumulantTable& dkappa);

CumulantTable cyclic_free_cumulants(const MomentFunctional& psi, const MomentFunctional& dpsi);
// DPsi := omega - omega(1) * [psi]
MomentFunctional cyclic_part(const MomentFunctional& psi, const MomentFunctional& omega);
CumulantTable cyclic_free_cumulants_general(const MomentFunctional& psi, const MomentFunctional& omega);
MomentFunctional moments_from_cyclic_free(const CumulantTable& kappa, const CumulantTable& dkappa);

// DPsi := omega - [phi] - (omega(1) - 1) [psi]
MomentFunctional cyclic_conditional_part(const MomentFunctional& psi, const MomentFunctional& phi,
                                         const MomentFunctional& omega);
CumulantTable cyclic_conditional_cumulants(const MomentFunctional& psi, const MomentFunctional& phi,
                                           const MomentFunctional& omega);
// Rebuilds omega (unit omega_unit) from the three cumulant families.
MomentFunctional omega_from_cyclic_conditional(const CumulantTable& kappa_psi, const CumulantTable& kappa_cond,
                                               const CumulantTable& kappa_omega, const Q& omega_unit);

CumulantTable cyclic_boolean_cumulants(const MomentFunctional& phi, const MomentFunctional& omega);
MomentFunctional omega_from_cyclic_boolean(const CumulantTable& beta_phi, const CumulantTable& c,
                                           const Q& omega_unit);

// Sum over cyclic interval partitions of w with at least min_blocks blocks of prod f(runs).
Q cyclic_interval_sum(const Word& w, const Evaluator& f, int min_blocks = 1);

}  // namespace ccf

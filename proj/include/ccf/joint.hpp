#pragma once

#include <string>
#include <vector>

#include "ccf/cumulants.hpp"

namespace ccf {

enum class Mode {
    free,
    boolean,
    monotone,
    conditional,
    infinitesimal,
    cyclic_free,
    cyclic_conditional,
    cyclic_boolean,
    cyclic_monotone
};

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);
bool mode_has_omega(Mode m);

// Data of one algebra. Functionals a mode does not use may be left default-constructed.
//   free: psi                        boolean, monotone: phi
//   conditional: psi, phi            infinitesimal, cyclic_free: psi, omega
//   cyclic_conditional: all three    cyclic_boolean, cyclic_monotone: phi, omega
// Monotone modes take exactly two marginals; the first is the outer algebra.
struct Marginal {
    Alphabet alphabet;
    MomentFunctional psi, phi, omega;
};

struct JointTriple {
    Mode mode = Mode::free;
    Alphabet alphabet;  // letter algebra labels are marginal indices
    MomentFunctional psi, phi, omega;
    Q delta = 0;  // omega(1)
};

JointTriple build_joint(Mode mode, const std::vector<Marginal>& marginals, int max_degree);

struct Violation {
    std::string condition;
    std::vector<Word> sequence;  // the monomials a_1, ..., a_n
    Q lhs, rhs;
};

struct Report {
    long checked = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary(const Alphabet& alphabet, size_t max_listed = 5) const;
};

// Checks the moment conditions defining jt.mode on all alternating sequences of monochromatic
// monomials of total degree <= max_degree, centring symbolically where the definition asks for it.
Report verify_defining_conditions(const JointTriple& jt, int max_degree);

// omega(a_1 ... a_n) for centred alternating a's compared with the pairing formula:
// infinitesimal pairs (a_1 a_n), (a_2 a_{n-1}), ...; cyclic pairs (a_n a_1), (a_{n-1} a_2), ...
enum class Pairing { infinitesimal, cyclic };
Report verify_pairing(const JointTriple& jt, Pairing kind, int max_degree);

// Mixed cumulants of the mode's family must vanish on words using two algebras.
Report verify_mixed_cumulants(const JointTriple& jt, int max_degree);

// Sends a triple on the base alphabet to the companion alphabet of monochromatic words.
enum class CompanionKind {
    soul,         // (Psi, soul(Psi)): infinitesimal
    mk_free,      // (Psi, [Psi]): cyclic free
    w_transform,  // (Psi, W(phi)): cyclic free
    mk_conditional,  // (Psi, phi, [phi]): cyclic-conditional
    mk_boolean,   // (phi, [phi]): cyclic Boolean
    mk_monotone   // (phi, [phi]): cyclic monotone
};
struct CompanionTriple {
    Companion companion;
    JointTriple triple;
};
CompanionTriple cyclic_companion(const JointTriple& base, CompanionKind kind, int base_degree);

// Cyclic freeness with respect to (Psi, omega1 - omega2) for two cyclic-conditional joints that
// share Psi and phi.
JointTriple difference_triple(const JointTriple& a, const JointTriple& b);
Report difference_reduction(const JointTriple& a, const JointTriple& b, int max_degree);

// Cyclic free cumulant of the products a_1 b_1, ..., a_n b_n against the type-B Kreweras sum.
struct ProductCheck {
    Q lhs, rhs;
    bool ok() const { return lhs == rhs; }
};
ProductCheck product_cumulant_check(const JointTriple& jt, const Word& a, const Word& b);

// Alternating sequences of monochromatic monomials (consecutive algebras differ).
std::vector<std::vector<Word>> alternating_sequences(const Alphabet& alphabet, int max_degree, bool cyclic);

}  // namespace ccf

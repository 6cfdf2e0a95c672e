#include "ccf/cumulants.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "ccf/multiext.hpp"

namespace ccf {

namespace {

template <class T>
Evaluator ev(const T& t) {
    return [t](const Word& w) -> Q { return t(w); };
}

void require_unital(const MomentFunctional& f, const char* what) {
    if (f.unit() != 1) throw std::invalid_argument(std::string(what) + " must be unital");
}

void require_tracial(const MomentFunctional& f, const char* what) {
    if (f.tracial()) return;
    Word witness;
    if (!rotation_invariant(f, std::min(f.max_degree(), 6), &witness))
        throw std::invalid_argument(std::string(what) + " is not tracial on word '" +
                                    word_key(f.alphabet(), witness) + "'");
}

// Runs of a cyclic interval partition given by cut positions (0-based, ascending).
std::vector<Word> cyclic_runs(const Word& w, const std::vector<int>& cuts) {
    std::vector<Word> runs;
    int n = static_cast<int>(w.size());
    for (size_t k = 0; k < cuts.size(); ++k) {
        Word r;
        int end = k + 1 < cuts.size() ? cuts[k + 1] : cuts.front() + n;
        for (int i = cuts[k]; i < end; ++i) r.push_back(w[i % n]);
        runs.push_back(r);
    }
    return runs;
}

}  // namespace

Q cyclic_interval_sum(const Word& w, const Evaluator& f, int min_blocks) {
    int n = static_cast<int>(w.size());
    Q total = 0;
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        std::vector<int> cuts;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1UL) cuts.push_back(i);
        if (static_cast<int>(cuts.size()) < min_blocks) continue;
        Q prod = 1;
        for (const auto& r : cyclic_runs(w, cuts)) {
            prod *= f(r);
            if (prod == 0) break;
        }
        total += prod;
    }
    return total;
}

CumulantTable free_cumulants(const MomentFunctional& psi) {
    require_unital(psi, "free_cumulants input");
    CumulantTable k(Family::free, psi.alphabet(), psi.max_degree());
    Evaluator self = ev(k.alias());
    k.set_evaluator([psi, self](const Word& w) -> Q {
        Q s = psi(w);
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            if (b.size() > 1) s -= product_over(b, w, self);
        });
        return s;
    });
    return k;
}

MomentFunctional moments_from_free(const CumulantTable& kappa, const Q& unit) {
    Evaluator k = ev(kappa);
    return MomentFunctional(kappa.alphabet(), kappa.max_degree(), unit, false, [k](const Word& w) -> Q {
        Q s = 0;
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) { s += product_over(b, w, k); });
        return s;
    });
}

CumulantTable boolean_cumulants(const MomentFunctional& phi) {
    CumulantTable k(Family::boolean, phi.alphabet(), phi.max_degree());
    Evaluator self = ev(k.alias());
    k.set_evaluator([phi, self](const Word& w) -> Q {
        Q s = phi(w);
        for_each_interval(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            if (b.size() > 1) s -= product_over(b, w, self);
        });
        return s;
    });
    return k;
}

MomentFunctional moments_from_boolean(const CumulantTable& beta, const Q& unit) {
    Evaluator b = ev(beta);
    return MomentFunctional(beta.alphabet(), beta.max_degree(), unit, false, [b](const Word& w) -> Q {
        Q s = 0;
        for_each_interval(static_cast<int>(w.size()),
                          [&](const std::vector<Block>& blocks) { s += product_over(blocks, w, b); });
        return s;
    });
}

CumulantTable boolean_from_free(const CumulantTable& kappa) {
    Evaluator k = ev(kappa);
    return CumulantTable(Family::boolean, kappa.alphabet(), kappa.max_degree(), [k](const Word& w) -> Q {
        Q s = 0;
        int n = static_cast<int>(w.size());
        for_each_nc(n, [&](const std::vector<Block>& b) {
            if (b.front().back() == n) s += product_over(b, w, k);
        });
        return s;
    });
}

CumulantTable monotone_cumulants(const MomentFunctional& phi) {
    CumulantTable k(Family::monotone, phi.alphabet(), phi.max_degree());
    Evaluator self = ev(k.alias());
    k.set_evaluator([phi, self](const Word& w) -> Q {
        Q s = phi(w);
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            if (b.size() > 1) s -= product_over(b, w, self) / Q(monotone_hook_product(b));
        });
        return s;
    });
    return k;
}

MomentFunctional moments_from_monotone(const CumulantTable& kt, const Q& unit) {
    Evaluator k = ev(kt);
    return MomentFunctional(kt.alphabet(), kt.max_degree(), unit, false, [k](const Word& w) -> Q {
        Q s = 0;
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            s += product_over(b, w, k) / Q(monotone_hook_product(b));
        });
        return s;
    });
}

CumulantTable conditional_cumulants(const MomentFunctional& psi, const MomentFunctional& phi) {
    require_unital(psi, "Psi");
    require_unital(phi, "phi");
    Evaluator kpsi = ev(free_cumulants(psi));
    CumulantTable k(Family::conditional, phi.alphabet(), phi.max_degree());
    Evaluator self = ev(k.alias());
    k.set_evaluator([phi, self, kpsi](const Word& w) -> Q {
        Q s = phi(w);
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            if (b.size() > 1) s -= cfree_over(b, nesting_parent(b), w, self, kpsi);
        });
        return s;
    });
    return k;
}

MomentFunctional moments_from_conditional(const CumulantTable& kappa_psi, const CumulantTable& kappa_cond,
                                          const Q& unit) {
    Evaluator kp = ev(kappa_psi), kc = ev(kappa_cond);
    return MomentFunctional(kappa_cond.alphabet(), kappa_cond.max_degree(), unit, false, [kp, kc](const Word& w) -> Q {
        Q s = 0;
        for_each_nc(static_cast<int>(w.size()),
                    [&](const std::vector<Block>& b) { s += cfree_over(b, nesting_parent(b), w, kc, kp); });
        return s;
    });
}

MomentFunctional soul_transform(const MomentFunctional& psi) {
    require_unital(psi, "Psi");
    Evaluator kappa = ev(free_cumulants(psi));
    Evaluator beta = ev(boolean_cumulants(psi));
    // Sum of kappa_pi(u) over pi in NC(|u|) with positions p and q (0-based) in one block.
    auto memo = std::make_shared<std::map<std::tuple<Word, int, int>, Q>>();
    auto linked = [kappa, memo](const Word& u, int p, int q) {
        auto key = std::make_tuple(u, p, q);
        auto it = memo->find(key);
        if (it != memo->end()) return it->second;
        Q s = 0;
        for_each_nc(static_cast<int>(u.size()), [&](const std::vector<Block>& b) {
            for (const auto& blk : b) {
                bool hp = std::binary_search(blk.begin(), blk.end(), p + 1);
                bool hq = std::binary_search(blk.begin(), blk.end(), q + 1);
                if (hp != hq) return;
                if (hp) break;
            }
            s += product_over(b, u, kappa);
        });
        memo->emplace(key, s);
        return s;
    };
    return MomentFunctional(psi.alphabet(), psi.max_degree(), 1, psi.tracial(), [beta, linked](const Word& w) -> Q {
        int n = static_cast<int>(w.size());
        Q total = 0;
        for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
            std::vector<int> cuts;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1UL) cuts.push_back(i);
            Q prod = 1;
            for (size_t k = 0; k + 1 < cuts.size() && prod != 0; ++k)
                prod *= beta(Word(w.begin() + cuts[k], w.begin() + cuts[k + 1]));
            if (prod == 0) continue;
            int first = cuts.front(), last = cuts.back();
            Word u(w.begin(), w.begin() + first);
            u.insert(u.end(), w.begin() + last, w.end());
            int p = first;
            int q = first > 0 ? first - 1 : static_cast<int>(u.size()) - 1;
            total += prod * linked(u, p, q);
        }
        return total;
    });
}

MomentFunctional soul_weighted(const MomentFunctional& psi) {
    require_unital(psi, "Psi");
    Evaluator kappa = ev(free_cumulants(psi));
    return MomentFunctional(psi.alphabet(), psi.max_degree(), 1, psi.tracial(), [kappa](const Word& w) -> Q {
        int n = static_cast<int>(w.size());
        Q s = 0;
        for_each_nc(n, [&](const std::vector<Block>& b) {
            s += Q(n + 1 - static_cast<long>(b.size())) * product_over(b, w, kappa);
        });
        return s;
    });
}

MomentFunctional mk_transform(const MomentFunctional& psi) {
    Evaluator beta = ev(boolean_cumulants(psi));
    return MomentFunctional(psi.alphabet(), psi.max_degree(), psi.unit(), true,
                            [beta](const Word& w) -> Q { return cyclic_interval_sum(w, beta, 1); });
}

Q mk_power(const MomentFunctional& psi, int letter, int n) {
    auto beta = boolean_cumulants(psi);
    Q s = 0;
    for (int k = 0; k < n; ++k) s += Q(n - k) * psi(power_word(letter, k)) * beta(power_word(letter, n - k));
    return s;
}

Word Companion::flatten(const Word& w) const {
    Word out;
    for (int x : w) out.insert(out.end(), letters.at(x).begin(), letters.at(x).end());
    return out;
}

Companion make_companion(const Alphabet& base, int max_base_degree) {
    Companion c;
    c.base = base;
    for (const auto& u : all_words(base, max_base_degree)) {
        if (!base.monochromatic(u)) continue;
        std::string name;
        for (size_t i = 0; i < u.size(); ++i) name += (i ? "." : "") + base.names[u[i]];
        c.alphabet.add(name, base.algebra[u.front()], base.degree(u));
        c.letters.push_back(u);
    }
    return c;
}

MomentFunctional lift(const MomentFunctional& f, const Companion& c) {
    return MomentFunctional(c.alphabet, f.max_degree(), f.unit(), false,
                            [f, c](const Word& w) -> Q { return f(c.flatten(w)); });
}

MomentFunctional w_transform(const MomentFunctional& phi, const Companion& c) {
    Evaluator beta = ev(boolean_cumulants(lift(phi, c)));
    return MomentFunctional(c.alphabet, phi.max_degree(), 0, true, [beta](const Word& w) -> Q {
        Q s = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            Word r = rotate_word(w, static_cast<int>(i));
            r.push_back(w[i]);
            s += beta(r);
        }
        return s;
    });
}

CumulantTable infinitesimal_cumulants(const MomentFunctional& psi, const MomentFunctional& dpsi) {
    require_unital(psi, "Psi");
    if (dpsi.unit() != 0) throw std::invalid_argument("dPsi must vanish on the unit; use the general form");
    Evaluator kappa = ev(free_cumulants(psi));
    CumulantTable k(Family::infinitesimal, dpsi.alphabet(), dpsi.max_degree());
    Evaluator self = ev(k.alias());
    k.set_evaluator([dpsi, kappa, self](const Word& w) -> Q {
        Q s = dpsi(w);
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            if (b.size() > 1) s -= leibniz_over(b, w, kappa, self);
        });
        return s;
    });
    return k;
}

MomentFunctional infinitesimal_part(const MomentFunctional& psi, const MomentFunctional& omega) {
    return linear_combination({{1, omega}, {-omega.unit(), soul_transform(psi)}}, 0);
}

CumulantTable infinitesimal_cumulants_general(const MomentFunctional& psi, const MomentFunctional& omega) {
    return infinitesimal_cumulants(psi, infinitesimal_part(psi, omega));
}

MomentFunctional moments_from_infinitesimal(const CumulantTable& kappa, const CumulantTable& dkappa) {
    Evaluator k = ev(kappa), dk = ev(dkappa);
    return MomentFunctional(dkappa.alphabet(), dkappa.max_degree(), 0, false, [k, dk](const Word& w) -> Q {
        Q s = 0;
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) { s += leibniz_over(b, w, k, dk); });
        return s;
    });
}

CumulantTable cyclic_free_cumulants(const MomentFunctional& psi, const MomentFunctional& dpsi) {
    require_unital(psi, "Psi");
    if (dpsi.unit() != 0) throw std::invalid_argument("DPsi must vanish on the unit; use the general form");
    require_tracial(dpsi, "DPsi");
    Evaluator kappa = ev(free_cumulants(psi));
    CumulantTable k(Family::cyclic_free, dpsi.alphabet(), dpsi.max_degree());
    Evaluator self = ev(k.alias());
    k.set_evaluator([dpsi, kappa, self](const Word& w) -> Q {
        Q s = dpsi(w);
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) {
            if (b.size() > 1) s -= cyclic_over(b, w, kappa, self);
        });
        return s;
    });
    return k;
}

MomentFunctional cyclic_part(const MomentFunctional& psi, const MomentFunctional& omega) {
    auto d = linear_combination({{1, omega}, {-omega.unit(), mk_transform(psi)}}, 0);
    d.set_tracial(omega.tracial());
    return d;
}

CumulantTable cyclic_free_cumulants_general(const MomentFunctional& psi, const MomentFunctional& omega) {
    require_tracial(omega, "omega");
    auto d = cyclic_part(psi, omega);
    d.set_tracial(true);
    return cyclic_free_cumulants(psi, d);
}

MomentFunctional moments_from_cyclic_free(const CumulantTable& kappa, const CumulantTable& dkappa) {
    Evaluator k = ev(kappa), dk = ev(dkappa);
    return MomentFunctional(dkappa.alphabet(), dkappa.max_degree(), 0, true, [k, dk](const Word& w) -> Q {
        Q s = 0;
        for_each_nc(static_cast<int>(w.size()), [&](const std::vector<Block>& b) { s += cyclic_over(b, w, k, dk); });
        return s;
    });
}

MomentFunctional cyclic_conditional_part(const MomentFunctional& psi, const MomentFunctional& phi,
                                         const MomentFunctional& omega) {
    auto d = linear_combination(
        {{1, omega}, {-1, mk_transform(phi)}, {1 - omega.unit(), mk_transform(psi)}}, 0);
    d.set_tracial(true);
    return d;
}

CumulantTable cyclic_conditional_cumulants(const MomentFunctional& psi, const MomentFunctional& phi,
                                           const MomentFunctional& omega) {
    require_unital(psi, "Psi");
    require_unital(phi, "phi");
    require_tracial(omega, "omega");
    auto d = cyclic_free_cumulants(psi, cyclic_conditional_part(psi, phi, omega));
    Evaluator e = ev(d);
    return CumulantTable(Family::cyclic_conditional, omega.alphabet(), omega.max_degree(), e);
}

MomentFunctional omega_from_cyclic_conditional(const CumulantTable& kappa_psi, const CumulantTable& kappa_cond,
                                               const CumulantTable& kappa_omega, const Q& omega_unit) {
    auto psi = moments_from_free(kappa_psi);
    auto phi = moments_from_conditional(kappa_psi, kappa_cond);
    auto d = moments_from_cyclic_free(kappa_psi, kappa_omega);
    auto w = linear_combination({{1, d}, {1, mk_transform(phi)}, {omega_unit - 1, mk_transform(psi)}}, omega_unit);
    w.set_tracial(true);
    return w;
}

CumulantTable cyclic_boolean_cumulants(const MomentFunctional& phi, const MomentFunctional& omega) {
    require_unital(phi, "phi");
    require_tracial(omega, "omega");
    Evaluator beta = ev(boolean_cumulants(phi));
    return CumulantTable(Family::cyclic_boolean, omega.alphabet(), omega.max_degree(), [omega, beta](const Word& w) -> Q {
        return omega(w) - cyclic_interval_sum(w, beta, 2);
    });
}

MomentFunctional omega_from_cyclic_boolean(const CumulantTable& beta_phi, const CumulantTable& c,
                                           const Q& omega_unit) {
    Evaluator beta = ev(beta_phi), ce = ev(c);
    return MomentFunctional(c.alphabet(), c.max_degree(), omega_unit, true, [beta, ce](const Word& w) -> Q {
        return ce(w) + cyclic_interval_sum(w, beta, 2);
    });
}

}  // namespace ccf

#include "ccf/rational.hpp"

#include <stdexcept>

namespace ccf {

std::string to_string(const Q& q) {
    Q c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Q parse_rational(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational: " + raw);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t scale = s.size() - dot - 1;
        mpz_class num;
        if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational: " + raw);
        mpz_class den = 1;
        for (size_t i = 0; i < scale; ++i) den *= 10;
        Q out(num, den);
        out.canonicalize();
        return out;
    }
    Q out;
    if (out.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + raw);
    if (out.get_den() == 0) throw std::invalid_argument("zero denominator: " + raw);
    out.canonicalize();
    return out;
}

Q binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Q(r);
}

Q factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Q(r);
}

Q catalan(long n) { return binomial(2 * n, n) / Q(n + 1); }

Q pow(const Q& base, long e) {
    Q r = 1;
    Q b = base;
    bool inv = e < 0;
    unsigned long k = static_cast<unsigned long>(inv ? -e : e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return inv ? Q(1 / r) : r;
}

}  // namespace ccf

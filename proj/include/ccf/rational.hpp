#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ccf {

using Q = mpq_class;

// Canonical "p/q" rendering (lowest terms, q > 0; integers print without "/1").
std::string to_string(const Q& q);

// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25".
Q parse_rational(const std::string& s);

Q binomial(long n, long k);
Q factorial(long n);
Q catalan(long n);
Q pow(const Q& base, long e);

}  // namespace ccf

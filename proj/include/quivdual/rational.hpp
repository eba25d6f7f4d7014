#pragma once
#include <gmpxx.h>
#include <string>

namespace qd {

using Q = mpq_class;
using Z = mpz_class;

// Always "p/q", also for integers.
std::string to_string(const Q &q);
Q parse_rational(const std::string &s);

// Generalized binomial coefficient E choose k.
Q binomial(const Q &E, unsigned k);

} // namespace qd

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ninecusps {

using Int = mpz_class;
using Rational = mpq_class;

// Builds num/den in canonical form: lowest terms, positive denominator, 0 = 0/1.
// GMP keeps arithmetic results canonical, so construction is the only place
// normalization has to happen explicitly.
inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

// Parses "p" or "p/q" with an optional sign.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& n) { return n.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Int to_integer(const Rational& q) {
    if (!is_integer(q)) throw std::invalid_argument("rational: " + to_string(q) + " is not an integer");
    return q.get_num();
}

}  // namespace ninecusps

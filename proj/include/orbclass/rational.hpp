#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "orbclass/errors.hpp"

namespace orbclass {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den with any signs; den must be nonzero. Result is reduced with a
/// positive denominator (the backing type maintains that invariant).
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw validation_error(validation_error::code::bad_argument,
                               "rational with zero denominator");
    return Rational(num) / Rational(den);
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// q^e for any integer e; q must be nonzero when e < 0.
inline Rational rational_pow(const Rational& q, long long e) {
    if (e < 0) {
        if (q == 0)
            throw validation_error(validation_error::code::bad_argument,
                                   "negative power of zero");
        return rational_pow(Rational(1) / q, -e);
    }
    Rational result(1), base = q;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

inline Integer integer_pow(const Integer& b, long long e) {
    Integer result(1), base = b;
    for (long long n = e; n > 0; n >>= 1) {
        if (n & 1) result *= base;
        base *= base;
    }
    return result;
}

/// Canonical text form: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

/// Accepts "p", "-p", "p/q" with optional sign on p; q must be positive.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() {
        return validation_error(validation_error::code::schema,
                                "malformed rational literal: '" + text + "'");
    };
    if (text.empty()) throw bad();
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string::npos)
            throw bad();
        Integer d(den);
        if (d <= 0) throw bad();
        return make_rational(Integer(num), d);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

} // namespace orbclass

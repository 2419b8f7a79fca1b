#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "neron/errors.hpp"

namespace neron {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p" or "p/q" (optional sign on p, q > 0). Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
            i = 1;
        }
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
                return false;
            }
        }
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_int(num, true) || !is_int(den, false)) {
        throw parse_error("malformed rational '" + std::string(text) + "'");
    }
    std::string n(num);
    if (n[0] == '+') {
        n.erase(0, 1);
    }
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw parse_error("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(Integer(n, 10), d);
    r.canonicalize();
    return r;
}

// Canonical num/den; the two-argument mpq constructor leaves the fraction unreduced.
inline Rational ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r) {
    return r.get_str();
}

inline Integer lcm(const Integer &a, const Integer &b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Integer gcd(const Integer &a, const Integer &b) {
    Integer out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline int lcm_int(int a, int b) {
    int x = a, y = b;
    while (y != 0) {
        int t = x % y;
        x = y;
        y = t;
    }
    return a / x * b;
}

} // namespace neron

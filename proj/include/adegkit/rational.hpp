#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adk {

// Exact rational scalar. All core computations run on these; no floating
// point is used anywhere in the library.
using Q = mpq_class;
using Z = mpz_class;

inline Z binom(long n, long k) {
    if (k < 0 || k > n) return Z(0);
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline Z factorial(long n) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Q qpow(const Q& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("qpow: 0^negative");
        return 1 / qpow(base, -e);
    }
    Q r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

inline int sgn(const Q& x) { return x >= 0 ? 1 : -1; }  // sgn(0) = +1

// Parses "a/b", "a", or a decimal like "0.25" into an exact rational.
inline Q parse_rational(const std::string& s) {
    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Z den = 1;
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        Q r(Z(digits), den);
        r.canonicalize();
        return r;
    }
    Q r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Q& x) { return x.get_str(); }

}  // namespace adk

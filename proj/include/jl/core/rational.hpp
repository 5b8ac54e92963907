#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace jl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

// cpp_rational's two-argument constructor rejects negative denominators.
inline Rat make_rat(Int n, Int d) {
    if (d == 0) throw PreconditionError("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(std::move(n), std::move(d));
}

inline Int pow_int(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e >= 0) return Rat(pow_int(num(base), e), pow_int(den(base), e));
    if (base == 0) throw PreconditionError("0 has no negative power");
    return Rat(pow_int(den(base), -e), pow_int(num(base), -e));
}

// v_p(n) for n != 0.
inline long val_p(Int n, const Int& p) {
    if (n == 0) throw PreconditionError("valuation of zero");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long val_p(const Rat& x, const Int& p) {
    if (x == 0) throw PreconditionError("valuation of zero");
    long v = 0;
    Int n = num(x);
    if (n % p == 0) v = val_p(n, p);
    Int d = den(x);
    if (d % p == 0) v -= val_p(d, p);
    return v;
}

inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_pow(Int b, Int e, const Int& m) {
    Int r = 1;
    b = mod_floor(b, m);
    while (e > 0) {
        if ((e & 1) != 0) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = mod_floor(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw PreconditionError("element not invertible modulo m");
    return mod_floor(old_s, m);
}

// Reduction of a p-integral rational mod p^k.
inline Int mod_reduce(const Rat& x, const Int& p, const Int& pk) {
    Int n = mod_floor(num(x), pk);
    Int d = mod_floor(den(x), pk);
    if (den(x) % p == 0) throw PreconditionError("rational not p-integral");
    return n * mod_inverse(d, pk) % pk;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Legendre symbol (a|p) for odd prime p, a a p-adic unit.
inline int legendre(const Int& a, const Int& p) {
    Int r = mod_pow(mod_floor(a, p), (p - 1) / 2, p);
    if (r == 0) throw PreconditionError("legendre symbol of non-unit");
    return r == 1 ? 1 : -1;
}

// Trial-division factorization; desk-scale inputs only.
inline std::vector<std::pair<Int, long>> factorize(Int n) {
    if (n == 0) throw PreconditionError("factorize(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, long>> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            long e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::string rat_str(const Rat& x) {
    if (den(x) == 1) return num(x).str();
    return num(x).str() + "/" + den(x).str();
}

inline Rat parse_rat(const std::string& s) {
    auto pos = s.find('/');
    try {
        if (pos == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, pos)), d(s.substr(pos + 1));
        if (d == 0) throw SchemaViolation("zero denominator in \"" + s + "\"");
        return make_rat(std::move(n), std::move(d));
    } catch (const std::exception& e) {
        throw SchemaViolation("cannot parse rational \"" + s + "\": " + e.what());
    }
}

inline long long to_ll(const Int& n) { return static_cast<long long>(n); }

inline Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd_int(a, b);
    Int r = a / g * b;
    return r < 0 ? -r : r;
}

} // namespace jl

#pragma once

#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/poly.hpp"
#include "core/rational.hpp"

namespace jl {

// A p-adic valuation: an integer, or +infinity exactly for the zero element.
struct Valuation {
    bool infinite = false;
    long value = 0;

    static Valuation inf() { return Valuation{true, 0}; }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    std::string str() const { return infinite ? "+inf" : std::to_string(value); }
};

/**
 * Truncated p-adic numbers with exact valuations.
 *
 * A nonzero value is p^valuation * unit, with the unit part known modulo
 * p^precision (relative precision: `precision` counts digits of the unit).
 * Zero is a flagged value with valuation +infinity, never a digit string.
 * Arithmetic propagates the minimal precision and never claims more digits
 * than the inputs support.
 */
class Padic {
public:
    static constexpr long kDefaultPrecision = 20;

    // Zero in Q_p.
    static Padic zero(Int p, long precision = kDefaultPrecision) {
        check_prime(p);
        Padic r;
        r.p_ = std::move(p);
        r.prec_ = precision;
        r.zero_ = true;
        return r;
    }

    // Embed an exact rational: valuation extracted exactly, unit truncated.
    Padic(Int p, const Rat& x, long precision = kDefaultPrecision) {
        check_prime(p);
        if (precision < 1) throw PreconditionError("precision must be >= 1");
        p_ = std::move(p);
        prec_ = precision;
        if (x == 0) {
            zero_ = true;
            return;
        }
        zero_ = false;
        val_ = val_p(x, p_);
        Rat unit_rat = x / pow_rat(Rat(p_), val_);
        Int pk = pow_int(p_, prec_);
        unit_ = mod_reduce(unit_rat, p_, pk);
    }

    // p^v * u with u given modulo p^precision. u may carry extra powers of p.
    static Padic from_unit(Int p, long v, Int u, long precision = kDefaultPrecision) {
        check_prime(p);
        if (precision < 1) throw PreconditionError("precision must be >= 1");
        Int pk = pow_int(p, precision);
        u = mod_floor(u, pk);
        if (u == 0) return zero(p, precision);
        long extra = 0;
        while (u % p == 0) {
            u /= p;
            ++extra;
        }
        Padic r;
        r.p_ = std::move(p);
        r.zero_ = false;
        r.val_ = v + extra;
        r.prec_ = precision - extra;
        r.unit_ = u % pow_int(r.p_, r.prec_);
        if (r.unit_ == 0 || r.prec_ < 1)
            throw PreconditionError("unit part lost to truncation");
        return r;
    }

    const Int& prime() const { return p_; }
    bool is_zero() const { return zero_; }
    long valuation() const {
        if (zero_) throw PreconditionError("valuation of zero is +infinity");
        return val_;
    }
    const Int& unit() const {
        if (zero_) throw PreconditionError("zero has no unit part");
        return unit_;
    }
    long precision() const { return prec_; }

    friend Padic operator*(const Padic& a, const Padic& b) {
        same_field(a, b);
        long prec = std::min(a.prec_, b.prec_);
        if (a.zero_ || b.zero_) return zero(a.p_, prec);
        Padic r;
        r.p_ = a.p_;
        r.zero_ = false;
        r.val_ = a.val_ + b.val_;
        r.prec_ = prec;
        r.unit_ = a.unit_ * b.unit_ % pow_int(a.p_, prec);
        return r;
    }

    friend Padic operator+(const Padic& a, const Padic& b) {
        same_field(a, b);
        if (a.zero_) return b.with_precision(std::min(a.prec_, b.prec_));
        if (b.zero_) return a.with_precision(std::min(a.prec_, b.prec_));
        long v = std::min(a.val_, b.val_);
        // Both summands are known modulo p^(val + prec); the sum is known
        // modulo the smaller of the two.
        long known = std::min(a.val_ + a.prec_, b.val_ + b.prec_) - v;
        Int pk = pow_int(a.p_, known);
        Int s = (a.unit_ * pow_int(a.p_, a.val_ - v) + b.unit_ * pow_int(a.p_, b.val_ - v)) % pk;
        if (s == 0) return zero(a.p_, known); // cancellation beyond working precision
        return from_unit(a.p_, v, s, known);
    }

    Padic operator-() const {
        if (zero_) return *this;
        Padic r = *this;
        r.unit_ = pow_int(p_, prec_) - unit_;
        return r;
    }
    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

    Padic inverse() const {
        if (zero_) throw NotInvertible("inverse of zero");
        Padic r = *this;
        r.val_ = -val_;
        r.unit_ = mod_inverse(unit_, pow_int(p_, prec_));
        return r;
    }

    friend bool operator==(const Padic& a, const Padic& b) {
        same_field(a, b);
        if (a.zero_ || b.zero_) return a.zero_ && b.zero_;
        if (a.val_ != b.val_) return false;
        long prec = std::min(a.prec_, b.prec_);
        Int pk = pow_int(a.p_, prec);
        return a.unit_ % pk == b.unit_ % pk;
    }

    std::string str() const {
        if (zero_) return "0 (mod " + p_.str() + "^" + std::to_string(prec_) + ")";
        return p_.str() + "^" + std::to_string(val_) + " * " + unit_.str() + " (mod " + p_.str() +
               "^" + std::to_string(val_ + prec_) + ")";
    }

private:
    Padic() = default;
    Padic with_precision(long prec) const {
        Padic r = *this;
        if (prec >= r.prec_) return r;
        r.prec_ = prec;
        if (!r.zero_) r.unit_ %= pow_int(r.p_, prec);
        return r;
    }
    static void check_prime(const Int& p) {
        if (p < 2 || !is_prime(p)) throw PreconditionError("p must be a prime >= 2");
    }
    static void same_field(const Padic& a, const Padic& b) {
        if (a.p_ != b.p_) throw ShapeMismatch("mixing different p-adic fields");
    }

    Int p_;
    bool zero_ = true;
    long val_ = 0;
    Int unit_ = 0;
    long prec_ = kDefaultPrecision;
};

inline Valuation valuation_of(const Padic& x) {
    if (x.is_zero()) return Valuation::inf();
    return Valuation{false, x.valuation()};
}

// Normalized p-adic norm: |x|_p = p^(-v(x)), |p|_p = 1/p; |0|_p = 0.
inline Rat padic_norm(const Padic& x) {
    if (x.is_zero()) return Rat(0);
    return pow_rat(Rat(x.prime()), -x.valuation());
}

// Lift a simple root r0 of P mod p to a root mod p^N by Newton iteration.
// P must have p-integral coefficients.
inline Padic hensel_lift(const MonicPoly& P, const Int& r0, const Int& p, long target_precision) {
    if (target_precision < 1) throw PreconditionError("target precision must be >= 1");
    if (!is_prime(p)) throw PreconditionError("p must be prime");
    for (long i = 0; i <= P.degree(); ++i)
        if (den(P.coeff(i)) % p == 0)
            throw PreconditionError("polynomial coefficients must be p-integral");

    auto eval_mod = [&](const Int& r, const Int& pk) {
        Int acc = 0;
        for (long i = P.degree(); i >= 0; --i) acc = (acc * r + mod_reduce(P.coeff(i), p, pk)) % pk;
        return acc;
    };
    auto eval_deriv_mod = [&](const Int& r, const Int& pk) {
        Int acc = 0;
        for (long i = P.degree(); i >= 1; --i)
            acc = (acc * r + Int(i) * mod_reduce(P.coeff(i), p, pk)) % pk;
        return acc;
    };

    if (eval_mod(r0, p) != 0) throw PreconditionError("P(r0) != 0 mod p");
    if (eval_deriv_mod(r0, p) == 0) throw SimpleRootViolated("P'(r0) == 0 mod p");

    Int r = mod_floor(r0, p);
    long k = 1;
    while (k < target_precision) {
        k = std::min(2 * k, target_precision);
        Int pk = pow_int(p, k);
        Int fr = eval_mod(r, pk);
        Int dr = eval_deriv_mod(r, pk);
        r = mod_floor(r - fr * mod_inverse(dr, pk), pk);
    }
    if (mod_floor(r, pow_int(p, target_precision)) == 0) return Padic::zero(p, target_precision);
    return Padic::from_unit(p, 0, r, target_precision);
}

// Squares in Z_p^x: quadratic residue mod p for odd p, unit = 1 mod 8 for p = 2.
inline bool is_unit_square(const Padic& u) {
    if (u.is_zero() || u.valuation() != 0) throw NotAUnit("unit-square test needs valuation 0");
    if (u.prime() == 2) {
        if (u.precision() < 3) throw PreconditionError("p = 2 requires precision >= 3");
        return u.unit() % 8 == 1;
    }
    return legendre(u.unit(), u.prime()) == 1;
}

} // namespace jl

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace jl {

// Dense univariate polynomial, coefficients constant term first.
// The zero polynomial is the empty coefficient vector.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(long i) const {
        return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : K(0);
    }
    const K& leading() const {
        if (is_zero()) throw PreconditionError("leading coefficient of zero polynomial");
        return c_.back();
    }

    K operator()(const K& x) const {
        K acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly operator-() const {
        std::vector<K> r(c_);
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const K& s, const Poly& a) {
        std::vector<K> r(a.c_);
        for (auto& v : r) v = s * v;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<int>(i));
        return Poly(std::move(r));
    }

    // Euclidean division; K must be a field (divides by b.leading()).
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw PreconditionError("polynomial division by zero");
        std::vector<K> rem(a.c_);
        long db = b.degree();
        if (a.degree() < db) return {Poly(), a};
        std::vector<K> quot(a.degree() - db + 1, K(0));
        K lead_inv = K(1) / b.leading();
        for (long i = a.degree(); i >= db; --i) {
            K q = rem[i] * lead_inv;
            if (q == K(0)) continue;
            quot[i - db] = q;
            for (long j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.c_[j];
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    // Monic gcd over a field.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divrem(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = (K(1) / a.leading()) * a;
        return a;
    }

    bool is_squarefree() const {
        if (is_zero()) return false;
        if (degree() == 0) return true;
        return gcd(*this, derivative()).degree() == 0;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

using RatPoly = Poly<Rat>;

// Monic polynomial over Q, degree >= 1. Carrier of characteristic polynomials.
class MonicPoly {
public:
    explicit MonicPoly(RatPoly p) : p_(std::move(p)) {
        if (p_.degree() < 1) throw PreconditionError("monic polynomial must have degree >= 1");
        if (p_.leading() != 1) throw PreconditionError("leading coefficient must be 1");
    }
    explicit MonicPoly(std::vector<Rat> coeffs) : MonicPoly(RatPoly(std::move(coeffs))) {}

    const RatPoly& poly() const { return p_; }
    long degree() const { return p_.degree(); }
    Rat coeff(long i) const { return p_.coeff(i); }
    Rat operator()(const Rat& x) const { return p_(x); }
    bool is_squarefree() const { return p_.is_squarefree(); }

    friend MonicPoly operator*(const MonicPoly& a, const MonicPoly& b) {
        return MonicPoly(a.p_ * b.p_);
    }
    friend bool operator==(const MonicPoly& a, const MonicPoly& b) { return a.p_ == b.p_; }

private:
    RatPoly p_;
};

// Number of sign changes in a sequence, ignoring zeros.
inline int sign_changes(const std::vector<int>& signs) {
    int changes = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

inline int rat_sign(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Count of distinct real roots via a Sturm chain; exact.
inline int count_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw PreconditionError("real roots of the zero polynomial");
    if (p.degree() == 0) return 0;
    if (!p.is_squarefree()) throw NotSquarefree("Sturm count requires a squarefree polynomial");
    std::vector<RatPoly> chain = {p, p.derivative()};
    while (!chain.back().is_zero()) {
        const RatPoly& a = chain[chain.size() - 2];
        const RatPoly& b = chain.back();
        chain.push_back(-RatPoly::divrem(a, b).second);
    }
    chain.pop_back();
    // Sign at -inf: leading sign times (-1)^deg; at +inf: leading sign.
    std::vector<int> at_minus, at_plus;
    for (const auto& q : chain) {
        int lead = rat_sign(q.leading());
        at_plus.push_back(lead);
        at_minus.push_back(q.degree() % 2 == 0 ? lead : -lead);
    }
    return sign_changes(at_minus) - sign_changes(at_plus);
}

} // namespace jl

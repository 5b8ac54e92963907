#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "error.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace jl {

// The cyclotomic field Q(zeta_n). Elements are stored on the power basis
// zeta^0 .. zeta^(phi(n)-1); products are reduced modulo the n-th cyclotomic
// polynomial, so equality of values is exact equality of coordinates.
class CycField {
public:
    static std::shared_ptr<const CycField> get(long n) {
        static std::mutex mu;
        static std::map<long, std::shared_ptr<const CycField>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        auto f = std::shared_ptr<const CycField>(new CycField(n));
        cache[n] = f;
        return f;
    }

    long order() const { return n_; }
    long degree() const { return deg_; }
    const RatPoly& cyclotomic_polynomial() const { return phi_; }
    // zeta^j in basis coordinates, any j.
    const std::vector<Rat>& power(long j) const { return xpow_[mod_floor_l(j, n_)]; }

private:
    explicit CycField(long n) : n_(n) {
        if (n < 1) throw PreconditionError("cyclotomic order must be >= 1");
        phi_ = cyclotomic(n);
        deg_ = phi_.degree();
        // X^j mod Phi_n for j in [0, n).
        xpow_.resize(n_);
        std::vector<Rat> cur(deg_, Rat(0));
        for (long j = 0; j < n_; ++j) {
            if (j < deg_) {
                cur.assign(deg_, Rat(0));
                cur[j] = 1;
            } else {
                // multiply previous by X, reduce by phi (monic).
                std::vector<Rat> nxt(deg_, Rat(0));
                Rat top = cur[deg_ - 1];
                for (long i = deg_ - 1; i >= 1; --i) nxt[i] = cur[i - 1];
                nxt[0] = 0;
                if (top != 0)
                    for (long i = 0; i < deg_; ++i) nxt[i] -= top * phi_.coeff(i);
                cur = nxt;
            }
            xpow_[j] = cur;
        }
    }

    static long mod_floor_l(long a, long n) {
        long r = a % n;
        return r < 0 ? r + n : r;
    }

    static RatPoly cyclotomic(long n) {
        // (X^n - 1) / prod_{d|n, d<n} Phi_d, computed recursively.
        std::vector<Rat> xn(n + 1, Rat(0));
        xn[0] = -1;
        xn[n] = 1;
        RatPoly p{std::vector<Rat>(xn)};
        for (long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            auto [q, r] = RatPoly::divrem(p, cyclotomic(d));
            if (!r.is_zero()) throw InternalError("cyclotomic polynomial division not exact");
            p = q;
        }
        return p;
    }

    long n_;
    long deg_;
    RatPoly phi_;
    std::vector<std::vector<Rat>> xpow_;
};

class Cyc {
public:
    Cyc() = default;
    explicit Cyc(std::shared_ptr<const CycField> F) : F_(std::move(F)), c_(F_->degree(), Rat(0)) {}
    Cyc(std::shared_ptr<const CycField> F, const Rat& v) : Cyc(std::move(F)) {
        if (!c_.empty()) c_[0] = v;
    }
    static Cyc root_of_unity(const std::shared_ptr<const CycField>& F, long j) {
        Cyc r(F);
        r.c_ = F->power(j);
        return r;
    }
    // a + b*i; requires 4 | n.
    static Cyc gaussian(const std::shared_ptr<const CycField>& F, const Rat& a, const Rat& b) {
        if (F->order() % 4 != 0) throw PreconditionError("gaussian values need 4 | cyclotomic order");
        Cyc r = Cyc(F, a);
        Cyc im = root_of_unity(F, F->order() / 4);
        return r + Cyc(F, b) * im;
    }

    const std::shared_ptr<const CycField>& field() const { return F_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw PreconditionError("value is not rational");
        return c_.empty() ? Rat(0) : c_[0];
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        Cyc r = a;
        check(a, b);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        Cyc r = a;
        check(a, b);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        check(a, b);
        long deg = a.F_->degree();
        std::vector<Rat> conv(2 * deg - 1, Rat(0));
        for (long i = 0; i < deg; ++i) {
            if (a.c_[i] == 0) continue;
            for (long j = 0; j < deg; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        Cyc r(a.F_);
        for (long k = 0; k < static_cast<long>(conv.size()); ++k) {
            if (conv[k] == 0) continue;
            if (k < deg) {
                r.c_[k] += conv[k];
            } else {
                const auto& red = a.F_->power(k); // reduces k mod n, then mod Phi_n
                for (long i = 0; i < deg; ++i) r.c_[i] += conv[k] * red[i];
            }
        }
        return r;
    }
    friend Cyc operator*(const Rat& s, const Cyc& a) {
        Cyc r = a;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    Cyc operator/(const Rat& s) const {
        if (s == 0) throw PreconditionError("division by zero scalar");
        Cyc r = *this;
        for (auto& v : r.c_) v /= s;
        return r;
    }
    friend bool operator==(const Cyc& a, const Cyc& b) {
        check(a, b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    // Canonical embedding into Q(zeta_N) for n | N.
    Cyc lift(const std::shared_ptr<const CycField>& F2) const {
        if (F2->order() % F_->order() != 0)
            throw ShapeMismatch("target cyclotomic order must be a multiple");
        long step = F2->order() / F_->order();
        Cyc r(F2);
        for (long k = 0; k < static_cast<long>(c_.size()); ++k) {
            if (c_[k] == 0) continue;
            r = r + c_[k] * root_of_unity(F2, k * step);
        }
        return r;
    }

    // Complex conjugation = the Galois automorphism zeta -> zeta^(-1).
    Cyc conj() const {
        Cyc r(F_);
        long n = F_->order();
        for (long k = 0; k < F_->degree(); ++k) {
            if (c_[k] == 0) continue;
            const auto& red = F_->power(((n - k) % n + n) % n);
            for (long i = 0; i < F_->degree(); ++i) r.c_[i] += c_[k] * red[i];
        }
        return r;
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc(0, 0);
        double n = static_cast<double>(F_->order());
        for (long k = 0; k < static_cast<long>(c_.size()); ++k) {
            if (c_[k] == 0) continue;
            double v = static_cast<double>(c_[k]);
            double ang = 2.0 * M_PI * static_cast<double>(k) / n;
            acc += v * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

private:
    static void check(const Cyc& a, const Cyc& b) {
        if (!a.F_ || !b.F_) throw PreconditionError("cyclotomic value without field");
        if (a.F_->order() != b.F_->order()) throw ShapeMismatch("mixing cyclotomic fields");
    }
    std::shared_ptr<const CycField> F_;
    std::vector<Rat> c_;
};

} // namespace jl

#pragma once

#include <set>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/matrix.hpp"
#include "core/poly.hpp"
#include "core/quadext.hpp"
#include "core/rational.hpp"
#include "localpoly.hpp"

namespace jl {

/**
 * Quaternion algebras (a,b) over Q: the four-dimensional algebra with basis
 * 1, i, j, ij and relations i^2 = a, j^2 = b, ij = -ji. Hilbert symbols
 * detect the places where the algebra stays a division algebra.
 */
struct QuaternionAlgebra {
    Rat a, b;

    QuaternionAlgebra(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a == 0 || b == 0) throw PreconditionError("quaternion parameters must be nonzero");
    }
    static QuaternionAlgebra hamilton() { return QuaternionAlgebra(-1, -1); }

    // The division algebra over Q_p in the presentation (u, p): i^2 a
    // non-square unit, j^2 the uniformizer. Splitting field Q(i) is the
    // unramified quadratic extension.
    static QuaternionAlgebra local_division(const Int& p) {
        if (!is_prime(p)) throw PreconditionError("p must be prime");
        if (p == 2) return QuaternionAlgebra(5, 2);
        for (Int u = 2; u < p; ++u)
            if (legendre(u, p) == -1) return QuaternionAlgebra(Rat(u), Rat(p));
        throw InternalError("no quadratic non-residue found");
    }

    friend bool operator==(const QuaternionAlgebra& x, const QuaternionAlgebra& y) {
        return x.a == y.a && x.b == y.b;
    }
};

struct QuatElement {
    QuaternionAlgebra alg;
    Rat t, u, v, w; // t + u i + v j + w ij

    QuatElement(QuaternionAlgebra algebra, Rat t_, Rat u_, Rat v_, Rat w_)
        : alg(std::move(algebra)), t(std::move(t_)), u(std::move(u_)), v(std::move(v_)),
          w(std::move(w_)) {}
    static QuatElement scalar(const QuaternionAlgebra& algebra, const Rat& s) {
        return QuatElement(algebra, s, 0, 0, 0);
    }

    bool is_central() const { return u == 0 && v == 0 && w == 0; }
    QuatElement conj() const { return QuatElement(alg, t, -u, -v, -w); }

    friend QuatElement operator+(const QuatElement& x, const QuatElement& y) {
        same(x, y);
        return QuatElement(x.alg, x.t + y.t, x.u + y.u, x.v + y.v, x.w + y.w);
    }
    friend QuatElement operator-(const QuatElement& x, const QuatElement& y) {
        same(x, y);
        return QuatElement(x.alg, x.t - y.t, x.u - y.u, x.v - y.v, x.w - y.w);
    }
    friend QuatElement operator*(const Rat& s, const QuatElement& x) {
        return QuatElement(x.alg, s * x.t, s * x.u, s * x.v, s * x.w);
    }
    friend QuatElement operator*(const QuatElement& x, const QuatElement& y) {
        same(x, y);
        const Rat& a = x.alg.a;
        const Rat& b = x.alg.b;
        return QuatElement(x.alg,
                           x.t * y.t + a * x.u * y.u + b * x.v * y.v - a * b * x.w * y.w,
                           x.t * y.u + x.u * y.t - b * x.v * y.w + b * x.w * y.v,
                           x.t * y.v + x.v * y.t + a * x.u * y.w - a * x.w * y.u,
                           x.t * y.w + x.w * y.t + x.u * y.v - x.v * y.u);
    }
    friend bool operator==(const QuatElement& x, const QuatElement& y) {
        return x.alg == y.alg && x.t == y.t && x.u == y.u && x.v == y.v && x.w == y.w;
    }

private:
    static void same(const QuatElement& x, const QuatElement& y) {
        if (!(x.alg == y.alg)) throw ShapeMismatch("mixing quaternion algebras");
    }
};

inline Rat reduced_trace(const QuatElement& x) { return 2 * x.t; }
inline Rat reduced_norm(const QuatElement& x) {
    const Rat& a = x.alg.a;
    const Rat& b = x.alg.b;
    return x.t * x.t - a * x.u * x.u - b * x.v * x.v + a * b * x.w * x.w;
}

inline QuatElement quat_inverse(const QuatElement& x) {
    Rat n = reduced_norm(x);
    if (n == 0) throw NotInvertible("reduced norm is zero");
    return (Rat(1) / n) * x.conj();
}

// Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nonzero solution
// over Q_v. Case analysis on valuations and unit squares.
inline int hilbert_symbol(const Rat& a, const Rat& b, const Place& place) {
    if (a == 0 || b == 0) throw PreconditionError("Hilbert symbol needs nonzero entries");
    if (place.infinite) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = place.p;
    long alpha = val_p(a, p), beta = val_p(b, p);
    Rat u = a / pow_rat(Rat(p), alpha);
    Rat w = b / pow_rat(Rat(p), beta);
    if (p != 2) {
        int eps = ((p - 1) / 2) % 2 == 0 ? 1 : -1; // (-1)^((p-1)/2)
        int sym = 1;
        if (alpha % 2 != 0 && beta % 2 != 0 && eps == -1) sym = -sym;
        if (beta % 2 != 0 && legendre(mod_reduce(u, p, p), p) == -1) sym = -sym;
        if (alpha % 2 != 0 && legendre(mod_reduce(w, p, p), p) == -1) sym = -sym;
        return sym;
    }
    auto eps2 = [](const Int& m8) { return ((m8 - 1) / 2) % 2; };   // (u-1)/2 mod 2
    auto omega2 = [](const Int& m8) { return ((m8 * m8 - 1) / 8) % 2; }; // (u^2-1)/8 mod 2
    Int u8 = mod_reduce(u, 2, 8), w8 = mod_reduce(w, 2, 8);
    Int expo = eps2(u8) * eps2(w8) + Int(alpha % 2 != 0 ? 1 : 0) * omega2(w8) +
               Int(beta % 2 != 0 ? 1 : 0) * omega2(u8);
    return expo % 2 == 0 ? 1 : -1;
}

struct RamificationSet {
    std::set<Int> primes;
    bool infinite = false;
    size_t size() const { return primes.size() + (infinite ? 1 : 0); }
    bool contains(const Place& v) const {
        return v.infinite ? infinite : primes.count(v.p) > 0;
    }
};

// Places where (a,b) is a division algebra: symbol -1. Candidates are 2,
// infinity, and the primes of the numerators/denominators of a and b.
inline RamificationSet ramified_places(const QuaternionAlgebra& D) {
    std::set<Int> candidates{Int(2)};
    for (const Rat* r : {&D.a, &D.b}) {
        for (auto& [q, e] : factorize(num(*r))) candidates.insert(q);
        for (auto& [q, e] : factorize(den(*r))) candidates.insert(q);
    }
    candidates.erase(Int(1));
    RamificationSet ram;
    for (const Int& q : candidates)
        if (hilbert_symbol(D.a, D.b, Place::finite(q)) == -1) ram.primes.insert(q);
    ram.infinite = hilbert_symbol(D.a, D.b, Place::inf()) == -1;
    if (ram.size() % 2 != 0)
        throw InternalError("Hilbert product formula violated: odd ramification set");
    return ram;
}

// X^2 - tr(x) X + N(x); annihilates x.
inline MonicPoly reduced_char_poly_quat(const QuatElement& x) {
    return MonicPoly({reduced_norm(x), -reduced_trace(x), Rat(1)});
}

// Regular semisimple: invertible and the reduced characteristic polynomial
// squarefree. In a division algebra this is exactly "not central".
inline bool is_regular_semisimple_quat(const QuatElement& x) {
    if (reduced_norm(x) == 0) throw NotInvertible("element has reduced norm zero");
    Rat disc = reduced_trace(x) * reduced_trace(x) - 4 * reduced_norm(x);
    return disc != 0;
}

// n x n matrices over a quaternion algebra.
class QuatMat {
public:
    QuatMat(QuaternionAlgebra alg, size_t n)
        : alg_(std::move(alg)), n_(n), e_(n * n, QuatElement::scalar(alg_, 0)) {}
    static QuatMat diagonal(const std::vector<QuatElement>& xs) {
        if (xs.empty()) throw PreconditionError("empty diagonal");
        QuatMat m(xs[0].alg, xs.size());
        for (size_t i = 0; i < xs.size(); ++i) m.at(i, i) = xs[i];
        return m;
    }
    size_t size() const { return n_; }
    const QuaternionAlgebra& algebra() const { return alg_; }
    QuatElement& at(size_t i, size_t j) { return e_[i * n_ + j]; }
    const QuatElement& at(size_t i, size_t j) const { return e_[i * n_ + j]; }

    friend QuatMat operator*(const QuatMat& x, const QuatMat& y) {
        if (x.n_ != y.n_ || !(x.alg_ == y.alg_)) throw ShapeMismatch("quaternion matrix product");
        QuatMat r(x.alg_, x.n_);
        for (size_t i = 0; i < x.n_; ++i)
            for (size_t j = 0; j < x.n_; ++j) {
                QuatElement acc = QuatElement::scalar(x.alg_, 0);
                for (size_t k = 0; k < x.n_; ++k) acc = acc + x.at(i, k) * y.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

private:
    QuaternionAlgebra alg_;
    size_t n_;
    std::vector<QuatElement> e_;
};

// The splitting embedding M_n(D) -> M_{2n}(E), E = Q(sqrt a): an entry
// x = alpha + beta j (alpha = t + u i, beta = v + w i) maps to the block
//   [ alpha   b * beta ]
//   [ conj(beta) conj(alpha) ].
inline Matrix<QuadExt> embed_split(const QuatMat& g) {
    const Rat& a = g.algebra().a;
    const Rat& b = g.algebra().b;
    size_t n = g.size();
    Matrix<QuadExt> M(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const QuatElement& x = g.at(i, j);
            QuadExt alpha(x.t, x.u, a), beta(x.v, x.w, a);
            M(2 * i, 2 * j) = alpha;
            M(2 * i, 2 * j + 1) = QuadExt(b) * beta;
            M(2 * i + 1, 2 * j) = beta.conj();
            M(2 * i + 1, 2 * j + 1) = alpha.conj();
        }
    return M;
}

// Reduced characteristic polynomial of g in M_n(D_v), D_v the quaternion
// division algebra at v. Degree 2n; coefficients must come out rational
// exactly -- any quadratic residue is an internal bug, not a math case.
inline MonicPoly reduced_char_poly_matrix(const QuatMat& g, const Place& v) {
    if (hilbert_symbol(g.algebra().a, g.algebra().b, v) != -1)
        throw PreconditionError("algebra splits at " + v.str() + "; division algebra required");
    Poly<QuadExt> cp = char_poly(embed_split(g));
    std::vector<Rat> coeffs;
    for (long k = 0; k <= cp.degree(); ++k) {
        const QuadExt& c = cp.coeff(k);
        if (!c.is_rational())
            throw SplittingDrift("coefficient of X^" + std::to_string(k) +
                                 " has a nonzero quadratic component");
        coeffs.push_back(c.rational_part());
    }
    MonicPoly P{std::move(coeffs)};
    if (P.degree() != static_cast<long>(2 * g.size()))
        throw InternalError("reduced characteristic polynomial has wrong degree");
    return P;
}

} // namespace jl

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/rational.hpp"

namespace jl {

using Complex = std::complex<double>;

inline constexpr double kSatakeEps = 1e-9;

/**
 * A point of the unramified dual of GL_n(F_v): the multiset {x_1,...,x_n} of
 * nonzero Satake parameters x_i = q^{z_i}. Storing x rather than z absorbs
 * the period ambiguity in z, and multiset equality absorbs the Weyl group.
 */
struct SatakeParams {
    long n;
    Rat q;
    std::vector<Complex> xs;

    SatakeParams(long rank, Rat residue_q, std::vector<Complex> params)
        : n(rank), q(std::move(residue_q)), xs(std::move(params)) {
        if (n < 1) throw RankRange("rank must be >= 1");
        if (static_cast<long>(xs.size()) != n) throw ShapeMismatch("expected n parameters");
        validate_q(q);
        for (const Complex& x : xs)
            if (std::abs(x) == 0) throw PreconditionError("Satake parameters must be nonzero");
    }

    static SatakeParams trivial_rep(long n, const Rat& q) {
        // parameters of the trivial representation: q^{(n+1)/2 - i}
        std::vector<Complex> xs;
        double qd = static_cast<double>(q);
        for (long i = 1; i <= n; ++i) xs.emplace_back(std::pow(qd, (n + 1) / 2.0 - i), 0.0);
        return SatakeParams(n, q, std::move(xs));
    }

    static void validate_q(const Rat& q) {
        if (den(q) != 1 || num(q) < 2) throw PreconditionError("q must be a prime power >= 2");
        if (factorize(num(q)).size() != 1) throw PreconditionError("q must be a prime power");
    }
};

// Multiset equality with tolerance, by greedy matching.
inline bool multiset_equal(std::vector<Complex> a, const std::vector<Complex>& b,
                           double eps = kSatakeEps) {
    if (a.size() != b.size()) return false;
    for (const Complex& t : b) {
        bool found = false;
        for (size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - t) <= eps) {
                a.erase(a.begin() + static_cast<long>(i));
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline bool params_equal(const SatakeParams& p1, const SatakeParams& p2, double eps = kSatakeEps) {
    if (p1.n != p2.n || p1.q != p2.q) return false;
    return multiset_equal(p1.xs, p2.xs, eps);
}

/**
 * An element of the spherical Hecke algebra of GL_n(F_v), stored as a
 * polynomial in the elementary symmetric values e_1,...,e_n with e_n
 * inverted. Commutativity of the algebra is manifest. Keys are exponent
 * vectors (a_1,...,a_n), a_i >= 0 for i < n and a_n of any sign.
 */
class HeckeElement {
public:
    HeckeElement(long rank, Rat residue_q) : n_(rank), q_(std::move(residue_q)) {
        if (n_ < 1) throw RankRange("rank must be >= 1");
        SatakeParams::validate_q(q_);
    }

    static HeckeElement unit(long n, const Rat& q) {
        HeckeElement f(n, q);
        f.terms_[std::vector<long>(n, 0)] = Complex(1, 0);
        return f;
    }

    long rank() const { return n_; }
    const Rat& q() const { return q_; }
    const std::map<std::vector<long>, Complex>& terms() const { return terms_; }

    void add_term(const std::vector<long>& exponents, Complex coeff) {
        if (static_cast<long>(exponents.size()) != n_)
            throw ShapeMismatch("exponent vector length must equal the rank");
        for (long i = 0; i + 1 < n_; ++i)
            if (exponents[i] < 0)
                throw PreconditionError("only e_n may carry negative exponents");
        Complex& c = terms_[exponents];
        c += coeff;
        if (c == Complex(0, 0)) terms_.erase(exponents);
    }

    friend HeckeElement operator+(const HeckeElement& f, const HeckeElement& g) {
        match(f, g);
        HeckeElement r = f;
        for (auto& [e, c] : g.terms_) r.add_term(e, c);
        return r;
    }
    friend HeckeElement operator*(Complex s, const HeckeElement& f) {
        HeckeElement r(f.n_, f.q_);
        if (s == Complex(0, 0)) return r;
        for (auto& [e, c] : f.terms_) r.terms_[e] = s * c;
        return r;
    }
    friend HeckeElement operator-(const HeckeElement& f, const HeckeElement& g) {
        return f + Complex(-1, 0) * g;
    }
    friend HeckeElement operator*(const HeckeElement& f, const HeckeElement& g) {
        match(f, g);
        HeckeElement r(f.n_, f.q_);
        for (auto& [e1, c1] : f.terms_)
            for (auto& [e2, c2] : g.terms_) {
                std::vector<long> e(f.n_);
                for (long i = 0; i < f.n_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    // The involution f -> f*: conjugate coefficients and substitute
    // x_i -> 1/x_i, i.e. e_k -> e_{n-k} e_n^{-1}.
    HeckeElement star() const {
        HeckeElement r(n_, q_);
        for (auto& [e, c] : terms_) {
            std::vector<long> img(n_, 0);
            long en = 0;
            for (long k = 0; k < n_; ++k) {
                long a = e[k]; // exponent of e_{k+1}
                if (a == 0) continue;
                en -= a;
                long nk = n_ - (k + 1); // e_{n-k}; zero means the constant 1
                if (nk > 0) img[nk - 1] += a;
            }
            img[n_ - 1] += en;
            r.add_term(img, std::conj(c));
        }
        return r;
    }

private:
    static void match(const HeckeElement& f, const HeckeElement& g) {
        if (f.n_ != g.n_ || f.q_ != g.q_) throw ShapeMismatch("mixing Hecke algebras");
    }
    long n_;
    Rat q_;
    std::map<std::vector<long>, Complex> terms_;
};

// Basis element for the k-th minuscule coweight: value q^{k(n-k)/2} e_k.
// k = 0 is the unit of the algebra.
inline HeckeElement generator(long n, const Rat& q, long k) {
    if (k < 0 || k > n) throw RankRange("generator index must lie in [0, n]");
    HeckeElement f(n, q);
    std::vector<long> e(n, 0);
    if (k > 0) e[k - 1] = 1;
    double scale = std::pow(static_cast<double>(q), k * (n - k) / 2.0);
    f.add_term(e, Complex(scale, 0));
    return f;
}

// Evaluate the symmetric Laurent polynomial at the parameter multiset.
inline Complex trace_unramified(const SatakeParams& p, const HeckeElement& f) {
    if (p.n != f.rank() || p.q != f.q()) throw ShapeMismatch("parameters and element disagree");
    // elementary symmetric values from prod (T + x_i)
    std::vector<Complex> e(p.n + 1, Complex(0, 0));
    e[0] = Complex(1, 0);
    for (long i = 0; i < p.n; ++i)
        for (long k = i + 1; k >= 1; --k) e[k] += e[k - 1] * p.xs[i];
    Complex en_inv = Complex(1, 0) / e[p.n];
    Complex acc(0, 0);
    for (auto& [expv, c] : f.terms()) {
        Complex term = c;
        for (long k = 0; k < p.n; ++k) {
            long a = expv[k];
            Complex base = a >= 0 ? e[k + 1] : (k + 1 == p.n ? en_inv : Complex(0, 0));
            for (long t = 0; t < std::abs(a); ++t) term *= base;
        }
        acc += term;
    }
    return acc;
}

// Membership in the compact parameter space: q^{-n/2} <= |x_i| <= q^{n/2}
// and the multiset of log_q |x_i| symmetric about zero.
inline bool in_W(const SatakeParams& p, double eps = kSatakeEps) {
    double qd = static_cast<double>(p.q);
    double bound = p.n / 2.0;
    std::vector<double> mus;
    for (const Complex& x : p.xs) {
        double mu = std::log(std::abs(x)) / std::log(qd);
        if (mu < -bound - eps || mu > bound + eps) return false;
        mus.push_back(mu);
    }
    std::sort(mus.begin(), mus.end());
    for (size_t i = 0; i < mus.size(); ++i)
        if (std::abs(mus[i] + mus[mus.size() - 1 - i]) > eps) return false;
    return true;
}

// Hermitian: isomorphic to the conjugate of the contragredient, i.e. the
// multiset {x_i} equals {1/conj(x_i)}.
inline bool is_hermitian(const SatakeParams& p, double eps = kSatakeEps) {
    std::vector<Complex> inv_conj;
    for (const Complex& x : p.xs) inv_conj.push_back(Complex(1, 0) / std::conj(x));
    return multiset_equal(p.xs, inv_conj, eps);
}

// A generator whose traces at p1 and p2 differ by more than eps. Exists for
// distinct multisets because the e_k determine the multiset.
inline HeckeElement separate_points(const SatakeParams& p1, const SatakeParams& p2,
                                    double eps = kSatakeEps) {
    if (p1.n != p2.n || p1.q != p2.q) throw ShapeMismatch("parameters live in different duals");
    for (long k = 1; k <= p1.n; ++k) {
        HeckeElement g = generator(p1.n, p1.q, k);
        if (std::abs(trace_unramified(p1, g) - trace_unramified(p2, g)) > eps) return g;
    }
    throw NotSeparable("parameter multisets coincide within tolerance");
}

struct PlaceSpec {
    long n;
    Rat q;
};

/**
 * A finite family of factorizable unramified data: places with (n, q), a
 * list of representation tuples (one parameter point per place), and scalar
 * coefficients. Tuples must be pairwise distinct at some place.
 */
struct PlacedFamily {
    std::vector<PlaceSpec> places;
    std::vector<std::vector<SatakeParams>> reps; // reps[j][place]
    std::vector<Complex> coeffs;

    PlacedFamily(std::vector<PlaceSpec> ps, std::vector<std::vector<SatakeParams>> rs,
                 std::vector<Complex> cs)
        : places(std::move(ps)), reps(std::move(rs)), coeffs(std::move(cs)) {
        if (places.empty()) throw PreconditionError("at least one place required");
        if (reps.empty()) throw PreconditionError("at least one representation required");
        if (reps.size() != coeffs.size()) throw ShapeMismatch("one coefficient per representation");
        for (auto& tuple : reps) {
            if (tuple.size() != places.size()) throw ShapeMismatch("one parameter point per place");
            for (size_t l = 0; l < places.size(); ++l)
                if (tuple[l].n != places[l].n || tuple[l].q != places[l].q)
                    throw ShapeMismatch("parameter point does not match its place");
        }
        for (size_t j1 = 0; j1 < reps.size(); ++j1)
            for (size_t j2 = j1 + 1; j2 < reps.size(); ++j2) {
                bool separated = false;
                for (size_t l = 0; l < places.size(); ++l)
                    if (!params_equal(reps[j1][l], reps[j2][l])) separated = true;
                if (!separated)
                    throw PreconditionError("representations " + std::to_string(j1) + " and " +
                                            std::to_string(j2) + " coincide at every place");
            }
    }
};

struct WitnessResult {
    bool certified_zero = false;
    std::vector<HeckeElement> factors; // one per place
    Complex sum = 0;
    double delta = 0;
    std::vector<Complex> per_rep;
};

/**
 * Constructive finite form of the spectral simplification: if some c_j is
 * nonzero, produce a factorizable element on which the weighted character
 * sum stays away from zero. The recipe follows the classical proof: pick u
 * with |c_u| maximal, separate every other parameter point from u's
 * place by place, and interpolate so that the u-product dominates.
 */
inline WitnessResult independence_witness(const PlacedFamily& fam, double eps = kSatakeEps) {
    const size_t J = fam.reps.size();
    const size_t L = fam.places.size();

    bool all_zero = true;
    for (const Complex& c : fam.coeffs)
        if (c != Complex(0, 0)) all_zero = false;
    if (all_zero) {
        WitnessResult r;
        r.certified_zero = true;
        return r;
    }

    size_t u = 0;
    for (size_t j = 1; j < J; ++j)
        if (std::abs(fam.coeffs[j]) > std::abs(fam.coeffs[u])) u = j;
    const double cu = std::abs(fam.coeffs[u]);

    WitnessResult result;
    result.delta = cu * (1.0 - 0.5 - 0.25) / 2.0; // = |c_u| / 8

    if (J == 1) {
        for (size_t l = 0; l < L; ++l)
            result.factors.push_back(HeckeElement::unit(fam.places[l].n, fam.places[l].q));
        result.per_rep = {Complex(1, 0)};
        result.sum = fam.coeffs[0];
        return result;
    }

    std::ostringstream diag;
    for (int power = 1; power <= 3; ++power) {
        std::vector<HeckeElement> factors;
        for (size_t l = 0; l < L; ++l) {
            // distinct parameter values occurring at this place
            std::vector<const SatakeParams*> values;
            std::vector<size_t> value_of(J);
            for (size_t j = 0; j < J; ++j) {
                bool found = false;
                for (size_t i = 0; i < values.size(); ++i)
                    if (params_equal(*values[i], fam.reps[j][l], eps)) {
                        value_of[j] = i;
                        found = true;
                        break;
                    }
                if (!found) {
                    values.push_back(&fam.reps[j][l]);
                    value_of[j] = values.size() - 1;
                }
            }
            size_t uv = value_of[u];
            HeckeElement h = HeckeElement::unit(fam.places[l].n, fam.places[l].q);
            for (size_t i = 0; i < values.size(); ++i) {
                if (i == uv) continue;
                HeckeElement g = separate_points(*values[uv], *values[i], eps);
                Complex tu = trace_unramified(*values[uv], g);
                Complex ti = trace_unramified(*values[i], g);
                // (g - ti) / (tu - ti): 1 at the u-value, 0 at value i
                HeckeElement lagrange =
                    (Complex(1, 0) / (tu - ti)) *
                    (g - ti * HeckeElement::unit(fam.places[l].n, fam.places[l].q));
                h = h * lagrange;
            }
            HeckeElement hp = h;
            for (int t = 1; t < power; ++t) hp = hp * h;
            factors.push_back(hp);
        }
        factors[0] = Complex(1.5, 0) * factors[0];

        std::vector<Complex> per_rep(J, Complex(1, 0));
        for (size_t j = 0; j < J; ++j)
            for (size_t l = 0; l < L; ++l)
                per_rep[j] *= trace_unramified(fam.reps[j][l], factors[l]);

        bool ok = std::abs(per_rep[u]) > 1.0;
        double offsum = 0;
        for (size_t j = 0; j < J; ++j) {
            if (std::abs(per_rep[j]) >= 2.0) ok = false;
            if (j == u) continue;
            if (std::abs(per_rep[j]) >= cu / (2.0 * static_cast<double>(J))) ok = false;
            offsum += std::abs(fam.coeffs[j]) * std::abs(per_rep[j]);
        }
        if (offsum > 0.75 * cu) ok = false;
        Complex sum(0, 0);
        for (size_t j = 0; j < J; ++j) sum += fam.coeffs[j] * per_rep[j];
        if (std::abs(sum) <= result.delta) ok = false;

        if (ok) {
            result.factors = std::move(factors);
            result.per_rep = std::move(per_rep);
            result.sum = sum;
            return result;
        }
        diag << "power " << power << ": |sum| = " << std::abs(sum) << ", |T_u| = "
             << std::abs(per_rep[u]) << "; ";
    }
    throw SearchFailed("witness bound targeting exhausted its budget: " + diag.str());
}

} // namespace jl

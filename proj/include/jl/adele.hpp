#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "core/error.hpp"
#include "core/rational.hpp"
#include "localpoly.hpp" // Place

namespace jl {

/**
 * Restricted-product elements over Q with finite exceptional support. A
 * defaulted finite component is an unspecified unit (idele mode) or integer
 * (adele mode); operations may consume only its valuation, which is zero.
 * Where a concrete default value is needed for reporting, it is 1.
 */
struct RestrictedElement {
    enum class Mode { Idele, Adele };

    Rat inf;
    std::map<Int, Rat> finite; // prime -> component
    Mode mode = Mode::Idele;

    RestrictedElement(Rat archimedean, std::map<Int, Rat> support, Mode m = Mode::Idele)
        : inf(std::move(archimedean)), finite(std::move(support)), mode(m) {
        for (auto& [p, x] : finite) {
            if (!is_prime(p)) throw PreconditionError("support keys must be prime");
            if (mode == Mode::Idele && x == 0)
                throw PreconditionError("idele components must be nonzero");
        }
        if (mode == Mode::Idele && inf == 0)
            throw PreconditionError("idele archimedean component must be nonzero");
    }

    // Standard embedding of x in Q^x: every component equals x. Stored
    // support: the primes where x is not a unit.
    static RestrictedElement diagonal(const Rat& x) {
        if (x == 0) throw PreconditionError("diagonal embedding of zero is not an idele");
        std::map<Int, Rat> support;
        for (auto& [p, e] : factorize(num(x))) support[p] = x;
        for (auto& [p, e] : factorize(den(x))) support[p] = x;
        return RestrictedElement(x, std::move(support));
    }

    Rat component(const Int& p) const {
        auto it = finite.find(p);
        return it == finite.end() ? Rat(1) : it->second;
    }

    friend RestrictedElement operator*(const RestrictedElement& a, const RestrictedElement& b) {
        if (a.mode != b.mode) throw ShapeMismatch("mixing adele and idele modes");
        std::map<Int, Rat> support = a.finite;
        for (auto& [p, x] : b.finite) {
            auto it = support.find(p);
            if (it == support.end())
                support[p] = x;
            else
                it->second *= x;
        }
        return RestrictedElement(a.inf * b.inf, std::move(support), a.mode);
    }
};

// |g|_A = prod_v |g_v|_v, a finite product; exact.
inline Rat idele_norm(const RestrictedElement& g) {
    if (g.mode != RestrictedElement::Mode::Idele) throw PreconditionError("idele mode required");
    Rat norm = g.inf < 0 ? -g.inf : g.inf;
    for (auto& [p, x] : g.finite) norm *= pow_rat(Rat(p), -val_p(x, p));
    return norm;
}

// --- characters ---------------------------------------------------------

// Finite-order character of Z_p^x factoring through (Z/p^k)^x, given by
// rotation numbers against fixed generators (a primitive root for odd p;
// -1 and 5 for p = 2). The value on u is exp(2 pi i <rotations, dlog(u)>).
struct UnitCharacter {
    long k = 1;
    Rat rotation = 0;      // against the primitive root (odd p) or 5 (p = 2)
    Rat sign_rotation = 0; // p = 2 only: against -1
};

struct LocalCharacterAtom {
    std::complex<double> s = 0.0; // |.|_v^s
    Rat unram_rotation = 0;       // x -> exp(2 pi i rot v(x)): finite order, unramified
    std::optional<UnitCharacter> unit;
    int sign_exponent = 0; // infinite place only: sgn(x)^e
};

/**
 * Characters of the idele group of the supported shape: a complex power of
 * the adelic norm times finite-order data at finitely many places. Products
 * of characters concatenate their local atom lists.
 */
struct ProductCharacter {
    std::complex<double> norm_power = 0.0; // |.|_A^s
    std::map<Place, std::vector<LocalCharacterAtom>> local;

    static ProductCharacter norm_character(std::complex<double> s) {
        ProductCharacter chi;
        chi.norm_power = s;
        return chi;
    }
    static ProductCharacter trivial() { return ProductCharacter{}; }

    bool ramified_at(const Int& p) const {
        auto it = local.find(Place::finite(p));
        if (it == local.end()) return false;
        for (const auto& atom : it->second)
            if (atom.unit.has_value()) return true;
        return false;
    }

    friend ProductCharacter operator*(const ProductCharacter& a, const ProductCharacter& b) {
        ProductCharacter r = a;
        r.norm_power += b.norm_power;
        for (auto& [v, atoms] : b.local) {
            auto& dst = r.local[v];
            dst.insert(dst.end(), atoms.begin(), atoms.end());
        }
        return r;
    }
};

namespace detail {

inline long dlog(const Int& base, const Int& target, const Int& modulus, long order) {
    Int acc = 1;
    for (long t = 0; t < order; ++t) {
        if (acc == mod_floor(target, modulus)) return t;
        acc = acc * base % modulus;
    }
    throw PreconditionError("discrete logarithm does not exist");
}

inline Int primitive_root_mod_pk(const Int& p, long k) {
    // smallest primitive root mod p, adjusted to stay primitive mod p^2
    Int g = 0;
    auto factors = factorize(p - 1);
    for (Int cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (auto& [q, e] : factors)
            if (mod_pow(cand, (p - 1) / q, p) == 1) ok = false;
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw InternalError("no primitive root found");
    if (k > 1 && mod_pow(g, p - 1, p * p) == 1) g += p;
    return g;
}

inline std::complex<double> rotate(const Rat& turns) {
    double t = 2.0 * M_PI * static_cast<double>(turns);
    return {std::cos(t), std::sin(t)};
}

inline std::complex<double> unit_character_value(const Int& p, const UnitCharacter& uc,
                                                 const Rat& unit) {
    Int pk = pow_int(p, uc.k);
    if (pk > 1000000) throw PreconditionError("unit character modulus too large");
    Int u = mod_reduce(unit, p, pk);
    if (p == 2) {
        if (uc.k <= 1) return 1.0;
        long eps = 0;
        Int v = u;
        if (mod_floor(v, 4) == 3) {
            eps = 1;
            v = mod_floor(-v, pk);
        }
        long order5 = uc.k >= 3 ? to_ll(pow_int(2, uc.k - 2)) : 1;
        long t = dlog(5, v, pk, order5);
        return rotate(uc.sign_rotation * eps + uc.rotation * t);
    }
    Int g = primitive_root_mod_pk(p, uc.k);
    long order = to_ll(pow_int(p, uc.k - 1) * (p - 1));
    long t = dlog(g, u, pk, order);
    return rotate(uc.rotation * t);
}

inline std::complex<double> norm_power_value(const Rat& abs_norm, std::complex<double> s) {
    // |x|^s for positive rational |x|
    double ln = std::log(static_cast<double>(abs_norm));
    return std::exp(s * ln);
}

} // namespace detail

// chi_v(x) for a concrete rational component.
inline std::complex<double> evaluate_local(const ProductCharacter& chi, const Place& v,
                                           const Rat& x) {
    if (x == 0) throw PreconditionError("characters are defined on nonzero components");
    std::complex<double> acc = 1.0;
    if (v.infinite) {
        Rat ax = x < 0 ? -x : x;
        acc *= detail::norm_power_value(ax, chi.norm_power);
        auto it = chi.local.find(v);
        if (it != chi.local.end())
            for (const auto& atom : it->second) {
                acc *= detail::norm_power_value(ax, atom.s);
                if (atom.sign_exponent % 2 != 0 && x < 0) acc = -acc;
            }
        return acc;
    }
    long vp = val_p(x, v.p);
    Rat unit = x / pow_rat(Rat(v.p), vp);
    Rat norm = pow_rat(Rat(v.p), -vp);
    acc *= detail::norm_power_value(norm, chi.norm_power);
    auto it = chi.local.find(v);
    if (it != chi.local.end())
        for (const auto& atom : it->second) {
            acc *= detail::norm_power_value(norm, atom.s);
            acc *= detail::rotate(atom.unram_rotation * vp);
            if (atom.unit) acc *= detail::unit_character_value(v.p, *atom.unit, unit);
        }
    return acc;
}

// chi(g) = prod_v chi_v(g_v): a finite product over the archimedean place,
// the support of g, and the ramification of chi. A ramified chi_v meeting a
// defaulted component is an error: the component is an unspecified unit.
inline std::complex<double> evaluate_character(const ProductCharacter& chi,
                                               const RestrictedElement& g) {
    if (g.mode != RestrictedElement::Mode::Idele) throw PreconditionError("idele mode required");
    std::complex<double> acc = evaluate_local(chi, Place::inf(), g.inf);
    std::vector<Int> ps;
    for (auto& [p, x] : g.finite) ps.push_back(p);
    for (auto& [v, atoms] : chi.local)
        if (!v.infinite && g.finite.find(v.p) == g.finite.end()) {
            if (chi.ramified_at(v.p))
                throw RamifiedAtDefault("character ramified at " + v.p.str() +
                                        " but the component there is an unspecified unit");
            // unramified atoms see a unit: factor 1
        }
    for (const Int& p : ps) acc *= evaluate_local(chi, Place::finite(p), g.finite.at(p));
    return acc;
}

// --- factorizable integration -------------------------------------------

struct ArchTestFunction {
    Rat lo = 0, hi = 1, scale = 1; // scale * indicator of [lo, hi]
};

struct BallTerm {
    Rat center = 0;
    long k = 0; // ball center + p^k Z_p, volume p^{-k}
    Rat coeff = 1;
};

// Factorizable test function: an interval indicator at infinity, finite
// linear combinations of ball indicators at finitely many primes, and the
// indicator of Z_p everywhere else.
struct FactorizableFunction {
    ArchTestFunction arch;
    std::map<Int, std::vector<BallTerm>> finite;
};

// Product of local integrals under vol(Z_p) = 1, vol([0,1]) = 1.
inline Rat integrate_factorizable(const FactorizableFunction& f) {
    if (f.arch.hi < f.arch.lo) throw PreconditionError("empty interval bounds reversed");
    Rat total = f.arch.scale * (f.arch.hi - f.arch.lo);
    for (auto& [p, terms] : f.finite) {
        if (!is_prime(p)) throw PreconditionError("finite places must be prime");
        Rat local = 0;
        for (const BallTerm& t : terms) local += t.coeff * pow_rat(Rat(p), -t.k);
        total *= local;
    }
    return total;
}

// --- idele decomposition --------------------------------------------------

struct IdeleDecomposition {
    Rat r;                   // rational part, same sign and valuations as g
    Rat t;                   // positive archimedean scale
    std::map<Int, Rat> units; // unit components at the supported places
    Rat tail;                // unit value at every defaulted place
};

// A^x = Q^x x R_+^x x prod Z_p^x, concretely: r carries the sign and all
// valuations, t = g_inf / r, u = g / r componentwise.
inline IdeleDecomposition idele_decompose(const RestrictedElement& g) {
    if (g.mode != RestrictedElement::Mode::Idele) throw PreconditionError("idele mode required");
    IdeleDecomposition out;
    out.r = g.inf < 0 ? Rat(-1) : Rat(1);
    for (auto& [p, x] : g.finite) out.r *= pow_rat(Rat(p), val_p(x, p));
    out.t = g.inf / out.r;
    if (out.t <= 0) throw InternalError("archimedean part failed to come out positive");
    for (auto& [p, x] : g.finite) {
        Rat u = x / out.r;
        if (val_p(u, p) != 0) throw InternalError("unit part has nonzero valuation");
        out.units[p] = u;
    }
    out.tail = 1 / out.r;
    // the tail must be a unit at every defaulted place: its primes are all supported
    for (auto& [q, e] : factorize(num(out.tail)))
        if (g.finite.find(q) == g.finite.end())
            throw InternalError("tail unit fails valuation check");
    for (auto& [q, e] : factorize(den(out.tail)))
        if (g.finite.find(q) == g.finite.end())
            throw InternalError("tail unit fails valuation check");
    return out;
}

} // namespace jl

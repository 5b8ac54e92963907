#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/fp.hpp"
#include "core/poly.hpp"
#include "core/rational.hpp"

namespace jl {

// A place of Q: a finite prime or the archimedean place.
struct Place {
    bool infinite = false;
    Int p = 0;

    static Place inf() { return Place{true, 0}; }
    static Place finite(Int prime) {
        if (!is_prime(prime)) throw PreconditionError("place must be a prime or infinity");
        return Place{false, std::move(prime)};
    }
    std::string str() const { return infinite ? "inf" : p.str(); }
    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite == b.infinite && (a.infinite || a.p == b.p);
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return !a.infinite; // finite places first
        return a.p < b.p;
    }
};

struct NewtonSegment {
    Rat slope;   // common valuation of the attached roots
    long length; // number of roots attached
};

// Lower convex hull of {(i, v_p(a_i))}. Segments are listed with strictly
// increasing slope; their horizontal lengths sum to deg P.
struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices; // (coefficient index, valuation)
    std::vector<NewtonSegment> segments;
};

inline NewtonPolygon newton_polygon(const MonicPoly& P, const Int& p) {
    if (!is_prime(p)) throw PreconditionError("p must be prime");
    if (P.coeff(0) == 0) throw ZeroConstantTerm("Newton polygon requires P(0) != 0");
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i <= P.degree(); ++i) {
        Rat a = P.coeff(i);
        if (a == 0) continue;
        pts.emplace_back(i, val_p(a, p));
    }
    // Monotone chain, lower hull. Coordinates are exact integers.
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            Int cross = Int(b.first - a.first) * Int(pt.second - a.second) -
                        Int(b.second - a.second) * Int(pt.first - a.first);
            if (cross > 0) break; // strict left turn: b stays a hull vertex
            hull.pop_back();      // b on or above the chord a-pt
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    np.vertices = hull;
    // Root valuations increase when the hull is traversed from the leading
    // coefficient towards the constant term.
    for (size_t k = hull.size(); k >= 2; --k) {
        auto [il, vl] = hull[k - 2];
        auto [ir, vr] = hull[k - 1];
        np.segments.push_back(NewtonSegment{Rat(Int(vl - vr), Int(ir - il)), ir - il});
    }
    return np;
}

struct FactorShape {
    Place place;
    std::vector<long> degrees; // irreducible factor degrees, sorted descending
    bool certified = false;
};

// (ramification index, residue degree) per irreducible factor.
using EtaleInvariants = std::vector<std::pair<long, long>>;

namespace detail {

// Reduce a squarefree p-integral polynomial mod p and return it, or nothing
// if the reduction is not squarefree.
inline bool reduce_mod_p(const MonicPoly& P, const Int& p, FpPoly& out) {
    for (long i = 0; i <= P.degree(); ++i)
        if (den(P.coeff(i)) % p == 0) return false;
    FpPoly f(P.degree() + 1);
    for (long i = 0; i <= P.degree(); ++i)
        f[i] = static_cast<uint64_t>(mod_reduce(P.coeff(i), p, p));
    fp_trim(f);
    out = std::move(f);
    return true;
}

// Residual polynomial of one Newton segment, coefficients in F_p.
inline FpPoly residual_polynomial(const MonicPoly& P, const Int& p, long il, long vl, const Rat& slope,
                                  long length) {
    Int h = num(slope);
    Int e = den(slope);
    long m = length / to_ll(e);
    FpPoly R(m + 1, 0);
    for (long j = 0; j <= m; ++j) {
        long i = il + j * to_ll(e);
        Rat a = P.coeff(i);
        if (a == 0) continue;
        long w = vl - j * to_ll(h);
        long va = val_p(a, p);
        if (va < w) throw InternalError("coefficient below Newton polygon");
        if (va > w) continue; // strictly above the segment
        Rat scaled = a / pow_rat(Rat(p), w);
        R[j] = static_cast<uint64_t>(mod_reduce(scaled, p, p));
    }
    fp_trim(R);
    return R;
}

} // namespace detail

// Is x a square in Q_p? Exact: valuation parity plus a unit-square test.
inline bool is_square_in_qp(const Rat& x, const Int& p) {
    if (x == 0) return true;
    long v = val_p(x, p);
    if (v % 2 != 0) return false;
    Rat u = x / pow_rat(Rat(p), v);
    if (p == 2) return mod_reduce(u, 2, 8) == 1;
    return legendre(mod_reduce(u, p, p), p) == 1;
}

namespace detail {

// Degree-2 polynomials are always decidable: the splitting behaviour of
// X^2 + bX + c over Q_p is read off the discriminant exactly.
inline EtaleInvariants quadratic_invariants(const MonicPoly& P, const Int& p) {
    Rat b = P.coeff(1), c = P.coeff(0);
    Rat disc = b * b - 4 * c;
    if (disc == 0) throw NotSquarefree("repeated root");
    if (is_square_in_qp(disc, p)) return {{1, 1}, {1, 1}};
    long v = val_p(disc, p);
    if (v % 2 != 0) return {{2, 1}};
    Rat u = disc / pow_rat(Rat(p), v);
    if (p == 2) {
        Int u8 = mod_reduce(u, 2, 8);
        return u8 == 5 ? EtaleInvariants{{1, 2}} : EtaleInvariants{{2, 1}};
    }
    return {{1, 2}}; // odd p, non-residue unit: the unramified quadratic extension
}

} // namespace detail

// Irreducible factor degrees together with (e, f) data over Q_p.
// Certified regimes: (i) p-integral with squarefree reduction, (ii) degree 2
// via the discriminant, (iii) every Newton segment has a separable residual
// polynomial. Anything else throws Inconclusive rather than guessing.
inline EtaleInvariants etale_algebra_invariants(const MonicPoly& P, const Int& p) {
    if (!P.is_squarefree()) throw NotSquarefree("factor analysis requires a squarefree polynomial");
    if (P.coeff(0) == 0) throw ZeroConstantTerm("factor analysis requires P(0) != 0");
    uint64_t pl = static_cast<uint64_t>(p);
    EtaleInvariants inv;

    FpPoly reduced;
    if (detail::reduce_mod_p(P, p, reduced) && fp_deg(reduced) == P.degree() &&
        fp_poly_squarefree(reduced, pl)) {
        for (auto [d, cnt] : fp_distinct_degree_factor_degrees(reduced, pl))
            for (long c = 0; c < cnt; ++c) inv.emplace_back(1, d);
    } else if (P.degree() == 2) {
        inv = detail::quadratic_invariants(P, p);
    } else {
        NewtonPolygon np = newton_polygon(P, p);
        size_t seg_idx = 0;
        // vertices run from index 0 up; segments were emitted leading-first
        for (size_t k = np.vertices.size(); k >= 2; --k, ++seg_idx) {
            auto [il, vl] = np.vertices[k - 2];
            const NewtonSegment& seg = np.segments[seg_idx];
            long e = to_ll(den(seg.slope));
            FpPoly R = detail::residual_polynomial(P, p, il, vl, seg.slope, seg.length);
            if (fp_deg(R) != seg.length / e)
                throw InternalError("residual polynomial has wrong degree");
            if (fp_deg(R) >= 1 && !fp_poly_squarefree(R, pl))
                throw Inconclusive("irregular case: residual polynomial of slope " +
                                   rat_str(seg.slope) + " is inseparable over F_" + p.str());
            if (fp_deg(R) == 0) continue;
            for (auto [f, cnt] : fp_distinct_degree_factor_degrees(R, pl))
                for (long c = 0; c < cnt; ++c) inv.emplace_back(e, f);
        }
    }
    std::sort(inv.begin(), inv.end());
    long total = 0;
    for (auto [e, f] : inv) total += e * f;
    if (total != P.degree()) throw InternalError("etale invariants do not sum to the degree");
    return inv;
}

inline FactorShape factor_degrees(const MonicPoly& P, const Place& place) {
    if (!P.is_squarefree()) throw NotSquarefree("factor analysis requires a squarefree polynomial");
    FactorShape shape;
    shape.place = place;
    if (place.infinite) {
        int real_roots = count_real_roots(P.poly());
        long complex_pairs = (P.degree() - real_roots) / 2;
        shape.degrees.assign(complex_pairs, 2);
        shape.degrees.insert(shape.degrees.end(), real_roots, 1);
        shape.certified = true;
    } else {
        EtaleInvariants inv = etale_algebra_invariants(P, place.p);
        for (auto [e, f] : inv) shape.degrees.push_back(e * f);
        shape.certified = true;
    }
    std::sort(shape.degrees.begin(), shape.degrees.end(), std::greater<long>());
    long total = 0;
    for (long d : shape.degrees) total += d;
    if (total != P.degree()) throw InternalError("factor degrees do not sum to the degree");
    return shape;
}

// u-compatibility: every irreducible factor degree (equivalently, the degree
// of every divisor) is divisible by u.
inline bool is_u_compatible(const MonicPoly& P, long u, const Place& place) {
    if (u < 1) throw PreconditionError("u must be a positive integer");
    if (u == 1) return true;
    FactorShape shape = factor_degrees(P, place);
    for (long d : shape.degrees)
        if (d % u != 0) return false;
    return true;
}

} // namespace jl

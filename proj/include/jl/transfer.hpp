#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "core/error.hpp"
#include "core/matrix.hpp"
#include "core/poly.hpp"
#include "localpoly.hpp"
#include "quatcsa.hpp"

namespace jl {

/**
 * Transfer of regular semisimple conjugacy classes between GL_{nd}(F_v) and
 * GL_n(D_v). A class is its characteristic polynomial; the transfer criterion
 * is d_v-compatibility of that polynomial.
 */
struct ConjClassTag {
    MonicPoly poly;
    // ambient group: n blocks over an algebra of degree d, or m = nd over the
    // field itself (n = m, d = 1)
    long ambient_n;
    long ambient_d;

    explicit ConjClassTag(MonicPoly P, long n = 0, long d = 1)
        : poly(std::move(P)), ambient_n(n == 0 ? poly.degree() : n), ambient_d(d) {
        if (!poly.is_squarefree())
            throw NotRegularSemisimple("class tag requires a squarefree polynomial");
        if (poly.coeff(0) == 0) throw NotInvertible("class tag requires P(0) != 0");
        if (ambient_n * ambient_d != poly.degree())
            throw DegreeMismatch("ambient shape must satisfy n * d = deg P");
    }
    long m() const { return poly.degree(); }
};

// Ordered block sizes of a standard Levi subgroup.
struct LeviShape {
    std::vector<long> sizes;

    explicit LeviShape(std::vector<long> s) : sizes(std::move(s)) {
        for (long v : sizes)
            if (v < 1) throw PreconditionError("Levi block sizes must be >= 1");
    }
    long total() const {
        long t = 0;
        for (long v : sizes) t += v;
        return t;
    }
    friend bool operator==(const LeviShape& x, const LeviShape& y) { return x.sizes == y.sizes; }
};

enum class LeviDirection { GtoGprime, GprimeToG };

// Conjugacy class of an exact rational matrix; rejects non-regular-semisimple
// and non-invertible input.
inline ConjClassTag class_of_matrix(const Matrix<Rat>& g) {
    RatPoly cp = char_poly(g);
    if (!cp.is_squarefree())
        throw NotRegularSemisimple("characteristic polynomial has repeated roots");
    if (cp.coeff(0) == 0) throw NotInvertible("matrix is not invertible");
    return ConjClassTag(MonicPoly(cp));
}

// Does the class transfer to GL_{deg/d_v}(D_v)? True iff every irreducible
// factor degree of the polynomial is divisible by d_v.
inline bool local_transferable(const ConjClassTag& tag, long d_v, const Place& place) {
    if (d_v < 1) throw PreconditionError("d_v must be >= 1");
    if (tag.poly.degree() % d_v != 0)
        throw DegreeMismatch("polynomial degree not divisible by d_v");
    if (d_v == 1) return true;
    return is_u_compatible(tag.poly, d_v, place);
}

// The partition (n_1,...,n_k) with d*n_i the irreducible factor degrees;
// sorted descending so outputs are comparable.
inline LeviShape corresponding_block_shape(const ConjClassTag& tag, long d, const Place& place) {
    if (!local_transferable(tag, d, place))
        throw NotTransferable("class does not correspond to any class over the division algebra");
    FactorShape shape = factor_degrees(tag.poly, place);
    std::vector<long> sizes;
    for (long deg : shape.degrees) sizes.push_back(deg / d);
    std::sort(sizes.begin(), sizes.end(), std::greater<long>());
    return LeviShape(std::move(sizes));
}

// Companion matrix with characteristic polynomial exactly P. For
// P = X^2 - uX + v this is rows (0, -v), (1, u).
inline Matrix<Rat> companion_of(const MonicPoly& P) {
    long m = P.degree();
    Matrix<Rat> C(m, m);
    for (long i = 0; i + 1 < m; ++i) C(i + 1, i) = 1;
    for (long i = 0; i < m; ++i) C(i, m - 1) = -P.coeff(i);
    return C;
}

// Levi index map: blocks scale by d_v one way; the other way they must all
// be divisible by d_v or the Levi corresponds to nothing.
inline std::optional<LeviShape> levi_correspondence(const LeviShape& shape, long d_v,
                                                    LeviDirection direction) {
    if (d_v < 1) throw PreconditionError("d_v must be >= 1");
    std::vector<long> out;
    if (direction == LeviDirection::GprimeToG) {
        for (long s : shape.sizes) out.push_back(s * d_v);
        return LeviShape(std::move(out));
    }
    for (long s : shape.sizes) {
        if (s % d_v != 0) return std::nullopt;
        out.push_back(s / d_v);
    }
    return LeviShape(std::move(out));
}

// A central simple algebra over Q, described by its degree and the places
// where the local component stays division. Splitting at infinity is the
// standing assumption for the global machinery.
struct GlobalAlgebra {
    long d;
    std::vector<std::pair<Place, long>> local_degrees; // (ramified place, d_v)

    GlobalAlgebra(long degree, std::vector<std::pair<Place, long>> ram)
        : d(degree), local_degrees(std::move(ram)) {
        if (d < 1) throw PreconditionError("degree must be >= 1");
        for (auto& [v, dv] : local_degrees) {
            if (v.infinite)
                throw PreconditionError("ramification at infinity is excluded");
            if (dv < 2 || d % dv != 0)
                throw PreconditionError("local degree must divide d and exceed 1 on the ramification set");
        }
        if (d == 2 && local_degrees.size() % 2 != 0)
            throw PreconditionError("quaternion ramification sets have even cardinality");
    }

    // The quaternion case: d = 2, d_v = 2 exactly on Ram(D).
    static GlobalAlgebra from_quaternion(const QuaternionAlgebra& D) {
        RamificationSet ram = ramified_places(D);
        if (ram.infinite)
            throw PreconditionError("algebra must split at the infinite place");
        std::vector<std::pair<Place, long>> local;
        for (const Int& p : ram.primes) local.emplace_back(Place::finite(p), 2);
        return GlobalAlgebra(2, std::move(local));
    }

    static GlobalAlgebra split_algebra() { return GlobalAlgebra(1, {}); }
};

struct PlaceVerdict {
    Place place;
    std::vector<long> degrees;
    bool compatible;
};

struct TransferReport {
    bool transferable;
    bool certified_converse; // existence of a global class is claimed only for d <= 2
    std::vector<PlaceVerdict> verdicts;
};

// Global transferability: the class corresponds locally at every ramified
// place. Per-place factor degrees and verdicts are reported.
inline TransferReport global_transferable(const ConjClassTag& tag, const GlobalAlgebra& D) {
    if (tag.poly.degree() % D.d != 0)
        throw DegreeMismatch("polynomial degree not divisible by the algebra degree");
    TransferReport report;
    report.transferable = true;
    report.certified_converse = D.d <= 2;
    for (const auto& [v, dv] : D.local_degrees) {
        PlaceVerdict verdict;
        verdict.place = v;
        verdict.degrees = factor_degrees(tag.poly, v).degrees;
        verdict.compatible = true;
        for (long deg : verdict.degrees)
            if (deg % dv != 0) verdict.compatible = false;
        report.transferable = report.transferable && verdict.compatible;
        report.verdicts.push_back(std::move(verdict));
    }
    return report;
}

} // namespace jl

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "error.hpp"

namespace jl {

// Arithmetic mod a word-sized prime.
inline uint64_t fp_add(uint64_t a, uint64_t b, uint64_t p) { return (a + b) % p; }
inline uint64_t fp_sub(uint64_t a, uint64_t b, uint64_t p) { return (a + p - b % p) % p; }
inline uint64_t fp_mul(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((__uint128_t)a * b % p);
}
inline uint64_t fp_pow(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t fp_inv(uint64_t a, uint64_t p) {
    if (a % p == 0) throw PreconditionError("inverse of 0 mod p");
    return fp_pow(a, p - 2, p);
}

// Dense polynomial over F_p, constant term first, trimmed.
using FpPoly = std::vector<uint64_t>;

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline long fp_deg(const FpPoly& f) { return static_cast<long>(f.size()) - 1; }

inline FpPoly fp_poly_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + fp_mul(a[i], b[j], p)) % p;
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_poly_rem(FpPoly a, const FpPoly& b, uint64_t p) {
    if (b.empty()) throw PreconditionError("polynomial remainder by zero");
    fp_trim(a);
    long db = fp_deg(b);
    uint64_t lead_inv = fp_inv(b.back(), p);
    while (fp_deg(a) >= db) {
        long da = fp_deg(a);
        uint64_t q = fp_mul(a.back(), lead_inv, p);
        for (long j = 0; j <= db; ++j) a[da - db + j] = fp_sub(a[da - db + j], fp_mul(q, b[j], p), p);
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_poly_gcd(FpPoly a, FpPoly b, uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t inv = fp_inv(a.back(), p);
        for (auto& c : a) c = fp_mul(c, inv, p);
    }
    return a;
}

inline FpPoly fp_poly_derivative(const FpPoly& f, uint64_t p) {
    if (f.size() <= 1) return {};
    FpPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = fp_mul(f[i], i % p, p);
    fp_trim(r);
    return r;
}

inline bool fp_poly_squarefree(const FpPoly& f, uint64_t p) {
    FpPoly g = fp_poly_gcd(f, fp_poly_derivative(f, p), p);
    return fp_deg(g) == 0;
}

inline FpPoly fp_poly_powmod(FpPoly base, uint64_t e, const FpPoly& mod, uint64_t p) {
    FpPoly r{1};
    base = fp_poly_rem(std::move(base), mod, p);
    while (e) {
        if (e & 1) r = fp_poly_rem(fp_poly_mul(r, base, p), mod, p);
        base = fp_poly_rem(fp_poly_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

inline std::pair<FpPoly, FpPoly> fp_poly_divrem(FpPoly a, const FpPoly& b, uint64_t p) {
    fp_trim(a);
    long db = fp_deg(b);
    if (fp_deg(a) < db) return {{}, a};
    FpPoly q(fp_deg(a) - db + 1, 0);
    uint64_t lead_inv = fp_inv(b.back(), p);
    while (fp_deg(a) >= db) {
        long da = fp_deg(a);
        uint64_t c = fp_mul(a.back(), lead_inv, p);
        q[da - db] = c;
        for (long j = 0; j <= db; ++j) a[da - db + j] = fp_sub(a[da - db + j], fp_mul(c, b[j], p), p);
        fp_trim(a);
    }
    return {q, a};
}

// Irreducible factor degrees of a squarefree polynomial over F_p, via
// distinct-degree splitting with Frobenius powers. Only the degree multiset
// is needed anywhere, so no equal-degree splitting is performed.
inline std::map<long, long> fp_distinct_degree_factor_degrees(FpPoly f, uint64_t p) {
    fp_trim(f);
    if (fp_deg(f) < 1) throw PreconditionError("degree >= 1 required");
    if (!fp_poly_squarefree(f, p)) throw NotSquarefree("polynomial not squarefree over F_p");
    std::map<long, long> counts;
    FpPoly x{0, 1};
    FpPoly frob = fp_poly_powmod(x, p, f, p); // X^p mod f
    FpPoly h = frob;
    long d = 1;
    while (fp_deg(f) >= 2 * d) {
        FpPoly diff = h;
        // h - X
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = fp_sub(diff[1], 1, p);
        fp_trim(diff);
        FpPoly g = diff.empty() ? f : fp_poly_gcd(f, diff, p);
        if (fp_deg(g) > 0) {
            if (fp_deg(g) % d != 0) throw InternalError("distinct-degree split misaligned");
            counts[d] += fp_deg(g) / d;
            f = fp_poly_divrem(f, g, p).first;
            if (fp_deg(f) < 1) break;
            h = fp_poly_rem(h, f, p);
        }
        ++d;
        if (fp_deg(f) >= 2 * d) h = fp_poly_powmod(h, p, f, p);
    }
    if (fp_deg(f) >= 1) counts[fp_deg(f)] += 1;
    return counts;
}

// ----- Linear algebra over F_p (used by the character-table computation).

using FpMatrix = std::vector<std::vector<uint64_t>>;

inline FpMatrix fp_mat_mul(const FpMatrix& a, const FpMatrix& b, uint64_t p) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    FpMatrix r(n, std::vector<uint64_t>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] = (r[i][j] + fp_mul(a[i][t], b[t][j], p)) % p;
        }
    return r;
}

inline std::vector<uint64_t> fp_mat_apply(const FpMatrix& a, const std::vector<uint64_t>& v,
                                          uint64_t p) {
    size_t n = a.size();
    std::vector<uint64_t> r(n, 0);
    for (size_t i = 0; i < n; ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < v.size(); ++j) acc = (acc + fp_mul(a[i][j], v[j], p)) % p;
        r[i] = acc;
    }
    return r;
}

// Row-reduce in place; returns pivot column per row.
inline std::vector<size_t> fp_rref(FpMatrix& m, uint64_t p) {
    std::vector<size_t> pivots;
    size_t rows = m.size();
    if (rows == 0) return pivots;
    size_t cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        uint64_t inv = fp_inv(m[r][c], p);
        for (size_t j = c; j < cols; ++j) m[r][j] = fp_mul(m[r][j], inv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            uint64_t f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = fp_sub(m[i][j], fp_mul(f, m[r][j], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size());
    return pivots;
}

// Basis of the nullspace of m (rows are basis vectors of the solution space).
inline FpMatrix fp_nullspace(FpMatrix m, size_t cols, uint64_t p) {
    auto pivots = fp_rref(m, p);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    FpMatrix basis;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint64_t> v(cols, 0);
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = fp_sub(0, m[r][c], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve A x = b for consistent square-ish systems; A given by rows.
inline std::vector<uint64_t> fp_solve(FpMatrix a, std::vector<uint64_t> b, uint64_t p) {
    size_t rows = a.size(), cols = a[0].size();
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i] % p);
    auto pivots = fp_rref(a, p);
    std::vector<uint64_t> x(cols, 0);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) throw InternalError("inconsistent linear system over F_p");
        x[pivots[r]] = a[r][cols];
    }
    return x;
}

} // namespace jl

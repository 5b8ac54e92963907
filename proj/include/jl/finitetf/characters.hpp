#pragma once

#include <memory>
#include <vector>

#include "../core/cyclotomic.hpp"
#include "../core/fp.hpp"
#include "group.hpp"

namespace jl {

/**
 * Exact complex character table, computed Dixon-style: simultaneous
 * eigenvectors of the class-sum matrices over a prime field F_l with
 * l = 1 (mod exponent), then discrete-Fourier lifting of the eigenvalue
 * multiplicities back to exact cyclotomic integers.
 */
struct CharacterTable {
    std::shared_ptr<const CycField> F; // values live in Q(zeta_{F->order()})
    std::vector<long> degrees;
    std::vector<std::vector<Cyc>> values; // values[t][class index]
};

namespace detail {

inline FpPoly fp_char_poly(const FpMatrix& A, uint64_t l) {
    // Faddeev-LeVerrier mod l; valid because l exceeds the dimension.
    size_t n = A.size();
    FpPoly c(n + 1, 0);
    c[n] = 1;
    FpMatrix M(n, std::vector<uint64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) M[i][i] = 1;
    for (size_t k = 1; k <= n; ++k) {
        FpMatrix AM = fp_mat_mul(A, M, l);
        uint64_t tr = 0;
        for (size_t i = 0; i < n; ++i) tr = (tr + AM[i][i]) % l;
        uint64_t ck = fp_mul(fp_sub(0, tr, l), fp_inv(k % l, l), l);
        c[n - k] = ck;
        if (k < n) {
            M = AM;
            for (size_t i = 0; i < n; ++i) M[i][i] = fp_add(M[i][i], ck, l);
        }
    }
    return c;
}

inline uint64_t fp_primitive_root(uint64_t l) {
    auto factors = factorize(Int(l - 1));
    for (uint64_t g = 2; g < l; ++g) {
        bool ok = true;
        for (auto& [q, e] : factors)
            if (fp_pow(g, (l - 1) / static_cast<uint64_t>(to_ll(q)), l) == 1) ok = false;
        if (ok) return g;
    }
    throw InternalError("no primitive root found");
}

} // namespace detail

// F must have order divisible by exponent(G).
inline CharacterTable character_table(const FiniteGroup& G,
                                      std::shared_ptr<const CycField> F) {
    const auto& classes = G.conjugacy_classes();
    const size_t k = classes.size();
    const long e = G.exponent();
    if (F->order() % e != 0)
        throw PreconditionError("cyclotomic field order must be divisible by the group exponent");

    // Dixon prime: l = 1 mod e, l > 2 sqrt(|G|), l > k (for exact divisions).
    uint64_t l = 0;
    for (uint64_t cand = static_cast<uint64_t>(e) + 1;; cand += static_cast<uint64_t>(e)) {
        if (!is_prime(Int(cand))) continue;
        if (cand * cand <= 4 * static_cast<uint64_t>(G.size())) continue;
        if (cand <= k + 1) continue;
        l = cand;
        break;
    }

    // class-sum structure constants: B_i[j][t] = #{x in C_i : x^{-1} z_t in C_j}
    std::vector<FpMatrix> B(k, FpMatrix(k, std::vector<uint64_t>(k, 0)));
    for (size_t t = 0; t < k; ++t) {
        int zt = classes[t][0];
        for (size_t i = 0; i < k; ++i)
            for (int x : classes[i]) {
                int j = G.class_of(G.mul(G.inv(x), zt));
                B[i][j][t] = (B[i][j][t] + 1) % l;
            }
    }

    // refine simultaneous eigenspaces
    std::vector<FpMatrix> spaces;
    {
        FpMatrix full(k, std::vector<uint64_t>(k, 0));
        for (size_t i = 0; i < k; ++i) full[i][i] = 1;
        spaces.push_back(full);
    }
    for (size_t i = 0; i < k; ++i) {
        std::vector<FpMatrix> next;
        for (FpMatrix& S : spaces) {
            size_t r = S.size();
            if (r == 1) {
                next.push_back(S);
                continue;
            }
            // restriction of B_i to the (invariant) span of S
            FpMatrix basis_t(k, std::vector<uint64_t>(r, 0));
            for (size_t a = 0; a < r; ++a)
                for (size_t c = 0; c < k; ++c) basis_t[c][a] = S[a][c];
            FpMatrix R(r, std::vector<uint64_t>(r, 0));
            for (size_t a = 0; a < r; ++a) {
                std::vector<uint64_t> img = fp_mat_apply(B[i], S[a], l);
                std::vector<uint64_t> coords = fp_solve(basis_t, img, l);
                for (size_t b = 0; b < r; ++b) R[b][a] = coords[b];
            }
            FpPoly cp = detail::fp_char_poly(R, l);
            for (uint64_t lambda = 0; lambda < l; ++lambda) {
                uint64_t val = 0;
                for (size_t d = cp.size(); d-- > 0;) val = (fp_mul(val, lambda, l) + cp[d]) % l;
                if (val != 0) continue;
                FpMatrix shifted = R;
                for (size_t d = 0; d < r; ++d) shifted[d][d] = fp_sub(shifted[d][d], lambda, l);
                FpMatrix null = fp_nullspace(shifted, r, l);
                if (null.empty()) continue;
                FpMatrix sub;
                for (auto& coords : null) {
                    std::vector<uint64_t> vec(k, 0);
                    for (size_t b = 0; b < r; ++b)
                        for (size_t c = 0; c < k; ++c)
                            vec[c] = (vec[c] + fp_mul(coords[b], S[b][c], l)) % l;
                    sub.push_back(std::move(vec));
                }
                next.push_back(std::move(sub));
            }
        }
        spaces = std::move(next);
        bool all_one = true;
        for (auto& S : spaces) all_one = all_one && S.size() == 1;
        if (all_one) break;
    }
    if (spaces.size() != k) throw InternalError("class algebra eigenspaces did not split");

    size_t id_class = static_cast<size_t>(G.class_of(G.id()));
    std::vector<size_t> inv_class(k);
    for (size_t j = 0; j < k; ++j)
        inv_class[j] = static_cast<size_t>(G.class_of(G.inv(classes[j][0])));

    uint64_t g0 = detail::fp_primitive_root(l);
    uint64_t z = fp_pow(g0, (l - 1) / static_cast<uint64_t>(e), l); // order e
    uint64_t inv_e = fp_inv(static_cast<uint64_t>(e) % l, l);

    // power map on classes: class of rep^t
    std::vector<std::vector<size_t>> power_class(k, std::vector<size_t>(e));
    for (size_t j = 0; j < k; ++j)
        for (long t = 0; t < e; ++t)
            power_class[j][t] = static_cast<size_t>(G.class_of(G.power(classes[j][0], t)));

    CharacterTable table;
    table.F = F;
    long step = F->order() / e;

    for (const FpMatrix& S : spaces) {
        const std::vector<uint64_t>& v = S[0];
        if (v[id_class] == 0) throw InternalError("central character vanishes on the identity");
        uint64_t scale = fp_inv(v[id_class], l);
        std::vector<uint64_t> omega(k);
        for (size_t j = 0; j < k; ++j) omega[j] = fp_mul(v[j], scale, l);
        // degree: d^2 = |G| / sum_j omega_j omega_{j*} / |C_j|
        uint64_t s = 0;
        for (size_t j = 0; j < k; ++j) {
            uint64_t term = fp_mul(omega[j], omega[inv_class[j]], l);
            term = fp_mul(term, fp_inv(classes[j].size() % l, l), l);
            s = fp_add(s, term, l);
        }
        uint64_t d2 = fp_mul(static_cast<uint64_t>(G.size()) % l, fp_inv(s, l), l);
        uint64_t d = 0;
        for (uint64_t t = 1; t < l; ++t)
            if (fp_mul(t, t, l) == d2 && t < l - t) {
                d = t;
                break;
            }
        if (d == 0) {
            // degree could equal l - t with t > l/2 only if 2d > l, excluded by l > 2 sqrt|G|
            throw InternalError("character degree is not a small square root");
        }
        // character values mod l
        std::vector<uint64_t> chi(k);
        for (size_t j = 0; j < k; ++j)
            chi[j] = fp_mul(fp_mul(d, omega[j], l), fp_inv(classes[j].size() % l, l), l);
        // lift via the Fourier inversion on eigenvalue multiplicities
        std::vector<Cyc> row;
        for (size_t j = 0; j < k; ++j) {
            Cyc value(F);
            for (long m = 0; m < e; ++m) {
                uint64_t acc = 0;
                for (long t = 0; t < e; ++t) {
                    uint64_t zpow = fp_pow(z, static_cast<uint64_t>(
                                                  ((-m * t) % e + e) % e), l);
                    acc = fp_add(acc, fp_mul(chi[power_class[j][t]], zpow, l), l);
                }
                acc = fp_mul(acc, inv_e, l);
                if (acc != 0) {
                    if (acc > static_cast<uint64_t>(G.size()))
                        throw InternalError("eigenvalue multiplicity out of range");
                    value = value + Rat(acc) * Cyc::root_of_unity(F, m * step);
                }
            }
            row.push_back(value);
        }
        if (!(row[id_class] == Cyc(F, Rat(d))))
            throw InternalError("lifted character degree mismatch");
        table.degrees.push_back(static_cast<long>(d));
        table.values.push_back(std::move(row));
    }

    // first orthogonality, exact: (1/|G|) sum_j |C_j| chi_a(j) conj(chi_b(j))
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            Cyc acc(F);
            for (size_t j = 0; j < k; ++j)
                acc = acc + Rat(classes[j].size()) *
                                (table.values[a][j] * table.values[b][j].conj());
            acc = acc / Rat(G.size());
            if (!(acc == Cyc(F, a == b ? Rat(1) : Rat(0))))
                throw InternalError("character table fails orthogonality");
        }
    return table;
}

} // namespace jl

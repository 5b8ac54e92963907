#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "../core/error.hpp"
#include "../core/rational.hpp"

namespace jl {

// A finite group given by its multiplication table. Elements are indices
// 0..n-1. Tables may be entered directly or generated from permutations.
class FiniteGroup {
public:
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                  bool check_associativity = true) {
        FiniteGroup G;
        G.n_ = static_cast<long>(table.size());
        if (G.n_ == 0) throw PreconditionError("empty multiplication table");
        G.table_.assign(G.n_ * G.n_, -1);
        for (long i = 0; i < G.n_; ++i) {
            if (static_cast<long>(table[i].size()) != G.n_)
                throw PreconditionError("multiplication table must be square");
            for (long j = 0; j < G.n_; ++j) {
                int v = table[i][j];
                if (v < 0 || v >= G.n_) throw PreconditionError("table entry out of range");
                G.table_[i * G.n_ + j] = v;
            }
        }
        G.finish(check_associativity);
        return G;
    }

    // Generate from permutations of {0,...,m-1}; elements are discovered in
    // breadth-first order from the identity, which fixes the indexing.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens) {
        if (gens.empty()) throw PreconditionError("at least one generator required");
        size_t m = gens[0].size();
        for (const auto& g : gens) {
            if (g.size() != m) throw PreconditionError("generators act on different sets");
            std::vector<bool> seen(m, false);
            for (int v : g) {
                if (v < 0 || static_cast<size_t>(v) >= m || seen[v])
                    throw PreconditionError("generator is not a permutation");
                seen[v] = true;
            }
        }
        std::vector<int> identity(m);
        std::iota(identity.begin(), identity.end(), 0);
        std::map<std::vector<int>, int> index;
        std::vector<std::vector<int>> elems;
        auto intern = [&](const std::vector<int>& p) {
            auto it = index.find(p);
            if (it != index.end()) return std::pair<int, bool>{it->second, false};
            int id = static_cast<int>(elems.size());
            index[p] = id;
            elems.push_back(p);
            return std::pair<int, bool>{id, true};
        };
        intern(identity);
        std::queue<int> todo;
        todo.push(0);
        while (!todo.empty()) {
            int cur = todo.front();
            todo.pop();
            for (const auto& g : gens) {
                std::vector<int> prod(m);
                for (size_t x = 0; x < m; ++x) prod[x] = elems[cur][g[x]]; // cur after g
                auto [id, fresh] = intern(prod);
                if (fresh) todo.push(id);
                if (elems.size() > 4096) throw PreconditionError("generated group too large");
            }
        }
        FiniteGroup G;
        G.n_ = static_cast<long>(elems.size());
        G.table_.assign(G.n_ * G.n_, -1);
        for (long a = 0; a < G.n_; ++a)
            for (long b = 0; b < G.n_; ++b) {
                std::vector<int> prod(m);
                for (size_t x = 0; x < m; ++x) prod[x] = elems[a][elems[b][x]];
                G.table_[a * G.n_ + b] = index.at(prod);
            }
        G.finish(false); // associativity holds for permutation composition
        return G;
    }

    long size() const { return n_; }
    int id() const { return id_; }
    int mul(int a, int b) const { return table_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1

    int power(int g, long k) const {
        long o = order(g);
        k %= o;
        if (k < 0) k += o;
        int acc = id_;
        for (long t = 0; t < k; ++t) acc = mul(acc, g);
        return acc;
    }

    long order(int g) const { return order_[g]; }
    long exponent() const {
        Int e = 1;
        for (long g = 0; g < n_; ++g) e = lcm_int(e, Int(order_[g]));
        return to_ll(e);
    }

    bool is_central(int g) const {
        for (long x = 0; x < n_; ++x)
            if (mul(g, static_cast<int>(x)) != mul(static_cast<int>(x), g)) return false;
        return true;
    }

    std::vector<int> subgroup_closure(std::vector<int> gens) const {
        std::vector<bool> in(n_, false);
        in[id_] = true;
        std::vector<int> members{id_};
        std::queue<int> todo;
        for (int g : gens) {
            if (g < 0 || g >= n_) throw PreconditionError("generator index out of range");
            if (!in[g]) {
                in[g] = true;
                members.push_back(g);
                todo.push(g);
            }
        }
        while (!todo.empty()) {
            int g = todo.front();
            todo.pop();
            std::vector<int> snapshot = members;
            for (int h : snapshot) {
                for (int p : {mul(g, h), mul(h, g), inv(g)}) {
                    if (!in[p]) {
                        in[p] = true;
                        members.push_back(p);
                        todo.push(p);
                    }
                }
            }
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    std::vector<int> centralizer(int g) const {
        std::vector<int> out;
        for (long x = 0; x < n_; ++x)
            if (mul(static_cast<int>(x), g) == mul(g, static_cast<int>(x)))
                out.push_back(static_cast<int>(x));
        return out;
    }

    const std::vector<std::vector<int>>& conjugacy_classes() const { return classes_; }
    int class_of(int g) const { return class_of_[g]; }

private:
    void finish(bool check_associativity) {
        // identity
        id_ = -1;
        for (long e = 0; e < n_; ++e) {
            bool ok = true;
            for (long x = 0; x < n_; ++x)
                if (mul(static_cast<int>(e), static_cast<int>(x)) != x ||
                    mul(static_cast<int>(x), static_cast<int>(e)) != x)
                    ok = false;
            if (ok) {
                id_ = static_cast<int>(e);
                break;
            }
        }
        if (id_ < 0) throw PreconditionError("table has no identity element");
        // inverses
        inv_.assign(n_, -1);
        for (long a = 0; a < n_; ++a) {
            for (long b = 0; b < n_; ++b)
                if (mul(static_cast<int>(a), static_cast<int>(b)) == id_ &&
                    mul(static_cast<int>(b), static_cast<int>(a)) == id_)
                    inv_[a] = static_cast<int>(b);
            if (inv_[a] < 0) throw PreconditionError("element without inverse");
        }
        if (check_associativity) {
            for (long a = 0; a < n_; ++a)
                for (long b = 0; b < n_; ++b)
                    for (long c = 0; c < n_; ++c)
                        if (mul(mul(a, b), static_cast<int>(c)) !=
                            mul(static_cast<int>(a), mul(b, c)))
                            throw PreconditionError("multiplication table is not associative");
        }
        // orders
        order_.assign(n_, 0);
        for (long g = 0; g < n_; ++g) {
            int acc = static_cast<int>(g);
            long o = 1;
            while (acc != id_) {
                acc = mul(acc, static_cast<int>(g));
                ++o;
            }
            order_[g] = o;
        }
        // conjugacy classes
        class_of_.assign(n_, -1);
        for (long g = 0; g < n_; ++g) {
            if (class_of_[g] >= 0) continue;
            int cls = static_cast<int>(classes_.size());
            std::vector<int> members;
            for (long x = 0; x < n_; ++x) {
                int c = conj(static_cast<int>(x), static_cast<int>(g));
                if (class_of_[c] < 0) {
                    class_of_[c] = cls;
                    members.push_back(c);
                }
            }
            std::sort(members.begin(), members.end());
            classes_.push_back(std::move(members));
        }
    }

    long n_ = 0;
    int id_ = 0;
    std::vector<int> table_, inv_;
    std::vector<long> order_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

} // namespace jl

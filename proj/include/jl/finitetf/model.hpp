#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../core/cyclotomic.hpp"
#include "../core/error.hpp"
#include "../core/rational.hpp"
#include "characters.hpp"
#include "group.hpp"

namespace jl {

// omega as explicit data: a root-of-unity order and (element, exponent)
// pairs. Pairs must cover the whole central subgroup.
struct OmegaSpec {
    long order = 1;
    std::vector<std::pair<int, long>> pairs;

    static OmegaSpec trivial() { return OmegaSpec{1, {}}; }
};

struct TestFunction {
    std::vector<Cyc> values; // indexed by group element
};

struct TraceResult {
    Cyc value;
    bool degenerate = false; // omega nontrivial on Z cap Gamma: the space is zero
};

struct OrbitData {
    int representative;          // an element of Gamma
    std::vector<int> coset_ids;  // the orbit, as cosets of (Z cap Gamma)
    long centralizer_order;      // |G_gamma|
    long class_stabilizer_order; // |{u in Gamma : u gamma u^-1 in (Z cap Gamma) gamma}|
    Rat vol_factor;
    Cyc orbital;                 // Phi(f_omega, gamma)
    Cyc term;                    // vol_factor * orbital
};

struct GeometricResult {
    Cyc value;
    bool degenerate = false;
    std::vector<OrbitData> orbits;
};

struct DecompositionEntry {
    size_t character;   // index into the character table
    long degree;
    Int multiplicity;
    Cyc trace;          // tr pi(f)
    Cyc contribution;   // multiplicity * trace
};

struct DecompositionResult {
    std::vector<DecompositionEntry> entries;
    Cyc spectral;
    bool degenerate = false;
    bool verified = false; // sum of contributions equals the spectral trace
};

/**
 * Finite model (G, Gamma, Z, omega) of the compact-quotient setup: Gamma in
 * the role of the rational points, Z a central subgroup with a unitary
 * character omega trivial on Z cap Gamma, counting measure everywhere.
 *
 * Three independent computation routes are exposed: the operator trace on
 * the omega-equivariant Gamma-invariant function space, the orbit sum of
 * volume factors times orbital integrals, and the kernel diagonal sum.
 */
class FiniteModel {
public:
    FiniteModel(FiniteGroup group, const std::vector<int>& gamma_gens,
                const std::vector<int>& z_gens, const OmegaSpec& omega)
        : G_(std::move(group)) {
        gamma_ = G_.subgroup_closure(gamma_gens);
        z_ = G_.subgroup_closure(z_gens);
        in_gamma_.assign(G_.size(), false);
        for (int g : gamma_) in_gamma_[g] = true;
        in_z_.assign(G_.size(), false);
        for (int g : z_) in_z_[g] = true;
        for (int z : z_)
            if (!G_.is_central(z)) throw PreconditionError("Z must be contained in the center");

        if (omega.order < 1) throw PreconditionError("omega order must be positive");
        m_ = omega.order;
        omega_exp_.assign(G_.size(), -1);
        for (auto& [elem, k] : omega.pairs) {
            if (elem < 0 || elem >= G_.size()) throw PreconditionError("omega element out of range");
            if (!in_z_[elem]) throw PreconditionError("omega defined on an element outside Z");
            omega_exp_[elem] = ((k % m_) + m_) % m_;
        }
        if (m_ == 1)
            for (int z : z_) omega_exp_[z] = 0; // the trivial character covers Z implicitly
        omega_exp_[G_.id()] = omega_exp_[G_.id()] < 0 ? 0 : omega_exp_[G_.id()];
        for (int z : z_)
            if (omega_exp_[z] < 0)
                throw PreconditionError("omega must be specified on every element of Z");
        for (int a : z_)
            for (int b : z_)
                if ((omega_exp_[a] + omega_exp_[b]) % m_ != omega_exp_[G_.mul(a, b)])
                    throw PreconditionError("omega is not multiplicative");
        if (omega_exp_[G_.id()] != 0) throw PreconditionError("omega(1) must be 1");

        long M = to_ll(lcm_int(lcm_int(Int(G_.exponent()), Int(m_)), Int(4)));
        F_ = CycField::get(M);

        for (int g : z_)
            if (in_gamma_[g]) {
                z_cap_gamma_.push_back(g);
                if (omega_exp_[g] != 0) degenerate_ = true;
            }

        if (!degenerate_) build_cosets();
        build_orbit_structure();
    }

    // Z cyclic: omega determined by its value on a generator.
    static OmegaSpec omega_cyclic(const FiniteGroup& G, const std::vector<int>& z_gens,
                                  int generator, long order, long exponent) {
        std::vector<int> z = G.subgroup_closure(z_gens);
        std::vector<std::pair<int, long>> pairs;
        std::vector<long> expo(G.size(), -1);
        int acc = G.id();
        long k = 0;
        for (size_t step = 0; step <= z.size(); ++step) {
            if (expo[acc] < 0) expo[acc] = ((k % order) + order) % order;
            acc = G.mul(acc, generator);
            k += exponent;
        }
        for (int elem : z) {
            if (expo[elem] < 0)
                throw PreconditionError("Z is not generated by the given element");
            pairs.emplace_back(elem, expo[elem]);
        }
        return OmegaSpec{order, pairs};
    }

    const FiniteGroup& group() const { return G_; }
    const std::vector<int>& gamma() const { return gamma_; }
    const std::vector<int>& z() const { return z_; }
    const std::vector<int>& z_cap_gamma() const { return z_cap_gamma_; }
    bool degenerate() const { return degenerate_; }
    const std::shared_ptr<const CycField>& field() const { return F_; }
    long omega_order() const { return m_; }

    Cyc omega(int z) const {
        if (z < 0 || z >= G_.size() || !in_z_[z])
            throw PreconditionError("omega evaluated outside Z");
        return Cyc::root_of_unity(F_, omega_exp_[z] * (F_->order() / m_));
    }

    TestFunction zero_function() const {
        return TestFunction{std::vector<Cyc>(G_.size(), Cyc(F_))};
    }
    TestFunction delta(int g) const {
        TestFunction f = zero_function();
        f.values.at(g) = Cyc(F_, Rat(1));
        return f;
    }
    TestFunction constant(const Rat& c) const {
        return TestFunction{std::vector<Cyc>(G_.size(), Cyc(F_, c))};
    }

    // f_omega(g) = sum_z omega(z) f(zg); transforms by omega^{-1} under Z.
    TestFunction omega_average(const TestFunction& f) const {
        check_function(f);
        TestFunction out = zero_function();
        for (long g = 0; g < G_.size(); ++g) {
            Cyc acc(F_);
            for (int z : z_) acc = acc + omega(z) * f.values[G_.mul(z, static_cast<int>(g))];
            out.values[g] = acc;
        }
        return out;
    }

    // Operator route: matrix of R(f) on the equivariant function space.
    TraceResult spectral_trace(const TestFunction& f) const {
        check_function(f);
        if (degenerate_) return TraceResult{Cyc(F_), true};
        Cyc tr(F_);
        for (int rep : coset_reps_) {
            for (long g = 0; g < G_.size(); ++g) {
                if (f.values[g].is_zero()) continue;
                int h = G_.mul(rep, static_cast<int>(g));
                if (coset_of_[h] == coset_of_[rep]) tr = tr + f.values[g] * phase_[h];
            }
        }
        return TraceResult{tr, false};
    }

    // Geometric route: orbits of Gamma-conjugation on (Z cap Gamma)\Gamma.
    GeometricResult geometric_trace(const TestFunction& f) const {
        check_function(f);
        GeometricResult result{Cyc(F_), degenerate_, {}};
        if (degenerate_) return result;
        TestFunction fw = omega_average(f);
        for (const auto& orbit : orbits_) {
            OrbitData data = orbit_term(fw, orbit.front());
            data.coset_ids = orbit;
            result.value = result.value + data.term;
            result.orbits.push_back(std::move(data));
        }
        return result;
    }

    // Volume factor and orbital integral for one class representative; any
    // representative of any coset in the orbit gives the same term.
    OrbitData orbit_term(const TestFunction& f_omega, int gamma_o) const {
        if (!in_gamma_[gamma_o]) throw PreconditionError("representative must lie in Gamma");
        OrbitData data;
        data.representative = gamma_o;
        data.centralizer_order = static_cast<long>(G_.centralizer(gamma_o).size());
        long stab = 0;
        for (int u : gamma_) {
            int twist = G_.mul(G_.conj(u, gamma_o), G_.inv(gamma_o));
            if (std::find(z_cap_gamma_.begin(), z_cap_gamma_.end(), twist) != z_cap_gamma_.end())
                ++stab;
        }
        data.class_stabilizer_order = stab;
        data.vol_factor = make_rat(Int(data.centralizer_order) * Int(z_cap_gamma_.size()),
                                   Int(z_.size()) * Int(stab));
        Cyc phi(F_);
        for (long x = 0; x < G_.size(); ++x)
            phi = phi + f_omega.values[G_.conj(G_.inv(static_cast<int>(x)), gamma_o)];
        data.orbital = phi / Rat(data.centralizer_order);
        data.term = data.vol_factor * data.orbital;
        return data;
    }

    // Kernel route: sum of K_f(x, x) over Gamma Z \ G.
    TraceResult kernel_trace(const TestFunction& f) const {
        check_function(f);
        if (degenerate_) return TraceResult{Cyc(F_), true};
        TestFunction fw = omega_average(f);
        Cyc tr(F_);
        for (int x : coset_reps_)
            for (int rep : gamma_coset_reps_)
                tr = tr + fw.values[G_.mul(G_.mul(G_.inv(x), rep), x)];
        return TraceResult{tr, false};
    }

    // Break R into irreducibles and re-sum the trace through the ledger.
    DecompositionResult spectral_decomposition(const TestFunction& f) const {
        check_function(f);
        DecompositionResult result;
        result.degenerate = degenerate_;
        result.spectral = Cyc(F_);
        if (degenerate_) return result;
        const CharacterTable& table = characters();
        const auto& classes = G_.conjugacy_classes();

        // character of R from the phase-permutation action
        std::vector<Cyc> chi_R;
        for (const auto& cls : classes) {
            int g = cls[0];
            Cyc acc(F_);
            for (int rep : coset_reps_) {
                int h = G_.mul(rep, g);
                if (coset_of_[h] == coset_of_[rep]) acc = acc + phase_[h];
            }
            chi_R.push_back(acc);
        }

        result.spectral = spectral_trace(f).value;
        Cyc total(F_);
        Int dim_check = 0;
        for (size_t t = 0; t < table.values.size(); ++t) {
            Cyc mult(F_);
            for (size_t j = 0; j < classes.size(); ++j)
                mult = mult + Rat(classes[j].size()) * (chi_R[j] * table.values[t][j].conj());
            mult = mult / Rat(G_.size());
            if (!mult.is_rational() || den(mult.rational_value()) != 1 ||
                mult.rational_value() < 0)
                throw InternalError("multiplicity is not a nonnegative integer");
            Int m = num(mult.rational_value());
            if (m == 0) continue;
            DecompositionEntry entry;
            entry.character = t;
            entry.degree = table.degrees[t];
            entry.multiplicity = m;
            Cyc trace(F_);
            for (long g = 0; g < G_.size(); ++g) {
                if (f.values[g].is_zero()) continue;
                trace = trace + f.values[g] * table.values[t][G_.class_of(static_cast<int>(g))];
            }
            entry.trace = trace;
            entry.contribution = Rat(m) * trace;
            total = total + entry.contribution;
            dim_check += m * table.degrees[t];
            result.entries.push_back(std::move(entry));
        }
        if (dim_check != static_cast<long>(coset_reps_.size()))
            throw InternalError("multiplicities do not add up to the space dimension");
        result.verified = total == result.spectral;
        if (!result.verified)
            throw InternalError("spectral decomposition does not re-sum to the trace");
        return result;
    }

    const CharacterTable& characters() const {
        std::call_once(*char_once_, [this] { table_ = character_table(G_, F_); });
        return table_;
    }

    size_t orbit_count() const { return orbits_.size(); }
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }
    long space_dimension() const {
        return degenerate_ ? 0 : static_cast<long>(coset_reps_.size());
    }
    const std::vector<int>& coset_reps() const { return coset_reps_; }
    const std::vector<int>& gamma_coset_reps() const { return gamma_coset_reps_; }

private:
    void check_function(const TestFunction& f) const {
        if (static_cast<long>(f.values.size()) != G_.size())
            throw ShapeMismatch("test function must assign a value to every group element");
        for (const Cyc& v : f.values)
            if (v.field()->order() != F_->order())
                throw ShapeMismatch("test function values live in the wrong cyclotomic field");
    }

    void build_cosets() {
        coset_of_.assign(G_.size(), -1);
        phase_.assign(G_.size(), Cyc(F_));
        for (long g = 0; g < G_.size(); ++g) {
            if (coset_of_[g] >= 0) continue;
            int rep = static_cast<int>(g);
            int idx = static_cast<int>(coset_reps_.size());
            coset_reps_.push_back(rep);
            for (int gam : gamma_)
                for (int z : z_) {
                    int h = G_.mul(G_.mul(gam, z), rep);
                    Cyc ph = omega(z);
                    if (coset_of_[h] < 0) {
                        coset_of_[h] = idx;
                        phase_[h] = ph;
                    } else if (coset_of_[h] != idx || !(phase_[h] == ph)) {
                        throw InternalError("inconsistent coset phase; omega not trivial on overlaps");
                    }
                }
        }
    }

    void build_orbit_structure() {
        // canonical coset id: minimal element of (Z cap Gamma) gamma
        gamma_coset_id_.assign(G_.size(), -1);
        for (int g : gamma_) {
            int best = g;
            for (int eps : z_cap_gamma_) best = std::min(best, G_.mul(eps, g));
            gamma_coset_id_[g] = best;
        }
        std::vector<bool> seen(G_.size(), false);
        for (int g : gamma_) {
            if (gamma_coset_id_[g] == g && !seen[g]) gamma_coset_reps_.push_back(g);
            seen[g] = true;
        }
        std::vector<bool> used(G_.size(), false);
        for (int rep : gamma_coset_reps_) {
            if (used[rep]) continue;
            std::vector<int> orbit;
            std::vector<int> stack{rep};
            used[rep] = true;
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                orbit.push_back(cur);
                for (int u : gamma_) {
                    int img = gamma_coset_id_[G_.conj(u, cur)];
                    if (!used[img]) {
                        used[img] = true;
                        stack.push_back(img);
                    }
                }
            }
            std::sort(orbit.begin(), orbit.end());
            orbits_.push_back(std::move(orbit));
        }
    }

    FiniteGroup G_;
    std::vector<int> gamma_, z_, z_cap_gamma_;
    std::vector<bool> in_gamma_, in_z_;
    long m_ = 1;
    std::vector<long> omega_exp_;
    std::shared_ptr<const CycField> F_;
    bool degenerate_ = false;

    std::vector<int> coset_reps_;
    std::vector<int> coset_of_;
    std::vector<Cyc> phase_;

    std::vector<int> gamma_coset_id_;
    std::vector<int> gamma_coset_reps_;
    std::vector<std::vector<int>> orbits_;

    std::unique_ptr<std::once_flag> char_once_ = std::make_unique<std::once_flag>();
    mutable CharacterTable table_;
};

struct MatchedTerm {
    size_t right_orbit; // orbit index in the second model
    size_t left_orbit;  // orbit index in the first model
    Cyc left_term, right_term;
};

struct ComparisonReport {
    std::vector<MatchedTerm> matched;
    std::vector<size_t> vanishing_left;  // unmatched left orbits, verified zero
    std::vector<size_t> vanishing_right; // unmatched right orbits, verified zero
    Cyc spectral_left, spectral_right;
    bool spectral_equal = false;
};

// Term-by-term comparison of two geometric sides along a partial injection
// of right orbits into left orbits, followed by the spectral identity.
inline ComparisonReport compare_models(const FiniteModel& left, const FiniteModel& right,
                                       const std::vector<std::pair<size_t, size_t>>& match,
                                       const TestFunction& f, const TestFunction& fprime) {
    if (left.degenerate() || right.degenerate())
        throw PreconditionError("comparison requires non-degenerate models");
    auto common = CycField::get(
        to_ll(lcm_int(Int(left.field()->order()), Int(right.field()->order()))));

    GeometricResult gl = left.geometric_trace(f);
    GeometricResult gr = right.geometric_trace(fprime);

    std::vector<bool> left_used(gl.orbits.size(), false), right_used(gr.orbits.size(), false);
    ComparisonReport report;
    for (auto& [ro, lo] : match) {
        if (ro >= gr.orbits.size() || lo >= gl.orbits.size())
            throw PreconditionError("match refers to a nonexistent orbit");
        if (right_used[ro] || left_used[lo])
            throw PreconditionError("match must be injective");
        right_used[ro] = true;
        left_used[lo] = true;
        Cyc lt = gl.orbits[lo].term.lift(common);
        Cyc rt = gr.orbits[ro].term.lift(common);
        if (!(lt == rt)) {
            std::ostringstream msg;
            msg << "matched orbits (left " << lo << ", right " << ro
                << ") carry different terms: left rep " << gl.orbits[lo].representative
                << ", right rep " << gr.orbits[ro].representative;
            throw TermMismatch(msg.str());
        }
        report.matched.push_back(MatchedTerm{ro, lo, gl.orbits[lo].term, gr.orbits[ro].term});
    }
    for (size_t lo = 0; lo < gl.orbits.size(); ++lo) {
        if (left_used[lo]) continue;
        if (!gl.orbits[lo].term.is_zero())
            throw NonVanishingUnmatched("unmatched left orbit " + std::to_string(lo) +
                                        " with representative " +
                                        std::to_string(gl.orbits[lo].representative) +
                                        " has a nonzero term");
        report.vanishing_left.push_back(lo);
    }
    for (size_t ro = 0; ro < gr.orbits.size(); ++ro) {
        if (right_used[ro]) continue;
        if (!gr.orbits[ro].term.is_zero())
            throw NonVanishingUnmatched("unmatched right orbit " + std::to_string(ro) +
                                        " with representative " +
                                        std::to_string(gr.orbits[ro].representative) +
                                        " has a nonzero term");
        report.vanishing_right.push_back(ro);
    }

    report.spectral_left = left.spectral_trace(f).value;
    report.spectral_right = right.spectral_trace(fprime).value;
    report.spectral_equal =
        report.spectral_left.lift(common) == report.spectral_right.lift(common);
    if (!report.spectral_equal)
        throw InternalError("geometric sides matched but spectral traces disagree");
    return report;
}

} // namespace jl

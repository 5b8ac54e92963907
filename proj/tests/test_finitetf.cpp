#include <catch2/catch_amalgamated.hpp>

#include <jl/finitetf.hpp>

#include <array>
#include <random>

#include "models.hpp"

using namespace jl;
using fixtures::d4;
using fixtures::find_mat;
using fixtures::q8;
using fixtures::random_function;
using fixtures::s3;
using fixtures::sl23;
using fixtures::z4;

namespace {

void check_three_routes(const FiniteModel& m, int rounds, unsigned seed) {
    std::mt19937_64 rng(seed);
    for (int it = 0; it < rounds; ++it) {
        TestFunction f = random_function(m, rng);
        Cyc s = m.spectral_trace(f).value;
        GeometricResult g = m.geometric_trace(f);
        Cyc k = m.kernel_trace(f).value;
        REQUIRE(s == g.value);
        REQUIRE(s == k);
    }
}

} // namespace

TEST_CASE("group plumbing") {
    std::vector<int> gens;
    FiniteGroup G = s3(&gens);
    CHECK(G.size() == 6);
    CHECK(G.conjugacy_classes().size() == 3);
    CHECK(G.exponent() == 6);
    CHECK(G.subgroup_closure({gens[1]}).size() == 3); // A3
    CHECK(G.centralizer(G.id()).size() == 6);

    FiniteGroup Q = q8();
    CHECK(Q.size() == 8);
    CHECK(Q.conjugacy_classes().size() == 5);

    FiniteGroup S = sl23();
    CHECK(S.size() == 24);
    CHECK(S.conjugacy_classes().size() == 7);
    CHECK(S.exponent() == 12);
}

TEST_CASE("character tables of known groups") {
    auto grab_degrees = [](const FiniteGroup& G) {
        long M = to_ll(lcm_int(Int(G.exponent()), Int(4)));
        CharacterTable t = character_table(G, CycField::get(M));
        std::vector<long> d = t.degrees;
        std::sort(d.begin(), d.end());
        return d;
    };
    CHECK(grab_degrees(s3()) == std::vector<long>{1, 1, 2});
    CHECK(grab_degrees(z4()) == std::vector<long>{1, 1, 1, 1});
    CHECK(grab_degrees(d4()) == std::vector<long>{1, 1, 1, 1, 2});
    CHECK(grab_degrees(q8()) == std::vector<long>{1, 1, 1, 1, 2});
    CHECK(grab_degrees(sl23()) == std::vector<long>{1, 1, 1, 2, 2, 2, 3});
}

TEST_CASE("S3 / A3 model: frozen traces") {
    std::vector<int> gens;
    FiniteGroup G = s3(&gens);
    FiniteModel m(std::move(G), {gens[1]}, {}, OmegaSpec::trivial());
    CHECK(m.space_dimension() == 2);
    CHECK(!m.degenerate());

    // f = delta_e: identity operator on a 2-dimensional space
    TestFunction f = m.delta(m.group().id());
    Cyc two(m.field(), Rat(2));
    CHECK(m.spectral_trace(f).value == two);
    GeometricResult g = m.geometric_trace(f);
    CHECK(g.value == two);
    // the identity orbit contributes vol 6/3 = 2 times Phi = 1
    bool found_identity = false;
    for (const auto& orbit : g.orbits) {
        if (orbit.representative == m.group().id()) {
            found_identity = true;
            CHECK(orbit.vol_factor == Rat(2));
            CHECK(orbit.orbital == Cyc(m.field(), Rat(1)));
        } else {
            CHECK(orbit.term.is_zero());
        }
    }
    CHECK(found_identity);

    // f = delta_r for a 3-cycle: two classes contribute 1 each
    TestFunction fr = m.delta(gens[1]);
    CHECK(m.spectral_trace(fr).value == two);
    GeometricResult gr = m.geometric_trace(fr);
    CHECK(gr.value == two);
    int contributing = 0;
    for (const auto& orbit : gr.orbits)
        if (!orbit.term.is_zero()) {
            CHECK(orbit.vol_factor == Rat(1));
            CHECK(orbit.term == Cyc(m.field(), Rat(1)));
            ++contributing;
        }
    CHECK(contributing == 2);
    CHECK(m.kernel_trace(fr).value == two);
}

TEST_CASE("Z/4 model with omega(2) = -1: frozen example") {
    FiniteModel m(z4(), {}, {2}, FiniteModel::omega_cyclic(z4(), {2}, 2, 2, 1));
    CHECK(m.space_dimension() == 2);
    CHECK(!m.degenerate());

    TestFunction f = m.delta(1);
    TestFunction fw = m.omega_average(f);
    // f_omega = delta_1 - delta_3
    CHECK(fw.values[1] == Cyc(m.field(), Rat(1)));
    CHECK(fw.values[3] == -Cyc(m.field(), Rat(1)));
    CHECK(fw.values[0].is_zero());
    CHECK(fw.values[2].is_zero());
    // f_omega(zg) = omega(z)^{-1} f_omega(g)
    for (int g = 0; g < 4; ++g) {
        Cyc lhs = fw.values[m.group().mul(2, g)];
        Cyc rhs = m.omega(2).conj() * fw.values[g];
        CHECK(lhs == rhs);
    }

    CHECK(m.spectral_trace(f).value.is_zero());
    GeometricResult g = m.geometric_trace(f);
    CHECK(g.value.is_zero());
    REQUIRE(g.orbits.size() == 1);
    CHECK(g.orbits[0].orbital.is_zero()); // Phi(f_omega, 0) = f_omega(0) = 0
    CHECK(m.kernel_trace(f).value.is_zero());

    // omega trivial: f_omega = |Z| f on constant f
    FiniteModel mt(z4(), {}, {2}, OmegaSpec{1, {{0, 0}, {2, 0}}});
    TestFunction avg = mt.omega_average(mt.constant(Rat(1)));
    for (auto& v : avg.values) CHECK(v == Cyc(mt.field(), Rat(2)));
}

TEST_CASE("omega constraints and degenerate models") {
    // Gamma = Z = {0,2} with omega(2) = -1: omega nontrivial on the overlap
    FiniteModel degen(z4(), {2}, {2}, FiniteModel::omega_cyclic(z4(), {2}, 2, 2, 1));
    CHECK(degen.degenerate());
    CHECK(degen.space_dimension() == 0);
    TestFunction f = degen.delta(1);
    TraceResult s = degen.spectral_trace(f);
    CHECK(s.degenerate);
    CHECK(s.value.is_zero());
    CHECK(degen.geometric_trace(f).degenerate);
    CHECK(degen.kernel_trace(f).degenerate);

    // omega must cover Z and be multiplicative
    CHECK_THROWS_AS(FiniteModel(z4(), {}, {1}, OmegaSpec{4, {{1, 1}}}), PreconditionError);
    CHECK_THROWS_AS(FiniteModel(z4(), {}, {2}, OmegaSpec{2, {{0, 1}, {2, 1}}}),
                    PreconditionError);
    // Z must be central: in S3 the 3-cycle subgroup is not
    std::vector<int> gens;
    FiniteGroup G = s3(&gens);
    CHECK_THROWS_AS(FiniteModel(std::move(G), {}, {gens[1]}, OmegaSpec::trivial()),
                    PreconditionError);
}

TEST_CASE("trace formula identity on the model corpus") {
    std::vector<int> s3gens;
    FiniteGroup S3 = s3(&s3gens);
    FiniteModel m1(std::move(S3), {s3gens[1]}, {}, OmegaSpec::trivial());
    check_three_routes(m1, 100, 101);

    FiniteModel m2(z4(), {}, {2}, FiniteModel::omega_cyclic(z4(), {2}, 2, 2, 1));
    check_three_routes(m2, 100, 102);

    // D4 with Gamma a non-central reflection, Z the center, omega nontrivial
    FiniteGroup D = d4();
    int r2 = D.mul(1, 1); // r^2 generates the center
    int refl = -1;
    for (int g = 0; g < D.size(); ++g)
        if (g != D.id() && D.order(g) == 2 && !D.is_central(g) && refl < 0) refl = g;
    REQUIRE(refl >= 0);
    FiniteModel m3(std::move(D), {refl}, {r2},
                   FiniteModel::omega_cyclic(d4(), {r2}, r2, 2, 1));
    CHECK(!m3.degenerate());
    check_three_routes(m3, 100, 103);

    // Q8 with Gamma = G: every gamma_o is conjugate to -gamma_o, so the orbit
    // coefficients need the class stabilizer, not the bare centralizer
    FiniteGroup Q = q8();
    std::vector<int> all;
    for (int g = 0; g < Q.size(); ++g) all.push_back(g);
    FiniteModel m4(std::move(Q), all, {1}, OmegaSpec{1, {{0, 0}, {1, 0}}});
    CHECK(m4.space_dimension() == 1);
    check_three_routes(m4, 100, 104);
    bool saw_twist = false;
    TestFunction probe = m4.constant(Rat(1));
    for (const auto& orbit : m4.geometric_trace(probe).orbits)
        if (orbit.class_stabilizer_order > orbit.centralizer_order) saw_twist = true;
    CHECK(saw_twist);

    // Q8 with trivial Gamma and omega(-1) = -1
    FiniteModel m5(q8(), {}, {1}, FiniteModel::omega_cyclic(q8(), {1}, 1, 2, 1));
    CHECK(m5.space_dimension() == 4);
    check_three_routes(m5, 100, 105);

    // SL(2,3), Gamma the unipotent C3, Z = {+-1}, omega(-I) = -1
    std::vector<std::array<int, 4>> mats;
    FiniteGroup S = sl23(&mats);
    int minus_id = find_mat(mats, {2, 0, 0, 2});
    int unip = find_mat(mats, {1, 1, 0, 1});
    FiniteModel m6(std::move(S), {unip}, {minus_id},
                   FiniteModel::omega_cyclic(sl23(), {minus_id}, minus_id, 2, 1));
    CHECK(!m6.degenerate());
    CHECK(m6.space_dimension() == 4);
    check_three_routes(m6, 100, 106);
}

TEST_CASE("orbit term consistency and representative independence") {
    std::vector<std::array<int, 4>> mats;
    FiniteGroup S = sl23(&mats);
    int minus_id = find_mat(mats, {2, 0, 0, 2});
    int unip = find_mat(mats, {1, 1, 0, 1});
    FiniteModel m(std::move(S), {unip}, {minus_id},
                  FiniteModel::omega_cyclic(sl23(), {minus_id}, minus_id, 2, 1));
    std::mt19937_64 rng(7);
    for (int it = 0; it < 10; ++it) {
        TestFunction f = random_function(m, rng);
        TestFunction fw = m.omega_average(f);
        GeometricResult g = m.geometric_trace(f);
        for (const auto& orbit : g.orbits) {
            // J_O computed directly as a double sum over cosets
            Cyc direct(m.field());
            for (int x : m.coset_reps())
                for (int rep : orbit.coset_ids) {
                    int c = m.group().mul(m.group().mul(m.group().inv(x), rep), x);
                    direct = direct + fw.values[c];
                }
            CHECK(direct == orbit.term);
            // any element of any coset of the orbit is a valid representative
            for (int coset : orbit.coset_ids)
                for (int eps : m.z_cap_gamma()) {
                    OrbitData alt = m.orbit_term(fw, m.group().mul(eps, coset));
                    CHECK(alt.term == orbit.term);
                    CHECK(alt.vol_factor == orbit.vol_factor);
                }
        }
    }
}

TEST_CASE("spectral decomposition ledgers") {
    std::vector<int> gens;
    FiniteGroup G = s3(&gens);
    FiniteModel m(std::move(G), {gens[1]}, {}, OmegaSpec::trivial());
    std::mt19937_64 rng(11);
    TestFunction f = random_function(m, rng);
    DecompositionResult dec = m.spectral_decomposition(f);
    CHECK(dec.verified);
    REQUIRE(dec.entries.size() == 2);
    for (const auto& e : dec.entries) {
        CHECK(e.degree == 1);
        CHECK(e.multiplicity == 1);
    }
    // identify trivial and sign among the constituents
    const CharacterTable& table = m.characters();
    int trivial_seen = 0, sign_seen = 0;
    for (const auto& e : dec.entries) {
        bool all_one = true, plus_minus = true;
        for (size_t j = 0; j < table.values[e.character].size(); ++j) {
            const Cyc& v = table.values[e.character][j];
            if (!(v == Cyc(m.field(), Rat(1)))) all_one = false;
            if (!v.is_rational()) plus_minus = false;
        }
        if (all_one) ++trivial_seen;
        else if (plus_minus) ++sign_seen;
    }
    CHECK(trivial_seen == 1);
    CHECK(sign_seen == 1);

    // Frobenius reciprocity oracle: the multiplicity of chi in Ind_Gamma^G 1
    // equals (1/|Gamma|) sum_{gamma} chi(gamma)
    for (size_t t = 0; t < table.values.size(); ++t) {
        Cyc acc(m.field());
        for (int gam : m.gamma()) acc = acc + table.values[t][m.group().class_of(gam)];
        acc = acc / Rat(m.gamma().size());
        Int expected = 0;
        for (const auto& e : dec.entries)
            if (e.character == t) expected = e.multiplicity;
        CHECK(acc == Cyc(m.field(), Rat(expected)));
    }

    // Gamma = G: only the trivial constituent, once
    std::vector<int> gens2;
    FiniteGroup G2 = s3(&gens2);
    std::vector<int> everything;
    for (int g = 0; g < G2.size(); ++g) everything.push_back(g);
    FiniteModel full(std::move(G2), everything, {}, OmegaSpec::trivial());
    DecompositionResult dec2 = full.spectral_decomposition(full.delta(0));
    CHECK(full.space_dimension() == 1);
    REQUIRE(dec2.entries.size() == 1);
    CHECK(dec2.entries[0].degree == 1);
    CHECK(dec2.entries[0].multiplicity == 1);

    // Z/4 with omega(2) = -1: the two odd characters, each once
    FiniteModel mz(z4(), {}, {2}, FiniteModel::omega_cyclic(z4(), {2}, 2, 2, 1));
    DecompositionResult dec3 = mz.spectral_decomposition(mz.delta(1));
    REQUIRE(dec3.entries.size() == 2);
    for (const auto& e : dec3.entries) CHECK(e.multiplicity == 1);
    CHECK(dec3.verified);

    // decomposition re-sums on the bigger models too
    std::vector<std::array<int, 4>> mats;
    FiniteGroup S = sl23(&mats);
    int minus_id = find_mat(mats, {2, 0, 0, 2});
    int unip = find_mat(mats, {1, 1, 0, 1});
    FiniteModel m6(std::move(S), {unip}, {minus_id},
                   FiniteModel::omega_cyclic(sl23(), {minus_id}, minus_id, 2, 1));
    for (int it = 0; it < 20; ++it) {
        TestFunction rf = random_function(m6, rng);
        CHECK(m6.spectral_decomposition(rf).verified);
    }
}

TEST_CASE("model comparison") {
    std::vector<int> gens;
    FiniteGroup G = s3(&gens);
    FiniteModel left(std::move(G), {gens[1]}, {}, OmegaSpec::trivial());

    // a relabelled copy: conjugate the table by a permutation of indices
    std::vector<int> sigma = {0, 3, 4, 1, 2, 5};
    std::vector<int> sigma_inv(6);
    for (int i = 0; i < 6; ++i) sigma_inv[sigma[i]] = i;
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    FiniteGroup G1 = s3();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) table[a][b] = sigma_inv[G1.mul(sigma[a], sigma[b])];
    FiniteGroup G2 = FiniteGroup::from_table(table);
    FiniteModel right(std::move(G2), {sigma_inv[gens[1]]}, {}, OmegaSpec::trivial());

    std::mt19937_64 rng(13);
    TestFunction f = random_function(left, rng);
    TestFunction fprime = right.zero_function();
    for (int g = 0; g < 6; ++g) fprime.values[sigma_inv[g]] = f.values[g];

    // match orbits through the isomorphism
    GeometricResult gl = left.geometric_trace(f);
    GeometricResult grr = right.geometric_trace(fprime);
    std::vector<std::pair<size_t, size_t>> match;
    for (size_t ro = 0; ro < grr.orbits.size(); ++ro) {
        int lift = sigma[grr.orbits[ro].representative];
        for (size_t lo = 0; lo < gl.orbits.size(); ++lo)
            if (gl.orbits[lo].representative == lift) match.emplace_back(ro, lo);
    }
    REQUIRE(match.size() == gl.orbits.size());

    ComparisonReport report = compare_models(left, right, match, f, fprime);
    CHECK(report.spectral_equal);
    CHECK(report.matched.size() == match.size());
    CHECK(report.vanishing_left.empty());
    CHECK(report.vanishing_right.empty());

    // identity comparison
    std::vector<std::pair<size_t, size_t>> id_match;
    for (size_t i = 0; i < gl.orbits.size(); ++i) id_match.emplace_back(i, i);
    ComparisonReport self = compare_models(left, left, id_match, f, f);
    CHECK(self.spectral_equal);

    // a deliberately mismatched function: the 3-cycle orbits are unmatched on
    // the left but carry nonzero terms
    TestFunction fr = left.delta(gens[1]);
    TestFunction zero = right.zero_function();
    std::vector<std::pair<size_t, size_t>> partial;
    for (size_t ro = 0; ro < grr.orbits.size(); ++ro) {
        if (right.group().order(grr.orbits[ro].representative) == 3) continue;
        int lift = sigma[grr.orbits[ro].representative];
        for (size_t lo = 0; lo < gl.orbits.size(); ++lo)
            if (gl.orbits[lo].representative == lift) partial.emplace_back(ro, lo);
    }
    bool named_orbit = false;
    try {
        compare_models(left, right, partial, fr, zero);
    } catch (const NonVanishingUnmatched& e) {
        std::string msg = e.what();
        named_orbit = msg.find("representative " + std::to_string(gens[1])) != std::string::npos;
    }
    CHECK(named_orbit);

    // term mismatch: same match but scaled function on the right
    TestFunction doubled = right.zero_function();
    for (int g = 0; g < 6; ++g) doubled.values[sigma_inv[g]] = Rat(2) * f.values[g];
    bool mismatch = false;
    try {
        compare_models(left, right, match, f, doubled);
    } catch (const TermMismatch&) {
        mismatch = true;
    }
    CHECK(mismatch);
}

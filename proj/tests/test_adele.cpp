#include <catch2/catch_amalgamated.hpp>

#include <jl/adele.hpp>

#include <random>

using namespace jl;

namespace {
constexpr double eps = 1e-9;
using C = std::complex<double>;

Rat rnd_rat(std::mt19937_64& rng, long bound = 1000000) {
    std::uniform_int_distribution<long> d(1, bound);
    long n = d(rng), m = d(rng);
    Rat r = make_rat(n, m);
    return rng() % 2 == 0 ? r : -r;
}
} // namespace

TEST_CASE("idele norm pinned values") {
    CHECK(idele_norm(RestrictedElement::diagonal(Rat(6))) == 1);
    CHECK(idele_norm(RestrictedElement(Rat(5), {})) == 5);
    CHECK(idele_norm(RestrictedElement(Rat(1), {{Int(2), Rat(8)}})) == Rat(1, 8));
}

TEST_CASE("product formula: 1000 random rationals, exact") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 1000; ++it) {
        Rat x = rnd_rat(rng);
        CHECK(idele_norm(RestrictedElement::diagonal(x)) == 1);
    }
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Rat a = rnd_rat(rng, 500), b = rnd_rat(rng, 500);
        RestrictedElement g(a, {{Int(2), rnd_rat(rng, 64)}, {Int(5), rnd_rat(rng, 50)}});
        RestrictedElement h(b, {{Int(2), rnd_rat(rng, 64)}, {Int(3), rnd_rat(rng, 27)}});
        CHECK(idele_norm(g * h) == idele_norm(g) * idele_norm(h));
    }
}

TEST_CASE("character evaluation pinned values") {
    ProductCharacter norm = ProductCharacter::norm_character(1.0);
    // g with g_inf = 2, g_3 = 3, units elsewhere: 2 * (1/3)
    RestrictedElement g(Rat(2), {{Int(3), Rat(3)}});
    CHECK(std::abs(evaluate_character(norm, g) - C(2.0 / 3.0, 0)) < eps);

    CHECK(std::abs(evaluate_character(ProductCharacter::trivial(), g) - C(1, 0)) < eps);

    // the adelic norm is trivial on the diagonal Q^x
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        Rat x = rnd_rat(rng, 1000);
        CHECK(std::abs(evaluate_character(norm, RestrictedElement::diagonal(x)) - C(1, 0)) <
              1e-7);
    }
}

TEST_CASE("characters form a group under product") {
    std::mt19937_64 rng(4);
    ProductCharacter a = ProductCharacter::norm_character(C(0.5, 1.25));
    ProductCharacter b = ProductCharacter::norm_character(C(-2.0, 0.5));
    LocalCharacterAtom twist;
    twist.unram_rotation = Rat(1, 3);
    b.local[Place::finite(7)].push_back(twist);
    LocalCharacterAtom sign;
    sign.sign_exponent = 1;
    a.local[Place::inf()].push_back(sign);
    ProductCharacter ab = a * b;
    for (int it = 0; it < 100; ++it) {
        RestrictedElement g(rnd_rat(rng, 99), {{Int(7), rnd_rat(rng, 49)}});
        C lhs = evaluate_character(ab, g);
        C rhs = evaluate_character(a, g) * evaluate_character(b, g);
        CHECK(std::abs(lhs - rhs) < 1e-7 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("ramified characters and defaulted components") {
    // character of (Z/5)^x of order 4
    ProductCharacter chi;
    LocalCharacterAtom atom;
    atom.unit = UnitCharacter{1, Rat(1, 4), 0};
    chi.local[Place::finite(5)].push_back(atom);

    RestrictedElement with_support(Rat(1), {{Int(5), Rat(2)}});
    C val = evaluate_character(chi, with_support);
    CHECK(std::abs(std::abs(val) - 1.0) < eps);
    // 2 generates (Z/5)^x, so the value on 2 is a primitive 4th root: i
    CHECK(std::abs(val - C(0, 1)) < eps);

    RestrictedElement defaulted(Rat(1), {{Int(3), Rat(3)}});
    CHECK_THROWS_AS(evaluate_character(chi, defaulted), RamifiedAtDefault);

    // multiplicativity on units: chi(4) = chi(2)^2 = -1
    RestrictedElement four(Rat(1), {{Int(5), Rat(4)}});
    CHECK(std::abs(evaluate_character(chi, four) - C(-1, 0)) < eps);

    // character of (Z/2^3)^x: -1 and 5 generate
    ProductCharacter chi2;
    LocalCharacterAtom atom2;
    atom2.unit = UnitCharacter{3, Rat(1, 2), Rat(1, 2)};
    chi2.local[Place::finite(2)].push_back(atom2);
    RestrictedElement u7(Rat(1), {{Int(2), Rat(7)}});
    RestrictedElement u5(Rat(1), {{Int(2), Rat(5)}});
    RestrictedElement u3(Rat(1), {{Int(2), Rat(3)}});
    C v5 = evaluate_character(chi2, u5);
    C v3 = evaluate_character(chi2, u3);
    C v7 = evaluate_character(chi2, u7);
    CHECK(std::abs(v5 - C(-1, 0)) < eps); // 5 = 5^1
    CHECK(std::abs(v3 - C(1, 0)) < eps);  // 3 = -5 mod 8: (-1)(-1) = 1
    CHECK(std::abs(v7 - C(-1, 0)) < eps); // 7 = -1 mod 8
}

TEST_CASE("factorizable integration") {
    // all defaults, f_inf the unit interval
    CHECK(integrate_factorizable(FactorizableFunction{}) == 1);

    FactorizableFunction ball;
    ball.finite[5] = {BallTerm{Rat(2), 2, Rat(1)}};
    CHECK(integrate_factorizable(ball) == Rat(1, 25));

    FactorizableFunction mixed;
    mixed.arch = ArchTestFunction{Rat(0), Rat(2), Rat(3)};
    mixed.finite[2] = {BallTerm{Rat(0), 0, Rat(1)}};
    CHECK(integrate_factorizable(mixed) == 6);
}

TEST_CASE("integration respects ball refinement") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        Int p(it % 2 == 0 ? 3 : 5);
        long k = static_cast<long>(rng() % 4) - 1;
        Rat a = rnd_rat(rng, 50);
        Rat coeff = rnd_rat(rng, 9);
        FactorizableFunction coarse;
        coarse.finite[p] = {BallTerm{a, k, coeff}};
        FactorizableFunction fine;
        std::vector<BallTerm> split;
        for (long j = 0; j < to_ll(p); ++j)
            split.push_back(BallTerm{a + Rat(j) * pow_rat(Rat(p), k), k + 1, coeff});
        fine.finite[p] = split;
        CHECK(integrate_factorizable(coarse) == integrate_factorizable(fine));
    }
}

TEST_CASE("idele decomposition pinned example") {
    RestrictedElement g(Rat(-6), {{Int(2), Rat(4)}, {Int(3), Rat(1)}});
    IdeleDecomposition dec = idele_decompose(g);
    CHECK(dec.r == -4);
    CHECK(dec.t == Rat(3, 2));
    CHECK(dec.units.at(2) == -1);
    CHECK(dec.units.at(3) == Rat(-1, 4));
    CHECK(dec.tail == Rat(-1, 4));
}

TEST_CASE("idele decomposition: diagonal and archimedean cases") {
    std::mt19937_64 rng(6);
    for (int it = 0; it < 100; ++it) {
        Rat x = rnd_rat(rng, 1000);
        IdeleDecomposition dec = idele_decompose(RestrictedElement::diagonal(x));
        CHECK(dec.r == x);
        CHECK(dec.t == 1);
        for (auto& [p, u] : dec.units) CHECK(u == 1);
    }
    IdeleDecomposition dec = idele_decompose(RestrictedElement(Rat(2), {}));
    CHECK(dec.r == 1);
    CHECK(dec.t == 2);
    CHECK(dec.tail == 1);
}

TEST_CASE("idele decomposition roundtrip") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 200; ++it) {
        RestrictedElement g(rnd_rat(rng, 120),
                            {{Int(2), rnd_rat(rng, 64)}, {Int(7), rnd_rat(rng, 49)}});
        IdeleDecomposition dec = idele_decompose(g);
        CHECK(dec.t > 0);
        CHECK(g.inf == dec.r * dec.t);
        for (auto& [p, u] : dec.units) {
            CHECK(g.finite.at(p) == dec.r * u);
            CHECK(val_p(u, p) == 0);
        }
    }
}

TEST_CASE("mode validation") {
    CHECK_THROWS_AS(RestrictedElement(Rat(0), {}), PreconditionError);
    CHECK_THROWS_AS(RestrictedElement(Rat(1), {{Int(4), Rat(1)}}), PreconditionError);
    RestrictedElement adele(Rat(0), {{Int(2), Rat(0)}}, RestrictedElement::Mode::Adele);
    CHECK_THROWS_AS(idele_norm(adele), PreconditionError);
    CHECK_THROWS_AS(idele_decompose(adele), PreconditionError);
}

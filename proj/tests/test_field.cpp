#include <doctest.h>

#include "rmc/field.hpp"

using namespace rmc;

namespace {

// bitwise multiplication in F_2[x]/(mod) for binary towers
Ext ref_mul_binary(const FieldTower& t, Ext a, Ext b) {
    const unsigned m = t.m();
    Ext mod_low = 0;
    for (unsigned i = 0; i < m; ++i)
        if (t.modulus()[i]) mod_low |= Ext{1} << i;
    Ext acc = 0;
    for (unsigned i = 0; i < m; ++i) {
        if ((b >> i) & 1) acc ^= a;
        const bool top = (a >> (m - 1)) & 1;
        a = (a << 1) & ((m == 128) ? ~Ext{0} : ((Ext{1} << m) - 1));
        if (top) a ^= mod_low;
    }
    return acc;
}

const std::vector<std::tuple<unsigned, unsigned, unsigned>> kTowers = {
    {2, 1, 4}, {2, 1, 8}, {3, 1, 5}, {2, 4, 23}, {2, 1, 47}, {3, 2, 3}, {2, 1, 70}, {5, 1, 7}, {2, 8, 3}, {7, 1, 2}};

}  // namespace

TEST_CASE("F_16 and F_9 use the lexicographically-first moduli") {
    auto t = make_tower(2, 1, 4);
    CHECK(t->modulus() == std::vector<Fq>{1, 1, 0, 0, 1});
    auto f9 = BaseField::make(3, 2);
    // x^2 + 1 is the first monic irreducible quadratic over F_3
    CHECK(f9->modulus() == std::vector<unsigned>{1, 0, 1});
}

TEST_CASE("modulus is the first irreducible by brute force") {
    auto f = BaseField::make(2, 1);
    for (unsigned deg : {2u, 3u, 5u, 6u}) {
        auto t = make_tower(2, 1, deg);
        fqpoly::Poly chosen(t->modulus().begin(), t->modulus().end());
        for (unsigned code = 0; code < (1u << deg); ++code) {
            fqpoly::Poly g(deg + 1, 0);
            for (unsigned i = 0; i < deg; ++i) g[i] = (code >> i) & 1;
            g[deg] = 1;
            // irreducible iff no root-free factor: trial division by all monic polys of degree 1..deg/2
            bool irreducible = true;
            for (unsigned dd = 1; dd <= deg / 2 && irreducible; ++dd)
                for (unsigned c2 = 0; c2 < (1u << dd); ++c2) {
                    fqpoly::Poly h(dd + 1, 0);
                    for (unsigned i = 0; i < dd; ++i) h[i] = (c2 >> i) & 1;
                    h[dd] = 1;
                    if (fqpoly::mod(*f, g, h).empty()) {
                        irreducible = false;
                        break;
                    }
                }
            if (irreducible) {
                CHECK(g == chosen);
                break;
            }
        }
    }
}

TEST_CASE("field axioms on random triples") {
    for (auto [p, e, m] : kTowers) {
        auto t = make_tower(p, e, m);
        Rng rng(derive_seed(11, "axioms", p * 1000 + e * 100 + m));
        for (int i = 0; i < 1000; ++i) {
            const Ext a = t->random(rng), b = t->random(rng), c = t->random(rng);
            CHECK(t->mul(a, t->mul(b, c)) == t->mul(t->mul(a, b), c));
            CHECK(t->mul(a, t->add(b, c)) == t->add(t->mul(a, b), t->mul(a, c)));
            CHECK(t->mul(a, b) == t->mul(b, a));
            CHECK(t->add(a, t->neg(a)) == 0);
            CHECK(t->sub(t->add(a, b), b) == a);
            if (a) CHECK(t->mul(a, t->inv(a)) == 1);
        }
    }
}

TEST_CASE("binary multiplication matches a bitwise reference") {
    for (unsigned m : {4u, 13u, 20u, 47u, 64u, 70u, 100u}) {
        auto t = make_tower(2, 1, m);
        Rng rng(derive_seed(12, "binref", m));
        for (int i = 0; i < 500; ++i) {
            const Ext a = t->random(rng), b = t->random(rng);
            CHECK(t->mul(a, b) == ref_mul_binary(*t, a, b));
        }
    }
}

TEST_CASE("Lagrange: x^(q^m - 1) = 1") {
    for (auto [p, e, m] : kTowers) {
        auto t = make_tower(p, e, m);
        Rng rng(derive_seed(13, "lagrange", m));
        for (int i = 0; i < 50; ++i) CHECK(t->pow(t->random_nonzero(rng), t->max_element()) == 1);
    }
}

TEST_CASE("Frobenius is F_q-linear and fixes F_q") {
    for (auto [p, e, m] : kTowers) {
        auto t = make_tower(p, e, m);
        Rng rng(derive_seed(14, "frob", m));
        for (int i = 0; i < 100; ++i) {
            const Ext a = t->random(rng), b = t->random(rng);
            const Fq c = t->base().random(rng);
            CHECK(t->frobenius(t->add(a, b)) == t->add(t->frobenius(a), t->frobenius(b)));
            CHECK(t->frobenius(t->scale(c, a)) == t->scale(c, t->frobenius(a)));
            CHECK(t->frobenius(c) == c);
        }
    }
}

TEST_CASE("encoding round-trip is exhaustive on small fields") {
    for (auto [p, e, m] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{2, 1, 16}, {3, 1, 7}, {2, 4, 4}, {5, 2, 2}}) {
        auto t = make_tower(p, e, m);
        for (Ext x = 0; x <= t->max_element(); ++x) {
            const auto c = t->coords(x);
            REQUIRE(c.size() == m);
            REQUIRE(t->from_coords(c) == x);
        }
    }
}

TEST_CASE("coords are the base-q digits") {
    auto t = make_tower(3, 1, 4);
    const Ext x = 2 + 1 * 3 + 0 * 9 + 2 * 27;
    CHECK(t->coords(x) == std::vector<Fq>{2, 1, 0, 2});
    CHECK(to_string(Ext{12345}) == "12345");
    const Ext big = (Ext{1} << 100) + 7;
    CHECK(parse_ext(to_string(big)) == big);
}

TEST_CASE("custom basis changes coordinates only") {
    auto t = make_tower(2, 1, 5);
    Rng rng(15);
    std::vector<Ext> basis;
    for (;;) {
        basis.clear();
        for (int i = 0; i < 5; ++i) basis.push_back(t->random_nonzero(rng));
        try {
            auto tb = FieldTower::with_basis(t, basis);
            for (int i = 0; i < 5; ++i) {
                std::vector<Fq> unit(5, 0);
                unit[i] = 1;
                CHECK(tb->from_coords(unit) == basis[i]);
            }
            for (Ext x = 0; x < 32; ++x) CHECK(tb->from_coords(tb->coords(x)) == x);
            CHECK(tb->mul(7, 9) == t->mul(7, 9));
            break;
        } catch (const ParameterError&) {
        }
    }
}

TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS(BaseField::make(4, 1), ParameterError);
    CHECK_THROWS_AS(BaseField::make(2, 9), ParameterError);
    CHECK_THROWS_AS(make_tower(2, 1, 129), ParameterError);
    auto t = make_tower(2, 1, 8);
    CHECK_THROWS_AS(t->inv(0), ArithmeticError);
}

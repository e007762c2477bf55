#include <doctest.h>

#include <set>

#include "rmc/cellular.hpp"
#include "rmc/oracle.hpp"

using namespace rmc;

namespace {

Poly random_poly(const FieldTower& t, size_t len, Rng& rng) {
    Poly p(len);
    for (auto& x : p) x = t.random(rng);
    extpoly::trim(p);
    return p;
}

fqpoly::Poly product(const BaseField& f, const std::vector<std::pair<fqpoly::Poly, unsigned>>& fac) {
    fqpoly::Poly acc = {1};
    for (const auto& [g, e] : fac)
        for (unsigned i = 0; i < e; ++i) acc = fqpoly::mul(f, acc, g);
    return acc;
}

std::multiset<size_t> degrees(const std::vector<std::pair<fqpoly::Poly, unsigned>>& fac) {
    std::multiset<size_t> out;
    for (const auto& [g, e] : fac)
        for (unsigned i = 0; i < e; ++i) out.insert(g.size() - 1);
    return out;
}

}  // namespace

TEST_CASE("phi realizes multiplication in the ring") {
    auto t = make_tower(2, 1, 6);
    Rng rng(61);
    const PolyRing ring = cyclic_ring(t, 7);
    for (int it = 0; it < 20; ++it) {
        const Poly a = random_poly(*t, 7, rng), b = random_poly(*t, 7, rng);
        const ExtVec lhs = psi(ring, extpoly::mulmod(*t, a, b, ring.modulus));
        ExtMatrix row(1, 7);
        const ExtVec pa = psi(ring, a);
        std::copy(pa.begin(), pa.end(), row.row(0).begin());
        const ExtMatrix prod = mul(*t, row, phi(ring, b));
        CHECK(ExtVec(prod.row(0).begin(), prod.row(0).end()) == lhs);
        CHECK(psi_inverse(psi(ring, a)) == a);
    }
}

TEST_CASE("quasi-cyclic codes are closed under the block shift") {
    auto t = make_tower(2, 1, 5);
    Rng rng(62);
    const PolyRing ring = cyclic_ring(t, 4);
    const CellularCode c = make_cellular(ring, {{random_poly(*t, 4, rng), random_poly(*t, 4, rng)}});
    const ExtLinearCode e = expand(c);
    for (size_t i = 0; i < e.k(); ++i) {
        ExtVec shifted(8);
        for (size_t b = 0; b < 2; ++b)
            for (size_t j = 0; j < 4; ++j) shifted[b * 4 + (j + 1) % 4] = e.generator(i, b * 4 + j);
        CHECK(in_row_space(*t, e.generator, shifted));
    }
}

TEST_CASE("folding equals projection by X^m - 1") {
    auto t = make_tower(2, 1, 4);
    Rng rng(63);
    const PolyRing ring = cyclic_ring(t, 12);
    for (size_t m : {1u, 2u, 3u, 4u, 6u, 12u}) {
        const Poly g = extpoly::x_pow_minus_one(*t, m);
        for (int it = 0; it < 50; ++it) {
            ExtVec w(24);
            for (auto& x : w) x = t->random(rng);
            CHECK(fold_word(w, 12, m, *t) == project_word(ring, w, g));
        }
    }
    CHECK_THROWS_AS(fold_word(ExtVec(24), 12, 5, *t), ParameterError);
}

TEST_CASE("projection never increases rank") {
    auto t = make_tower(2, 1, 6);
    auto f = t->base_ptr();
    Rng rng(64);
    const PolyRing ring = cyclic_ring(t, 15);
    const auto menu = divisor_menu(15, f, DivisorConstraints{});
    for (int it = 0; it < 50; ++it) {
        ExtVec w(30);
        // low-rank words: entries from a small subspace
        const Ext b1 = t->random(rng), b2 = t->random(rng);
        for (auto& x : w) x = t->add(t->scale(f->random(rng), b1), t->scale(f->random(rng), b2));
        const size_t r = rank_weight(*f, to_matrix(*t, w));
        for (const auto& d : menu)
            CHECK(rank_weight(*f, to_matrix(*t, project_word(ring, w, extpoly::from_base(d)))) <= r);
    }
}

TEST_CASE("project validates the divisor") {
    auto t = make_tower(2, 1, 4);
    const CellularCode c = make_cellular(cyclic_ring(t, 6), {{Poly{1}, Poly{0, 1}}});
    CHECK_THROWS_AS(project(c, Poly{1, 1, 1, 1}), ParameterError);  // does not divide X^6 - 1
    CHECK_THROWS_AS(project(c, Poly{2, 1}, true), ParameterError);   // root outside F_q
    CHECK(project(c, Poly{1, 1, 1}).ring.n() == 2);
    CHECK(fold(c, 3).ring.n() == 3);
}

TEST_CASE("factorization patterns of X^k - 1") {
    auto f2 = BaseField::make(2, 1);
    auto f16 = BaseField::make(2, 4);
    const std::vector<std::tuple<size_t, BaseFieldPtr, std::multiset<size_t>>> cases = {
        {37, f2, {1, 36}},
        {47, f2, {1, 23, 23}},
        {41, f2, {1, 20, 20}},
        {53, f2, {1, 52}},
        {37, f16, {1, 9, 9, 9, 9}},
        {34, f16, {1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}},
        {15, f2, {1, 2, 4, 4, 4}},
        {12, f2, {1, 1, 1, 1, 2, 2, 2, 2}},
    };
    for (const auto& [k, f, want] : cases) {
        const auto fac = factor_cyclic(k, f);
        CHECK(degrees(fac) == want);
        fqpoly::Poly xk(k + 1, 0);
        xk[0] = f->neg(1);
        xk[k] = 1;
        CHECK(product(*f, fac) == xk);
        for (const auto& [g, e] : fac) CHECK(fqpoly::is_irreducible(*f, g));
    }
    auto f3 = BaseField::make(3, 1);
    const auto fac = factor_cyclic(9, f3);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].second == 9);
}

TEST_CASE("divisor menu") {
    auto f = BaseField::make(2, 1);
    const auto menu = divisor_menu(15, f, DivisorConstraints{});
    CHECK(menu.size() == 29);
    fqpoly::Poly xk(16, 0);
    xk[0] = 1;
    xk[15] = 1;
    for (size_t i = 0; i < menu.size(); ++i) {
        CHECK(fqpoly::mod(*f, xk, menu[i]).empty());
        CHECK(menu[i] != fqpoly::Poly{1, 1});
        if (i) CHECK(menu[i - 1].size() <= menu[i].size());
    }
    DivisorConstraints need;
    need.require_x_minus_one = true;
    need.min_degree = need.max_degree = 5;
    const auto five = divisor_menu(15, f, need);
    REQUIRE_FALSE(five.empty());
    CHECK(poly_to_string(five.front()) == "X^5+1");
    CHECK(poly_key(fqpoly::Poly{1, 0, 1}, 2) == 5);
}

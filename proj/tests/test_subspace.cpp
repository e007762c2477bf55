#include <doctest.h>

#include <map>

#include "rmc/oracle.hpp"

using namespace rmc;

TEST_CASE("gaussian binomial equals the enumeration count") {
    for (unsigned q : {2u, 3u}) {
        auto f = BaseField::make(q, 1);
        for (unsigned m = 0; m <= 5; ++m)
            for (unsigned w = 0; w <= m; ++w) CHECK(BigInt(all_subspaces(*f, m, w).size()) == gaussian_binomial(m, w, q));
    }
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 5, 2) == 0);
    CHECK(gaussian_binomial(7, 0, 3) == 1);
}

TEST_CASE("success probability") {
    CHECK(success_probability(6, 4, 2, 1, 2) == Rational(7, 31));
    CHECK(success_probability(6, 4, 3, 3, 2) == 1);
    CHECK(success_probability(5, 5, 2, 0, 3) == 1);
    CHECK_THROWS_AS(success_probability(5, 3, 4, 0, 2), ParameterError);
    CHECK_THROWS_AS(success_probability(5, 4, 2, 3, 2), ParameterError);
}

TEST_CASE("subspace containment matches brute force on F_2^5") {
    auto f = BaseField::make(2, 1);
    Rng rng(31);
    const auto members = [&](const Subspace& s) {
        std::vector<bool> in(32, false);
        for (unsigned v = 0; v < 32; ++v) {
            std::vector<Fq> x(5);
            for (int i = 0; i < 5; ++i) x[i] = (v >> i) & 1;
            in[v] = s.contains(*f, x);
        }
        return in;
    };
    for (int it = 0; it < 50; ++it) {
        const Subspace a = sample_uniform(*f, 5, rng.below(6), rng);
        const Subspace b = sample_uniform(*f, 5, rng.below(6), rng);
        const auto ma = members(a), mb = members(b), mi = members(intersection(*f, a, b)), ms = members(sum(*f, a, b));
        std::size_t na = 0;
        for (unsigned v = 0; v < 32; ++v) {
            na += ma[v];
            CHECK(mi[v] == (ma[v] && mb[v]));
            if (ma[v] || mb[v]) CHECK(ms[v]);
        }
        CHECK(na == (1u << a.dim()));
        CHECK(sum(*f, a, b).dim() + intersection(*f, a, b).dim() == a.dim() + b.dim());
        CHECK(a.contains(*f, intersection(*f, a, b)));
    }
}

TEST_CASE("sample_uniform hits every subspace evenly") {
    auto f = BaseField::make(2, 1);
    Rng rng(32);
    std::map<std::vector<Fq>, int> hist;
    const int n = 35000;
    for (int i = 0; i < n; ++i) hist[sample_uniform(*f, 4, 2, rng).basis().data()]++;
    CHECK(hist.size() == 35);
    for (const auto& [k, c] : hist) CHECK(std::abs(c - 1000) < 5 * 31);  // sigma about 30.4
}

TEST_CASE("sample_uniform_containing is uniform over superspaces") {
    auto f = BaseField::make(3, 1);
    Rng rng(33);
    const Subspace e = Subspace::from_rows(*f, Matrix(1, 4, {1, 2, 0, 1}));
    std::map<std::vector<Fq>, int> hist;
    const int n = 13000;  // [3,1]_3 = 13 planes through a line in F_3^4
    for (int i = 0; i < n; ++i) {
        const Subspace s = sample_uniform_containing(*f, e, 2, rng);
        CHECK(s.dim() == 2);
        CHECK(s.contains(*f, e));
        hist[s.basis().data()]++;
    }
    CHECK(hist.size() == 13);
    for (const auto& [k, c] : hist) CHECK(std::abs(c - 1000) < 5 * 31);
}

TEST_CASE("containment benchmark agrees with the exact rational") {
    auto f = BaseField::make(2, 1);
    const ContainmentBench b = bench_containment(*f, 6, 4, 2, 1, 10000, 7);
    CHECK(b.exact == Rational(7, 31));
    CHECK(b.within_3sigma);
    const ContainmentBench again = bench_containment(*f, 6, 4, 2, 1, 10000, 7);
    CHECK(again.hits == b.hits);
}

#include <doctest.h>

#include <set>

#include "rmc/oracle.hpp"

using namespace rmc;

TEST_CASE("flattening is column-major") {
    Matrix a(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(flatten(a) == std::vector<Fq>{1, 4, 2, 5, 3, 6});
    CHECK(unflatten(2, 3, flatten(a)) == a);
}

TEST_CASE("rank weight is subadditive") {
    auto f = BaseField::make(3, 1);
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const Matrix a = random_rank_matrix(*f, 5, 4, rng.below(5), rng);
        const Matrix b = random_rank_matrix(*f, 5, 4, rng.below(5), rng);
        CHECK(rank_weight(*f, add(*f, a, b)) <= rank_weight(*f, a) + rank_weight(*f, b));
        CHECK(column_space(*f, a).dim() == rank_weight(*f, a));
        CHECK(row_space(*f, a).dim() == rank_weight(*f, a));
    }
}

TEST_CASE("parity checks agree with exhaustive membership") {
    auto f = BaseField::make(2, 1);
    Rng rng(42);
    for (int it = 0; it < 5; ++it) {
        MatrixCode c(f, 3, 3, Matrix::random(4, 9, *f, rng));
        CHECK(c.parity().rows() + c.K() == 9);
        CHECK(mul(*f, c.parity(), c.generator().transpose()).is_zero());
        std::set<std::vector<Fq>> words;
        for_each_codeword(c, [&](const Matrix& cw) {
            words.insert(flatten(cw));
            return false;
        });
        for (unsigned v = 0; v < 512; ++v) {
            std::vector<Fq> x(9);
            for (int i = 0; i < 9; ++i) x[i] = (v >> i) & 1;
            CHECK(c.contains_flat(x) == (words.count(x) == 1));
        }
    }
}

TEST_CASE("transpose and invertible transforms preserve the weight distribution") {
    auto f = BaseField::make(2, 1);
    Rng rng(43);
    MatrixCode c(f, 3, 4, Matrix::random(6, 12, *f, rng));
    const auto dist = weight_distribution(c);
    CHECK(weight_distribution(transpose_code(c)) == dist);
    Matrix q, p;
    do q = Matrix::random(3, 3, *f, rng);
    while (rank(*f, q) != 3);
    do p = Matrix::random(4, 4, *f, rng);
    while (rank(*f, p) != 4);
    const MatrixCode t = transform_code(c, q, p);
    CHECK(weight_distribution(t) == dist);
    const Matrix cw = c.random_codeword(rng);
    CHECK(t.contains(mul(*f, mul(*f, q, cw), p)));
}

TEST_CASE("expanded F_{q^m}-linear codes are closed under the scalar action") {
    auto t = make_tower(2, 1, 3);
    Rng rng(44);
    ExtMatrix g(1, 3);
    for (size_t j = 0; j < 3; ++j) g(0, j) = t->random_nonzero(rng);
    const MatrixCode mc = matrix_code_of(make_ext_code(t, g));
    CHECK(mc.K() == 3);
    for_each_codeword(mc, [&](const Matrix& cw) {
        const ExtVec word = from_matrix(*t, cw);
        CHECK(to_matrix(*t, word) == cw);
        for (Ext alpha = 1; alpha < 8; ++alpha) {
            ExtVec scaled(word.size());
            for (size_t j = 0; j < word.size(); ++j) scaled[j] = t->mul(alpha, word[j]);
            CHECK(mc.contains(to_matrix(*t, scaled)));
        }
        return false;
    });
}

TEST_CASE("rank counting matches exhaustive enumeration") {
    auto f = BaseField::make(2, 1);
    MatrixCode all(f, 3, 3, Matrix::identity(9));
    const auto dist = weight_distribution(all);
    for (unsigned w = 0; w <= 3; ++w) CHECK(count_rank_exactly(3, 3, w, 2) == dist[w]);
    auto f3 = BaseField::make(3, 1);
    MatrixCode all3(f3, 2, 3, Matrix::identity(6));
    const auto d3 = weight_distribution(all3);
    for (unsigned w = 0; w <= 2; ++w) CHECK(count_rank_exactly(2, 3, w, 3) == d3[w]);
}

TEST_CASE("GV rank") {
    CHECK(gv_rank(23, 8, 92, 16) == 4);
    for (unsigned K = 1; K < 20; ++K) CHECK(gv_rank(5, 5, K + 1, 2) <= gv_rank(5, 5, K, 2));
    CHECK_THROWS_AS(gv_rank(3, 3, 10, 2), ParameterError);
}

TEST_CASE("decoding through a low-rank search") {
    auto f = BaseField::make(2, 1);
    Rng rng(45);
    int decoded = 0;
    for (int it = 0; it < 10; ++it) {
        MatrixCode c(f, 5, 5, Matrix::random(4, 25, *f, rng));
        const Matrix cw = c.random_codeword(rng);
        const Matrix e = random_rank_matrix(*f, 5, 5, 1, rng);
        const Matrix received = add(*f, cw, e);
        auto backend = [](const MatrixCode& code, size_t w) -> std::optional<Matrix> {
            const MinWeight mw = min_rank_weight_bruteforce(code);
            if (!mw.weight || *mw.weight != w) return std::nullopt;
            return mw.witness;
        };
        const DecodeResult r = decode_via_low_rank(c, received, 1, backend);
        if (r.outcome != Outcome::found) continue;
        ++decoded;
        CHECK(c.contains(r.codeword));
        CHECK(rank_weight(*f, r.error) == 1);
        CHECK(add(*f, r.codeword, r.error) == received);
    }
    CHECK(decoded >= 8);
}

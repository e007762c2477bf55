#include "rmc/oracle.hpp"

namespace rmc {

void for_each_codeword(const MatrixCode& c, const std::function<bool(const Matrix&)>& visit) {
    const BaseField& f = c.field();
    const size_t K = c.K();
    BigInt total = boost::multiprecision::pow(BigInt(f.q()), static_cast<unsigned>(K));
    if (total > kCodewordCap) throw OracleRefused("codeword enumeration exceeds the 2^24 cap");
    const size_t len = c.m() * c.n();
    std::vector<Fq> cur(len, 0);
    std::vector<Fq> digits(K, 0);
    if (visit(unflatten(c.m(), c.n(), cur))) return;
    // odometer over coefficient vectors; changing digit i by delta adds delta * g_i
    const std::uint64_t count = static_cast<std::uint64_t>(total);
    for (std::uint64_t step = 1; step < count; ++step) {
        size_t i = 0;
        while (digits[i] == f.q() - 1) {
            axpy(f, cur, c.generator().row(i), f.neg(digits[i]));
            digits[i] = 0;
            ++i;
        }
        axpy(f, cur, c.generator().row(i), f.sub(static_cast<Fq>(digits[i] + 1), digits[i]));
        ++digits[i];
        if (visit(unflatten(c.m(), c.n(), cur))) return;
    }
}

MinWeight min_rank_weight_bruteforce(const MatrixCode& c) {
    const BaseField& f = c.field();
    MinWeight best;
    for_each_codeword(c, [&](const Matrix& cw) {
        const size_t r = rank_weight(f, cw);
        if (r > 0 && (!best.weight || r < *best.weight)) {
            best.weight = r;
            best.witness = cw;
        }
        return best.weight && *best.weight == 1;
    });
    return best;
}

std::vector<std::uint64_t> weight_distribution(const MatrixCode& c) {
    std::vector<std::uint64_t> hist(std::min(c.m(), c.n()) + 1, 0);
    for_each_codeword(c, [&](const Matrix& cw) {
        hist[rank_weight(c.field(), cw)]++;
        return false;
    });
    return hist;
}

void enumerate_subspaces(const BaseField& f, size_t m, size_t w, const std::function<void(const Subspace&)>& visit) {
    if (w > m) return;
    if (gaussian_binomial(static_cast<unsigned>(m), static_cast<unsigned>(w), f.q()) > kSubspaceCap)
        throw OracleRefused("subspace enumeration exceeds the 10^6 cap");
    const unsigned q = f.q();
    std::vector<size_t> piv(w);
    for (size_t i = 0; i < w; ++i) piv[i] = i;
    for (;;) {
        // free positions: (row i, column j) with j > piv[i] and j not a pivot
        std::vector<bool> is_piv(m, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::pair<size_t, size_t>> free;
        for (size_t i = 0; i < w; ++i)
            for (size_t j = piv[i] + 1; j < m; ++j)
                if (!is_piv[j]) free.emplace_back(i, j);
        std::vector<unsigned> digits(free.size(), 0);
        for (;;) {
            Matrix b(w, m);
            for (size_t i = 0; i < w; ++i) b(i, piv[i]) = 1;
            for (size_t k = 0; k < free.size(); ++k) b(free[k].first, free[k].second) = static_cast<Fq>(digits[k]);
            visit(Subspace::from_rows(f, b.rows() ? b : Matrix(0, m)));
            size_t k = 0;
            while (k < digits.size() && digits[k] == q - 1) digits[k++] = 0;
            if (k == digits.size()) break;
            ++digits[k];
        }
        // next pivot combination
        size_t i = w;
        while (i > 0 && piv[i - 1] == m - w + (i - 1)) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (size_t j = i; j < w; ++j) piv[j] = piv[j - 1] + 1;
    }
}

std::vector<Subspace> all_subspaces(const BaseField& f, size_t m, size_t w) {
    std::vector<Subspace> out;
    enumerate_subspaces(f, m, w, [&](const Subspace& s) { out.push_back(s); });
    return out;
}

Matrix random_rank_matrix(const BaseField& f, size_t m, size_t n, size_t w, Rng& rng) {
    if (w > std::min(m, n)) throw ParameterError("rank exceeds matrix dimensions");
    if (w == 0) return Matrix(m, n);
    Matrix a, b;
    do a = Matrix::random(m, w, f, rng);
    while (rank(f, a) != w);
    do b = Matrix::random(w, n, f, rng);
    while (rank(f, b) != w);
    return mul(f, a, b);
}

PlantedInstance plant(BaseFieldPtr fp, size_t m, size_t n, size_t K, size_t w, size_t a, Rng& rng) {
    const BaseField& f = *fp;
    if (w > std::min(m, n) || a > std::min(w, n)) throw ParameterError("impossible planted shape");
    if (K < 1 || K > m * n) throw ParameterError("code dimension out of range");
    PlantedInstance out;
    out.planted = random_rank_matrix(f, m, n, w, rng);
    const auto flat = flatten(out.planted);
    for (;;) {
        Matrix gen(0, m * n);
        gen.append_row(flat);
        Matrix extra = Matrix::random(K - 1, m * n, f, rng);
        for (size_t i = 0; i < extra.rows(); ++i) gen.append_row(extra.row(i));
        if (rank(f, gen) != K) continue;
        // hide the planted word among random combinations
        Matrix mix;
        do mix = Matrix::random(K, K, f, rng);
        while (rank(f, mix) != K);
        out.code = MatrixCode(fp, m, n, mul(f, mix, gen));
        break;
    }
    out.hints.vectors = Matrix(0, m);
    out.hints.coeffs = Matrix(0, n);
    if (a > 0) {
        for (;;) {
            Matrix lambda = Matrix::random(a, n, f, rng);
            if (rank(f, lambda) != a) continue;
            Matrix vec = mul(f, lambda, out.planted.transpose());  // row i = sum_j lambda_ij c_{.,j}
            if (rank(f, vec) != a) continue;
            out.hints.coeffs = lambda;
            out.hints.vectors = vec;
            break;
        }
    }
    return out;
}

}  // namespace rmc

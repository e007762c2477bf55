#include "rmc/rank_code.hpp"

#include <mutex>

namespace rmc {

size_t rank_weight(const BaseField& f, const Matrix& cw) { return rank(f, cw); }

std::vector<Fq> flatten(const Matrix& cw) {
    const size_t m = cw.rows(), n = cw.cols();
    std::vector<Fq> flat(m * n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < m; ++i) flat[j * m + i] = cw(i, j);
    return flat;
}

Matrix unflatten(size_t m, size_t n, std::span<const Fq> flat) {
    if (flat.size() != m * n) throw ParameterError("flattened word has wrong length");
    Matrix cw(m, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < m; ++i) cw(i, j) = flat[j * m + i];
    return cw;
}

Subspace column_space(const BaseField& f, const Matrix& cw) { return Subspace::from_rows(f, cw.transpose()); }
Subspace row_space(const BaseField& f, const Matrix& cw) { return Subspace::from_rows(f, cw); }

struct MatrixCode::Cache {
    std::once_flag once;
    Matrix parity, parity_t;
};

MatrixCode::MatrixCode(BaseFieldPtr field, size_t m, size_t n, const Matrix& gen)
    : field_(std::move(field)), m_(m), n_(n), cache_(std::make_shared<Cache>()) {
    if (gen.rows() && gen.cols() != m * n) throw ParameterError("generator width must be m*n");
    if (gen.rows() == 0) {
        gen_ = Matrix(0, m * n);
        return;
    }
    Matrix r = gen;
    const auto piv = rref(*field_, r);
    if (piv.size() == gen.rows())
        gen_ = gen;
    else
        gen_ = r.rows_range(0, piv.size());
}

const Matrix& MatrixCode::parity() const {
    std::call_once(cache_->once, [this] {
        cache_->parity = kernel(*field_, gen_);
        cache_->parity_t = cache_->parity.transpose();
    });
    return cache_->parity;
}

const Matrix& MatrixCode::parity_t() const {
    parity();
    return cache_->parity_t;
}

bool MatrixCode::contains_flat(std::span<const Fq> flat) const {
    const Matrix& h = parity();
    const BaseField& f = *field_;
    for (size_t r = 0; r < h.rows(); ++r) {
        Fq s = 0;
        auto row = h.row(r);
        for (size_t i = 0; i < flat.size(); ++i) s = f.add(s, f.mul(row[i], flat[i]));
        if (s) return false;
    }
    return true;
}

bool MatrixCode::contains(const Matrix& cw) const {
    if (cw.rows() != m_ || cw.cols() != n_) return false;
    return contains_flat(flatten(cw));
}

Matrix MatrixCode::codeword(std::span<const Fq> coeffs) const {
    if (coeffs.size() != K()) throw ParameterError("coefficient vector length differs from K");
    std::vector<Fq> flat(m_ * n_, 0);
    for (size_t i = 0; i < K(); ++i) axpy(*field_, flat, gen_.row(i), coeffs[i]);
    return unflatten(m_, n_, flat);
}

Matrix MatrixCode::random_codeword(Rng& rng) const {
    std::vector<Fq> c(K());
    for (auto& x : c) x = field_->random(rng);
    return codeword(c);
}

MatrixCode transpose_code(const MatrixCode& c) {
    Matrix gen(c.K(), c.m() * c.n());
    for (size_t r = 0; r < c.K(); ++r) {
        const Matrix t = unflatten(c.m(), c.n(), c.generator().row(r)).transpose();
        const auto flat = flatten(t);
        std::copy(flat.begin(), flat.end(), gen.row(r).begin());
    }
    return MatrixCode(c.field_ptr(), c.n(), c.m(), gen);
}

MatrixCode transform_code(const MatrixCode& c, const Matrix& q, const Matrix& p) {
    const BaseField& f = c.field();
    Matrix gen(c.K(), c.m() * c.n());
    for (size_t r = 0; r < c.K(); ++r) {
        const Matrix w = mul(f, mul(f, q, unflatten(c.m(), c.n(), c.generator().row(r))), p);
        const auto flat = flatten(w);
        std::copy(flat.begin(), flat.end(), gen.row(r).begin());
    }
    return MatrixCode(c.field_ptr(), q.rows(), p.cols(), gen);
}

Matrix to_matrix(const FieldTower& t, std::span<const Ext> word) {
    Matrix cw(t.m(), word.size());
    std::vector<Fq> col(t.m());
    for (size_t j = 0; j < word.size(); ++j) {
        if (!t.valid(word[j])) throw ParameterError("word entry outside the extension field");
        t.coords_into(word[j], col);
        for (size_t i = 0; i < t.m(); ++i) cw(i, j) = col[i];
    }
    return cw;
}

ExtVec from_matrix(const FieldTower& t, const Matrix& cw) {
    if (cw.rows() != t.m()) throw ParameterError("matrix height differs from m");
    ExtVec word(cw.cols());
    std::vector<Fq> col(t.m());
    for (size_t j = 0; j < cw.cols(); ++j) {
        for (size_t i = 0; i < t.m(); ++i) col[i] = cw(i, j);
        word[j] = t.from_coords(col);
    }
    return word;
}

ExtLinearCode make_ext_code(TowerPtr tower, const ExtMatrix& gen) {
    ExtLinearCode c;
    c.generator = gen.rows() ? row_basis(*tower, gen) : ExtMatrix(0, gen.cols());
    c.tower = std::move(tower);
    return c;
}

MatrixCode matrix_code_of(const ExtLinearCode& c) {
    const FieldTower& t = *c.tower;
    const size_t m = t.m(), n = c.n();
    Matrix gen(c.k() * m, m * n);
    ExtVec scaled(n);
    size_t out = 0;
    for (size_t r = 0; r < c.k(); ++r)
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < n; ++j) scaled[j] = t.mul(t.basis()[i], c.generator(r, j));
            const auto flat = flatten(to_matrix(t, scaled));
            std::copy(flat.begin(), flat.end(), gen.row(out++).begin());
        }
    return MatrixCode(t.base_ptr(), m, n, gen);
}

BigInt count_rank_exactly(unsigned m, unsigned n, unsigned w, unsigned q) {
    if (w > m || w > n) return 0;
    BigInt prod = 1, Q = q;
    const BigInt qm = boost::multiprecision::pow(Q, m);
    for (unsigned i = 0; i < w; ++i) prod *= qm - boost::multiprecision::pow(Q, i);
    return gaussian_binomial(n, w, q) * prod;
}

unsigned gv_rank(unsigned m, unsigned n, unsigned K, unsigned q) {
    if (K > m * n) throw ParameterError("K exceeds m*n");
    const BigInt target = boost::multiprecision::pow(BigInt(q), m * n - K);
    BigInt total = 0;
    for (unsigned w = 0;; ++w) {
        total += count_rank_exactly(m, n, w, q);
        if (total >= target) return w;
    }
}

DecodeResult decode_via_low_rank(const MatrixCode& c, const Matrix& received, size_t w, const LowRankBackend& search) {
    const BaseField& f = c.field();
    DecodeResult res;
    const bool member = c.contains(received);
    if (w == 0) {
        if (member) {
            res.outcome = Outcome::found;
            res.codeword = received;
            res.error = Matrix(c.m(), c.n());
        }
        return res;
    }
    if (member) return res;
    Matrix gen = c.generator();
    const auto flat_a = flatten(received);
    gen.append_row(flat_a);
    const MatrixCode extended(c.field_ptr(), c.m(), c.n(), gen);
    const auto e = search(extended, w);
    if (!e) return res;
    // e = lambda*A + (word of C); need lambda != 0
    const auto coords = express_in_rows(f, gen, flatten(*e));
    if (!coords || coords->back() == 0) return res;
    const Matrix err = scale(f, *e, f.inv(coords->back()));
    const Matrix cw = sub(f, received, err);
    if (!c.contains(cw) || rank_weight(f, err) != w) return res;
    res.outcome = Outcome::found;
    res.codeword = cw;
    res.error = err;
    return res;
}

}  // namespace rmc

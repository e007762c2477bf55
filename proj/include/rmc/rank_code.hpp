#pragma once

// Matrix codes over F_q and F_{q^m}-linear codes in the rank metric.
//
// A codeword is an m x n Matrix. Inside a code it is flattened column-major:
// entry (i, j) sits at index j*m + i, so column j is contiguous.

#include <functional>
#include <memory>
#include <optional>

#include "rmc/ext_algebra.hpp"
#include "rmc/subspace.hpp"

namespace rmc {

size_t rank_weight(const BaseField& f, const Matrix& cw);
std::vector<Fq> flatten(const Matrix& cw);
Matrix unflatten(size_t m, size_t n, std::span<const Fq> flat);
/// Column space of cw as a subspace of F_q^m.
Subspace column_space(const BaseField& f, const Matrix& cw);
Subspace row_space(const BaseField& f, const Matrix& cw);

class MatrixCode {
  public:
    MatrixCode() = default;
    /// Rows of `gen` are flattened codewords; dependent rows are reduced away.
    MatrixCode(BaseFieldPtr field, size_t m, size_t n, const Matrix& gen);

    const BaseField& field() const { return *field_; }
    const BaseFieldPtr& field_ptr() const { return field_; }
    size_t m() const { return m_; }
    size_t n() const { return n_; }
    size_t K() const { return gen_.rows(); }
    Rational k() const { return Rational(K(), m_); }
    const Matrix& generator() const { return gen_; }
    /// (mn - K) x mn, computed once on first use.
    const Matrix& parity() const;
    /// Parity matrix transposed: row t lists the coefficient of flat entry t in every equation.
    const Matrix& parity_t() const;

    bool contains(const Matrix& cw) const;
    bool contains_flat(std::span<const Fq> flat) const;
    Matrix codeword(std::span<const Fq> coeffs) const;
    Matrix random_codeword(Rng& rng) const;

  private:
    struct Cache;
    BaseFieldPtr field_;
    size_t m_ = 0, n_ = 0;
    Matrix gen_;
    std::shared_ptr<Cache> cache_;
};

MatrixCode transpose_code(const MatrixCode& c);
/// {Q M P : M in C}.
MatrixCode transform_code(const MatrixCode& c, const Matrix& q, const Matrix& p);

/// Column j is the basis expansion of word[j].
Matrix to_matrix(const FieldTower& t, std::span<const Ext> word);
ExtVec from_matrix(const FieldTower& t, const Matrix& cw);

struct ExtLinearCode {
    TowerPtr tower;
    ExtMatrix generator;  // k x n, full rank
    size_t n() const { return generator.cols(); }
    size_t k() const { return generator.rows(); }
};

/// Row-reduces the generator; the dimension is the true rank.
ExtLinearCode make_ext_code(TowerPtr tower, const ExtMatrix& gen);
/// Rows are to_matrix(beta_i * g) for every generator row g and basis element beta_i.
MatrixCode matrix_code_of(const ExtLinearCode& c);

/// Number of m x n matrices over F_q of rank exactly w.
BigInt count_rank_exactly(unsigned m, unsigned n, unsigned w, unsigned q);
/// Smallest w with #{rank <= w} >= q^(mn - K).
unsigned gv_rank(unsigned m, unsigned n, unsigned K, unsigned q);

enum class Outcome { found, not_found };

struct DecodeResult {
    Outcome outcome = Outcome::not_found;
    Matrix codeword;
    Matrix error;
};

/// Finds a rank-w word in `code`, or nothing.
using LowRankBackend = std::function<std::optional<Matrix>(const MatrixCode& code, size_t w)>;

/// Returns c in C with rank(A - c) = w by searching span(C, A) for a weight-w word.
DecodeResult decode_via_low_rank(const MatrixCode& c, const Matrix& received, size_t w, const LowRankBackend& search);

}  // namespace rmc

#pragma once

// Dense matrices over F_q and Gaussian elimination. Pivoting is always
// "first nonzero entry, columns left to right", so every routine here is
// deterministic.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rmc/field.hpp"

namespace rmc {

class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    Matrix(size_t rows, size_t cols, std::vector<Fq> data);

    static Matrix identity(size_t n);
    static Matrix random(size_t rows, size_t cols, const BaseField& f, Rng& rng);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Fq operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    Fq& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    std::span<Fq> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Fq> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Fq>& data() const { return data_; }

    bool is_zero() const;
    Matrix transpose() const;
    void append_row(std::span<const Fq> r);
    Matrix rows_range(size_t begin, size_t end) const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Fq> data_;
};

/// dst += c * src (element-wise over F_q).
void axpy(const BaseField& f, std::span<Fq> dst, std::span<const Fq> src, Fq c);
void scale_row(const BaseField& f, std::span<Fq> r, Fq c);

Matrix add(const BaseField& f, const Matrix& a, const Matrix& b);
Matrix sub(const BaseField& f, const Matrix& a, const Matrix& b);
Matrix mul(const BaseField& f, const Matrix& a, const Matrix& b);
Matrix scale(const BaseField& f, const Matrix& a, Fq c);

/// Reduced row echelon form in place. Returns pivot columns; rows beyond the
/// rank are zero. Only the first `limit` columns are used for pivots.
std::vector<size_t> rref(const BaseField& f, Matrix& a, size_t limit = static_cast<size_t>(-1));
size_t rank(const BaseField& f, Matrix a);
/// Basis (as rows) of {x : a x^T = 0}.
Matrix kernel(const BaseField& f, const Matrix& a);
/// Nonzero rows of the RREF.
Matrix row_basis(const BaseField& f, const Matrix& a);
std::optional<Matrix> inverse(const BaseField& f, const Matrix& a);
/// Extends the independent rows of `a` with unit vectors (lowest index first)
/// to an invertible square matrix. The first rows equal `a`.
Matrix complete_basis(const BaseField& f, const Matrix& a);

/// Solutions of A x = b: a particular solution plus a kernel basis.
struct AffineSolution {
    std::vector<Fq> particular;
    Matrix kernel;  // rows
};
std::optional<AffineSolution> solve_affine(const BaseField& f, const Matrix& a, std::span<const Fq> b);

/// Coordinates x with x * basis = v, if v lies in the row space of `basis`
/// (`basis` must have independent rows).
std::optional<std::vector<Fq>> express_in_rows(const BaseField& f, const Matrix& basis, std::span<const Fq> v);

}  // namespace rmc

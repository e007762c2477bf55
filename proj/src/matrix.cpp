#include "rmc/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace rmc {

Matrix::Matrix(size_t rows, size_t cols, std::vector<Fq> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw ParameterError("matrix data size mismatch");
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::random(size_t rows, size_t cols, const BaseField& f, Rng& rng) {
    Matrix m(rows, cols);
    for (auto& x : m.data_) x = f.random(rng);
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Fq x) { return x == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    return t;
}

void Matrix::append_row(std::span<const Fq> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw ParameterError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

Matrix Matrix::rows_range(size_t begin, size_t end) const {
    Matrix out(end - begin, cols_);
    std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_, out.data_.begin());
    return out;
}

void axpy(const BaseField& f, std::span<Fq> dst, std::span<const Fq> src, Fq c) {
    const size_t n = dst.size();
    if (c == 0) return;
    Fq* d = dst.data();
    const Fq* s = src.data();
    if (f.char2()) {
        if (c == 1) {
            for (size_t i = 0; i < n; ++i) d[i] ^= s[i];
        } else {
            const Fq* row = f.mul_row(c);
            for (size_t i = 0; i < n; ++i) d[i] ^= row[s[i]];
        }
        return;
    }
    const Fq* row = f.mul_row(c);
    for (size_t i = 0; i < n; ++i) d[i] = f.add(d[i], row[s[i]]);
}

void scale_row(const BaseField& f, std::span<Fq> r, Fq c) {
    if (c == 1) return;
    const Fq* row = f.mul_row(c);
    for (auto& x : r) x = row[x];
}

Matrix add(const BaseField& f, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("matrix shape mismatch");
    Matrix out = a;
    for (size_t r = 0; r < a.rows(); ++r) axpy(f, out.row(r), b.row(r), 1);
    return out;
}

Matrix sub(const BaseField& f, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("matrix shape mismatch");
    Matrix out = a;
    for (size_t r = 0; r < a.rows(); ++r) axpy(f, out.row(r), b.row(r), f.neg(1));
    return out;
}

Matrix mul(const BaseField& f, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ParameterError("matrix product shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) axpy(f, out.row(i), b.row(k), a(i, k));
    return out;
}

Matrix scale(const BaseField& f, const Matrix& a, Fq c) {
    Matrix out = a;
    for (size_t r = 0; r < a.rows(); ++r) scale_row(f, out.row(r), c);
    return out;
}

std::vector<size_t> rref(const BaseField& f, Matrix& a, size_t limit) {
    std::vector<size_t> pivots;
    const size_t rows = a.rows(), cols = std::min(a.cols(), limit);
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t piv = r;
        while (piv < rows && a(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
        // entries left of `col` in row r are already zero
        auto prow = a.row(r).subspan(col);
        const Fq lead = prow[0];
        if (lead != 1) scale_row(f, prow, f.inv(lead));
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Fq c = a(i, col);
            if (c) axpy(f, a.row(i).subspan(col), prow, f.neg(c));
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

size_t rank(const BaseField& f, Matrix a) { return rref(f, a).size(); }

namespace {

Matrix kernel_from_rref(const BaseField& f, const Matrix& r, const std::vector<size_t>& pivots, size_t ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix k(ncols - pivots.size(), ncols);
    size_t out = 0;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        k(out, free) = 1;
        for (size_t i = 0; i < pivots.size(); ++i) k(out, pivots[i]) = f.neg(r(i, free));
        ++out;
    }
    return k;
}

}  // namespace

Matrix kernel(const BaseField& f, const Matrix& a) {
    Matrix r = a;
    const auto pivots = rref(f, r);
    return kernel_from_rref(f, r, pivots, a.cols());
}

Matrix row_basis(const BaseField& f, const Matrix& a) {
    Matrix r = a;
    const auto pivots = rref(f, r);
    return r.rows_range(0, pivots.size());
}

std::optional<Matrix> inverse(const BaseField& f, const Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(f, aug, n);
    if (pivots.size() != n) return std::nullopt;
    Matrix inv(n, n);
    for (size_t i = 0; i < n; ++i) std::copy(aug.row(i).begin() + n, aug.row(i).end(), inv.row(i).begin());
    return inv;
}

Matrix complete_basis(const BaseField& f, const Matrix& a) {
    Matrix r = a;
    const auto pivots = rref(f, r);
    if (pivots.size() != a.rows()) throw ParameterError("rows to complete are not linearly independent");
    const size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix out = a;
    std::vector<Fq> unit(n, 0);
    for (size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        unit[j] = 1;
        out.append_row(unit);
        unit[j] = 0;
    }
    return out;
}

std::optional<AffineSolution> solve_affine(const BaseField& f, const Matrix& a, std::span<const Fq> b) {
    if (b.size() != a.rows()) throw ParameterError("right-hand side length mismatch");
    const size_t n = a.cols();
    Matrix aug(a.rows(), n + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
        aug(i, n) = b[i];
    }
    const auto pivots = rref(f, aug, n);
    for (size_t i = pivots.size(); i < aug.rows(); ++i)
        if (aug(i, n) != 0) return std::nullopt;
    AffineSolution sol;
    sol.particular.assign(n, 0);
    for (size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug(i, n);
    sol.kernel = kernel_from_rref(f, aug, pivots, n);
    return sol;
}

std::optional<std::vector<Fq>> express_in_rows(const BaseField& f, const Matrix& basis, std::span<const Fq> v) {
    auto sol = solve_affine(f, basis.transpose(), v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

}  // namespace rmc

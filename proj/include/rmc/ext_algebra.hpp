#pragma once

// Matrices and polynomials with coefficients in F_{q^m}.

#include <optional>
#include <span>
#include <vector>

#include "rmc/field.hpp"
#include "rmc/matrix.hpp"

namespace rmc {

using ExtVec = std::vector<Ext>;

class ExtMatrix {
  public:
    ExtMatrix() = default;
    ExtMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Ext operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    Ext& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    std::span<Ext> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Ext> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
    void append_row(std::span<const Ext> r);
    ExtMatrix transpose() const;
    ExtMatrix rows_range(size_t begin, size_t end) const;

    friend bool operator==(const ExtMatrix&, const ExtMatrix&) = default;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Ext> data_;
};

ExtMatrix mul(const FieldTower& t, const ExtMatrix& a, const ExtMatrix& b);
std::vector<size_t> rref(const FieldTower& t, ExtMatrix& a);
size_t rank(const FieldTower& t, ExtMatrix a);
/// Nonzero rows of the RREF.
ExtMatrix row_basis(const FieldTower& t, const ExtMatrix& a);
/// True iff v lies in the F_{q^m}-row space of `a`.
bool in_row_space(const FieldTower& t, const ExtMatrix& a, std::span<const Ext> v);

/// F_q-span of a list of extension elements, as a matrix of coordinate rows
/// (not reduced).
Matrix coordinate_rows(const FieldTower& t, std::span<const Ext> xs);

namespace extpoly {

using Poly = std::vector<Ext>;  // ascending; trimmed means no trailing zeros

void trim(Poly& a);
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }
Poly from_base(const fqpoly::Poly& a);
/// True when every coefficient lies in F_q.
bool in_base(const FieldTower& t, const Poly& a);
fqpoly::Poly to_base(const FieldTower& t, const Poly& a);

Poly add(const FieldTower& t, const Poly& a, const Poly& b);
Poly sub(const FieldTower& t, const Poly& a, const Poly& b);
Poly mul(const FieldTower& t, const Poly& a, const Poly& b);
Poly scale(const FieldTower& t, Ext c, const Poly& a);
/// Quotient and remainder; throws ArithmeticError for a zero divisor.
std::pair<Poly, Poly> divmod(const FieldTower& t, const Poly& a, const Poly& b);
Poly mod(const FieldTower& t, const Poly& a, const Poly& b);
Poly mulmod(const FieldTower& t, const Poly& a, const Poly& b, const Poly& f);
/// Monic gcd.
Poly gcd(const FieldTower& t, Poly a, Poly b);
/// Inverse of a modulo f, if gcd(a, f) = 1.
std::optional<Poly> inverse_mod(const FieldTower& t, const Poly& a, const Poly& f);
Ext eval(const FieldTower& t, const Poly& a, Ext x);
/// X^k - 1.
Poly x_pow_minus_one(const FieldTower& t, size_t k);

}  // namespace extpoly

}  // namespace rmc

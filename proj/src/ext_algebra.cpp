#include "rmc/ext_algebra.hpp"

#include <algorithm>

namespace rmc {

void ExtMatrix::append_row(std::span<const Ext> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw ParameterError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

ExtMatrix ExtMatrix::transpose() const {
    ExtMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

ExtMatrix ExtMatrix::rows_range(size_t begin, size_t end) const {
    ExtMatrix out(end - begin, cols_);
    std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_, out.data_.begin());
    return out;
}

ExtMatrix mul(const FieldTower& t, const ExtMatrix& a, const ExtMatrix& b) {
    if (a.cols() != b.rows()) throw ParameterError("matrix product shape mismatch");
    ExtMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const Ext c = a(i, k);
            if (!c) continue;
            for (size_t j = 0; j < b.cols(); ++j) out(i, j) = t.add(out(i, j), t.mul(c, b(k, j)));
        }
    return out;
}

std::vector<size_t> rref(const FieldTower& t, ExtMatrix& a) {
    std::vector<size_t> pivots;
    const size_t rows = a.rows(), cols = a.cols();
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t piv = r;
        while (piv < rows && a(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
        const Ext li = t.inv(a(r, col));
        for (size_t c = col; c < cols; ++c) a(r, c) = t.mul(a(r, c), li);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, col) == 0) continue;
            const Ext f = a(i, col);
            for (size_t c = col; c < cols; ++c) a(i, c) = t.sub(a(i, c), t.mul(f, a(r, c)));
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

size_t rank(const FieldTower& t, ExtMatrix a) { return rref(t, a).size(); }

ExtMatrix row_basis(const FieldTower& t, const ExtMatrix& a) {
    ExtMatrix r = a;
    const auto p = rref(t, r);
    return r.rows_range(0, p.size());
}

bool in_row_space(const FieldTower& t, const ExtMatrix& a, std::span<const Ext> v) {
    ExtMatrix b = row_basis(t, a);
    const size_t before = b.rows();
    b.append_row(v);
    return rank(t, b) == before;
}

Matrix coordinate_rows(const FieldTower& t, std::span<const Ext> xs) {
    Matrix out(xs.size(), t.m());
    for (size_t i = 0; i < xs.size(); ++i) t.coords_into(xs[i], out.row(i));
    return out;
}

namespace extpoly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly from_base(const fqpoly::Poly& a) {
    Poly out(a.begin(), a.end());
    trim(out);
    return out;
}

bool in_base(const FieldTower& t, const Poly& a) {
    return std::all_of(a.begin(), a.end(), [&](Ext c) { return t.in_base(c); });
}

fqpoly::Poly to_base(const FieldTower& t, const Poly& a) {
    if (!in_base(t, a)) throw ParameterError("polynomial has coefficients outside the base field");
    fqpoly::Poly out;
    for (Ext c : a) out.push_back(static_cast<Fq>(c));
    return out;
}

Poly add(const FieldTower& t, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = t.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(out);
    return out;
}

Poly sub(const FieldTower& t, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = t.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(out);
    return out;
}

Poly mul(const FieldTower& t, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = t.add(out[i + j], t.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

Poly scale(const FieldTower& t, Ext c, const Poly& a) {
    Poly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = t.mul(c, a[i]);
    trim(out);
    return out;
}

std::pair<Poly, Poly> divmod(const FieldTower& t, const Poly& a0, const Poly& b0) {
    Poly a = a0, b = b0;
    trim(a);
    trim(b);
    if (b.empty()) throw ArithmeticError("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    const Ext lead_inv = t.inv(b.back());
    Poly q(a.size() - b.size() + 1, 0);
    for (size_t i = a.size(); i-- >= b.size();) {
        const Ext c = t.mul(a[i], lead_inv);
        if (!c) continue;
        const size_t shift = i + 1 - b.size();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] = t.sub(a[shift + j], t.mul(c, b[j]));
    }
    trim(q);
    trim(a);
    return {q, a};
}

Poly mod(const FieldTower& t, const Poly& a, const Poly& b) { return divmod(t, a, b).second; }

Poly mulmod(const FieldTower& t, const Poly& a, const Poly& b, const Poly& f) { return mod(t, mul(t, a, b), f); }

Poly gcd(const FieldTower& t, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(t, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = scale(t, t.inv(a.back()), a);
    return a;
}

std::optional<Poly> inverse_mod(const FieldTower& t, const Poly& a, const Poly& f) {
    // extended Euclid tracking only the coefficient of a
    Poly r0 = f, r1 = mod(t, a, f);
    Poly s0 = {}, s1 = {1};
    trim(r0);
    while (!r1.empty()) {
        auto [q, r] = divmod(t, r0, r1);
        Poly s = sub(t, s0, mul(t, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) return std::nullopt;
    return mod(t, scale(t, t.inv(r0[0]), s0), f);
}

Ext eval(const FieldTower& t, const Poly& a, Ext x) {
    Ext acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = t.add(t.mul(acc, x), a[i]);
    return acc;
}

Poly x_pow_minus_one(const FieldTower& t, size_t k) {
    Poly p(k + 1, 0);
    p[0] = t.neg(1);
    p[k] = 1;
    return p;
}

}  // namespace extpoly

}  // namespace rmc

#include "rmc/subspace.hpp"

#include <cmath>

namespace rmc {

double to_double(const Rational& r) { return static_cast<double>(r); }

double log2_big(const BigInt& x) {
    if (x <= 0) return -INFINITY;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    if (bits <= 60) return std::log2(static_cast<double>(x));
    const BigInt top = x >> (bits - 60);
    return std::log2(static_cast<double>(top)) + (bits - 60);
}

Subspace Subspace::from_rows(const BaseField& f, const Matrix& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    Matrix r = rows;
    s.pivots_ = rref(f, r);
    s.basis_ = r.rows_range(0, s.pivots_.size());
    return s;
}

Subspace Subspace::zero(size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(0, ambient);
    return s;
}

Subspace Subspace::full(size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix::identity(ambient);
    for (size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
}

bool Subspace::contains(const BaseField& f, std::span<const Fq> v) const {
    if (v.size() != ambient_) throw ParameterError("ambient dimension mismatch");
    std::vector<Fq> w(v.begin(), v.end());
    // reduce against the RREF rows using their pivots
    for (size_t i = 0; i < pivots_.size(); ++i) {
        const Fq c = w[pivots_[i]];
        if (c) axpy(f, w, basis_.row(i), f.neg(c));
    }
    for (Fq x : w)
        if (x) return false;
    return true;
}

bool Subspace::contains(const BaseField& f, const Subspace& e) const {
    if (e.ambient_ != ambient_) throw ParameterError("ambient dimension mismatch");
    for (size_t i = 0; i < e.dim(); ++i)
        if (!contains(f, e.basis_.row(i))) return false;
    return true;
}

Subspace sum(const BaseField& f, const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ParameterError("ambient dimension mismatch");
    Matrix m = a.basis();
    if (m.rows() == 0) m = Matrix(0, a.ambient_dim());
    for (size_t i = 0; i < b.dim(); ++i) m.append_row(b.basis().row(i));
    return Subspace::from_rows(f, m);
}

Subspace intersection(const BaseField& f, const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ParameterError("ambient dimension mismatch");
    const size_t n = a.ambient_dim();
    // (A^perp + B^perp)^perp
    Matrix pa = a.dim() ? kernel(f, a.basis()) : Matrix::identity(n);
    Matrix pb = b.dim() ? kernel(f, b.basis()) : Matrix::identity(n);
    Matrix both(0, n);
    for (size_t i = 0; i < pa.rows(); ++i) both.append_row(pa.row(i));
    for (size_t i = 0; i < pb.rows(); ++i) both.append_row(pb.row(i));
    if (both.rows() == 0) return Subspace::full(n);
    return Subspace::from_rows(f, kernel(f, both));
}

BigInt gaussian_binomial(unsigned m, unsigned w, unsigned q) {
    if (w > m) return 0;
    BigInt num = 1, den = 1, Q = q;
    for (unsigned i = 0; i < w; ++i) {
        num *= boost::multiprecision::pow(Q, m - i) - 1;
        den *= boost::multiprecision::pow(Q, w - i) - 1;
    }
    return num / den;
}

Rational success_probability(unsigned m, unsigned r, unsigned w, unsigned a, unsigned q) {
    if (!(a <= w && w <= r && r <= m)) throw ParameterError("need a <= w <= r <= m");
    return Rational(gaussian_binomial(r - a, w - a, q), gaussian_binomial(m - a, w - a, q));
}

Subspace sample_uniform(const BaseField& f, size_t ambient, size_t d, Rng& rng) {
    if (d > ambient) throw ParameterError("subspace dimension exceeds ambient dimension");
    if (d == 0) return Subspace::zero(ambient);
    for (;;) {
        Subspace s = Subspace::from_rows(f, Matrix::random(d, ambient, f, rng));
        if (s.dim() == d) return s;
    }
}

Subspace sample_uniform_containing(const BaseField& f, const Subspace& e, size_t r, Rng& rng) {
    const size_t m = e.ambient_dim(), a = e.dim();
    if (r < a) throw ParameterError("target dimension below that of the contained subspace");
    if (r > m) throw ParameterError("target dimension exceeds ambient dimension");
    // complement: coordinates that are not pivots of e
    std::vector<size_t> free;
    {
        std::vector<bool> piv(m, false);
        for (auto p : e.pivots()) piv[p] = true;
        for (size_t j = 0; j < m; ++j)
            if (!piv[j]) free.push_back(j);
    }
    Subspace u = sample_uniform(f, m - a, r - a, rng);
    Matrix rows = e.dim() ? e.basis() : Matrix(0, m);
    std::vector<Fq> lifted(m);
    for (size_t i = 0; i < u.dim(); ++i) {
        std::fill(lifted.begin(), lifted.end(), 0);
        for (size_t j = 0; j < free.size(); ++j) lifted[free[j]] = u.basis()(i, j);
        rows.append_row(lifted);
    }
    return Subspace::from_rows(f, rows);
}

}  // namespace rmc

namespace rmc {

ContainmentBench bench_containment(const BaseField& f, size_t m, size_t r, size_t w, size_t a, std::uint64_t trials,
                                   std::uint64_t seed) {
    ContainmentBench b;
    b.exact = success_probability(static_cast<unsigned>(m), static_cast<unsigned>(r), static_cast<unsigned>(w),
                                  static_cast<unsigned>(a), f.q());
    b.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, "bench-prob", i));
        const Subspace e = sample_uniform(f, m, w, rng);
        Matrix coef;
        do coef = Matrix::random(a, w, f, rng);
        while (rank(f, coef) != a);
        const Subspace ep = a ? Subspace::from_rows(f, mul(f, coef, e.basis())) : Subspace::zero(m);
        const Subspace big = sample_uniform_containing(f, ep, r, rng);
        if (big.contains(f, e)) ++b.hits;
    }
    const double p = to_double(b.exact);
    b.empirical = trials ? static_cast<double>(b.hits) / static_cast<double>(trials) : 0;
    b.sigma = trials ? std::sqrt(p * (1 - p) / static_cast<double>(trials)) : 0;
    b.z = b.sigma > 0 ? (b.empirical - p) / b.sigma : 0;
    b.within_3sigma = b.sigma > 0 ? std::abs(b.z) <= 3 : b.empirical == p;
    return b;
}

}  // namespace rmc

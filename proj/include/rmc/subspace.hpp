#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "rmc/matrix.hpp"

namespace rmc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);
double log2_big(const BigInt& x);

/// Subspace of F_q^n stored by its RREF basis. Equal subspaces have equal bases.
class Subspace {
  public:
    Subspace() = default;
    static Subspace from_rows(const BaseField& f, const Matrix& rows);
    static Subspace zero(size_t ambient);
    static Subspace full(size_t ambient);

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    bool contains(const BaseField& f, std::span<const Fq> v) const;
    bool contains(const BaseField& f, const Subspace& e) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

  private:
    size_t ambient_ = 0;
    Matrix basis_;
    std::vector<size_t> pivots_;
};

Subspace sum(const BaseField& f, const Subspace& a, const Subspace& b);
Subspace intersection(const BaseField& f, const Subspace& a, const Subspace& b);

/// [m, w]_q; zero when w > m.
BigInt gaussian_binomial(unsigned m, unsigned w, unsigned q);
/// [r-a, w-a]_q / [m-a, w-a]_q.
Rational success_probability(unsigned m, unsigned r, unsigned w, unsigned a, unsigned q);

/// Uniform over dim-d subspaces of F_q^ambient.
Subspace sample_uniform(const BaseField& f, size_t ambient, size_t d, Rng& rng);
/// Uniform over dim-r subspaces containing e.
Subspace sample_uniform_containing(const BaseField& f, const Subspace& e, size_t r, Rng& rng);

}  // namespace rmc

namespace rmc {

struct ContainmentBench {
    std::uint64_t trials = 0, hits = 0;
    Rational exact;
    double empirical = 0, sigma = 0, z = 0;
    bool within_3sigma = false;
};

/// Draws E (dim w), E' inside E (dim a), F containing E' (dim r) and counts E in F.
ContainmentBench bench_containment(const BaseField& f, size_t m, size_t r, size_t w, size_t a, std::uint64_t trials,
                                   std::uint64_t seed);

}  // namespace rmc

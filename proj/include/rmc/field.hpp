#pragma once

// Exact arithmetic in F_q (q = p^e <= 256) and in the extension F_{q^m}.
//
// Base elements are integers in [0, q): the coordinate vector over F_p read
// as a base-p number. Extension elements are integers in [0, q^m): the
// polynomial-basis coordinates over F_q read as a base-q number, little-endian.
// Internally arithmetic always uses the polynomial basis; a custom basis only
// changes coords()/from_coords().

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmc/rng.hpp"

namespace rmc {

using Fq = std::uint8_t;
using Ext = unsigned __int128;

class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ArithmeticError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

std::string to_string(Ext x);
Ext parse_ext(const std::string& s);

bool is_prime(std::uint64_t n);

class BaseField {
  public:
    /// F_{p^e} with the lexicographically-first irreducible modulus of degree e over F_p.
    static std::shared_ptr<const BaseField> make(unsigned p, unsigned e);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    bool char2() const { return p_ == 2; }
    bool binary() const { return q_ == 2; }
    /// Coefficients over F_p, ascending, monic, degree e.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Fq add(Fq a, Fq b) const { return char2() ? Fq(a ^ b) : add_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const { return char2() ? Fq(a ^ b) : add_[a * q_ + neg_[b]]; }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::uint64_t n) const;
    /// Row of the multiplication table for the scalar c.
    const Fq* mul_row(Fq c) const { return &mul_[c * q_]; }
    Fq random(Rng& rng) const { return static_cast<Fq>(rng.below(q_)); }
    Fq random_nonzero(Rng& rng) const { return static_cast<Fq>(1 + rng.below(q_ - 1)); }

  private:
    BaseField() = default;
    unsigned p_ = 2, e_ = 1, q_ = 2;
    std::vector<unsigned> modulus_;
    std::vector<Fq> add_, mul_, neg_, inv_;
};

using BaseFieldPtr = std::shared_ptr<const BaseField>;

/// Polynomials over F_q, dense ascending coefficient vectors. Only the
/// helpers needed for modulus search and cyclotomic work are exposed.
namespace fqpoly {
using Poly = std::vector<Fq>;
void trim(Poly& a);
Poly mul(const BaseField& f, const Poly& a, const Poly& b);
Poly mod(const BaseField& f, Poly a, const Poly& m);
Poly gcd(const BaseField& f, Poly a, Poly b);
bool is_irreducible(const BaseField& f, const Poly& g);
/// Lexicographically-first monic irreducible of the given degree: monic
/// polynomials are ordered by the integer whose base-q digits are the
/// coefficients (ascending degree = least significant digit).
Poly first_irreducible(const BaseField& f, unsigned degree);
}  // namespace fqpoly

class FieldTower {
  public:
    /// Largest admissible q^m is 2^128 - 1 (encoding width).
    static std::shared_ptr<const FieldTower> make(unsigned p, unsigned e, unsigned m);
    /// Same field, different F_q-basis (must be linearly independent).
    static std::shared_ptr<const FieldTower> with_basis(const std::shared_ptr<const FieldTower>& tower,
                                                        std::vector<Ext> basis);

    const BaseField& base() const { return *base_; }
    const BaseFieldPtr& base_ptr() const { return base_; }
    unsigned p() const { return base_->p(); }
    unsigned e() const { return base_->e(); }
    unsigned q() const { return base_->q(); }
    unsigned m() const { return m_; }
    /// q^m - 1, the largest encoding.
    Ext max_element() const { return max_; }
    /// Ext modulus over F_q, ascending, monic, degree m.
    const std::vector<Fq>& modulus() const { return modulus_; }
    const std::vector<Ext>& basis() const { return basis_; }
    bool polynomial_basis() const { return to_basis_.empty(); }
    bool same_field(const FieldTower& o) const;

    bool valid(Ext x) const { return x <= max_; }
    bool in_base(Ext x) const { return x < q(); }
    Ext embed(Fq c) const { return c; }

    Ext add(Ext a, Ext b) const;
    Ext sub(Ext a, Ext b) const;
    Ext neg(Ext a) const;
    Ext mul(Ext a, Ext b) const;
    Ext scale(Fq c, Ext x) const;
    /// Throws ArithmeticError on zero.
    Ext inv(Ext a) const;
    Ext div(Ext a, Ext b) const { return mul(a, inv(b)); }
    Ext pow(Ext a, Ext n) const;
    Ext frobenius(Ext a) const { return pow(a, q()); }

    /// Polynomial-basis coordinate i.
    Fq digit(Ext x, unsigned i) const;
    /// Coordinates in the tower's basis (length m).
    std::vector<Fq> coords(Ext x) const;
    void coords_into(Ext x, std::span<Fq> out) const;
    Ext from_coords(std::span<const Fq> c) const;

    Ext random(Rng& rng) const;
    Ext random_nonzero(Rng& rng) const;

  private:
    FieldTower() = default;
    std::vector<Fq> poly_coords(Ext x) const;
    Ext from_poly_coords(std::span<const Fq> c) const;
    Ext mul_generic(Ext a, Ext b) const;
    Ext mul_clmul(Ext a, Ext b) const;

    BaseFieldPtr base_;
    unsigned m_ = 1;
    unsigned digit_bits_ = 0;  // > 0 when q is a power of two
    Ext max_ = 1;
    std::vector<Fq> modulus_;
    Ext clmul_modulus_ = 0;  // low m bits of the modulus, binary towers with m <= 64
    bool use_clmul_ = false;
    std::vector<Ext> basis_;
    std::vector<Fq> to_basis_;    // m x m, poly coords -> basis coords (empty for poly basis)
    std::vector<Fq> from_basis_;  // m x m, basis coords -> poly coords
    // log/antilog tables when q^m <= 2^16
    std::vector<std::uint32_t> log_, exp_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

inline TowerPtr make_tower(unsigned p, unsigned e, unsigned m) { return FieldTower::make(p, e, m); }

}  // namespace rmc

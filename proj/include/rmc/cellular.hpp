#pragma once

// Codes over R = K[X]/(f): psi/phi maps, projection modulo a divisor of f,
// folding of quasi-cyclic codes, and the factorization of X^k - 1.
// K is the extension field of a tower; the base field F_q sits inside it.

#include "rmc/rank_code.hpp"

namespace rmc {

using extpoly::Poly;

struct PolyRing {
    TowerPtr tower;
    Poly modulus;  // monic, degree >= 1
    size_t n() const { return modulus.size() - 1; }
};

PolyRing make_ring(TowerPtr tower, Poly modulus);
PolyRing cyclic_ring(TowerPtr tower, size_t n);
bool is_cyclic(const PolyRing& r);

/// Coefficient vector of length n (a reduced mod f first).
ExtVec psi(const PolyRing& r, const Poly& a);
Poly psi_inverse(const ExtVec& v);
/// Row i is psi(X^i a mod f).
ExtMatrix phi(const PolyRing& r, const Poly& a);

struct CellularCode {
    PolyRing ring;
    size_t ell = 0;
    std::vector<std::vector<Poly>> gen;  // s rows of ell polynomials
    size_t s() const { return gen.size(); }
    size_t length() const { return ell * ring.n(); }
};

CellularCode make_cellular(PolyRing ring, std::vector<std::vector<Poly>> gen);
/// Row-reduced expansion over K: dimension <= n*s.
ExtLinearCode expand(const CellularCode& c);
MatrixCode matrix_view(const CellularCode& c);

/// Blockwise reduction modulo g.
ExtVec project_word(const PolyRing& r, const ExtVec& word, const Poly& g);
/// Requires g | f; with rank_metric = true, g must have coefficients in F_q.
CellularCode project(const CellularCode& c, const Poly& g, bool rank_metric = true);

/// c'_{a*m + b} = sum_s c_{a*n + b + s*m}.
ExtVec fold_word(const ExtVec& word, size_t n, size_t m_div, const FieldTower& t);
CellularCode fold(const CellularCode& c, size_t m_div);

/// X^k - 1 over F_q as (monic irreducible, multiplicity), sorted by degree then encoding.
std::vector<std::pair<fqpoly::Poly, unsigned>> factor_cyclic(size_t k, const BaseFieldPtr& f);

/// Integer encoding of a polynomial over F_q (coefficients as base-q digits).
BigInt poly_key(const fqpoly::Poly& p, unsigned q);
std::string poly_to_string(const fqpoly::Poly& p);

struct DivisorConstraints {
    size_t min_degree = 1;
    size_t max_degree = ~size_t{0};
    bool require_x_minus_one = false;
    bool nontrivial = true;  // drop 1, X - 1 and X^k - 1
};

/// Monic divisors of X^k - 1, sorted by degree then encoding.
std::vector<fqpoly::Poly> divisor_menu(size_t k, const BaseFieldPtr& f, const DivisorConstraints& c);

}  // namespace rmc

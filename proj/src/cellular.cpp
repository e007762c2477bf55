#include "rmc/cellular.hpp"

#include <algorithm>
#include <numeric>

namespace rmc {

PolyRing make_ring(TowerPtr tower, Poly modulus) {
    extpoly::trim(modulus);
    if (modulus.size() < 2) throw ParameterError("ring modulus must have degree >= 1");
    if (modulus.back() != 1) throw ParameterError("ring modulus must be monic");
    return PolyRing{std::move(tower), std::move(modulus)};
}

PolyRing cyclic_ring(TowerPtr tower, size_t n) {
    Poly f = extpoly::x_pow_minus_one(*tower, n);
    return make_ring(std::move(tower), std::move(f));
}

bool is_cyclic(const PolyRing& r) {
    const Poly f = extpoly::x_pow_minus_one(*r.tower, r.n());
    return f == r.modulus;
}

ExtVec psi(const PolyRing& r, const Poly& a) {
    Poly red = extpoly::mod(*r.tower, a, r.modulus);
    red.resize(r.n(), 0);
    return red;
}

Poly psi_inverse(const ExtVec& v) {
    Poly p(v.begin(), v.end());
    extpoly::trim(p);
    return p;
}

namespace {

// x * X mod f, on length-n coefficient vectors
void times_x(const FieldTower& t, ExtVec& x, const Poly& f) {
    const size_t n = x.size();
    const Ext top = x[n - 1];
    for (size_t i = n - 1; i > 0; --i) x[i] = x[i - 1];
    x[0] = 0;
    if (top)
        for (size_t i = 0; i < n; ++i) x[i] = t.sub(x[i], t.mul(top, f[i]));
}

}  // namespace

ExtMatrix phi(const PolyRing& r, const Poly& a) {
    const size_t n = r.n();
    ExtMatrix out(n, n);
    ExtVec cur = psi(r, a);
    for (size_t i = 0; i < n; ++i) {
        std::copy(cur.begin(), cur.end(), out.row(i).begin());
        times_x(*r.tower, cur, r.modulus);
    }
    return out;
}

CellularCode make_cellular(PolyRing ring, std::vector<std::vector<Poly>> gen) {
    CellularCode c;
    c.ring = std::move(ring);
    c.ell = gen.empty() ? 0 : gen[0].size();
    for (auto& row : gen) {
        if (row.size() != c.ell) throw ParameterError("generator rows must all have ell entries");
        for (auto& a : row) a = extpoly::mod(*c.ring.tower, a, c.ring.modulus);
    }
    c.gen = std::move(gen);
    return c;
}

ExtLinearCode expand(const CellularCode& c) {
    const size_t n = c.ring.n();
    ExtMatrix g(0, c.length());
    ExtVec row(c.length());
    for (const auto& gr : c.gen) {
        std::vector<ExtMatrix> blocks;
        for (const auto& a : gr) blocks.push_back(phi(c.ring, a));
        for (size_t t = 0; t < n; ++t) {
            for (size_t j = 0; j < c.ell; ++j)
                std::copy(blocks[j].row(t).begin(), blocks[j].row(t).end(), row.begin() + j * n);
            g.append_row(row);
        }
    }
    return make_ext_code(c.ring.tower, g);
}

MatrixCode matrix_view(const CellularCode& c) { return matrix_code_of(expand(c)); }

ExtVec project_word(const PolyRing& r, const ExtVec& word, const Poly& g) {
    const size_t n = r.n();
    if (word.size() % n) throw ParameterError("word length is not a multiple of the ring degree");
    const size_t ell = word.size() / n, dg = g.size() - 1;
    ExtVec out(ell * dg, 0);
    for (size_t j = 0; j < ell; ++j) {
        Poly block(word.begin() + j * n, word.begin() + (j + 1) * n);
        extpoly::trim(block);
        Poly red = extpoly::mod(*r.tower, block, g);
        std::copy(red.begin(), red.end(), out.begin() + j * dg);
    }
    return out;
}

CellularCode project(const CellularCode& c, const Poly& g0, bool rank_metric) {
    const FieldTower& t = *c.ring.tower;
    Poly g = g0;
    extpoly::trim(g);
    if (g.size() < 2 || g.back() != 1) throw ParameterError("divisor must be monic of degree >= 1");
    if (!extpoly::mod(t, c.ring.modulus, g).empty()) throw ParameterError("divisor does not divide the ring modulus");
    if (rank_metric && !extpoly::in_base(t, g))
        throw ParameterError("rank-metric projection needs a divisor with coefficients in F_q; "
                             "otherwise the rank of projected words is not bounded");
    std::vector<std::vector<Poly>> gen = c.gen;
    return make_cellular(make_ring(c.ring.tower, g), std::move(gen));
}

ExtVec fold_word(const ExtVec& word, size_t n, size_t m_div, const FieldTower& t) {
    if (m_div == 0 || n % m_div) throw ParameterError("fold order must divide the block length");
    if (word.size() % n) throw ParameterError("word length is not a multiple of the block length");
    const size_t ell = word.size() / n;
    ExtVec out(ell * m_div, 0);
    for (size_t a = 0; a < ell; ++a)
        for (size_t b = 0; b < m_div; ++b)
            for (size_t s = 0; s < n / m_div; ++s)
                out[a * m_div + b] = t.add(out[a * m_div + b], word[a * n + b + s * m_div]);
    return out;
}

CellularCode fold(const CellularCode& c, size_t m_div) {
    if (!is_cyclic(c.ring)) throw ParameterError("folding needs a quasi-cyclic code (f = X^n - 1)");
    if (m_div == 0 || c.ring.n() % m_div) throw ParameterError("fold order must divide n");
    return project(c, extpoly::x_pow_minus_one(*c.ring.tower, m_div));
}

BigInt poly_key(const fqpoly::Poly& p, unsigned q) {
    BigInt k = 0;
    for (size_t i = p.size(); i-- > 0;) k = k * q + p[i];
    return k;
}

std::string poly_to_string(const fqpoly::Poly& p) {
    std::string s;
    for (size_t i = p.size(); i-- > 0;) {
        if (!p[i]) continue;
        if (!s.empty()) s += "+";
        const std::string mono = i == 0 ? "" : (i == 1 ? "X" : "X^" + std::to_string(i));
        if (p[i] != 1 || i == 0) s += std::to_string(p[i]) + (i ? "*" : "");
        s += mono;
    }
    return s.empty() ? "0" : s;
}

namespace {

std::uint64_t mult_order(std::uint64_t q, std::uint64_t k) {
    if (k == 1) return 1;
    std::uint64_t x = q % k, t = 1;
    while (x != 1) {
        x = (x * q) % k;
        ++t;
    }
    return t;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

bool poly_less(const fqpoly::Poly& a, const fqpoly::Poly& b, unsigned q) {
    if (a.size() != b.size()) return a.size() < b.size();
    return poly_key(a, q) < poly_key(b, q);
}

}  // namespace

std::vector<std::pair<fqpoly::Poly, unsigned>> factor_cyclic(size_t k, const BaseFieldPtr& f) {
    if (k < 1) throw ParameterError("k must be >= 1");
    const unsigned p = f->p(), q = f->q();
    size_t kp = k;
    unsigned mult = 1;
    while (kp % p == 0) {
        kp /= p;
        mult *= p;
    }
    std::vector<std::pair<fqpoly::Poly, unsigned>> out;
    if (kp == 1) {
        out.push_back({{f->neg(1), 1}, mult});
        return out;
    }
    const auto t = static_cast<unsigned>(mult_order(q, kp));
    const TowerPtr big = make_tower(p, f->e(), t);
    const Ext order = big->max_element();  // q^t - 1, divisible by kp
    const Ext cofactor = order / kp;
    const auto primes = prime_divisors(kp);
    Ext zeta = 0;
    for (Ext x = 1; x <= order; ++x) {
        const Ext z = big->pow(x, cofactor);
        bool primitive = true;
        for (auto r : primes)
            if (big->pow(z, kp / r) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            zeta = z;
            break;
        }
    }
    std::vector<bool> seen(kp, false);
    for (size_t j = 0; j < kp; ++j) {
        if (seen[j]) continue;
        Poly mp = {1};
        size_t e = j;
        do {
            seen[e] = true;
            mp = extpoly::mul(*big, mp, {big->neg(big->pow(zeta, e)), 1});
            e = (e * q) % kp;
        } while (e != j);
        out.push_back({extpoly::to_base(*big, mp), mult});
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return poly_less(a.first, b.first, q); });
    return out;
}

std::vector<fqpoly::Poly> divisor_menu(size_t k, const BaseFieldPtr& f, const DivisorConstraints& c) {
    const auto fac = factor_cyclic(k, f);
    const fqpoly::Poly x_minus_one = {f->neg(1), 1};
    size_t combos = 1;
    for (const auto& [g, e] : fac) {
        combos *= e + 1;
        if (combos > (1u << 22)) throw ParameterError("too many divisors to enumerate");
    }
    std::vector<fqpoly::Poly> out;
    std::vector<unsigned> ex(fac.size(), 0);
    for (size_t idx = 0; idx < combos; ++idx) {
        size_t x = idx;
        for (size_t i = 0; i < fac.size(); ++i) {
            ex[i] = static_cast<unsigned>(x % (fac[i].second + 1));
            x /= fac[i].second + 1;
        }
        size_t deg = 0;
        bool full = true, has_x1 = false;
        for (size_t i = 0; i < fac.size(); ++i) {
            deg += ex[i] * (fac[i].first.size() - 1);
            full &= ex[i] == fac[i].second;
            if (fac[i].first == x_minus_one && ex[i] > 0) has_x1 = true;
        }
        if (deg < c.min_degree || deg > c.max_degree) continue;
        if (c.require_x_minus_one && !has_x1) continue;
        if (c.nontrivial && (deg == 0 || full)) continue;
        fqpoly::Poly d = {1};
        for (size_t i = 0; i < fac.size(); ++i)
            for (unsigned r = 0; r < ex[i]; ++r) d = fqpoly::mul(*f, d, fac[i].first);
        if (c.nontrivial && d == x_minus_one) continue;
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return poly_less(a, b, f->q()); });
    return out;
}

}  // namespace rmc

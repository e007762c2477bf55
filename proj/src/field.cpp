#include "rmc/field.hpp"

#include <algorithm>
#include <array>

namespace rmc {

std::string to_string(Ext x) {
    if (x == 0) return "0";
    std::string s;
    while (x > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
        x /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

Ext parse_ext(const std::string& s) {
    if (s.empty()) throw ParameterError("empty field element");
    Ext x = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParameterError("bad field element '" + s + "'");
        const Ext next = x * 10 + static_cast<unsigned>(c - '0');
        if (next / 10 != x) throw ParameterError("field element overflows 128 bits: " + s);
        x = next;
    }
    return x;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- BaseField

std::shared_ptr<const BaseField> BaseField::make(unsigned p, unsigned e) {
    if (!is_prime(p)) throw ParameterError("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw ParameterError("base extension degree must be >= 1");
    unsigned q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > 256) throw ParameterError("base field size p^e must be <= 256");
    }

    std::shared_ptr<BaseField> f(new BaseField());
    f->p_ = p;
    f->e_ = e;
    f->q_ = q;
    f->add_.resize(q * q);
    f->mul_.resize(q * q);
    f->neg_.resize(q);
    f->inv_.assign(q, 0);

    if (e == 1) {
        f->modulus_ = {0, 1};
        for (unsigned a = 0; a < q; ++a) {
            f->neg_[a] = static_cast<Fq>((p - a) % p);
            for (unsigned b = 0; b < q; ++b) {
                f->add_[a * q + b] = static_cast<Fq>((a + b) % p);
                f->mul_[a * q + b] = static_cast<Fq>((a * b) % p);
            }
        }
    } else {
        auto prime = make(p, 1);
        const fqpoly::Poly mod = fqpoly::first_irreducible(*prime, e);
        f->modulus_.assign(mod.begin(), mod.end());
        auto digits = [&](unsigned x) {
            fqpoly::Poly d(e);
            for (unsigned i = 0; i < e; ++i, x /= p) d[i] = static_cast<Fq>(x % p);
            return d;
        };
        auto encode = [&](const fqpoly::Poly& d) {
            unsigned x = 0;
            for (unsigned i = d.size(); i-- > 0;) x = x * p + d[i];
            return x;
        };
        for (unsigned a = 0; a < q; ++a) {
            const auto da = digits(a);
            fqpoly::Poly na(e);
            for (unsigned i = 0; i < e; ++i) na[i] = prime->neg(da[i]);
            f->neg_[a] = static_cast<Fq>(encode(na));
            for (unsigned b = 0; b < q; ++b) {
                const auto db = digits(b);
                fqpoly::Poly s(e);
                for (unsigned i = 0; i < e; ++i) s[i] = prime->add(da[i], db[i]);
                f->add_[a * q + b] = static_cast<Fq>(encode(s));
                auto prod = fqpoly::mod(*prime, fqpoly::mul(*prime, da, db), mod);
                prod.resize(e, 0);
                f->mul_[a * q + b] = static_cast<Fq>(encode(prod));
            }
        }
    }
    for (unsigned a = 1; a < q; ++a)
        for (unsigned b = 1; b < q; ++b)
            if (f->mul_[a * q + b] == 1) {
                f->inv_[a] = static_cast<Fq>(b);
                break;
            }
    return f;
}

Fq BaseField::inv(Fq a) const {
    if (a == 0) throw ArithmeticError("inverse of zero in F_q");
    return inv_[a];
}

Fq BaseField::pow(Fq a, std::uint64_t n) const {
    Fq r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

// ------------------------------------------------------------ fqpoly helpers

namespace fqpoly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const BaseField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly mod(const BaseField& f, Poly a, const Poly& m) {
    Poly mm = m;
    trim(mm);
    if (mm.empty()) throw ArithmeticError("polynomial division by zero");
    trim(a);
    const size_t dm = mm.size() - 1;
    const Fq lead_inv = f.inv(mm.back());
    while (a.size() > dm) {
        const Fq c = f.mul(a.back(), lead_inv);
        const size_t shift = a.size() - 1 - dm;
        for (size_t j = 0; j <= dm; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, mm[j]));
        trim(a);
    }
    return a;
}

Poly gcd(const BaseField& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Fq li = f.inv(a.back());
        for (auto& c : a) c = f.mul(c, li);
    }
    return a;
}

namespace {

Poly mulmod(const BaseField& f, const Poly& a, const Poly& b, const Poly& m) { return mod(f, mul(f, a, b), m); }

Poly powmod(const BaseField& f, Poly a, std::uint64_t n, const Poly& m) {
    Poly r{1};
    a = mod(f, a, m);
    while (n) {
        if (n & 1) r = mulmod(f, r, a, m);
        a = mulmod(f, a, a, m);
        n >>= 1;
    }
    return r;
}

Poly sub(const BaseField& f, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    trim(a);
    return a;
}

}  // namespace

bool is_irreducible(const BaseField& f, const Poly& g0) {
    Poly g = g0;
    trim(g);
    if (g.size() < 2) return false;
    const unsigned d = static_cast<unsigned>(g.size() - 1);
    if (d == 1) return true;
    if (g[0] == 0) return false;
    // Rabin: X^{q^d} = X mod g, and gcd(X^{q^{d/r}} - X, g) = 1 for primes r | d.
    const Poly x{0, 1};
    std::vector<Poly> frob(d + 1);
    frob[0] = mod(f, x, g);
    for (unsigned i = 1; i <= d; ++i) frob[i] = powmod(f, frob[i - 1], f.q(), g);
    if (sub(f, frob[d], mod(f, x, g)).size() != 0) return false;
    for (auto r : prime_factors(d)) {
        const Poly h = sub(f, frob[d / r], x);
        if (gcd(f, h, g).size() != 1) return false;
    }
    return true;
}

Poly first_irreducible(const BaseField& f, unsigned degree) {
    if (degree == 0) throw ParameterError("irreducible polynomial degree must be >= 1");
    const unsigned q = f.q();
    for (std::uint64_t idx = 0;; ++idx) {
        Poly g(degree + 1, 0);
        g[degree] = 1;
        std::uint64_t t = idx;
        for (unsigned i = 0; i < degree; ++i, t /= q) g[i] = static_cast<Fq>(t % q);
        if (t != 0) throw ParameterError("no irreducible polynomial found");
        if (is_irreducible(f, g)) return g;
    }
}

}  // namespace fqpoly

// -------------------------------------------------------------- FieldTower

std::shared_ptr<const FieldTower> FieldTower::make(unsigned p, unsigned e, unsigned m) {
    if (m < 1) throw ParameterError("extension degree must be >= 1");
    auto base = BaseField::make(p, e);
    const unsigned q = base->q();

    Ext size = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (size > (~Ext{0}) / q) throw ParameterError("q^m exceeds the 128-bit element encoding");
        size *= q;
    }

    std::shared_ptr<FieldTower> t(new FieldTower());
    t->base_ = base;
    t->m_ = m;
    t->max_ = size - 1;
    if (p == 2) t->digit_bits_ = e;
    t->modulus_ = fqpoly::first_irreducible(*base, m);
    if (q == 2 && m <= 64) {
        Ext mod = 0;
        for (unsigned i = 0; i < m; ++i)
            if (t->modulus_[i]) mod |= Ext{1} << i;
        t->clmul_modulus_ = mod;
        t->use_clmul_ = true;
    }
    t->basis_.resize(m);
    Ext qi = 1;
    for (unsigned i = 0; i < m; ++i, qi *= q) t->basis_[i] = qi;

    if (size <= 65536) {
        const auto n = static_cast<std::uint32_t>(size - 1);
        std::vector<std::uint32_t> logs(static_cast<size_t>(size), 0), exps(n, 0);
        const auto factors = prime_factors(n);
        Ext gen = 0;
        for (Ext g = 1; g <= t->max_; ++g) {
            bool primitive = true;
            for (auto r : factors)
                if (t->pow(g, n / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                gen = g;
                break;
            }
        }
        Ext x = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            exps[i] = static_cast<std::uint32_t>(x);
            logs[static_cast<size_t>(x)] = i;
            x = t->mul(x, gen);
        }
        t->log_ = std::move(logs);
        t->exp_ = std::move(exps);
    }
    return t;
}

std::shared_ptr<const FieldTower> FieldTower::with_basis(const std::shared_ptr<const FieldTower>& tower,
                                                         std::vector<Ext> basis) {
    const unsigned m = tower->m();
    if (basis.size() != m) throw ParameterError("basis must have m elements");
    const BaseField& f = tower->base();
    // columns = polynomial coordinates of the basis elements
    std::vector<Fq> a(m * m), inv(m * m, 0);
    for (unsigned j = 0; j < m; ++j) {
        if (!tower->valid(basis[j])) throw ParameterError("basis element outside the field");
        const auto c = tower->poly_coords(basis[j]);
        for (unsigned i = 0; i < m; ++i) a[i * m + j] = c[i];
    }
    std::vector<Fq> work = a;
    for (unsigned i = 0; i < m; ++i) inv[i * m + i] = 1;
    for (unsigned col = 0; col < m; ++col) {
        unsigned piv = col;
        while (piv < m && work[piv * m + col] == 0) ++piv;
        if (piv == m) throw ParameterError("basis is not linearly independent over F_q");
        if (piv != col)
            for (unsigned j = 0; j < m; ++j) {
                std::swap(work[piv * m + j], work[col * m + j]);
                std::swap(inv[piv * m + j], inv[col * m + j]);
            }
        const Fq s = f.inv(work[col * m + col]);
        for (unsigned j = 0; j < m; ++j) {
            work[col * m + j] = f.mul(s, work[col * m + j]);
            inv[col * m + j] = f.mul(s, inv[col * m + j]);
        }
        for (unsigned r = 0; r < m; ++r) {
            if (r == col || work[r * m + col] == 0) continue;
            const Fq c = work[r * m + col];
            for (unsigned j = 0; j < m; ++j) {
                work[r * m + j] = f.sub(work[r * m + j], f.mul(c, work[col * m + j]));
                inv[r * m + j] = f.sub(inv[r * m + j], f.mul(c, inv[col * m + j]));
            }
        }
    }
    std::shared_ptr<FieldTower> t(new FieldTower(*tower));
    t->basis_ = std::move(basis);
    bool identity = true;
    for (unsigned i = 0; i < m && identity; ++i)
        for (unsigned j = 0; j < m; ++j)
            if (a[i * m + j] != (i == j ? 1 : 0)) {
                identity = false;
                break;
            }
    if (identity) {
        t->to_basis_.clear();
        t->from_basis_.clear();
    } else {
        t->to_basis_ = std::move(inv);
        t->from_basis_ = std::move(a);
    }
    return t;
}

bool FieldTower::same_field(const FieldTower& o) const {
    return p() == o.p() && e() == o.e() && m_ == o.m_ && modulus_ == o.modulus_;
}

Fq FieldTower::digit(Ext x, unsigned i) const {
    if (digit_bits_) return static_cast<Fq>((x >> (digit_bits_ * i)) & (q() - 1));
    for (unsigned k = 0; k < i; ++k) x /= q();
    return static_cast<Fq>(x % q());
}

std::vector<Fq> FieldTower::poly_coords(Ext x) const {
    std::vector<Fq> c(m_);
    if (digit_bits_) {
        const Ext mask = q() - 1;
        for (unsigned i = 0; i < m_; ++i) c[i] = static_cast<Fq>((x >> (digit_bits_ * i)) & mask);
    } else {
        for (unsigned i = 0; i < m_; ++i, x /= q()) c[i] = static_cast<Fq>(x % q());
    }
    return c;
}

Ext FieldTower::from_poly_coords(std::span<const Fq> c) const {
    Ext x = 0;
    if (digit_bits_) {
        for (unsigned i = 0; i < m_; ++i) x |= Ext{c[i]} << (digit_bits_ * i);
    } else {
        for (unsigned i = m_; i-- > 0;) x = x * q() + c[i];
    }
    return x;
}

std::vector<Fq> FieldTower::coords(Ext x) const {
    std::vector<Fq> out(m_);
    coords_into(x, out);
    return out;
}

void FieldTower::coords_into(Ext x, std::span<Fq> out) const {
    if (to_basis_.empty()) {
        if (digit_bits_) {
            const Ext mask = q() - 1;
            for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<Fq>((x >> (digit_bits_ * i)) & mask);
        } else {
            for (unsigned i = 0; i < m_; ++i, x /= q()) out[i] = static_cast<Fq>(x % q());
        }
        return;
    }
    const auto pc = poly_coords(x);
    const BaseField& f = *base_;
    for (unsigned i = 0; i < m_; ++i) {
        Fq s = 0;
        for (unsigned j = 0; j < m_; ++j) s = f.add(s, f.mul(to_basis_[i * m_ + j], pc[j]));
        out[i] = s;
    }
}

Ext FieldTower::from_coords(std::span<const Fq> c) const {
    if (c.size() != m_) throw ParameterError("coordinate vector length differs from m");
    if (to_basis_.empty()) return from_poly_coords(c);
    const BaseField& f = *base_;
    std::vector<Fq> pc(m_);
    for (unsigned i = 0; i < m_; ++i) {
        Fq s = 0;
        for (unsigned j = 0; j < m_; ++j) s = f.add(s, f.mul(from_basis_[i * m_ + j], c[j]));
        pc[i] = s;
    }
    return from_poly_coords(pc);
}

Ext FieldTower::add(Ext a, Ext b) const {
    if (digit_bits_) return a ^ b;
    const auto ca = poly_coords(a), cb = poly_coords(b);
    std::vector<Fq> s(m_);
    for (unsigned i = 0; i < m_; ++i) s[i] = base_->add(ca[i], cb[i]);
    return from_poly_coords(s);
}

Ext FieldTower::sub(Ext a, Ext b) const {
    if (digit_bits_) return a ^ b;
    return add(a, neg(b));
}

Ext FieldTower::neg(Ext a) const {
    if (digit_bits_) return a;
    auto c = poly_coords(a);
    for (auto& x : c) x = base_->neg(x);
    return from_poly_coords(c);
}

Ext FieldTower::scale(Fq c, Ext x) const {
    if (c == 0) return 0;
    if (c == 1) return x;
    auto d = poly_coords(x);
    for (auto& v : d) v = base_->mul(c, v);
    return from_poly_coords(d);
}

Ext FieldTower::mul_clmul(Ext a, Ext b) const {
    Ext prod = 0;
    for (unsigned i = 0; i < m_; ++i)
        if ((b >> i) & 1) prod ^= a << i;
    const Ext full = clmul_modulus_ | (Ext{1} << m_);
    for (unsigned i = 2 * m_ - 1; i-- > m_;)
        if ((prod >> i) & 1) prod ^= full << (i - m_);
    return prod;
}

Ext FieldTower::mul_generic(Ext a, Ext b) const {
    const BaseField& f = *base_;
    const auto ca = poly_coords(a), cb = poly_coords(b);
    std::vector<Fq> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (!ca[i]) continue;
        const Fq* row = f.mul_row(ca[i]);
        for (unsigned j = 0; j < m_; ++j) prod[i + j] = f.add(prod[i + j], row[cb[j]]);
    }
    for (unsigned i = 2 * m_ - 1; i-- > m_;) {
        const Fq c = prod[i];
        if (!c) continue;
        const Fq* row = f.mul_row(c);
        for (unsigned j = 0; j <= m_; ++j) prod[i - m_ + j] = f.sub(prod[i - m_ + j], row[modulus_[j]]);
    }
    return from_poly_coords(std::span<const Fq>(prod.data(), m_));
}

Ext FieldTower::mul(Ext a, Ext b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
        const size_t n = exp_.size();
        return exp_[(log_[static_cast<size_t>(a)] + log_[static_cast<size_t>(b)]) % n];
    }
    if (use_clmul_) return mul_clmul(a, b);
    return mul_generic(a, b);
}

Ext FieldTower::pow(Ext a, Ext n) const {
    Ext r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

Ext FieldTower::inv(Ext a) const {
    if (a == 0) throw ArithmeticError("inverse of zero in F_{q^m}");
    if (!log_.empty()) {
        const size_t n = exp_.size();
        return exp_[(n - log_[static_cast<size_t>(a)]) % n];
    }
    return pow(a, max_ - 1);
}

Ext FieldTower::random(Rng& rng) const {
    std::vector<Fq> c(m_);
    for (auto& x : c) x = base_->random(rng);
    return from_poly_coords(c);
}

Ext FieldTower::random_nonzero(Rng& rng) const {
    for (;;) {
        const Ext x = random(rng);
        if (x != 0) return x;
    }
}

}  // namespace rmc

#include "rmc/trapping.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace rmc {

void validate_hints(const BaseField& f, const Hints& h, size_t m, size_t n) {
    const size_t a = h.a();
    if (a == 0) return;
    if (h.vectors.cols() != m) throw ParameterError("hint vectors must have length m");
    if (h.coeffs.rows() != a || h.coeffs.cols() != n) throw ParameterError("hint coefficients must be a x n");
    if (rank(f, h.vectors) != a) throw ParameterError("hint vectors are linearly dependent");
    if (rank(f, h.coeffs) != a) throw ParameterError("hint coefficient rows are linearly dependent");
}

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }
long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Each unknown contributes coefficient * e_idx to the flattened codeword.
struct Layout {
    std::vector<std::vector<std::pair<std::uint32_t, Fq>>> unknowns;
    std::vector<std::pair<std::uint32_t, Fq>> constant;  // affine offset
};

struct Solved {
    bool consistent = true;
    std::vector<Fq> particular;  // flattened codeword
    Matrix kernel;               // rows: flattened codewords
};

std::vector<Fq> expand(const BaseField& f, const Layout& lay, std::span<const Fq> u, size_t len) {
    std::vector<Fq> flat(len, 0);
    for (auto [idx, c] : lay.constant) flat[idx] = f.add(flat[idx], c);
    for (size_t k = 0; k < u.size(); ++k) {
        if (!u[k]) continue;
        for (auto [idx, c] : lay.unknowns[k]) flat[idx] = f.add(flat[idx], f.mul(u[k], c));
    }
    return flat;
}

// Substitute the layout into the parity equations and solve.
Solved solve_layout(const MatrixCode& code, const Layout& lay) {
    const BaseField& f = code.field();
    const Matrix& ht = code.parity_t();
    const size_t eqs = ht.cols(), nu = lay.unknowns.size(), len = code.m() * code.n();
    Matrix st(nu + 1, eqs);
    for (size_t u = 0; u < nu; ++u)
        for (auto [idx, c] : lay.unknowns[u]) axpy(f, st.row(u), ht.row(idx), c);
    for (auto [idx, c] : lay.constant) axpy(f, st.row(nu), ht.row(idx), f.neg(c));
    const Matrix aug = st.transpose();  // eqs x (nu + 1)
    Solved out;
    Matrix s(aug.rows(), nu);
    std::vector<Fq> rhs(aug.rows());
    for (size_t i = 0; i < aug.rows(); ++i) {
        std::copy(aug.row(i).begin(), aug.row(i).begin() + nu, s.row(i).begin());
        rhs[i] = aug(i, nu);
    }
    auto sol = solve_affine(f, s, rhs);
    if (!sol) {
        out.consistent = false;
        return out;
    }
    Layout linear{lay.unknowns, {}};
    out.particular = expand(f, lay, sol->particular, len);
    out.kernel = Matrix(sol->kernel.rows(), len);
    for (size_t i = 0; i < sol->kernel.rows(); ++i) {
        const auto w = expand(f, linear, sol->kernel.row(i), len);
        std::copy(w.begin(), w.end(), out.kernel.row(i).begin());
    }
    return out;
}

// Visits particular + span(kernel). With projective = true the particular part
// is ignored and only one representative per nonzero scalar class is visited.
// The visitor returns true to stop.
template <class Visit>
void enumerate_solutions(const BaseField& f, const Solved& s, bool projective, Visit&& visit) {
    const size_t d = s.kernel.rows();
    std::vector<Fq> cur = projective ? std::vector<Fq>(s.kernel.cols(), 0) : s.particular;
    if (f.binary()) {
        // Gray code: flip one basis vector per step
        if (!projective && visit(cur)) return;
        const std::uint64_t total = std::uint64_t{1} << d;
        for (std::uint64_t g = 1; g < total; ++g) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(g));
            axpy(f, cur, s.kernel.row(bit), 1);
            if (visit(cur)) return;
        }
        return;
    }
    const unsigned q = f.q();
    std::vector<Fq> digits(d, 0);
    std::uint64_t total = 1;
    for (size_t i = 0; i < d; ++i) total *= q;
    for (std::uint64_t idx = projective ? 1 : 0; idx < total; ++idx) {
        std::uint64_t x = idx;
        for (size_t i = 0; i < d; ++i, x /= q) digits[i] = static_cast<Fq>(x % q);
        if (projective) {
            size_t last = d;
            while (last > 0 && digits[last - 1] == 0) --last;
            if (digits[last - 1] != 1) continue;
        }
        cur = projective ? std::vector<Fq>(s.kernel.cols(), 0) : s.particular;
        for (size_t i = 0; i < d; ++i) axpy(f, cur, s.kernel.row(i), digits[i]);
        if (visit(cur)) return;
    }
}

struct TrialResult {
    long kdim = 0;
    std::uint64_t lower = 0, rejected = 0;
    bool truncated = false;
    std::optional<Matrix> word;  // original coordinates
    Subspace trapped;
};

// Runs trials in index order across workers; the lowest successful index wins.
template <class Trial>
void run_trials(SearchReport& rep, const SearchConfig& cfg, std::uint64_t max_trials, Trial&& trial) {
    const unsigned workers = std::max(1u, cfg.workers);
    std::atomic<std::uint64_t> next{0}, best{~std::uint64_t{0}};
    std::mutex mu;
    std::vector<std::pair<std::uint64_t, TrialResult>> done;
    auto work = [&] {
        std::vector<std::pair<std::uint64_t, TrialResult>> local;
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= max_trials || i > best.load()) break;
            TrialResult r = trial(i);
            const bool ok = r.word.has_value();
            local.emplace_back(i, std::move(r));
            if (ok) {
                std::uint64_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
        std::lock_guard lock(mu);
        for (auto& x : local) done.push_back(std::move(x));
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    const std::uint64_t b = best.load();
    std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [i, r] : done) {
        if (i > b) break;
        rep.kernel_dims[r.kdim]++;
        rep.lower_weight_words += r.lower;
        rep.rejected_by_target += r.rejected;
        rep.enumeration_truncated |= r.truncated;
        if (i == b) {
            rep.found = true;
            rep.codeword = *r.word;
            rep.trapped = r.trapped;
        }
    }
    rep.trials = rep.found ? b + 1 : max_trials;
}

// Trapping with a fixed candidate column support: column j = sum_t x_{j,t} f_t.
Layout column_layout(const Matrix& fb, size_t m, size_t n) {
    Layout lay;
    for (size_t j = 0; j < n; ++j)
        for (size_t t = 0; t < fb.rows(); ++t) {
            std::vector<std::pair<std::uint32_t, Fq>> e;
            for (size_t i = 0; i < m; ++i)
                if (fb(t, i)) e.emplace_back(static_cast<std::uint32_t>(j * m + i), fb(t, i));
            lay.unknowns.push_back(std::move(e));
        }
    return lay;
}

TrialResult column_trial(const MatrixCode& code, const Subspace& fsp, size_t w, const SearchConfig& cfg) {
    const BaseField& f = code.field();
    TrialResult res;
    res.trapped = fsp;
    const Solved s = solve_layout(code, column_layout(fsp.basis(), code.m(), code.n()));
    res.kdim = static_cast<long>(s.kernel.rows());
    if (s.kernel.rows() == 0) return res;
    if (s.kernel.rows() > cfg.kernel_cap) {
        res.truncated = true;
        return res;
    }
    enumerate_solutions(f, s, true, [&](const std::vector<Fq>& flat) {
        Matrix cw = unflatten(code.m(), code.n(), flat);
        const size_t rk = rank_weight(f, cw);
        if (rk == 0) return false;
        if (rk < w) {
            ++res.lower;
            return false;
        }
        if (rk != w) return false;
        if (cfg.target && !cfg.target(cw)) {
            ++res.rejected;
            return false;
        }
        res.word = std::move(cw);
        return true;
    });
    return res;
}

SearchReport trap_columns(const MatrixCode& c, size_t w, const Subspace* hint_space, const SearchConfig& cfg,
                          const char* stream) {
    const auto t0 = Clock::now();
    SearchReport rep;
    const BaseField& f = c.field();
    const size_t m = c.m(), n = c.n(), a = hint_space ? hint_space->dim() : 0;
    if (w < 1 || w > std::min(m, n)) throw ParameterError("target weight must lie in [1, min(m, n)]");
    if (a > w) throw ParameterError("more hints than the target weight");
    const long r = choose_r_basic(m, n, c.K());
    rep.r = static_cast<int>(r);
    rep.unknowns = n * static_cast<size_t>(std::max(r, 0L));
    rep.equations = m * n - c.K();
    if (c.K() == 0) {
        rep.note = "zero code";
        rep.wall_ms = ms_since(t0);
        return rep;
    }
    if (r < static_cast<long>(w)) {
        rep.note = "r = " + std::to_string(r) + " is below the target weight; code too large to trap";
        rep.wall_ms = ms_since(t0);
        return rep;
    }
    if (rep.unknowns > rep.equations) throw std::logic_error("unknown budget exceeded");
    rep.probability = success_probability(static_cast<unsigned>(m), static_cast<unsigned>(r),
                                          static_cast<unsigned>(w), static_cast<unsigned>(a), f.q());
    rep.max_trials = cfg.max_trials ? cfg.max_trials : default_max_trials(rep.probability);
    run_trials(rep, cfg, rep.max_trials, [&](std::uint64_t i) {
        Rng rng(derive_seed(cfg.seed, stream, i));
        const Subspace fsp = hint_space ? sample_uniform_containing(f, *hint_space, static_cast<size_t>(r), rng)
                                        : sample_uniform(f, m, static_cast<size_t>(r), rng);
        return column_trial(c, fsp, w, cfg);
    });
    if (rep.found && (!c.contains(rep.codeword) || rank_weight(f, rep.codeword) != w))
        throw std::logic_error("trapping returned an unsound codeword");
    rep.wall_ms = ms_since(t0);
    return rep;
}

}  // namespace

long choose_r_basic(size_t m, size_t n, size_t K) {
    if (K > m * n) throw ParameterError("K exceeds m*n");
    return static_cast<long>(m) - ceil_div(static_cast<long>(K), static_cast<long>(n));
}

long choose_r_transposed(size_t m, size_t n, size_t K, size_t a) {
    if (m <= a) throw ParameterError("need m > a");
    if (a > n) throw ParameterError("need a <= n");
    const long num = static_cast<long>(m * n) - static_cast<long>(K) +
                     static_cast<long>(a) * (static_cast<long>(m) - static_cast<long>(n));
    return floor_div(num, static_cast<long>(m - a));
}

std::uint64_t default_max_trials(const Rational& p) {
    if (p <= 0) return 1;
    const Rational t = Rational(8) / p;
    BigInt c = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
    if (c * boost::multiprecision::denominator(t) != boost::multiprecision::numerator(t)) ++c;
    if (c > BigInt(~std::uint64_t{0} >> 1)) return ~std::uint64_t{0} >> 1;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c));
}

SearchReport trap_basic(const MatrixCode& c, size_t w, const SearchConfig& cfg) {
    return trap_columns(c, w, nullptr, cfg, "trap-basic");
}

SearchReport trap_hinted(const MatrixCode& c, size_t w, const Hints& hints, const SearchConfig& cfg) {
    validate_hints(c.field(), hints, c.m(), c.n());
    if (hints.a() > w) throw ParameterError("more hints than the target weight");
    const Subspace e = hints.a() ? Subspace::from_rows(c.field(), hints.vectors) : Subspace::zero(c.m());
    SearchReport rep = trap_columns(c, w, &e, cfg, "trap-hinted");
    if (c.n() < c.m()) rep.note += (rep.note.empty() ? "" : "; ") + std::string("n < m: the transposed variant is cheaper");
    return rep;
}

Normalized normalize_hints(const MatrixCode& c, const Hints& hints) {
    const BaseField& f = c.field();
    validate_hints(f, hints, c.m(), c.n());
    Normalized out;
    if (hints.a() == 0) {
        out.p = out.p_inv = Matrix::identity(c.n());
        out.q = out.q_inv = Matrix::identity(c.m());
        out.code = c;
        return out;
    }
    // columns i < a of P are the lambda_i
    out.p = complete_basis(f, hints.coeffs).transpose();
    // Q^{-1} has columns c'_1..c'_a then unit vectors
    out.q_inv = complete_basis(f, hints.vectors).transpose();
    out.q = *inverse(f, out.q_inv);
    out.p_inv = *inverse(f, out.p);
    out.code = transform_code(c, out.q, out.p);
    return out;
}

SearchReport trap_transposed_hinted(const MatrixCode& c, size_t w, const Hints& hints, const SearchConfig& cfg) {
    const auto t0 = Clock::now();
    const BaseField& f = c.field();
    const size_t m = c.m(), n = c.n(), a = hints.a();
    if (w < 1 || w > std::min(m, n)) throw ParameterError("target weight must lie in [1, min(m, n)]");
    if (a > w) throw ParameterError("more hints than the target weight");
    const Normalized nz = normalize_hints(c, hints);
    SearchReport rep;
    long r = choose_r_transposed(m, n, c.K(), a);
    if (r > static_cast<long>(n)) r = static_cast<long>(n);
    rep.r = static_cast<int>(r);
    rep.equations = m * n - c.K();
    if (c.K() == 0) {
        rep.note = "zero code";
        rep.wall_ms = ms_since(t0);
        return rep;
    }
    if (r < static_cast<long>(w) || r <= static_cast<long>(a)) {
        rep.note = "r = " + std::to_string(r) + " leaves no room to trap a weight-" + std::to_string(w) + " word";
        rep.wall_ms = ms_since(t0);
        return rep;
    }
    const size_t ra = static_cast<size_t>(r) - a;
    rep.unknowns = (m - a) * ra + a * (n - a);
    if (rep.unknowns > rep.equations) throw std::logic_error("unknown budget exceeded");
    rep.probability = success_probability(static_cast<unsigned>(n), static_cast<unsigned>(r),
                                          static_cast<unsigned>(w), static_cast<unsigned>(a), f.q());
    rep.max_trials = cfg.max_trials ? cfg.max_trials : default_max_trials(rep.probability);
    if (m < n) rep.note = "m < n: the hinted column variant is cheaper";

    const MatrixCode& cc = nz.code;
    run_trials(rep, cfg, rep.max_trials, [&](std::uint64_t i) {
        Rng rng(derive_seed(cfg.seed, "trap-transposed", i));
        // V_0: r - a vectors vanishing on the first a coordinates
        Matrix v0(ra, n);
        for (;;) {
            Matrix tail(ra, n - a);
            for (size_t t = 0; t < ra; ++t)
                for (size_t j = a; j < n; ++j) tail(t, j - a) = v0(t, j) = f.random(rng);
            if (rank(f, tail) == ra) break;
        }
        Layout lay;
        for (size_t s = a; s < m; ++s)
            for (size_t t = 0; t < ra; ++t) {
                std::vector<std::pair<std::uint32_t, Fq>> e;
                for (size_t j = a; j < n; ++j)
                    if (v0(t, j)) e.emplace_back(static_cast<std::uint32_t>(j * m + s), v0(t, j));
                lay.unknowns.push_back(std::move(e));
            }
        for (size_t s = 0; s < a; ++s)
            for (size_t j = a; j < n; ++j) lay.unknowns.push_back({{static_cast<std::uint32_t>(j * m + s), Fq{1}}});
        for (size_t s = 0; s < a; ++s) lay.constant.emplace_back(static_cast<std::uint32_t>(s * m + s), Fq{1});

        TrialResult res;
        const Solved sol = solve_layout(cc, lay);
        if (!sol.consistent) {
            res.kdim = -1;
            return res;
        }
        res.kdim = static_cast<long>(sol.kernel.rows());
        if (sol.kernel.rows() > cfg.kernel_cap) {
            res.truncated = true;
            return res;
        }
        enumerate_solutions(f, sol, false, [&](const std::vector<Fq>& flat) {
            const Matrix cpp = unflatten(m, n, flat);
            const size_t rk = rank_weight(f, cpp);
            if (rk < w) {
                ++res.lower;
                return false;
            }
            if (rk != w) return false;
            Matrix cw = mul(f, mul(f, nz.q_inv, cpp), nz.p_inv);
            if (cfg.target && !cfg.target(cw)) {
                ++res.rejected;
                return false;
            }
            // V = span(first a rows of c'', V_0), mapped back by P^{-1}
            Matrix vb = cpp.rows_range(0, a);
            for (size_t t = 0; t < ra; ++t) vb.append_row(v0.row(t));
            res.trapped = Subspace::from_rows(f, mul(f, vb, nz.p_inv));
            res.word = std::move(cw);
            return true;
        });
        return res;
    });
    if (rep.found && (!c.contains(rep.codeword) || rank_weight(f, rep.codeword) != w))
        throw std::logic_error("trapping returned an unsound codeword");
    rep.wall_ms = ms_since(t0);
    return rep;
}

SupportSolution support_solve(const MatrixCode& c, const Subspace& fsp, std::optional<size_t> w, unsigned cap) {
    const BaseField& f = c.field();
    if (fsp.ambient_dim() != c.m()) throw ParameterError("support must live in F_q^m");
    if (w && fsp.dim() < *w) throw ParameterError("support dimension below the target weight");
    SupportSolution out;
    const Solved s = solve_layout(c, column_layout(fsp.basis(), c.m(), c.n()));
    out.solution_dim = s.kernel.rows();
    out.basis = s.kernel;
    auto keep = [&](const std::vector<Fq>& flat) {
        Matrix cw = unflatten(c.m(), c.n(), flat);
        if (!c.contains_flat(flat)) throw std::logic_error("support_solve produced a non-codeword");
        if (!w || rank_weight(f, cw) == *w) out.words.push_back(std::move(cw));
    };
    if (out.solution_dim > cap) {
        out.truncated = true;
        for (size_t i = 0; i < s.kernel.rows(); ++i) keep({s.kernel.row(i).begin(), s.kernel.row(i).end()});
        return out;
    }
    enumerate_solutions(f, s, true, [&](const std::vector<Fq>& flat) {
        keep(flat);
        return false;
    });
    return out;
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::basic: return "basic";
        case Variant::basic_transposed: return "basic_transposed";
        case Variant::hinted: return "hinted";
        case Variant::transposed_hinted: return "transposed_hinted";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    for (Variant v : {Variant::basic, Variant::basic_transposed, Variant::hinted, Variant::transposed_hinted})
        if (to_string(v) == s) return v;
    throw ParameterError("unknown variant: " + s);
}

Variant auto_variant(size_t m, size_t n) { return n >= m ? Variant::hinted : Variant::transposed_hinted; }

long complexity_exponent(size_t m, size_t n, size_t K, size_t w, size_t a, Variant v) {
    const long wa = static_cast<long>(w) - static_cast<long>(a);
    switch (v) {
        case Variant::basic: return static_cast<long>(w) * ceil_div(static_cast<long>(K), static_cast<long>(n));
        case Variant::basic_transposed:
            return static_cast<long>(w) * ceil_div(static_cast<long>(K), static_cast<long>(m));
        case Variant::hinted: return wa * ceil_div(static_cast<long>(K), static_cast<long>(n));
        case Variant::transposed_hinted: return wa * (static_cast<long>(n) - choose_r_transposed(m, n, K, a));
    }
    return 0;
}

double complexity_estimate(size_t m, size_t n, size_t K, size_t w, size_t a, unsigned q, Variant v) {
    const double nk = static_cast<double>(n) - static_cast<double>(K) / static_cast<double>(m);
    return 3 * std::log2(nk) + 3 * std::log2(static_cast<double>(m)) +
           static_cast<double>(complexity_exponent(m, n, K, w, a, v)) * std::log2(static_cast<double>(q));
}

}  // namespace rmc

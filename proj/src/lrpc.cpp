#include "rmc/lrpc.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace rmc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Subspace span_of(const FieldTower& t, std::span<const Ext> xs) {
    if (xs.empty()) return Subspace::zero(t.m());
    return Subspace::from_rows(t.base(), coordinate_rows(t, xs));
}

ExtVec entries(const ExtMatrix& a) {
    ExtVec out;
    for (size_t i = 0; i < a.rows(); ++i) out.insert(out.end(), a.row(i).begin(), a.row(i).end());
    return out;
}

std::string fmt2(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << x;
    return os.str();
}

}  // namespace

LrpcInstance keygen(TowerPtr tower, size_t k, size_t d, Rng& rng, unsigned budget) {
    const FieldTower& t = *tower;
    if (k < 2) throw ParameterError("k must be >= 2");
    if (d < 1 || d > t.m()) throw ParameterError("need 1 <= d <= m");
    const BaseField& f = t.base();
    const PolyRing ring = cyclic_ring(tower, k);
    for (unsigned attempt = 0; attempt < budget; ++attempt) {
        Subspace e = sample_uniform(f, t.m(), d, rng);
        std::vector<Ext> basis;
        for (size_t i = 0; i < d; ++i) basis.push_back(t.from_coords(e.basis().row(i)));
        auto draw = [&] {
            Poly h(k, 0);
            for (auto& c : h)
                for (Ext b : basis) c = t.add(c, t.scale(f.random(rng), b));
            extpoly::trim(h);
            return h;
        };
        Poly h1 = draw(), h2 = draw();
        ExtVec coeffs = psi(ring, h1);
        const ExtVec c2 = psi(ring, h2);
        coeffs.insert(coeffs.end(), c2.begin(), c2.end());
        if (span_of(t, coeffs).dim() != d) continue;
        auto inv = extpoly::inverse_mod(t, h1, ring.modulus);
        if (!inv) continue;
        LrpcInstance inst;
        inst.pub.tower = tower;
        inst.pub.k = k;
        inst.pub.d = d;
        inst.pub.r = extpoly::mulmod(t, *inv, h2, ring.modulus);
        inst.h1 = std::move(h1);
        inst.h2 = std::move(h2);
        inst.support = std::move(e);
        return inst;
    }
    throw KeygenError("key generation failed after " + std::to_string(budget) + " draws");
}

void check_instance(const LrpcInstance& inst) {
    const FieldTower& t = *inst.pub.tower;
    const PolyRing ring = cyclic_ring(inst.pub.tower, inst.pub.k);
    ExtVec coeffs = psi(ring, inst.h1);
    const ExtVec c2 = psi(ring, inst.h2);
    coeffs.insert(coeffs.end(), c2.begin(), c2.end());
    for (Ext c : coeffs)
        if (!inst.support.contains(t.base(), t.coords(c)))
            throw ParameterError("a secret coefficient lies outside the support");
    if (span_of(t, coeffs).dim() != inst.pub.d) throw ParameterError("secret support dimension differs from d");
    if (inst.support.dim() != inst.pub.d) throw ParameterError("support subspace has the wrong dimension");
    if (!extpoly::inverse_mod(t, inst.h1, ring.modulus)) throw ParameterError("h1 is not invertible");
    if (rank_weight(t.base(), to_matrix(t, coeffs)) != inst.pub.d)
        throw ParameterError("rank weight of (h1, h2) differs from d");
    if (extpoly::mulmod(t, inst.h1, inst.pub.r, ring.modulus) != extpoly::mod(t, inst.h2, ring.modulus))
        throw ParameterError("public r is not h1^{-1} h2");
}

CellularCode dual_public_code(const LrpcPublic& pub) {
    return make_cellular(cyclic_ring(pub.tower, pub.k), {{Poly{1}, pub.r}});
}

ExtMatrix public_generator(const LrpcPublic& pub) {
    const FieldTower& t = *pub.tower;
    const size_t k = pub.k;
    const ExtMatrix rm = phi(cyclic_ring(pub.tower, k), pub.r);
    ExtMatrix g(k, 2 * k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) g(i, j) = t.neg(rm(j, i));
        g(i, k + i) = 1;
    }
    return g;
}

ExtMatrix circulant_rows(const PolyRing& ring, const Poly& u1, const Poly& u2) {
    const ExtMatrix a = phi(ring, u1), b = phi(ring, u2);
    const size_t k = ring.n();
    ExtMatrix out(k, 2 * k);
    for (size_t i = 0; i < k; ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), out.row(i).begin());
        std::copy(b.row(i).begin(), b.row(i).end(), out.row(i).begin() + k);
    }
    return out;
}

ExtMatrix secret_parity(const LrpcInstance& inst) {
    return circulant_rows(cyclic_ring(inst.pub.tower, inst.pub.k), inst.h1, inst.h2);
}

FoldHints extract_fold_hints(const CellularCode& dual) {
    const FieldTower& t = *dual.ring.tower;
    FoldHints h;
    const ExtLinearCode folded = expand(fold(dual, 1));
    if (folded.k() == 0) return h;
    h.c1 = folded.generator(0, 0);
    h.c2 = folded.generator(0, 1);
    const Ext pair[2] = {h.c1, h.c2};
    h.a = span_of(t, pair).dim();
    if (h.a == 2) {
        h.kept = {h.c1, h.c2};
        h.blocks = {0, 1};
    } else if (h.a == 1) {
        h.kept = {h.c1 ? h.c1 : h.c2};
        h.blocks = {h.c1 ? size_t{0} : size_t{1}};
    }
    return h;
}

Hints block_hints(const FieldTower& t, const FoldHints& h, size_t block_len) {
    Hints out;
    out.vectors = Matrix(0, t.m());
    out.coeffs = Matrix(0, 2 * block_len);
    std::vector<Fq> lambda(2 * block_len);
    for (size_t i = 0; i < h.kept.size(); ++i) {
        out.vectors.append_row(t.coords(h.kept[i]));
        std::fill(lambda.begin(), lambda.end(), 0);
        for (size_t j = 0; j < block_len; ++j) lambda[h.blocks[i] * block_len + j] = 1;
        out.coeffs.append_row(lambda);
    }
    return out;
}

Verification verify_recovery(const LrpcPublic& pub, const ExtMatrix& rows) {
    const FieldTower& t = *pub.tower;
    Verification v;
    if (rows.rows() != pub.k || rows.cols() != 2 * pub.k) return v;
    const ExtMatrix prod = mul(t, public_generator(pub), rows.transpose());
    v.annihilates = true;
    for (size_t i = 0; i < prod.rows() && v.annihilates; ++i)
        for (size_t j = 0; j < prod.cols(); ++j)
            if (prod(i, j)) {
                v.annihilates = false;
                break;
            }
    v.support_dim = span_of(t, entries(rows)).dim();
    v.ext_rank = rank(t, rows);
    v.verdict = v.annihilates && v.support_dim == pub.d && v.ext_rank == pub.k;
    return v;
}

Verification verify_recovery(const LrpcInstance& inst, const ExtMatrix& rows) {
    Verification v = verify_recovery(inst.pub, rows);
    const FieldTower& t = *inst.pub.tower;
    const BaseField& f = t.base();
    const ExtMatrix h = secret_parity(inst);
    v.exact_scalar_multiple = false;
    v.equivalent_key = false;
    if (rows.rows() != h.rows() || rows.cols() != h.cols()) return v;
    // single beta with rows = beta * H
    size_t piv = 0;
    while (piv < h.cols() && h(0, piv) == 0) ++piv;
    if (piv < h.cols() && rows(0, piv)) {
        const Ext beta = t.div(rows(0, piv), h(0, piv));
        bool same = true;
        for (size_t i = 0; i < h.rows() && same; ++i)
            for (size_t j = 0; j < h.cols(); ++j)
                if (rows(i, j) != t.mul(beta, h(i, j))) {
                    same = false;
                    break;
                }
        v.exact_scalar_multiple = same;
    }
    // support equal to beta * E for some beta
    const ExtVec ent = entries(rows);
    const Subspace s = span_of(t, ent);
    Ext y = 0;
    for (Ext e : ent)
        if (e) {
            y = e;
            break;
        }
    if (y && s.dim() == inst.support.dim()) {
        const size_t d = inst.support.dim();
        std::vector<Ext> basis;
        for (size_t i = 0; i < d; ++i) basis.push_back(t.from_coords(inst.support.basis().row(i)));
        std::uint64_t total = 1;
        for (size_t i = 0; i < d; ++i) total *= f.q();
        for (std::uint64_t idx = 1; idx < total && !*v.equivalent_key; ++idx) {
            Ext x = 0;
            std::uint64_t r = idx;
            for (size_t i = 0; i < d; ++i, r /= f.q()) x = t.add(x, t.scale(static_cast<Fq>(r % f.q()), basis[i]));
            if (!x) continue;
            const Ext beta = t.div(y, x);
            bool inside = true;
            for (Ext b : basis)
                if (!s.contains(f, t.coords(t.mul(beta, b)))) {
                    inside = false;
                    break;
                }
            if (inside) v.equivalent_key = true;
        }
    }
    return v;
}

ProjectionPlan plan_projection(const LrpcPublic& pub, const fqpoly::Poly& divisor, size_t a) {
    const FieldTower& t = *pub.tower;
    const BaseField& f = t.base();
    ProjectionPlan p;
    p.divisor = divisor;
    fqpoly::trim(p.divisor);
    if (p.divisor.size() < 2 || p.divisor.back() != 1) {
        p.reasons.push_back("divisor must be monic of degree >= 1");
        return p;
    }
    p.degree = p.divisor.size() - 1;
    fqpoly::Poly xk(pub.k + 1, 0);
    xk[0] = f.neg(1);
    xk[pub.k] = 1;
    if (!fqpoly::mod(f, xk, p.divisor).empty()) p.reasons.push_back("divisor does not divide X^k - 1");
    p.m = t.m();
    p.n = 2 * p.degree;
    p.K = p.degree * t.m();
    p.variant = auto_variant(p.m, p.n);
    p.gv = gv_rank(static_cast<unsigned>(p.m), static_cast<unsigned>(p.n), static_cast<unsigned>(p.K), f.q());
    if (p.gv <= pub.d)
        p.reasons.push_back("Gilbert-Varshamov rank " + std::to_string(p.gv) + " of the projected code is not above d = " +
                            std::to_string(pub.d));
    const size_t a_eff = std::min(a, pub.d);
    if (p.variant == Variant::transposed_hinted) {
        const fqpoly::Poly x1 = {f.neg(1), 1};
        if (!fqpoly::mod(f, p.divisor, x1).empty())
            p.reasons.push_back("projected length 2*deg D < m needs the transposed algorithm, which needs (X - 1) | D; (X - 1)*D "
                                "of degree " + std::to_string(p.degree + 1) + " satisfies this");
        if (p.m > a_eff) {
            p.r = choose_r_transposed(p.m, p.n, p.K, a_eff);
            if (p.r > static_cast<long>(p.n)) p.r = static_cast<long>(p.n);
        }
    } else {
        p.r = choose_r_basic(p.m, p.n, p.K);
    }
    if (p.r < static_cast<long>(pub.d)) p.reasons.push_back("r = " + std::to_string(p.r) + " is below d");
    if (p.m > a_eff) {
        p.exponent = complexity_exponent(p.m, p.n, p.K, pub.d, a_eff, p.variant);
        p.log2_work = complexity_estimate(p.m, p.n, p.K, pub.d, a_eff, f.q(), p.variant);
    }
    p.admissible = p.reasons.empty();
    return p;
}

std::optional<ProjectionPlan> auto_divisor(const LrpcPublic& pub, size_t a) {
    const auto menu = divisor_menu(pub.k, pub.tower->base_ptr(), DivisorConstraints{});
    for (const auto& d : menu) {
        ProjectionPlan p = plan_projection(pub, d, a);
        if (p.admissible) return p;
    }
    return std::nullopt;
}

namespace {

// Parity rows built from a dual word and its k - 1 cyclic shifts.
ExtMatrix rows_from_word(const LrpcPublic& pub, const Matrix& cw) {
    const ExtVec word = from_matrix(*pub.tower, cw);
    const Poly u1 = psi_inverse(ExtVec(word.begin(), word.begin() + pub.k));
    const Poly u2 = psi_inverse(ExtVec(word.begin() + pub.k, word.end()));
    return circulant_rows(cyclic_ring(pub.tower, pub.k), u1, u2);
}

// Step 4 / Step C: dual words supported on F, rebuilt into circulant parity rows.
bool reconstruct(const LrpcPublic& pub, const MatrixCode& dual_mc, const Subspace& fsp, const AttackConfig& cfg,
                 std::uint64_t seed, AttackReport& rep, const Matrix* direct = nullptr) {
    const FieldTower& t = *pub.tower;
    const BaseField& f = t.base();
    auto attempt = [&](const Matrix& cw) {
        if (rank_weight(f, cw) != pub.d) return false;
        ++rep.candidates_tried;
        ExtMatrix rows = rows_from_word(pub, cw);
        Verification v = verify_recovery(pub, rows);
        if (!v.verdict) return false;
        rep.rows = std::move(rows);
        rep.verification = v;
        return true;
    };
    if (direct && attempt(*direct)) return true;
    const SupportSolution sol = support_solve(dual_mc, fsp, std::nullopt, cfg.search.kernel_cap);
    rep.solution_dim = sol.solution_dim;
    if (sol.solution_dim == 0) return false;
    for (const auto& w : sol.words)
        if (attempt(w)) return true;
    if (!sol.truncated) return false;
    Rng rng(derive_seed(seed, "reconstruct"));
    std::vector<Fq> coeffs(sol.basis.rows());
    for (unsigned i = 0; i < cfg.reconstruct_tries; ++i) {
        std::vector<Fq> flat(sol.basis.cols(), 0);
        for (size_t j = 0; j < sol.basis.rows(); ++j) axpy(f, flat, sol.basis.row(j), f.random(rng));
        if (attempt(unflatten(dual_mc.m(), dual_mc.n(), flat))) return true;
    }
    return false;
}

// never use more hints than the target weight
void trim_hints(FoldHints& h, size_t d) {
    if (h.kept.size() <= d) return;
    h.kept.resize(d);
    h.blocks.resize(d);
    h.a = d;
}

SearchReport search(const MatrixCode& code, size_t w, const Hints& hints, Variant v, const SearchConfig& cfg) {
    if (v == Variant::transposed_hinted) return trap_transposed_hinted(code, w, hints, cfg);
    if (hints.a() == 0) return trap_basic(code, w, cfg);
    return trap_hinted(code, w, hints, cfg);
}

}  // namespace

AttackReport attack_fold(const LrpcPublic& pub, const AttackConfig& cfg) {
    const FieldTower& t = *pub.tower;
    AttackReport rep;
    rep.mode = "fold";
    auto t0 = Clock::now();
    const CellularCode dual = dual_public_code(pub);
    rep.hints = extract_fold_hints(dual);
    trim_hints(rep.hints, pub.d);
    const MatrixCode dual_mc = matrix_view(dual);
    rep.timings.push_back({"hints_and_dual", ms_since(t0)});
    rep.code_m = dual_mc.m();
    rep.code_n = dual_mc.n();
    rep.code_K = dual_mc.K();
    rep.variant = auto_variant(rep.code_m, rep.code_n);
    const size_t a = std::min(rep.hints.a, pub.d);
    rep.log2_work = complexity_estimate(rep.code_m, rep.code_n, rep.code_K, pub.d, a, t.q(), rep.variant);
    if (rep.log2_work > cfg.max_log2_work && !cfg.force) {
        rep.status = "refused";
        rep.reasons.push_back("estimated work 2^" + fmt2(rep.log2_work) + " exceeds 2^" + fmt2(cfg.max_log2_work));
        return rep;
    }
    const Hints hints = block_hints(t, rep.hints, pub.k);
    SearchConfig sc = cfg.search;
    // a success leaves the whole k-dimensional space of multiples in the kernel
    sc.kernel_cap = std::max<unsigned>(sc.kernel_cap, static_cast<unsigned>(pub.k) + 4);
    // periodic dual words can have rank d too; only keep words whose shifts verify
    sc.target = [&pub](const Matrix& cw) { return verify_recovery(pub, rows_from_word(pub, cw)).verdict; };
    t0 = Clock::now();
    rep.searches.push_back(search(dual_mc, pub.d, hints, rep.variant, sc));
    rep.timings.push_back({"trap", ms_since(t0)});
    const SearchReport& sr = rep.searches.back();
    if (!sr.found) {
        rep.status = "not_found";
        rep.reasons.push_back("no weight-" + std::to_string(pub.d) + " word after " + std::to_string(sr.trials) + " trials");
        if (sr.enumeration_truncated)
            rep.reasons.push_back("some trial kernels exceeded the enumeration cap of " + std::to_string(sc.kernel_cap));
        return rep;
    }
    t0 = Clock::now();
    const bool ok = reconstruct(pub, dual_mc, column_space(t.base(), sr.codeword), cfg, cfg.search.seed, rep, &sr.codeword);
    rep.timings.push_back({"reconstruct", ms_since(t0)});
    rep.status = ok ? "recovered" : "not_found";
    if (!ok) rep.reasons.push_back("no circulant parity matrix could be rebuilt from the trapped support");
    return rep;
}

AttackReport attack_fold_project(const LrpcPublic& pub, const AttackConfig& cfg) {
    const FieldTower& t = *pub.tower;
    AttackReport rep;
    rep.mode = "fold-project";
    auto t0 = Clock::now();
    const CellularCode dual = dual_public_code(pub);
    rep.hints = extract_fold_hints(dual);
    trim_hints(rep.hints, pub.d);
    rep.timings.push_back({"fold_hints", ms_since(t0)});
    const size_t a = std::min(rep.hints.a, pub.d);

    t0 = Clock::now();
    std::optional<ProjectionPlan> plan;
    if (cfg.divisor) {
        plan = plan_projection(pub, *cfg.divisor, a);
    } else {
        plan = auto_divisor(pub, a);
        if (!plan) {
            rep.status = "refused";
            rep.reasons.push_back("no divisor of X^k - 1 passes the feasibility checks; use the fold attack");
            return rep;
        }
    }
    rep.plan = plan;
    rep.code_m = plan->m;
    rep.code_n = plan->n;
    rep.code_K = plan->K;
    rep.variant = plan->variant;
    rep.log2_work = plan->log2_work;
    rep.reasons = plan->reasons;
    if (plan->log2_work > cfg.max_log2_work && !cfg.force)
        rep.reasons.push_back("estimated work 2^" + fmt2(plan->log2_work) + " exceeds 2^" + fmt2(cfg.max_log2_work) +
                              " (feasible in principle, out of desk scope)");
    if (!rep.reasons.empty()) {
        rep.status = "refused";
        return rep;
    }
    const CellularCode projected = project(dual, extpoly::from_base(plan->divisor));
    const MatrixCode proj_mc = matrix_view(projected);
    const MatrixCode dual_mc = matrix_view(dual);
    const Hints hints = block_hints(t, rep.hints, plan->degree);
    rep.timings.push_back({"project", ms_since(t0)});

    for (unsigned attempt = 0; attempt <= cfg.projection_retries; ++attempt) {
        SearchConfig sc = cfg.search;
        if (attempt) sc.seed = derive_seed(cfg.search.seed, "step3-retry", attempt);
        t0 = Clock::now();
        rep.searches.push_back(search(proj_mc, pub.d, hints, plan->variant, sc));
        rep.timings.push_back({"trap", ms_since(t0)});
        const SearchReport& sr = rep.searches.back();
        if (!sr.found) {
            rep.status = "not_found";
            rep.reasons.push_back("no weight-" + std::to_string(pub.d) + " word in the projected code after " +
                                  std::to_string(sr.trials) + " trials");
            return rep;
        }
        t0 = Clock::now();
        const bool ok = reconstruct(pub, dual_mc, column_space(t.base(), sr.codeword), cfg, sc.seed, rep);
        rep.timings.push_back({"support_solve", ms_since(t0)});
        if (ok) {
            rep.status = "recovered";
            return rep;
        }
        rep.status = "projection_collision";
    }
    rep.reasons.push_back("every projected low-weight word failed to lift to a parity matrix");
    return rep;
}

AttackReport run_attack(const LrpcPublic& pub, const AttackConfig& cfg) {
    return cfg.mode == AttackMode::fold ? attack_fold(pub, cfg) : attack_fold_project(pub, cfg);
}

}  // namespace rmc

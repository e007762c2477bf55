#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rmc/oracle.hpp"
#include "rmc/serialize.hpp"

namespace rmc::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

BaseFieldPtr field_for_q(unsigned q) {
    if (q < 2 || q > 256) throw ParameterError("q must be a prime power in [2, 256]");
    for (unsigned p = 2; p <= q; ++p) {
        if (q % p) continue;
        unsigned e = 0, x = q;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        if (x != 1) throw ParameterError("q = " + std::to_string(q) + " is not a prime power");
        return BaseField::make(p, e);
    }
    throw ParameterError("q must be a prime power");
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    return json::parse(in);
}

void write_json(const std::string& path, const json& j) {
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << j.dump(2) << "\n";
}

void emit(const std::string& path, RunManifest m, Clock::time_point t0) {
    if (path.empty()) return;
    m.wall_ms = ms_since(t0);
    write_json(path, manifest_to_json(m));
}

std::string fixed(double x, int digits = 2) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << x;
    return s.str();
}

std::string public_path(const std::string& out) {
    const std::string ext = ".json";
    if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
        return out.substr(0, out.size() - ext.size()) + ".pub.json";
    return out + ".pub.json";
}

fqpoly::Poly parse_divisor(const std::string& s, const BaseField& f) {
    fqpoly::Poly p;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        unsigned v = 0;
        try {
            v = static_cast<unsigned>(std::stoul(tok));
        } catch (const std::exception&) {
            throw ParameterError("divisor must be 'auto' or a comma-separated coefficient list, got '" + s + "'");
        }
        if (v >= f.q()) throw ParameterError("divisor coefficient " + tok + " is outside F_q");
        p.push_back(static_cast<Fq>(v));
    }
    fqpoly::trim(p);
    return p;
}

// ---- keygen ----

struct KeygenOpts {
    unsigned q = 2, m = 0, k = 0, d = 0;
    std::uint64_t seed = 0;
    std::string out, json_out;
};

int run_keygen(const KeygenOpts& o) {
    const auto t0 = Clock::now();
    BaseFieldPtr f = field_for_q(o.q);
    TowerPtr tower = make_tower(f->p(), f->e(), o.m);
    Rng rng(derive_seed(o.seed, "keygen"));
    const LrpcInstance inst = keygen(tower, o.k, o.d, rng);
    check_instance(inst);
    const PolyRing ring = cyclic_ring(tower, o.k);
    ExtVec both = psi(ring, inst.h1);
    const ExtVec h2 = psi(ring, inst.h2);
    both.insert(both.end(), h2.begin(), h2.end());
    const size_t weight = rank_weight(*f, to_matrix(*tower, both));

    const json key = key_to_json(inst, false), pub = key_to_json(inst, true);
    if (!o.out.empty()) {
        write_json(o.out, key);
        write_json(public_path(o.out), pub);
    }
    std::cout << "support dimension " << inst.support.dim() << "\n";
    std::cout << "rank weight of (h1, h2) " << weight << "\n";
    if (!o.out.empty()) std::cout << "wrote " << o.out << " and " << public_path(o.out) << "\n";
    RunManifest man{"keygen",
                    {{"q", o.q}, {"m", o.m}, {"k", o.k}, {"d", o.d}, {"seed", o.seed}, {"out", o.out}},
                    o.seed,
                    0,
                    {{"key", key}, {"support_dim", inst.support.dim()}, {"rank_weight", weight}}};
    emit(o.json_out, std::move(man), t0);
    return kOk;
}

// ---- attack ----

struct AttackOpts {
    std::string pub, mode = "fold-project", divisor = "auto", json_out;
    std::uint64_t max_trials = 0, seed = 0;
    unsigned threads = 1;
    bool force = false;
};

int run_attack_cmd(const AttackOpts& o) {
    const auto t0 = Clock::now();
    const LrpcPublic pub = public_from_json(read_json(o.pub));
    AttackConfig cfg;
    if (o.mode == "fold")
        cfg.mode = AttackMode::fold;
    else if (o.mode == "fold-project")
        cfg.mode = AttackMode::fold_project;
    else
        throw ParameterError("mode must be fold or fold-project");
    if (o.divisor != "auto") {
        if (cfg.mode == AttackMode::fold) throw ParameterError("--divisor applies to fold-project only");
        const BaseField& f = pub.tower->base();
        cfg.divisor = parse_divisor(o.divisor, f);
        if (cfg.divisor->size() < 2 || cfg.divisor->back() != 1)
            throw ParameterError("divisor must be monic of degree >= 1");
        fqpoly::Poly xk(pub.k + 1, 0);
        xk[0] = f.neg(1);
        xk[pub.k] = 1;
        if (!fqpoly::mod(f, xk, *cfg.divisor).empty())
            throw ParameterError("divisor " + poly_to_string(*cfg.divisor) + " does not divide X^" +
                                 std::to_string(pub.k) + " - 1");
    }
    if (o.threads < 1) throw ParameterError("--threads must be >= 1");
    cfg.search.max_trials = o.max_trials;
    cfg.search.seed = derive_seed(o.seed, "attack");
    cfg.search.workers = o.threads;
    cfg.force = o.force;

    const AttackReport rep = run_attack(pub, cfg);
    const unsigned q = pub.tower->q();

    std::cout << "mode " << rep.mode << "  status " << rep.status << "\n";
    if (rep.plan) std::cout << "divisor " << poly_to_string(rep.plan->divisor) << "  projected [" << rep.plan->m << " x "
                            << rep.plan->n << ", " << rep.plan->K << "]  gv " << rep.plan->gv << "\n";
    std::cout << "hints a = " << rep.hints.a << "  variant " << to_string(rep.variant) << "  estimated work 2^"
              << fixed(rep.log2_work) << "\n";
    std::uint64_t trials = 0;
    for (const auto& s : rep.searches) trials += s.trials;
    if (!rep.searches.empty()) std::cout << "trials " << trials << "\n";
    for (const auto& r : rep.reasons) std::cout << "reason: " << r << "\n";
    if (rep.verified())
        std::cout << "verified: rows annihilate the public code, support dimension " << rep.verification.support_dim
                  << ", rank " << rep.verification.ext_rank << "\n";

    json timings = json::array();
    for (const auto& s : rep.timings) timings.push_back({{"step", s.step}, {"ms", s.ms}});
    RunManifest man{"attack",
                    {{"pub", o.pub},
                     {"mode", o.mode},
                     {"divisor", o.divisor},
                     {"max_trials", o.max_trials},
                     {"seed", o.seed},
                     {"threads", o.threads},
                     {"force", o.force}},
                    o.seed,
                    0,
                    attack_report_to_json(rep, q, false),
                    timings};
    emit(o.json_out, std::move(man), t0);
    if (rep.verified()) return kOk;
    if (rep.status == "refused") return kRefused;
    return kNotFound;
}

// ---- bench-prob ----

struct BenchOpts {
    unsigned q = 2, m = 0, r = 0, w = 0, a = 0;
    std::uint64_t trials = 10000, seed = 0;
    std::string json_out;
};

int run_bench(const BenchOpts& o) {
    const auto t0 = Clock::now();
    BaseFieldPtr f = field_for_q(o.q);
    if (!(o.a <= o.w && o.w <= o.r && o.r <= o.m)) throw ParameterError("need a <= w <= r <= m");
    const ContainmentBench b = bench_containment(*f, o.m, o.r, o.w, o.a, o.trials, o.seed);
    const std::string exact = numerator(b.exact).str() + "/" + denominator(b.exact).str();
    std::cout << "empirical " << b.hits << "/" << b.trials << " = " << fixed(b.empirical, 5) << "\n";
    std::cout << "exact     " << exact << " = " << fixed(to_double(b.exact), 5) << "\n";
    std::cout << "sigma " << fixed(b.sigma, 5) << "  z " << fixed(b.z, 2) << "  "
              << (b.within_3sigma ? "within" : "outside") << " 3 sigma\n";
    RunManifest man{"bench-prob",
                    {{"q", o.q}, {"m", o.m}, {"r", o.r}, {"w", o.w}, {"a", o.a}, {"trials", o.trials}, {"seed", o.seed}},
                    o.seed,
                    0,
                    {{"hits", b.hits},
                     {"trials", b.trials},
                     {"empirical", b.empirical},
                     {"exact", exact},
                     {"exact_float", to_double(b.exact)},
                     {"sigma", b.sigma},
                     {"z", b.z},
                     {"within_3sigma", b.within_3sigma}}};
    emit(o.json_out, std::move(man), t0);
    return kOk;
}

// ---- estimate ----

struct EstimateCase {
    std::string name;
    size_t m, n, K, w, a;
    unsigned q;
    Variant cited;
    double quoted;
};

const std::vector<EstimateCase>& paper_cases() {
    static const std::vector<EstimateCase> cases = {
        {"q=16 m=23 k=34 d=4, projected to dim 4", 23, 8, 4 * 23, 4, 2, 16, Variant::transposed_hinted, 43.6},
        {"q=2 m=47 k=47 d=5, projected to dim 23", 47, 46, 23 * 47, 5, 2, 2, Variant::transposed_hinted, 96.2},
        {"q=16 m=23 k=37 d=4, projected to dim 9", 23, 18, 9 * 23, 4, 2, 16, Variant::transposed_hinted, 87.1},
    };
    return cases;
}

EstimateCase parse_params(const std::string& s) {
    EstimateCase c{"custom", 0, 0, 0, 0, 0, 2, Variant::hinted, 0};
    std::stringstream in(s);
    std::string tok;
    bool have_variant = false;
    while (std::getline(in, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParameterError("expected key=value in --params, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "variant") {
            c.cited = parse_variant(val);
            have_variant = true;
            continue;
        }
        size_t v = 0;
        try {
            v = std::stoul(val);
        } catch (const std::exception&) {
            throw ParameterError("non-numeric value for " + key);
        }
        if (key == "m") c.m = v;
        else if (key == "n") c.n = v;
        else if (key == "K") c.K = v;
        else if (key == "w") c.w = v;
        else if (key == "a") c.a = v;
        else if (key == "q") c.q = static_cast<unsigned>(v);
        else throw ParameterError("unknown parameter '" + key + "'");
    }
    if (!c.m || !c.n || !c.K || !c.w) throw ParameterError("--params needs m, n, K and w");
    if (c.K >= c.m * c.n) throw ParameterError("K must be below m*n");
    if (c.a > c.w) throw ParameterError("a must not exceed w");
    field_for_q(c.q);
    if (!have_variant) c.cited = auto_variant(c.m, c.n);
    return c;
}

struct EstimateOpts {
    std::string params = "paper", json_out;
};

int run_estimate(const EstimateOpts& o) {
    const auto t0 = Clock::now();
    std::vector<EstimateCase> cases = o.params == "paper" ? paper_cases() : std::vector{parse_params(o.params)};
    const Variant all[] = {Variant::basic, Variant::basic_transposed, Variant::hinted, Variant::transposed_hinted};
    json out = json::array();
    for (const auto& c : cases) {
        std::cout << c.name << "  [" << c.m << " x " << c.n << ", " << c.K << "] q=" << c.q << " w=" << c.w
                  << " a=" << c.a << "\n";
        json row = {{"name", c.name}, {"m", c.m}, {"n", c.n}, {"K", c.K}, {"w", c.w}, {"a", c.a}, {"q", c.q},
                    {"selected", to_string(c.cited)}};
        for (Variant v : all) {
            const double l = complexity_estimate(c.m, c.n, c.K, c.w, c.a, c.q, v);
            const long e = complexity_exponent(c.m, c.n, c.K, c.w, c.a, v);
            std::cout << "  " << std::left << std::setw(18) << to_string(v) << " 2^" << fixed(l)
                      << "  (q-exponent " << e << ")" << (v == c.cited ? "  <- selected" : "") << "\n";
            row["log2_work"][to_string(v)] = l;
            row["exponent"][to_string(v)] = e;
        }
        if (c.quoted > 0) {
            row["quoted"] = c.quoted;
            std::cout << "  quoted 2^" << fixed(c.quoted, 1) << "\n";
        }
        out.push_back(row);
    }
    RunManifest man{"estimate", {{"params", o.params}}, 0, 0, {{"cases", out}}};
    emit(o.json_out, std::move(man), t0);
    return kOk;
}

// ---- factor ----

struct FactorOpts {
    size_t k = 0;
    unsigned q = 2;
    std::string json_out;
};

int run_factor(const FactorOpts& o) {
    const auto t0 = Clock::now();
    BaseFieldPtr f = field_for_q(o.q);
    const auto fac = factor_cyclic(o.k, f);
    std::string line;
    json list = json::array();
    for (const auto& [g, e] : fac) {
        if (!line.empty()) line += " + ";
        line += std::to_string(g.size() - 1);
        if (e > 1) line += "^" + std::to_string(e);
        list.push_back({{"degree", g.size() - 1}, {"multiplicity", e}, {"coefficients", fqpoly_to_json(g)},
                        {"text", poly_to_string(g)}});
    }
    std::cout << line << "\n";
    for (const auto& [g, e] : fac)
        std::cout << "  (" << poly_to_string(g) << ")" << (e > 1 ? "^" + std::to_string(e) : "") << "\n";
    RunManifest man{"factor", {{"k", o.k}, {"q", o.q}}, 0, 0, {{"summary", line}, {"factors", list}}};
    emit(o.json_out, std::move(man), t0);
    return kOk;
}

// ---- oracle ----

struct OracleOpts {
    std::string task = "subspaces", code, json_out;
    unsigned q = 2, m = 4, n = 4, w = 2, K = 8;
    std::uint64_t seed = 0;
};

int run_oracle(const OracleOpts& o) {
    const auto t0 = Clock::now();
    json payload, params = {{"task", o.task}, {"q", o.q}, {"seed", o.seed}};
    if (o.task == "subspaces") {
        BaseFieldPtr f = field_for_q(o.q);
        std::uint64_t count = 0;
        enumerate_subspaces(*f, o.m, o.w, [&](const Subspace&) { ++count; });
        const BigInt g = gaussian_binomial(o.m, o.w, o.q);
        std::cout << "enumerated " << count << "  gaussian binomial " << g.str() << "  "
                  << (BigInt(count) == g ? "equal" : "DIFFERENT") << "\n";
        params["m"] = o.m;
        params["w"] = o.w;
        payload = {{"enumerated", count}, {"gaussian_binomial", g.str()}, {"equal", BigInt(count) == g}};
    } else if (o.task == "min-weight") {
        MatrixCode c;
        if (!o.code.empty()) {
            c = code_from_json(read_json(o.code));
            params["code"] = o.code;
        } else {
            BaseFieldPtr f = field_for_q(o.q);
            if (o.K > o.m * o.n) throw ParameterError("K must be at most m*n");
            Rng rng(derive_seed(o.seed, "oracle-code"));
            c = MatrixCode(f, o.m, o.n, Matrix::random(o.K, o.m * o.n, *f, rng));
            params["m"] = o.m;
            params["n"] = o.n;
            params["K"] = o.K;
        }
        const MinWeight mw = min_rank_weight_bruteforce(c);
        const auto dist = weight_distribution(c);
        if (mw.weight)
            std::cout << "minimum rank weight " << *mw.weight << "\n";
        else
            std::cout << "zero code: no nonzero codeword\n";
        std::cout << "weight distribution";
        for (auto x : dist) std::cout << " " << x;
        std::cout << "\n";
        payload = {{"code", code_to_json(c)},
                   {"min_weight", mw.weight ? json(*mw.weight) : json(nullptr)},
                   {"witness", matrix_to_json(mw.witness)},
                   {"distribution", dist}};
    } else {
        throw ParameterError("--task must be subspaces or min-weight");
    }
    RunManifest man{"oracle", params, o.seed, 0, payload};
    emit(o.json_out, std::move(man), t0);
    return kOk;
}

}  // namespace

std::function<int()> register_commands(CLI::App& app) {
    auto kg = std::make_shared<KeygenOpts>();
    auto at = std::make_shared<AttackOpts>();
    auto be = std::make_shared<BenchOpts>();
    auto es = std::make_shared<EstimateOpts>();
    auto fa = std::make_shared<FactorOpts>();
    auto orc = std::make_shared<OracleOpts>();

    auto* c = app.add_subcommand("keygen", "generate a double-circulant LRPC key pair");
    c->add_option("--q", kg->q, "base field size")->required();
    c->add_option("--m", kg->m, "extension degree")->required();
    c->add_option("--k", kg->k, "circulant size")->required();
    c->add_option("--d", kg->d, "support dimension")->required();
    c->add_option("--seed", kg->seed);
    c->add_option("--out", kg->out, "key file; the public part goes to *.pub.json");
    c->add_option("--json-out", kg->json_out, "run manifest ('-' for stdout)");

    c = app.add_subcommand("attack", "key recovery from public data");
    c->add_option("--pub", at->pub, "public (or full) key JSON")->required();
    c->add_option("--mode", at->mode)->check(CLI::IsMember({"fold", "fold-project"}));
    c->add_option("--divisor", at->divisor, "auto, or coefficients of D ascending, e.g. 1,1,0,0,0,1");
    c->add_option("--max-trials", at->max_trials, "0 uses the default budget");
    c->add_option("--seed", at->seed);
    c->add_option("--threads", at->threads);
    c->add_option("--json-out", at->json_out, "AttackReport manifest ('-' for stdout)");
    c->add_flag("--force", at->force, "run even when the estimate exceeds 2^40");

    c = app.add_subcommand("bench-prob", "empirical vs exact containment probability");
    c->add_option("--q", be->q);
    c->add_option("--m", be->m)->required();
    c->add_option("--r", be->r)->required();
    c->add_option("--w", be->w)->required();
    c->add_option("--a", be->a);
    c->add_option("--trials", be->trials);
    c->add_option("--seed", be->seed);
    c->add_option("--json-out", be->json_out);

    c = app.add_subcommand("estimate", "log2 work factors of the four trapping variants");
    c->add_option("--params", es->params, "'paper' or m=..,n=..,K=..,w=..,a=..,q=..[,variant=..]");
    c->add_option("--json-out", es->json_out);

    c = app.add_subcommand("factor", "factor X^k - 1 over F_q");
    c->add_option("--k", fa->k)->required();
    c->add_option("--q", fa->q);
    c->add_option("--json-out", fa->json_out);

    c = app.add_subcommand("oracle", "brute-force spot checks");
    c->add_option("--task", orc->task)->check(CLI::IsMember({"subspaces", "min-weight"}));
    c->add_option("--code", orc->code, "matrix code JSON for min-weight");
    c->add_option("--q", orc->q);
    c->add_option("--m", orc->m);
    c->add_option("--n", orc->n);
    c->add_option("--w", orc->w);
    c->add_option("--K", orc->K);
    c->add_option("--seed", orc->seed);
    c->add_option("--json-out", orc->json_out);

    return [&app, kg, at, be, es, fa, orc]() -> int {
        if (app.got_subcommand("keygen")) return run_keygen(*kg);
        if (app.got_subcommand("attack")) return run_attack_cmd(*at);
        if (app.got_subcommand("bench-prob")) return run_bench(*be);
        if (app.got_subcommand("estimate")) return run_estimate(*es);
        if (app.got_subcommand("factor")) return run_factor(*fa);
        if (app.got_subcommand("oracle")) return run_oracle(*orc);
        return kParam;
    };
}

}  // namespace rmc::cli

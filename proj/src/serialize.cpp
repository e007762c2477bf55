#include "rmc/serialize.hpp"

#include <limits>

namespace rmc {

json ext_to_json(Ext x) {
    if (x <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(x);
    return to_string(x);
}

Ext ext_from_json(const json& j) {
    if (j.is_string()) return parse_ext(j.get<std::string>());
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParameterError("field element must be a non-negative integer");
    return j.get<std::uint64_t>();
}

json tower_to_json(const FieldTower& t) {
    std::vector<unsigned> ext_mod(t.modulus().begin(), t.modulus().end());
    return {{"p", t.p()}, {"e", t.e()}, {"m", t.m()}, {"q", t.q()},
            {"base_modulus", t.base().modulus()}, {"modulus", ext_mod}};
}

TowerPtr tower_from_json(const json& j) {
    TowerPtr t = make_tower(j.at("p").get<unsigned>(), j.at("e").get<unsigned>(), j.at("m").get<unsigned>());
    // the moduli are determined by (p, e, m); a mismatch means a file from another convention
    if (j.contains("modulus")) {
        std::vector<unsigned> want(t->modulus().begin(), t->modulus().end());
        if (j.at("modulus").get<std::vector<unsigned>>() != want)
            throw ParameterError("tower modulus does not match the canonical modulus for (p, e, m)");
    }
    if (j.contains("base_modulus") && j.at("base_modulus").get<std::vector<unsigned>>() != t->base().modulus())
        throw ParameterError("base modulus does not match the canonical modulus for (p, e)");
    return t;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        std::vector<unsigned> r(m.row(i).begin(), m.row(i).end());
        rows.push_back(r);
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParameterError("matrix must be a list of rows");
    if (j.empty()) return Matrix();
    const size_t cols = j[0].size();
    Matrix out(0, cols);
    for (const auto& r : j) {
        if (r.size() != cols) throw ParameterError("ragged matrix rows");
        std::vector<Fq> row;
        for (const auto& v : r) row.push_back(static_cast<Fq>(v.get<unsigned>()));
        out.append_row(row);
    }
    return out;
}

json ext_matrix_to_json(const ExtMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Ext x : m.row(i)) r.push_back(ext_to_json(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

json poly_to_json(const Poly& p) {
    json out = json::array();
    for (Ext c : p) out.push_back(ext_to_json(c));
    return out;
}

Poly poly_from_json(const FieldTower& t, const json& j) {
    Poly p;
    for (const auto& c : j) {
        const Ext x = ext_from_json(c);
        if (!t.valid(x)) throw ParameterError("polynomial coefficient outside the field");
        p.push_back(x);
    }
    extpoly::trim(p);
    return p;
}

json fqpoly_to_json(const fqpoly::Poly& p) { return std::vector<unsigned>(p.begin(), p.end()); }

json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Subspace subspace_from_json(const BaseField& f, size_t ambient, const json& j) {
    Matrix rows = matrix_from_json(j);
    if (rows.rows() == 0) return Subspace::zero(ambient);
    if (rows.cols() != ambient) throw ParameterError("subspace rows have the wrong length");
    return Subspace::from_rows(f, rows);
}

json code_to_json(const MatrixCode& c) {
    const BaseField& f = c.field();
    return {{"m", c.m()},
            {"n", c.n()},
            {"q_desc", {{"p", f.p()}, {"e", f.e()}, {"q", f.q()}, {"modulus", f.modulus()}}},
            {"flattening", "column-major"},
            {"generator", matrix_to_json(c.generator())}};
}

MatrixCode code_from_json(const json& j) {
    const json& qd = j.at("q_desc");
    BaseFieldPtr f = BaseField::make(qd.at("p").get<unsigned>(), qd.at("e").get<unsigned>());
    return MatrixCode(f, j.at("m").get<size_t>(), j.at("n").get<size_t>(), matrix_from_json(j.at("generator")));
}

json key_to_json(const LrpcInstance& inst, bool public_only) {
    const FieldTower& t = *inst.pub.tower;
    json j = {{"kind", public_only ? "lrpc-public" : "lrpc-key"},
              {"q_desc", tower_to_json(t)},
              {"m", t.m()},
              {"k", inst.pub.k},
              {"d", inst.pub.d},
              {"public_r", poly_to_json(inst.pub.r)}};
    if (!public_only) {
        j["h1"] = poly_to_json(inst.h1);
        j["h2"] = poly_to_json(inst.h2);
        j["support"] = subspace_to_json(inst.support);
    }
    return j;
}

LrpcPublic public_from_json(const json& j) {
    LrpcPublic pub;
    pub.tower = tower_from_json(j.at("q_desc"));
    if (j.contains("m") && j.at("m").get<unsigned>() != pub.tower->m())
        throw ParameterError("m disagrees with the tower description");
    pub.k = j.at("k").get<size_t>();
    pub.d = j.at("d").get<size_t>();
    pub.r = poly_from_json(*pub.tower, j.at("public_r"));
    if (pub.k < 2 || pub.d < 1) throw ParameterError("key needs k >= 2 and d >= 1");
    if (pub.r.size() > pub.k) throw ParameterError("public_r has degree >= k");
    return pub;
}

LrpcInstance instance_from_json(const json& j) {
    if (!j.contains("h1") || !j.contains("h2") || !j.contains("support"))
        throw ParameterError("key file has no secret part");
    LrpcInstance inst;
    inst.pub = public_from_json(j);
    inst.h1 = poly_from_json(*inst.pub.tower, j.at("h1"));
    inst.h2 = poly_from_json(*inst.pub.tower, j.at("h2"));
    inst.support = subspace_from_json(inst.pub.tower->base(), inst.pub.tower->m(), j.at("support"));
    return inst;
}

namespace {

std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace

json search_report_to_json(const SearchReport& r, bool with_timing) {
    json hist = json::object();
    for (const auto& [dim, count] : r.kernel_dims) hist[std::to_string(dim)] = count;
    json j = {{"found", r.found},
              {"trials", r.trials},
              {"max_trials", r.max_trials},
              {"r", r.r},
              {"unknowns", r.unknowns},
              {"equations", r.equations},
              {"probability", rational_string(r.probability)},
              {"probability_float", to_double(r.probability)},
              {"kernel_dims", hist},
              {"lower_weight_words", r.lower_weight_words},
              {"rejected_by_target", r.rejected_by_target},
              {"enumeration_truncated", r.enumeration_truncated},
              {"codeword", r.found ? matrix_to_json(r.codeword) : json::array()},
              {"trapped", r.found ? subspace_to_json(r.trapped) : json::array()},
              {"note", r.note}};
    if (with_timing) j["wall_ms"] = r.wall_ms;
    return j;
}

json verification_to_json(const Verification& v) {
    json j = {{"annihilates", v.annihilates},
              {"support_dim", v.support_dim},
              {"ext_rank", v.ext_rank},
              {"verdict", v.verdict}};
    if (v.exact_scalar_multiple) j["exact_scalar_multiple"] = *v.exact_scalar_multiple;
    if (v.equivalent_key) j["equivalent_key"] = *v.equivalent_key;
    return j;
}

json plan_to_json(const ProjectionPlan& p, unsigned q) {
    return {{"divisor", fqpoly_to_json(p.divisor)},
            {"divisor_text", poly_to_string(p.divisor)},
            {"divisor_key", poly_key(p.divisor, q).str()},
            {"degree", p.degree},
            {"m", p.m},
            {"n", p.n},
            {"K", p.K},
            {"gv", p.gv},
            {"variant", to_string(p.variant)},
            {"r", p.r},
            {"exponent", p.exponent},
            {"log2_work", p.log2_work},
            {"admissible", p.admissible},
            {"reasons", p.reasons}};
}

json attack_report_to_json(const AttackReport& r, unsigned q, bool with_timings) {
    json searches = json::array();
    for (const auto& s : r.searches) searches.push_back(search_report_to_json(s, with_timings));
    json hints = {{"c1", ext_to_json(r.hints.c1)},
                  {"c2", ext_to_json(r.hints.c2)},
                  {"a", r.hints.a},
                  {"kept", json::array()},
                  {"blocks", r.hints.blocks}};
    for (Ext x : r.hints.kept) hints["kept"].push_back(ext_to_json(x));
    json j = {{"mode", r.mode},
              {"status", r.status},
              {"verified", r.verified()},
              {"reasons", r.reasons},
              {"hints", hints},
              {"plan", r.plan ? plan_to_json(*r.plan, q) : json(nullptr)},
              {"code", {{"m", r.code_m}, {"n", r.code_n}, {"K", r.code_K}}},
              {"variant", to_string(r.variant)},
              {"log2_work", r.log2_work},
              {"searches", searches},
              {"solution_dim", r.solution_dim},
              {"candidates_tried", r.candidates_tried},
              {"rows", ext_matrix_to_json(r.rows)},
              {"verification", verification_to_json(r.verification)}};
    if (with_timings) {
        json tm = json::array();
        for (const auto& s : r.timings) tm.push_back({{"step", s.step}, {"ms", s.ms}});
        j["timings"] = tm;
    }
    return j;
}

json manifest_to_json(const RunManifest& m) {
    json j = {{"subcommand", m.subcommand},
            {"params", m.params},
            {"seed", m.seed},
            {"tool_version", kToolVersion},
            {"wall_ms", m.wall_ms},
            {"payload", m.payload}};
    if (!m.timings.is_null()) j["timings"] = m.timings;
    return j;
}

}  // namespace rmc

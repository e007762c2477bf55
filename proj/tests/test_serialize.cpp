#include <doctest.h>

#include "rmc/oracle.hpp"
#include "rmc/serialize.hpp"

using namespace rmc;

TEST_CASE("field elements") {
    CHECK(ext_to_json(Ext{17}) == json(17));
    const Ext big = (Ext{1} << 90) + 5;
    CHECK(ext_to_json(big).is_string());
    CHECK(ext_from_json(ext_to_json(big)) == big);
    CHECK(ext_from_json(json(42)) == 42);
    CHECK_THROWS_AS(ext_from_json(json(-1)), ParameterError);
}

TEST_CASE("tower round trip and canonical modulus check") {
    auto t = make_tower(2, 4, 23);
    json j = tower_to_json(*t);
    CHECK(tower_from_json(j)->modulus() == t->modulus());
    j["modulus"][0] = 0;
    CHECK_THROWS_AS(tower_from_json(j), ParameterError);
}

TEST_CASE("codes and subspaces round trip") {
    auto f = BaseField::make(3, 1);
    Rng rng(81);
    MatrixCode c(f, 3, 4, Matrix::random(5, 12, *f, rng));
    const MatrixCode back = code_from_json(json::parse(code_to_json(c).dump()));
    CHECK(back.generator() == c.generator());
    CHECK(back.m() == 3);
    const Subspace s = sample_uniform(*f, 6, 3, rng);
    CHECK(subspace_from_json(*f, 6, subspace_to_json(s)) == s);
    CHECK(subspace_from_json(*f, 6, json::array()) == Subspace::zero(6));
}

TEST_CASE("keys round trip and the public file has no secrets") {
    Rng rng(82);
    const LrpcInstance inst = keygen(make_tower(2, 1, 20), 15, 3, rng);
    const json full = json::parse(key_to_json(inst, false).dump());
    const json pub = json::parse(key_to_json(inst, true).dump());
    CHECK_FALSE(pub.contains("h1"));
    CHECK_FALSE(pub.contains("support"));
    const LrpcInstance back = instance_from_json(full);
    CHECK_NOTHROW(check_instance(back));
    CHECK(back.h1 == inst.h1);
    CHECK(back.support == inst.support);
    CHECK(public_from_json(pub).r == inst.pub.r);
    CHECK_THROWS_AS(instance_from_json(pub), ParameterError);
}

TEST_CASE("attack payload excludes wall-clock data") {
    Rng rng(83);
    const LrpcInstance inst = keygen(make_tower(2, 1, 20), 15, 3, rng);
    AttackConfig cfg;
    cfg.search.seed = 5;
    const AttackReport a = run_attack(inst.pub, cfg);
    const AttackReport b = run_attack(inst.pub, cfg);
    const json ja = attack_report_to_json(a, 2, false);
    CHECK_FALSE(ja.contains("timings"));
    CHECK(ja.dump() == attack_report_to_json(b, 2, false).dump());
    CHECK(attack_report_to_json(a, 2, true).contains("timings"));
    const RunManifest m{"attack", {{"seed", 5}}, 5, 1.5, ja, json::array()};
    const json jm = manifest_to_json(m);
    CHECK(jm["tool_version"] == kToolVersion);
    CHECK(jm["payload"] == ja);
}

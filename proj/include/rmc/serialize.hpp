#pragma once

// JSON encoding of towers, codes, keys and reports. Field elements are
// integers; extension elements that do not fit in 64 bits become decimal
// strings.

#include <json.hpp>

#include "rmc/lrpc.hpp"

namespace rmc {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.0";

json ext_to_json(Ext x);
Ext ext_from_json(const json& j);

json tower_to_json(const FieldTower& t);
TowerPtr tower_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json ext_matrix_to_json(const ExtMatrix& m);
json poly_to_json(const Poly& p);
Poly poly_from_json(const FieldTower& t, const json& j);
json fqpoly_to_json(const fqpoly::Poly& p);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const BaseField& f, size_t ambient, const json& j);

json code_to_json(const MatrixCode& c);
MatrixCode code_from_json(const json& j);

/// Public-only when the instance is absent.
json key_to_json(const LrpcInstance& inst, bool public_only);
LrpcPublic public_from_json(const json& j);
/// Throws ParameterError on a public-only file.
LrpcInstance instance_from_json(const json& j);

json search_report_to_json(const SearchReport& r, bool with_timing);
json verification_to_json(const Verification& v);
json plan_to_json(const ProjectionPlan& p, unsigned q);
/// Timings are wall-clock and stay out of the deterministic payload.
json attack_report_to_json(const AttackReport& r, unsigned q, bool with_timings);

struct RunManifest {
    std::string subcommand;
    json params;
    std::uint64_t seed = 0;
    double wall_ms = 0;
    json payload;
    json timings;  // wall-clock only, outside the payload
};

json manifest_to_json(const RunManifest& m);

}  // namespace rmc

#pragma once

// Double-circulant LRPC keys and the folding / fold-and-project key recovery.

#include <optional>
#include <string>

#include "rmc/cellular.hpp"
#include "rmc/trapping.hpp"

namespace rmc {

/// What an attacker sees.
struct LrpcPublic {
    TowerPtr tower;
    size_t k = 0, d = 0;
    Poly r;  // h1^{-1} h2 mod X^k - 1
};

struct LrpcInstance {
    LrpcPublic pub;
    Poly h1, h2;
    Subspace support;
};

class KeygenError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

LrpcInstance keygen(TowerPtr tower, size_t k, size_t d, Rng& rng, unsigned budget = 100);
/// Throws ParameterError naming the first violated invariant.
void check_instance(const LrpcInstance& inst);

/// Cellular code of index 2 generated by (1, r): the row space of the systematic parity matrix.
CellularCode dual_public_code(const LrpcPublic& pub);
/// k x 2k generator (-R^T | I) of the public code, R = phi(r).
ExtMatrix public_generator(const LrpcPublic& pub);
/// The k cyclic shifts of (u1, u2) as rows.
ExtMatrix circulant_rows(const PolyRing& ring, const Poly& u1, const Poly& u2);
ExtMatrix secret_parity(const LrpcInstance& inst);

struct FoldHints {
    Ext c1 = 0, c2 = 0;  // the folded codeword
    size_t a = 0;
    std::vector<Ext> kept;        // hint elements actually used
    std::vector<size_t> blocks;   // block index of each kept element
};

FoldHints extract_fold_hints(const CellularCode& dual);
/// Hint matrices for a two-block code of block length block_len: lambda is all-ones on the block.
Hints block_hints(const FieldTower& t, const FoldHints& h, size_t block_len);

struct Verification {
    bool annihilates = false;
    size_t support_dim = 0;
    size_t ext_rank = 0;
    bool verdict = false;
    // test mode only
    std::optional<bool> exact_scalar_multiple;
    std::optional<bool> equivalent_key;
};

Verification verify_recovery(const LrpcPublic& pub, const ExtMatrix& rows);
/// Adds the secret-key comparisons.
Verification verify_recovery(const LrpcInstance& inst, const ExtMatrix& rows);

enum class AttackMode { fold, fold_project };

struct AttackConfig {
    AttackMode mode = AttackMode::fold_project;
    std::optional<fqpoly::Poly> divisor;  // empty: auto
    SearchConfig search;
    bool force = false;
    double max_log2_work = 40;
    unsigned projection_retries = 3;
    unsigned reconstruct_tries = 64;
};

/// Feasibility of projecting by a given divisor.
struct ProjectionPlan {
    fqpoly::Poly divisor;
    size_t degree = 0;
    size_t m = 0, n = 0, K = 0;
    unsigned gv = 0;
    Variant variant = Variant::hinted;
    long r = 0;
    long exponent = 0;
    double log2_work = 0;
    bool admissible = false;  // structural checks and GV
    std::vector<std::string> reasons;
};

ProjectionPlan plan_projection(const LrpcPublic& pub, const fqpoly::Poly& divisor, size_t a = 2);
/// Smallest-degree admissible divisor, ties by encoding.
std::optional<ProjectionPlan> auto_divisor(const LrpcPublic& pub, size_t a = 2);

struct StepTiming {
    std::string step;
    double ms = 0;
};

struct AttackReport {
    std::string mode;
    std::string status;  // recovered | not_found | refused | projection_collision
    std::vector<std::string> reasons;
    FoldHints hints;
    std::optional<ProjectionPlan> plan;
    size_t code_m = 0, code_n = 0, code_K = 0;
    Variant variant = Variant::hinted;
    double log2_work = 0;
    std::vector<SearchReport> searches;  // one per Step-3 attempt
    size_t solution_dim = 0;
    size_t candidates_tried = 0;
    ExtMatrix rows;
    Verification verification;
    std::vector<StepTiming> timings;
    bool verified() const { return verification.verdict; }
};

AttackReport attack_fold(const LrpcPublic& pub, const AttackConfig& cfg);
AttackReport attack_fold_project(const LrpcPublic& pub, const AttackConfig& cfg);
AttackReport run_attack(const LrpcPublic& pub, const AttackConfig& cfg);

}  // namespace rmc

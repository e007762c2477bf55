#pragma once

// Low-rank codeword search by support trapping: the plain algorithm, the
// hinted variant for n >= m and the transposed hinted variant for m > n.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "rmc/rank_code.hpp"

namespace rmc {

/// a known combinations c'_i = sum_j coeffs(i, j) * (column j) of the target.
struct Hints {
    Matrix vectors;  // a x m, row i = c'_i
    Matrix coeffs;   // a x n, row i = lambda_i
    size_t a() const { return vectors.rows(); }
};

void validate_hints(const BaseField& f, const Hints& h, size_t m, size_t n);

struct SearchConfig {
    std::uint64_t max_trials = 0;  // 0: ceil(8 / p) from the exact success probability
    std::uint64_t seed = 0;
    unsigned workers = 1;
    unsigned kernel_cap = 12;
    /// Optional extra acceptance test on candidate words (original coordinates).
    std::function<bool(const Matrix&)> target;
};

struct SearchReport {
    bool found = false;
    bool enumeration_truncated = false;
    std::uint64_t trials = 0;
    std::uint64_t max_trials = 0;
    int r = 0;
    size_t unknowns = 0, equations = 0;
    Rational probability;  // exact per-trial success probability under the single-target model
    std::map<long, std::uint64_t> kernel_dims;  // -1 means inconsistent affine system
    std::uint64_t lower_weight_words = 0;
    std::uint64_t rejected_by_target = 0;
    Matrix codeword;
    Subspace trapped;  // candidate support of the successful trial
    double wall_ms = 0;
    std::string note;
};

long choose_r_basic(size_t m, size_t n, size_t K);
long choose_r_transposed(size_t m, size_t n, size_t K, size_t a);

std::uint64_t default_max_trials(const Rational& p);

SearchReport trap_basic(const MatrixCode& c, size_t w, const SearchConfig& cfg);
SearchReport trap_hinted(const MatrixCode& c, size_t w, const Hints& hints, const SearchConfig& cfg);

struct Normalized {
    MatrixCode code;  // Q C P
    Matrix q, p, q_inv, p_inv;
};
Normalized normalize_hints(const MatrixCode& c, const Hints& hints);

SearchReport trap_transposed_hinted(const MatrixCode& c, size_t w, const Hints& hints, const SearchConfig& cfg);

struct SupportSolution {
    size_t solution_dim = 0;
    bool truncated = false;
    Matrix basis;               // flattened codewords spanning the solution space
    std::vector<Matrix> words;  // all nonzero words (up to scalars), rank filtered when w is given
};

/// Codewords of C whose column space lies in F.
SupportSolution support_solve(const MatrixCode& c, const Subspace& f, std::optional<size_t> w = std::nullopt,
                              unsigned cap = 12);

enum class Variant { basic, basic_transposed, hinted, transposed_hinted };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);
/// hinted when n >= m, transposed_hinted otherwise.
Variant auto_variant(size_t m, size_t n);

/// log2 of (n-k)^3 m^3 q^exponent.
double complexity_estimate(size_t m, size_t n, size_t K, size_t w, size_t a, unsigned q, Variant v);
/// Exponent of q in the estimate.
long complexity_exponent(size_t m, size_t n, size_t K, size_t w, size_t a, Variant v);

}  // namespace rmc

#pragma once

// Exhaustive ground truth for small parameters. Every routine refuses
// instead of sampling when its cap is exceeded.

#include <functional>
#include <optional>

#include "rmc/trapping.hpp"

namespace rmc {

class OracleRefused : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kCodewordCap = std::uint64_t{1} << 24;
constexpr std::uint64_t kSubspaceCap = 1000000;

struct MinWeight {
    std::optional<size_t> weight;  // empty for the zero code
    Matrix witness;
};

/// Calls visit on every codeword (including zero); stops when visit returns true.
void for_each_codeword(const MatrixCode& c, const std::function<bool(const Matrix&)>& visit);
MinWeight min_rank_weight_bruteforce(const MatrixCode& c);
/// Histogram of rank weights over all codewords.
std::vector<std::uint64_t> weight_distribution(const MatrixCode& c);

/// Every dim-w subspace of F_q^m in RREF, each exactly once.
void enumerate_subspaces(const BaseField& f, size_t m, size_t w, const std::function<void(const Subspace&)>& visit);
std::vector<Subspace> all_subspaces(const BaseField& f, size_t m, size_t w);

struct PlantedInstance {
    MatrixCode code;
    Matrix planted;
    Hints hints;
};

/// Random [m x n, K] code containing a random rank-w word, with a random valid hint set.
PlantedInstance plant(BaseFieldPtr f, size_t m, size_t n, size_t K, size_t w, size_t a, Rng& rng);

/// Uniform random m x n matrix of rank exactly w.
Matrix random_rank_matrix(const BaseField& f, size_t m, size_t n, size_t w, Rng& rng);

}  // namespace rmc

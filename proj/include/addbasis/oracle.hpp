#pragma once

// Brute-force ground truth for small lengths. Walks every admissible basis
// through the candidate interval a_{i+1} <= n2(A_i) + 1 and
// computes each range from scratch, with no pruning.

#include <cstdint>
#include <vector>

#include "addbasis/basis.hpp"

namespace addbasis {

inline constexpr int kDefaultOracleLimit = 10;

struct OracleResult {
    int k = 0;
    /// n2(k) and every basis attaining it.
    int extremal_range = 0;
    std::vector<Basis> extremal;
    /// n2*(k) and every restricted basis attaining it.
    int restricted_range = 0;
    std::vector<Basis> extremal_restricted;
    std::uint64_t admissible_count = 0;
};

/// Throws std::invalid_argument for k < 1 or k > limit.
[[nodiscard]] OracleResult brute_force(int k, int limit = kDefaultOracleLimit);

/// Every admissible basis of length k in lexicographic order.
[[nodiscard]] std::vector<Basis> admissible_universe(int k, int limit = kDefaultOracleLimit);

}  // namespace addbasis

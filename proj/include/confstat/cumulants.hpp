#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "confstat/rational.hpp"

namespace confstat {

// All set partitions of {0, ..., r-1}; each partition is a list of blocks,
// blocks and elements in increasing order. r <= 12.
std::vector<std::vector<std::vector<int>>> set_partitions(int r);

// Joint cumulant from a subset-moment oracle (bitmask over r variables):
// kappa = sum over partitions of (-1)^{q-1} (q-1)! prod of block moments.
Rational mixed_cumulant(const std::function<Rational(std::uint32_t)>& moment, int r);

// Family of indicator variables on a uniform permutation of [N]:
// Y_i = 1{pi(a) = b for every constraint (a, b) of member i}. 1-indexed.
struct IndicatorFamily {
    int N = 0;
    std::vector<std::vector<std::pair<int, int>>> members;

    int size() const { return static_cast<int>(members.size()); }
};

struct BlockStructure {
    int b = 0;                   // connected components of the sharing graph
    int mue = 0;                 // distinct (a, b) constraint pairs
    std::vector<int> block_of;   // per member
    bool degenerate = false;     // some member is identically zero
};

// Members sharing an alpha or a beta land in one block.
BlockStructure blocks_and_mue(const IndicatorFamily& fam);

// E prod_{i in subset} Y_i: 1/(N)_m for m jointly consistent distinct
// constraints, 0 on conflicts.
Rational exact_moment(const IndicatorFamily& fam, std::uint32_t subset_mask);

// kappa(Y_1, ..., Y_r) via the partition sum over exact moments; r <= 8.
Rational exact_mixed_cumulant(const IndicatorFamily& fam);

// Same value by enumerating all N! permutations; N <= 8.
Rational permutation_oracle(const IndicatorFamily& fam);

struct SlopeReport {
    double slope = 0.0;          // least-squares slope of log|kappa| vs log N
    double bound = 0.0;          // -(b-1) - mue
    bool kappa_zero = false;     // some kappa vanished; exponent -infinity
};

SlopeReport scaling_exponent(const std::function<IndicatorFamily(int)>& family_at,
                             const std::vector<int>& sizes);

}  // namespace confstat

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "confstat/degrees.hpp"
#include "confstat/rng.hpp"

namespace confstat {

// Multigraph on n vertices; loops stored as (v, v), parallel edges repeated.
struct Multigraph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    std::vector<int> incidence_counts() const {
        std::vector<int> deg(n, 0);
        for (const auto& [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        return deg;
    }
};

// Perfect matching on half-edge indices 0..N-1: unordered pairs, each
// normalized (lo, hi) and listed in increasing lo order.
using Matching = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct TriesExhausted : std::runtime_error {
    explicit TriesExhausted(std::uint64_t t)
        : std::runtime_error("simple-graph rejection: tries exhausted"), tries(t) {}
    std::uint64_t tries;
};

// Half-edges of v_i occupy a contiguous index block, vertices in input order.
std::vector<std::uint32_t> half_edge_owners(const DegreeSequence& seq);

// Uniform pairing by sequential Fisher-Yates: pair the first unpaired
// half-edge with a uniform remaining one. O(N), uniform over (N-1)!! matchings.
Multigraph sample_multigraph(const DegreeSequence& seq, RngStream& rng);

// Bipartite variant: a uniform permutation joins vertex half-edges to the
// half-edges of N/2 degree-2 midpoints; contracting the midpoints yields the
// same distribution as sample_multigraph through an independent code path.
Multigraph sample_via_cuffs(const DegreeSequence& seq, RngStream& rng);

// (#loops, #parallel pairs); parallel pairs count C(multiplicity, 2) per
// vertex pair. The graph is simple iff both are zero.
std::pair<std::uint64_t, std::uint64_t> loop_and_parallel_counts(const Multigraph& g);

struct SimpleSample {
    Multigraph graph;
    std::uint64_t tries = 0;
};

// Rejection sampling until simple; uniform over simple graphs with the given
// degrees. Throws TriesExhausted after max_tries failures.
SimpleSample sample_simple(const DegreeSequence& seq, RngStream& rng,
                           std::uint64_t max_tries = 10000);

// Stateful wrapper that adapts the cap to the running acceptance estimate:
// cap = max(10^4, 1000 / estimated acceptance).
class SimpleRejectionSampler {
public:
    SimpleSample operator()(const DegreeSequence& seq, RngStream& rng);
    double acceptance_estimate() const;

private:
    std::uint64_t attempts_ = 0;
    std::uint64_t successes_ = 0;
};

// All (N-1)!! matchings with the induced multigraphs, N <= 12.
std::vector<std::pair<Matching, Multigraph>> enumerate_matchings(const DegreeSequence& seq);

// Checks that per-vertex incidence equals the prescribed degrees.
void validate_incidence(const Multigraph& g, const DegreeSequence& seq);

}  // namespace confstat

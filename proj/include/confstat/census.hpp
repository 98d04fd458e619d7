#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confstat/canon.hpp"
#include "confstat/confmodel.hpp"
#include "confstat/smallgraph.hpp"

namespace confstat {

// One connected component, vertices in global ids, edges re-indexed locally.
struct ComponentRef {
    std::vector<std::uint32_t> vertices;
    SmallGraph graph;
};

// Components in discovery order (increasing minimal vertex id).
std::vector<ComponentRef> components(const Multigraph& g);

struct ClassEntry {
    CanonGraph cls;
    std::int64_t count = 0;
};

struct ComponentCensus {
    std::map<std::string, ClassEntry> classes;  // code -> tally (e <= cap only)
    std::vector<std::pair<std::int64_t, std::int64_t>> large;  // (size, edges), desc
    std::int64_t kappa = 0;                     // total number of components
    std::int64_t c1 = 0, c2 = 0;                // two largest component sizes
    std::int64_t c1_edges = 0, c2_edges = 0;
    std::string c1_code;                        // empty when C_1 exceeded the cap
    double chi_hat = 0.0;                       // sum_{j>=2} |C_j|^2 / n
    std::uint32_t n = 0;

    std::int64_t isolated_count(const std::string& code) const {
        auto it = classes.find(code);
        return it == classes.end() ? 0 : it->second.count;
    }
};

// Classify every component with e <= cap; larger ones land in `large`.
// Ties for C_1/C_2 break by larger edge count, then discovery order.
ComponentCensus census(const Multigraph& g, int cap = 32);

// Unlabelled (not necessarily isolated) copies of a small tree pattern:
// embedding enumeration divided by aut(T). Budget guards the pattern size.
std::int64_t count_copies(const SmallGraph& tree, const Multigraph& g,
                          int edge_budget = 4);

// Graph functional psi(H); for components beyond the classification cap only
// (v, e) are available and nk is null.
using PsiFn =
    std::function<double(std::int64_t v, std::int64_t e, const std::map<int, int>* nk)>;

// Sum of |C| psi(C) over components; excludes exactly the largest component
// unless exclude_largest is false.
double psi_functional(const ComponentCensus& c, const PsiFn& psi,
                      bool exclude_largest = true);

}  // namespace confstat

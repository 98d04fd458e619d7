#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace confstat {

// Connected multigraph on local vertices 0..v-1, loops as (x, x).
struct SmallGraph {
    int v = 0;
    std::vector<std::pair<int, int>> edges;

    int e() const { return static_cast<int>(edges.size()); }
    std::vector<int> degrees() const {
        std::vector<int> d(v, 0);
        for (const auto& [a, b] : edges) {
            ++d[a];
            ++d[b];
        }
        return d;
    }
    bool is_tree() const { return e() == v - 1; }
};

// Named tree patterns: "K1", "K2", "P3" (= K1_2), "P4", "K1_3", "K1_4",
// "C3", "loop", or an explicit edge list "0-1,0-2".
SmallGraph make_pattern(const std::string& spec);

SmallGraph path_graph(int v);
SmallGraph star_graph(int leaves);  // K_{1,leaves}
SmallGraph cycle_graph(int v);

}  // namespace confstat

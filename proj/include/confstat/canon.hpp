#pragma once

#include <map>
#include <string>

#include "confstat/rational.hpp"
#include "confstat/smallgraph.hpp"

namespace confstat {

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

enum class GraphKind { tree, unicyclic, multicyclic };

// Canonical description of a small connected multigraph class. Two
// components map to equal code iff they are isomorphic as multigraphs.
// Trees carry a centre-rooted AHU string; other graphs the minimal
// adjacency-multiset code over vertex orderings.
struct CanonGraph {
    std::string code;
    int v = 0;
    int e = 0;
    std::map<int, int> nk;  // degree -> vertex count
    BigInt aut;             // half-edge-labelled automorphism count Z_H(H)
    GraphKind kind = GraphKind::tree;
};

const char* kind_name(GraphKind k);

// Classify a connected multigraph with e(H) <= cap edges.
CanonGraph canonical_code(const SmallGraph& h, int cap = 32);

// aut(H) = (#vertex automorphisms) * 2^{#loops} * prod (parallel class mult)!
// with loop bundles at one vertex counted as a parallel class.
BigInt aut_count(const SmallGraph& h, int cap = 32);

}  // namespace confstat

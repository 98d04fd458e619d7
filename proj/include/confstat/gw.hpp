#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "confstat/degrees.hpp"
#include "confstat/rng.hpp"
#include "confstat/smallgraph.hpp"

namespace confstat {

struct NotSupercritical : std::runtime_error {
    explicit NotSupercritical(const std::string& msg) : std::runtime_error(msg) {}
};

struct PgfValue {
    long double f;
    long double f1;
    long double f2;
};

// (f(z), f'(z), f''(z)) of the degree pgf, exact finite sums.
PgfValue pgf(const DegreeDistribution& dist, long double z);

struct PgfRational {
    Rational f;
    Rational f1;
    Rational f2;
};

PgfRational pgf_exact(const DegreeDistribution& dist, const Rational& z);

// Root of f'(z) = mu z in [0,1) in the supercritical case (bisection with a
// Newton polish, |f'(z) - mu z| < 1e-12); 1 otherwise. Throws on mu = 0.
double extinction_root(const DegreeDistribution& dist);

// Limit tree: root offspring D, later generations size-biased minus one.
struct GwSpec {
    DegreeDistribution dist;
    DegreeDistribution offspring;
    double zeta = 1.0;

    static GwSpec make(const DegreeDistribution& dist);
};

// Rooted tree as a parent array: vertex 0 is the root, parent[i] < i.
struct RootedTree {
    std::vector<int> parent;  // parent[0] == -1
    int size() const { return static_cast<int>(parent.size()); }
    SmallGraph to_graph() const;
};

// P(GW tree == T as an unlabelled rooted tree): recursive product of
// offspring probabilities with multinomial corrections over repeated
// child subtrees.
long double rooted_tree_prob(const RootedTree& t, const GwSpec& spec);

// Unrooted version: sum of rooted probabilities over vertex orbits.
long double unrooted_tree_prob(const SmallGraph& tree, const GwSpec& spec);

struct TreeClass {
    std::string code;  // unrooted canonical code
    int v = 0;
    int e = 0;
    std::map<int, int> nk;
    long double p = 0.0;  // unrooted GW probability
    RootedTree shape;
};

struct TreeCatalog {
    int edge_budget = 0;
    std::vector<TreeClass> trees;  // deterministic order: (e, code)
};

// Every unrooted tree with at most `edge_budget` edges and all degrees in
// the support, each exactly once (centroid decomposition), with p attached.
TreeCatalog enumerate_trees(const GwSpec& spec, int edge_budget);

struct EeResult {
    double value = 0.0;
    double tail = 0.0;
    bool tail_known = true;
};

// Partial sum of p_T g(T) over the catalog plus a geometric tail bound
// fitted to the decay of the last catalog levels. Throws std::runtime_error
// when the level masses do not decay.
EeResult ee_truncated(const TreeCatalog& catalog,
                      const std::function<double(const TreeClass&)>& g);

struct EeClosed {
    double mean_size = 0.0;   // EE |T|
    double mean_edges = 0.0;  // EE e(T)
};

// Closed forms EE|T| = f(zeta) + mu^2 zeta^2 / (mu - f''(zeta)) and
// EE e(T) = mu^2 zeta^2 / (mu - f''(zeta)). Throws std::domain_error when
// the denominator vanishes (critical case).
EeClosed ee_closed_size_edges(const DegreeDistribution& dist);

struct GwSample {
    bool escaped = false;  // vertex count exceeded the cap
    RootedTree tree;       // valid when not escaped
};

GwSample sample_gw(const GwSpec& spec, RngStream& rng, std::size_t size_cap = 100000);

}  // namespace confstat

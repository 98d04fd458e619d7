#include "confstat/census.hpp"

#include <algorithm>
#include <numeric>

namespace confstat {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<ComponentRef> components(const Multigraph& g) {
    UnionFind uf(g.n);
    for (const auto& [u, v] : g.edges) uf.unite(u, v);

    // Component index by root, in increasing root order = discovery order.
    std::vector<std::int32_t> comp_of(g.n, -1);
    std::vector<ComponentRef> out;
    std::vector<std::uint32_t> local(g.n, 0);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        std::uint32_t r = uf.find(v);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<std::int32_t>(out.size());
            out.emplace_back();
        }
        ComponentRef& c = out[static_cast<std::size_t>(comp_of[r])];
        local[v] = static_cast<std::uint32_t>(c.vertices.size());
        c.vertices.push_back(v);
        ++c.graph.v;
    }
    for (const auto& [u, v] : g.edges) {
        ComponentRef& c = out[static_cast<std::size_t>(comp_of[uf.find(u)])];
        c.graph.edges.emplace_back(static_cast<int>(local[u]), static_cast<int>(local[v]));
    }
    return out;
}

ComponentCensus census(const Multigraph& g, int cap) {
    ComponentCensus out;
    out.n = g.n;
    std::vector<ComponentRef> comps = components(g);
    out.kappa = static_cast<std::int64_t>(comps.size());

    // (size desc, edges desc, discovery asc)
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (comps[a].graph.v != comps[b].graph.v) return comps[a].graph.v > comps[b].graph.v;
        return comps[a].graph.e() > comps[b].graph.e();
    });

    double sq_sum = 0.0;
    std::vector<std::string> codes(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const SmallGraph& h = comps[i].graph;
        sq_sum += static_cast<double>(h.v) * static_cast<double>(h.v);
        if (h.e() <= cap) {
            CanonGraph cls = canonical_code(h, cap);
            codes[i] = cls.code;
            auto it = out.classes.find(codes[i]);
            if (it == out.classes.end())
                out.classes.emplace(codes[i], ClassEntry{std::move(cls), 1});
            else
                ++it->second.count;
        } else {
            out.large.emplace_back(h.v, h.e());
        }
    }
    std::sort(out.large.rbegin(), out.large.rend());

    if (!order.empty()) {
        const SmallGraph& top = comps[order[0]].graph;
        out.c1 = top.v;
        out.c1_edges = top.e();
        out.c1_code = codes[order[0]];
        if (order.size() > 1) {
            const SmallGraph& second = comps[order[1]].graph;
            out.c2 = second.v;
            out.c2_edges = second.e();
        }
        sq_sum -= static_cast<double>(out.c1) * static_cast<double>(out.c1);
    }
    out.chi_hat = g.n == 0 ? 0.0 : sq_sum / static_cast<double>(g.n);
    return out;
}

namespace {

// Consolidated adjacency with multiplicities; loops omitted (a tree pattern
// can never use them: the endpoints would collide).
struct MultAdj {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> nbr;
    explicit MultAdj(const Multigraph& g) : nbr(g.n) {
        for (const auto& [u, v] : g.edges) {
            if (u == v) continue;
            nbr[u].emplace_back(v, 0);
            nbr[v].emplace_back(u, 0);
        }
        for (auto& lst : nbr) {
            std::sort(lst.begin(), lst.end());
            std::size_t w = 0;
            for (std::size_t r = 0; r < lst.size(); ++r) {
                if (w > 0 && lst[w - 1].first == lst[r].first) {
                    ++lst[w - 1].second;
                } else {
                    lst[w] = {lst[r].first, 1};
                    ++w;
                }
            }
            lst.resize(w);
        }
    }
};

std::int64_t embed_count(const MultAdj& adj, const std::vector<std::pair<int, int>>& tree_arcs,
                         std::vector<std::uint32_t>& image, std::vector<bool>& used,
                         std::size_t arc_idx) {
    if (arc_idx == tree_arcs.size()) return 1;
    auto [parent, child] = tree_arcs[arc_idx];
    std::int64_t total = 0;
    for (const auto& [w, mult] : adj.nbr[image[static_cast<std::size_t>(parent)]]) {
        if (used[w]) continue;
        used[w] = true;
        image[static_cast<std::size_t>(child)] = w;
        total += static_cast<std::int64_t>(mult) *
                 embed_count(adj, tree_arcs, image, used, arc_idx + 1);
        used[w] = false;
    }
    return total;
}

}  // namespace

std::int64_t count_copies(const SmallGraph& tree, const Multigraph& g, int edge_budget) {
    if (!tree.is_tree())
        throw std::invalid_argument("count_copies: pattern must be a tree");
    if (tree.e() > edge_budget)
        throw std::invalid_argument("count_copies: pattern exceeds edge budget");

    if (tree.v == 1)  // K_1 copies = vertex count
        return static_cast<std::int64_t>(g.n);

    // BFS arc order rooted at pattern vertex 0: each arc (parent, child).
    std::vector<std::vector<int>> tadj(tree.v);
    for (const auto& [a, b] : tree.edges) {
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    std::vector<std::pair<int, int>> arcs;
    std::vector<bool> seen(tree.v, false);
    std::vector<int> queue{0};
    seen[0] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int w : tadj[u])
            if (!seen[w]) {
                seen[w] = true;
                arcs.emplace_back(u, w);
                queue.push_back(w);
            }
    }

    MultAdj adj(g);
    std::vector<std::uint32_t> image(tree.v);
    std::vector<bool> used(g.n, false);
    std::int64_t labelled = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        image[0] = v;
        used[v] = true;
        labelled += embed_count(adj, arcs, image, used, 0);
        used[v] = false;
    }

    BigInt aut = aut_count(tree, edge_budget);
    BigInt q, r;
    BigInt::divrem(BigInt(labelled), aut, q, r);
    if (!r.is_zero())
        throw std::logic_error("count_copies: labelled count not divisible by aut");
    return static_cast<std::int64_t>(q.to_long_double());
}

double psi_functional(const ComponentCensus& c, const PsiFn& psi, bool exclude_largest) {
    double total = 0.0;
    for (const auto& [code, entry] : c.classes) {
        double val = psi(entry.cls.v, entry.cls.e, &entry.cls.nk);
        total += static_cast<double>(entry.count) * static_cast<double>(entry.cls.v) * val;
    }
    for (const auto& [size, edges] : c.large)
        total += static_cast<double>(size) * psi(size, edges, nullptr);
    if (exclude_largest && c.c1 > 0) {
        const std::map<int, int>* nk = nullptr;
        if (!c.c1_code.empty()) nk = &c.classes.at(c.c1_code).cls.nk;
        total -= static_cast<double>(c.c1) * psi(c.c1, c.c1_edges, nk);
    }
    return total;
}

}  // namespace confstat

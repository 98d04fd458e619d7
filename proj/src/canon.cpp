#include "confstat/canon.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>

namespace confstat {

SmallGraph make_pattern(const std::string& spec) {
    if (spec == "K1") return SmallGraph{1, {}};
    if (spec == "K2") return path_graph(2);
    if (spec == "P3" || spec == "K1_2") return path_graph(3);
    if (spec == "P4") return path_graph(4);
    if (spec == "K1_3") return star_graph(3);
    if (spec == "K1_4") return star_graph(4);
    if (spec == "C3") return cycle_graph(3);
    if (spec == "loop") return SmallGraph{1, {{0, 0}}};
    // explicit edge list "a-b,c-d,..."
    SmallGraph g;
    std::stringstream ss(spec);
    std::string tok;
    int maxv = -1;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("make_pattern: bad edge token '" + tok + "'");
        int a = std::stoi(tok.substr(0, dash));
        int b = std::stoi(tok.substr(dash + 1));
        if (a < 0 || b < 0) throw std::invalid_argument("make_pattern: negative vertex");
        g.edges.emplace_back(a, b);
        maxv = std::max({maxv, a, b});
    }
    if (g.edges.empty()) throw std::invalid_argument("make_pattern: empty pattern");
    g.v = maxv + 1;
    return g;
}

SmallGraph path_graph(int v) {
    SmallGraph g{v, {}};
    for (int i = 0; i + 1 < v; ++i) g.edges.emplace_back(i, i + 1);
    return g;
}

SmallGraph star_graph(int leaves) {
    SmallGraph g{leaves + 1, {}};
    for (int i = 1; i <= leaves; ++i) g.edges.emplace_back(0, i);
    return g;
}

SmallGraph cycle_graph(int v) {
    SmallGraph g{v, {}};
    for (int i = 0; i < v; ++i) g.edges.emplace_back(i, (i + 1) % v);
    return g;
}

const char* kind_name(GraphKind k) {
    switch (k) {
        case GraphKind::tree: return "tree";
        case GraphKind::unicyclic: return "unicyclic";
        default: return "multicyclic";
    }
}

namespace {

// ----- trees: AHU at the centre -----

struct TreeCtx {
    std::vector<std::vector<int>> adj;
};

std::string rooted_code(const TreeCtx& t, int u, int parent) {
    std::vector<std::string> kids;
    for (int w : t.adj[u])
        if (w != parent) kids.push_back(rooted_code(t, w, u));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    s += ")";
    return s;
}

BigInt rooted_aut(const TreeCtx& t, int u, int parent, std::string* code_out) {
    std::vector<std::pair<std::string, BigInt>> kids;
    for (int w : t.adj[u])
        if (w != parent) {
            std::string c;
            BigInt a = rooted_aut(t, w, u, &c);
            kids.emplace_back(std::move(c), std::move(a));
        }
    std::sort(kids.begin(), kids.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt aut(1);
    std::size_t i = 0;
    while (i < kids.size()) {
        std::size_t j = i;
        while (j < kids.size() && kids[j].first == kids[i].first) ++j;
        aut = aut * factorial(static_cast<unsigned>(j - i));
        for (std::size_t k = i; k < j; ++k) aut = aut * kids[k].second;
        i = j;
    }
    if (code_out) {
        *code_out = "(";
        for (const auto& [c, a] : kids) *code_out += c;
        *code_out += ")";
    }
    return aut;
}

std::vector<int> tree_centres(const TreeCtx& t) {
    int v = static_cast<int>(t.adj.size());
    if (v == 1) return {0};
    std::vector<int> deg(v);
    std::vector<int> leaves;
    for (int i = 0; i < v; ++i) {
        deg[i] = static_cast<int>(t.adj[i].size());
        if (deg[i] <= 1) leaves.push_back(i);
    }
    int remaining = v;
    std::vector<int> cur = leaves;
    while (remaining > 2) {
        remaining -= static_cast<int>(cur.size());
        std::vector<int> next;
        for (int u : cur)
            for (int w : t.adj[u])
                if (--deg[w] == 1) next.push_back(w);
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

void tree_code_aut(const SmallGraph& h, std::string& code, BigInt& aut) {
    TreeCtx t;
    t.adj.assign(h.v, {});
    for (const auto& [a, b] : h.edges) {
        t.adj[a].push_back(b);
        t.adj[b].push_back(a);
    }
    std::vector<int> centres = tree_centres(t);
    if (centres.size() == 1) {
        std::string c;
        BigInt a = rooted_aut(t, centres[0], -1, &c);
        code = "T1" + c;
        aut = a;
    } else {
        int c1 = centres[0], c2 = centres[1];
        std::string s1, s2;
        BigInt a1 = rooted_aut(t, c1, c2, &s1);
        BigInt a2 = rooted_aut(t, c2, c1, &s2);
        if (s2 < s1) std::swap(s1, s2);
        code = "T2" + s1 + s2;
        aut = s1 == s2 ? BigInt(2) * a1 * a2 : a1 * a2;
    }
}

// ----- general multigraphs: 2-core + hanging forests -----
// The 2-core (leaf peeling) is automorphism-invariant. Hanging trees get
// rooted AHU codes and fold into a label per core vertex; the core, with
// labels, is canonicalized by the lexicographically maximal row-by-row
// multiplicity code over vertex orderings. On a min-degree-2 core with
// labels the ordering search prunes hard (running it on raw components
// blows up on tied hanging subtrees). The search also counts the orderings
// that realize the extremum, which is exactly the number of
// label-preserving core automorphisms.

struct CoreCodeCtx {
    int v;
    std::vector<std::vector<std::uint8_t>> mult;  // core x core, diagonal = loops
    std::vector<std::uint8_t> rank;               // label rank per core vertex
    std::vector<int> order;      // candidate try order (heuristic)
    std::vector<int> perm;       // perm[depth] = core index
    std::vector<bool> used;
    std::vector<std::uint8_t> cur;
    std::vector<std::uint8_t> best;
    std::vector<int> best_perm;  // a best-attaining ordering (ties agree on labels)
    BigInt count;                // orderings matching best
    bool have_best = false;
    std::uint64_t generation = 0;  // bumped whenever best is replaced
};

// rel: relation of the current prefix to best's prefix. When best is
// replaced inside a subtree, the new best extends the prefix at every
// ancestor, so ancestors switch to `equal` (detected via the generation
// counter). Completions with an equal prefix are automorphic orderings.
enum class PrefixRel { better, equal };

void max_code_dfs(CoreCodeCtx& c, int depth, PrefixRel rel) {
    if (depth == c.v) {
        if (rel == PrefixRel::equal && c.have_best) {
            c.count = c.count + BigInt(1);
        } else {
            c.best = c.cur;
            c.best_perm = c.perm;
            c.count = BigInt(1);
            c.have_best = true;
            ++c.generation;
        }
        return;
    }
    std::size_t row_start = c.cur.size();
    for (int oi = 0; oi < c.v; ++oi) {
        int cand = c.order[oi];
        if (c.used[cand]) continue;
        c.cur.push_back(c.rank[cand]);
        c.cur.push_back(c.mult[cand][cand]);
        for (int j = 0; j < depth; ++j) c.cur.push_back(c.mult[cand][c.perm[j]]);
        PrefixRel next_rel = rel;
        bool prune = false;
        if (rel == PrefixRel::equal && c.have_best) {
            for (std::size_t i = row_start; i < c.cur.size(); ++i) {
                if (c.cur[i] > c.best[i]) {
                    next_rel = PrefixRel::better;
                    break;
                }
                if (c.cur[i] < c.best[i]) {
                    prune = true;
                    break;
                }
            }
        }
        if (!prune) {
            std::uint64_t gen_before = c.generation;
            c.perm[depth] = cand;
            c.used[cand] = true;
            max_code_dfs(c, depth + 1, next_rel);
            c.used[cand] = false;
            if (c.generation != gen_before) rel = PrefixRel::equal;
        }
        c.cur.resize(row_start);
    }
}

void general_code_aut(const SmallGraph& h, std::string& code, BigInt& vertex_aut) {
    const int n = h.v;
    std::vector<std::vector<int>> nbr(n);  // one entry per non-loop edge end
    std::vector<int> cur_deg(n, 0);
    for (const auto& [a, b] : h.edges) {
        if (a == b) {
            cur_deg[a] += 2;
            continue;
        }
        nbr[a].push_back(b);
        nbr[b].push_back(a);
        ++cur_deg[a];
        ++cur_deg[b];
    }

    // peel to the 2-core; children always peel before their parent
    std::vector<char> removed(n, 0);
    std::vector<int> parent(n, -1);
    std::vector<int> peel_order;
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
        if (cur_deg[i] <= 1) stack.push_back(i);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (removed[u] || cur_deg[u] > 1) continue;
        removed[u] = 1;
        peel_order.push_back(u);
        for (int w : nbr[u]) {
            if (removed[w]) continue;
            parent[u] = w;
            if (--cur_deg[w] <= 1) stack.push_back(w);
        }
        if (parent[u] < 0)
            throw std::logic_error("general_code_aut: disconnected or tree input");
    }

    std::vector<std::vector<int>> kids(n);
    for (int u : peel_order) kids[parent[u]].push_back(u);

    // rooted codes and automorphism counts, bottom-up along the peel order
    std::vector<std::string> pcode(n);
    std::vector<BigInt> paut(n, BigInt(1));
    auto fold_children = [&](int u) {
        std::vector<std::pair<std::string, BigInt>> parts;
        for (int k : kids[u]) parts.emplace_back(pcode[k], paut[k]);
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        BigInt aut(1);
        std::string s = "(";
        std::size_t i = 0;
        while (i < parts.size()) {
            std::size_t j = i;
            while (j < parts.size() && parts[j].first == parts[i].first) ++j;
            aut = aut * factorial(static_cast<unsigned>(j - i));
            for (std::size_t k = i; k < j; ++k) aut = aut * parts[k].second;
            i = j;
        }
        for (const auto& [cs, ca] : parts) s += cs;
        s += ")";
        return std::pair<std::string, BigInt>{std::move(s), std::move(aut)};
    };
    for (int u : peel_order) {
        auto [cs, ca] = fold_children(u);
        pcode[u] = std::move(cs);
        paut[u] = std::move(ca);
    }

    // core vertices with hanging-forest labels
    std::vector<int> core;
    for (int i = 0; i < n; ++i)
        if (!removed[i]) core.push_back(i);
    const int m = static_cast<int>(core.size());
    std::vector<int> core_index(n, -1);
    for (int i = 0; i < m; ++i) core_index[core[i]] = i;

    std::vector<std::string> label(m);
    BigInt forest_aut(1);
    for (int i = 0; i < m; ++i) {
        auto [cs, ca] = fold_children(core[i]);
        label[i] = std::move(cs);
        forest_aut = forest_aut * ca;
    }
    std::vector<std::string> sorted_labels = label;
    std::sort(sorted_labels.begin(), sorted_labels.end());
    sorted_labels.erase(std::unique(sorted_labels.begin(), sorted_labels.end()),
                        sorted_labels.end());

    CoreCodeCtx c;
    c.v = m;
    c.mult.assign(m, std::vector<std::uint8_t>(m, 0));
    for (const auto& [a, b] : h.edges) {
        int ia = core_index[a], ib = core_index[b];
        if (ia < 0 || ib < 0) continue;  // tree edge, encoded in the labels
        if (c.mult[ia][ib] == 255) throw std::invalid_argument("edge multiplicity > 255");
        ++c.mult[ia][ib];
        if (ia != ib) ++c.mult[ib][ia];
    }
    c.rank.resize(m);
    for (int i = 0; i < m; ++i) {
        auto it = std::lower_bound(sorted_labels.begin(), sorted_labels.end(), label[i]);
        c.rank[i] = static_cast<std::uint8_t>(it - sorted_labels.begin());
    }
    std::vector<int> core_deg(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) core_deg[i] += c.mult[i][j];
    c.order.resize(m);
    std::iota(c.order.begin(), c.order.end(), 0);
    // heavy rows first so a strong bound appears early
    std::sort(c.order.begin(), c.order.end(), [&](int a, int b) {
        if (c.rank[a] != c.rank[b]) return c.rank[a] > c.rank[b];
        if (c.mult[a][a] != c.mult[b][b]) return c.mult[a][a] > c.mult[b][b];
        if (core_deg[a] != core_deg[b]) return core_deg[a] > core_deg[b];
        return a < b;
    });
    c.perm.assign(m, -1);
    c.used.assign(m, false);
    c.count = BigInt(0);
    max_code_dfs(c, 0, PrefixRel::equal);

    std::string s = "G";
    s += std::to_string(n);
    s += ":";
    static const char* hexd = "0123456789abcdef";
    for (std::uint8_t b : c.best) {
        s += hexd[b >> 4];
        s += hexd[b & 0xf];
    }
    s += "|";
    for (int d = 0; d < m; ++d) s += label[static_cast<std::size_t>(c.best_perm[d])];
    code = std::move(s);
    vertex_aut = c.count * forest_aut;
}

BigInt half_edge_factor(const SmallGraph& h) {
    // 2^{#loops} * prod over loop bundles (count!) * prod over parallel classes (mult!)
    std::map<std::pair<int, int>, int> mult;
    std::map<int, int> loops;
    for (auto [a, b] : h.edges) {
        if (a == b) {
            ++loops[a];
        } else {
            if (a > b) std::swap(a, b);
            ++mult[{a, b}];
        }
    }
    BigInt f(1);
    for (const auto& [v, cnt] : loops) {
        f = f * factorial(static_cast<unsigned>(cnt));
        for (int i = 0; i < cnt; ++i) f = f * BigInt(2);
    }
    for (const auto& [uv, m] : mult) f = f * factorial(static_cast<unsigned>(m));
    return f;
}

}  // namespace

CanonGraph canonical_code(const SmallGraph& h, int cap) {
    if (h.e() > cap) throw CapExceeded("canonical_code: component exceeds edge cap");
    if (h.v <= 0) throw std::invalid_argument("canonical_code: empty graph");
    CanonGraph out;
    out.v = h.v;
    out.e = h.e();
    for (int d : h.degrees()) ++out.nk[d];
    out.kind = out.e == out.v - 1 ? GraphKind::tree
               : out.e == out.v  ? GraphKind::unicyclic
                                 : GraphKind::multicyclic;
    if (out.kind == GraphKind::tree) {
        tree_code_aut(h, out.code, out.aut);
    } else {
        BigInt vaut;
        general_code_aut(h, out.code, vaut);
        out.aut = vaut * half_edge_factor(h);
    }
    return out;
}

BigInt aut_count(const SmallGraph& h, int cap) {
    return canonical_code(h, cap).aut;
}

}  // namespace confstat

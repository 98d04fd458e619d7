#include "confstat/gw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "confstat/canon.hpp"

namespace confstat {

namespace {
long double ipow(long double z, int n) {
    long double r = 1.0L;
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}
}  // namespace

PgfValue pgf(const DegreeDistribution& dist, long double z) {
    PgfValue out{0.0L, 0.0L, 0.0L};
    for (const auto& [k, p] : dist.pmf()) {
        long double pk = p.to_long_double();
        long double zk2 = k >= 2 ? ipow(z, k - 2) : 0.0L;
        long double zk1 = k >= 2 ? zk2 * z : (k == 1 ? 1.0L : 0.0L);
        long double zk = k >= 1 ? zk1 * z : 1.0L;
        out.f += pk * zk;
        out.f1 += pk * k * zk1;
        out.f2 += pk * k * (k - 1) * zk2;
    }
    return out;
}

PgfRational pgf_exact(const DegreeDistribution& dist, const Rational& z) {
    PgfRational out{Rational(0), Rational(0), Rational(0)};
    for (const auto& [k, p] : dist.pmf()) {
        Rational zk2 = k >= 2 ? z.pow(static_cast<unsigned>(k - 2)) : Rational(0);
        Rational zk1 = k >= 2 ? zk2 * z : (k == 1 ? Rational(1) : Rational(0));
        Rational zk = k >= 1 ? zk1 * z : Rational(1);
        out.f += p * zk;
        out.f1 += p * Rational(k) * zk1;
        out.f2 += p * Rational(static_cast<long long>(k) * (k - 1)) * zk2;
    }
    return out;
}

double extinction_root(const DegreeDistribution& dist) {
    if (dist.mean().is_zero()) throw std::domain_error("extinction_root: mu = 0");
    Rational edd2 = dist.moment(2) - Rational(2) * dist.mean();
    if (edd2.sign() <= 0) return 1.0;  // critical or subcritical
    if (dist.prob(1).is_zero()) return 0.0;

    long double mu = dist.mean().to_long_double();
    auto g = [&](long double z) { return pgf(dist, z).f1 - mu * z; };
    long double lo = 0.0L, hi = 1.0L - 1e-9L;
    // g(0) = p_1 > 0 and g < 0 just left of 1 in the supercritical case.
    int guard = 0;
    while (g(hi) >= 0.0L && ++guard < 80) hi = (hi + 1.0L) / 2.0L;
    if (g(hi) >= 0.0L) return 1.0;  // numerically indistinguishable from critical
    for (int it = 0; it < 200; ++it) {
        long double mid = 0.5L * (lo + hi);
        if (g(mid) > 0.0L)
            lo = mid;
        else
            hi = mid;
    }
    long double z = 0.5L * (lo + hi);
    for (int it = 0; it < 4; ++it) {  // Newton polish
        PgfValue v = pgf(dist, z);
        long double deriv = v.f2 - mu;
        if (deriv == 0.0L) break;
        long double step = (v.f1 - mu * z) / deriv;
        long double nz = z - step;
        if (nz <= 0.0L || nz >= 1.0L) break;
        z = nz;
    }
    return static_cast<double>(z);
}

GwSpec GwSpec::make(const DegreeDistribution& dist) {
    if (dist.mean().is_zero()) {
        // the root has no children almost surely; the offspring law is a
        // placeholder that is never sampled
        return GwSpec{dist, DegreeDistribution::from_pmf({{0, 1.0}}), 1.0};
    }
    return GwSpec{dist, dist.size_biased_offspring(), extinction_root(dist)};
}

SmallGraph RootedTree::to_graph() const {
    SmallGraph g{size(), {}};
    for (int i = 1; i < size(); ++i) g.edges.emplace_back(parent[i], i);
    return g;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 0x811c9dc5u ^ v.size();
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b9u + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Registry of planted (rooted, parent-facing) shapes: id <-> sorted child ids.
// q[id] is the probability that a planted GW subtree (offspring law) equals
// the shape.
struct GwEngine {
    const GwSpec& spec;
    std::unordered_map<std::vector<int>, int, VecHash> ids;
    std::vector<std::vector<int>> children;
    std::vector<int> sizes;
    std::vector<long double> q;

    explicit GwEngine(const GwSpec& s) : spec(s) {}

    int shape(std::vector<int> sorted_children) {
        auto it = ids.find(sorted_children);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(children.size());
        int sz = 1;
        long double prob =
            spec.offspring.prob(static_cast<int>(sorted_children.size())).to_long_double();
        prob *= multinomial_ordering(sorted_children);
        for (int c : sorted_children) {
            sz += sizes[static_cast<std::size_t>(c)];
            prob *= q[static_cast<std::size_t>(c)];
        }
        ids.emplace(sorted_children, id);
        children.push_back(std::move(sorted_children));
        sizes.push_back(sz);
        q.push_back(prob);
        return id;
    }

    // #ways to assign iid children to the shape multiset: c! / prod m_i!
    static long double multinomial_ordering(const std::vector<int>& sorted) {
        long double m = 1.0L;
        std::size_t i = 0;
        long double pos = 0.0L;
        while (i < sorted.size()) {
            std::size_t j = i;
            long double run = 0.0L;
            while (j < sorted.size() && sorted[j] == sorted[i]) {
                ++j;
                ++pos;
                ++run;
                m *= pos / run;
            }
            i = j;
        }
        return m;
    }

    // Probability the whole tree (root law D) equals the rooted shape whose
    // root branches are the given planted shapes.
    long double root_prob(const std::vector<int>& sorted_branches) {
        long double prob =
            spec.dist.prob(static_cast<int>(sorted_branches.size())).to_long_double();
        prob *= multinomial_ordering(sorted_branches);
        for (int c : sorted_branches) prob *= q[static_cast<std::size_t>(c)];
        return prob;
    }
};

// Down/up planted shapes for rerooting an explicit tree: the rooted shape at
// any vertex is its child shapes plus the complement shape through its parent.
struct Reroot {
    std::vector<std::vector<int>> adj;
    std::vector<int> parent;
    std::vector<int> down;  // planted shape below each vertex (w.r.t. root 0)
    std::vector<int> up;    // planted shape of the complement, -1 at root
    GwEngine& eng;

    Reroot(const SmallGraph& tree, GwEngine& engine)
        : adj(tree.v), parent(tree.v, -1), down(tree.v, -1), up(tree.v, -1),
          eng(engine) {
        for (const auto& [a, b] : tree.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        compute_down(0, -1);
        compute_up(0, -1);
    }

    void compute_down(int u, int par) {
        parent[u] = par;
        std::vector<int> kid_ids;
        for (int w : adj[u])
            if (w != par) {
                compute_down(w, u);
                kid_ids.push_back(down[w]);
            }
        std::sort(kid_ids.begin(), kid_ids.end());
        down[u] = eng.shape(std::move(kid_ids));
    }

    void compute_up(int u, int par) {
        for (int w : adj[u]) {
            if (w == par) continue;
            std::vector<int> branches;
            for (int x : adj[u])
                if (x != par && x != w) branches.push_back(down[x]);
            if (par != -1) branches.push_back(up[u]);
            std::sort(branches.begin(), branches.end());
            up[w] = eng.shape(std::move(branches));
            compute_up(w, u);
        }
    }

    // Sum of rooted probabilities over distinct rooted versions (one per
    // vertex orbit: equal branch multisets mean an automorphism moves the
    // roots onto each other).
    long double unrooted_prob() {
        std::set<std::vector<int>> seen;
        long double total = 0.0L;
        for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
            std::vector<int> branches;
            for (int w : adj[v])
                if (w != parent[v]) branches.push_back(down[w]);
            if (up[v] != -1) branches.push_back(up[v]);
            std::sort(branches.begin(), branches.end());
            if (seen.insert(branches).second) total += eng.root_prob(branches);
        }
        return total;
    }
};

long double unrooted_prob_with_engine(const SmallGraph& tree, GwEngine& eng) {
    Reroot rr(tree, eng);
    return rr.unrooted_prob();
}

}  // namespace

long double rooted_tree_prob(const RootedTree& t, const GwSpec& spec) {
    GwEngine eng(spec);
    int n = t.size();
    std::vector<std::vector<int>> kids(n);
    for (int i = 1; i < n; ++i) kids[t.parent[i]].push_back(i);
    // children appear after parents, so a reverse sweep resolves bottom-up
    std::vector<int> shape_of(n, -1);
    for (int u = n; u-- > 0;) {
        std::vector<int> kid_ids;
        for (int w : kids[u]) kid_ids.push_back(shape_of[w]);
        std::sort(kid_ids.begin(), kid_ids.end());
        if (u == 0) {
            return eng.root_prob(kid_ids);
        }
        shape_of[u] = eng.shape(std::move(kid_ids));
    }
    return 0.0L;  // unreachable
}

long double unrooted_tree_prob(const SmallGraph& tree, const GwSpec& spec) {
    if (!tree.is_tree())
        throw std::invalid_argument("unrooted_tree_prob: not a tree");
    GwEngine eng(spec);
    return unrooted_prob_with_engine(tree, eng);
}

namespace {

// Planted shapes of each size whose vertex degrees stay in the support.
struct PlantedShapes {
    std::vector<std::vector<int>> by_size;  // ids, per vertex count
    GwEngine& eng;

    PlantedShapes(GwEngine& engine, const std::vector<int>& child_counts, int max_size)
        : eng(engine) {
        by_size.assign(static_cast<std::size_t>(max_size) + 1, {});
        for (int s = 1; s <= max_size; ++s) {
            std::vector<int>& out = by_size[static_cast<std::size_t>(s)];
            for (int c : child_counts) {
                if (c == 0) {
                    if (s == 1) out.push_back(eng.shape({}));
                    continue;
                }
                if (s < c + 1) continue;
                std::vector<int> parts;
                enumerate_parts(c, s - 1, s - 1, std::numeric_limits<int>::max(), parts,
                                out);
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }

    // Multisets of `slots` planted shapes with given size total; parts
    // nonincreasing by (size, id) so each multiset shows up once.
    void enumerate_parts(int slots, int total, int max_part_size, int max_id,
                         std::vector<int>& parts, std::vector<int>& out) {
        if (slots == 0) {
            if (total == 0) {
                std::vector<int> sorted = parts;
                std::sort(sorted.begin(), sorted.end());
                out.push_back(eng.shape(std::move(sorted)));
            }
            return;
        }
        if (total < slots) return;  // each part has >= 1 vertex
        int cap = std::min(max_part_size, total - (slots - 1));
        for (int sz = cap; sz >= 1; --sz) {
            const std::vector<int>& pool = by_size[static_cast<std::size_t>(sz)];
            for (auto it = pool.rbegin(); it != pool.rend(); ++it) {
                int id = *it;
                if (sz == max_part_size && id > max_id) continue;
                parts.push_back(id);
                enumerate_parts(slots - 1, total - sz, sz, id, parts, out);
                parts.pop_back();
            }
        }
    }
};

void expand_shape(const GwEngine& eng, int shape_id, int parent, RootedTree& t) {
    int me = static_cast<int>(t.parent.size());
    t.parent.push_back(parent);
    for (int c : eng.children[static_cast<std::size_t>(shape_id)])
        expand_shape(eng, c, me, t);
}

TreeClass materialize(GwEngine& eng, std::vector<int> root_branches) {
    TreeClass tc;
    tc.shape.parent.clear();
    tc.shape.parent.push_back(-1);
    for (int b : root_branches) expand_shape(eng, b, 0, tc.shape);
    SmallGraph g = tc.shape.to_graph();
    tc.v = g.v;
    tc.e = g.e();
    for (int d : g.degrees()) ++tc.nk[d];
    CanonGraph cg = canonical_code(g, std::max(1, g.e()));
    tc.code = std::move(cg.code);
    tc.p = unrooted_prob_with_engine(g, eng);
    return tc;
}

}  // namespace

TreeCatalog enumerate_trees(const GwSpec& spec, int edge_budget) {
    if (edge_budget < 0) throw std::invalid_argument("enumerate_trees: negative budget");
    TreeCatalog cat;
    cat.edge_budget = edge_budget;

    std::vector<int> supp, child_counts;
    for (const auto& [k, p] : spec.dist.pmf()) {
        supp.push_back(k);
        if (k >= 1) child_counts.push_back(k - 1);
    }

    GwEngine eng(spec);
    int max_v = edge_budget + 1;
    int max_planted = std::max(1, (max_v + 1) / 2);
    PlantedShapes planted(eng, child_counts, max_planted);

    std::vector<TreeClass> trees;
    // single vertex
    if (std::find(supp.begin(), supp.end(), 0) != supp.end())
        trees.push_back(materialize(eng, {}));

    for (int v = 2; v <= max_v; ++v) {
        int branch_cap = (v - 1) / 2;
        // vertex centroid: root degree in the support, branches <= (v-1)/2
        for (int c : supp) {
            if (c < 1 || c > v - 1) continue;
            std::vector<int> parts;
            std::vector<int> found;
            planted.enumerate_parts(c, v - 1, std::min(branch_cap, v - 1),
                                    std::numeric_limits<int>::max(), parts, found);
            for (int assembled : found)
                trees.push_back(materialize(
                    eng, eng.children[static_cast<std::size_t>(assembled)]));
        }
        // centroid edge: two planted halves of size exactly v/2
        if (v % 2 == 0 && v / 2 <= max_planted) {
            const auto& pool = planted.by_size[static_cast<std::size_t>(v / 2)];
            for (std::size_t i = 0; i < pool.size(); ++i) {
                for (std::size_t j = i; j < pool.size(); ++j) {
                    // root the tree at the first half's root: its branches are
                    // the first half's children plus the whole second half
                    std::vector<int> branches =
                        eng.children[static_cast<std::size_t>(pool[i])];
                    branches.push_back(pool[j]);
                    std::sort(branches.begin(), branches.end());
                    // root degree must stay in the support
                    bool ok = std::find(supp.begin(), supp.end(),
                                        static_cast<int>(branches.size())) != supp.end();
                    if (ok) trees.push_back(materialize(eng, branches));
                }
            }
        }
    }

    std::sort(trees.begin(), trees.end(), [](const TreeClass& a, const TreeClass& b) {
        if (a.e != b.e) return a.e < b.e;
        return a.code < b.code;
    });
    cat.trees = std::move(trees);
    return cat;
}

EeResult ee_truncated(const TreeCatalog& catalog,
                      const std::function<double(const TreeClass&)>& g) {
    EeResult out;
    std::vector<double> level_mass(static_cast<std::size_t>(catalog.edge_budget) + 1, 0.0);
    double sum = 0.0;
    for (const TreeClass& t : catalog.trees) {
        double gv = g(t);
        sum += static_cast<double>(t.p) * gv;
        level_mass[static_cast<std::size_t>(t.e)] += static_cast<double>(t.p) * std::fabs(gv);
    }
    out.value = sum;

    std::vector<std::pair<int, double>> positive;
    for (std::size_t l = 1; l < level_mass.size(); ++l)
        if (level_mass[l] > 0.0) positive.emplace_back(static_cast<int>(l), level_mass[l]);
    bool any = level_mass[0] > 0.0 || !positive.empty();
    if (!any) {
        out.tail = 0.0;
        out.tail_known = true;
        return out;
    }
    if (positive.size() < 5) {  // not enough levels to fit a tail
        out.tail = 0.0;
        out.tail_known = false;
        return out;
    }
    // Level masses behave like C q^l l^{-3/2} (total-progeny tail shape);
    // fit log W + (3/2) log l linearly over the last 5 levels, then sum the
    // modelled remainder with a 1.5x cushion for the fit bias.
    std::size_t take = 5;
    std::size_t first = positive.size() - take;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = first; i < positive.size(); ++i) {
        double x = positive[i].first;
        double y = std::log(positive[i].second) + 1.5 * std::log(x);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(take);
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double intercept = (sy - slope * sx) / m;
    if (!(slope < 0.0))
        throw std::runtime_error("ee_truncated: level mass not decaying, raise the budget");
    int spacing = positive.back().first - positive[positive.size() - 2].first;
    double tail = 0.0;
    for (int j = 1; j <= 1000000; ++j) {
        double l = positive.back().first + static_cast<double>(j) * spacing;
        double term = std::exp(intercept + slope * l) * std::pow(l, -1.5);
        tail += term;
        if (term < tail * 1e-9) break;
    }
    out.tail = 1.5 * tail;
    out.tail_known = true;
    return out;
}

EeClosed ee_closed_size_edges(const DegreeDistribution& dist) {
    if (dist.mean().is_zero()) return EeClosed{1.0, 0.0};  // the tree is K1
    double zeta = extinction_root(dist);
    long double mu = dist.mean().to_long_double();
    PgfValue v = pgf(dist, zeta);
    long double denom = mu - v.f2;
    if (std::fabs(denom) < 1e-12L)
        throw std::domain_error("ee_closed_size_edges: mu = f''(zeta)");
    EeClosed out;
    out.mean_edges = static_cast<double>(mu * mu * zeta * zeta / denom);
    out.mean_size = static_cast<double>(v.f + mu * mu * zeta * zeta / denom);
    return out;
}

GwSample sample_gw(const GwSpec& spec, RngStream& rng, std::size_t size_cap) {
    if (size_cap < 1) throw std::invalid_argument("sample_gw: cap must be >= 1");
    GwSample out;
    out.tree.parent.assign(1, -1);
    std::size_t next = 0;
    while (next < out.tree.parent.size()) {
        int kids = next == 0 ? spec.dist.sample(rng) : spec.offspring.sample(rng);
        for (int j = 0; j < kids; ++j) {
            out.tree.parent.push_back(static_cast<int>(next));
            if (out.tree.parent.size() > size_cap) {
                out.escaped = true;
                return out;
            }
        }
        ++next;
    }
    return out;
}

}  // namespace confstat

// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "confstat/rational.hpp"
#include "confstat/smallgraph.hpp"

namespace confstat::oracles {

// Z_H(H) by enumerating vertex permutations and, per permutation, all
// half-edge assignments that preserve the pairing. Small graphs only.
inline BigInt aut_half_edge_brute(const SmallGraph& h) {
    const int v = h.v;
    // half-edges: 2 per edge; he k belongs to edge k/2, endpoint parity k%2
    const int m = h.e();
    std::vector<int> owner(2 * m);
    for (int i = 0; i < m; ++i) {
        owner[2 * i] = h.edges[static_cast<std::size_t>(i)].first;
        owner[2 * i + 1] = h.edges[static_cast<std::size_t>(i)].second;
    }
    std::vector<std::vector<int>> at_vertex(v);
    for (int k = 0; k < 2 * m; ++k) at_vertex[owner[k]].push_back(k);

    std::vector<int> perm(v);
    std::iota(perm.begin(), perm.end(), 0);
    BigInt total(0);
    do {
        bool deg_ok = true;
        for (int x = 0; x < v; ++x)
            if (at_vertex[x].size() != at_vertex[perm[x]].size()) {
                deg_ok = false;
                break;
            }
        if (!deg_ok) continue;
        // try all bijections of half-edges at each vertex, count those that
        // preserve the pairing
        std::vector<std::vector<int>> arrangements(v);
        std::function<long long(int, std::vector<int>&)> rec =
            [&](int x, std::vector<int>& he_map) -> long long {
            if (x == v) {
                for (int k = 0; k < 2 * m; ++k) {
                    int mate = k ^ 1;
                    int mk = he_map[k], mmate = he_map[mate];
                    if ((mk ^ 1) != mmate) return 0;
                }
                return 1;
            }
            const auto& src = at_vertex[x];
            std::vector<int> tgt = at_vertex[perm[x]];
            std::sort(tgt.begin(), tgt.end());
            long long count = 0;
            do {
                for (std::size_t i = 0; i < src.size(); ++i) he_map[src[i]] = tgt[i];
                count += rec(x + 1, he_map);
            } while (std::next_permutation(tgt.begin(), tgt.end()));
            return count;
        };
        std::vector<int> he_map(2 * m, -1);
        total = total + BigInt(rec(0, he_map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Whether two small multigraphs are isomorphic, by brute force over vertex
// permutations of multiplicity matrices.
inline bool isomorphic_brute(const SmallGraph& a, const SmallGraph& b) {
    if (a.v != b.v || a.e() != b.e()) return false;
    auto matrix = [](const SmallGraph& g) {
        std::vector<std::vector<int>> m(g.v, std::vector<int>(g.v, 0));
        for (auto [x, y] : g.edges) {
            ++m[x][y];
            if (x != y) ++m[y][x];
        }
        return m;
    };
    auto ma = matrix(a), mb = matrix(b);
    std::vector<int> perm(a.v);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < a.v && ok; ++i)
            for (int j = 0; j < a.v && ok; ++j)
                if (ma[i][j] != mb[perm[i]][perm[j]]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// All connected multigraphs with at most max_v vertices and at most max_e
// edges, one labelled representative per multiset of edges. Small bounds.
inline std::vector<SmallGraph> all_connected_multigraphs(int max_v, int max_e) {
    std::vector<SmallGraph> out;
    for (int v = 1; v <= max_v; ++v) {
        // slot list: loops (i,i) and pairs (i,j), i <= j
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < v; ++i)
            for (int j = i; j < v; ++j) slots.emplace_back(i, j);
        // multisets of e edges over slots
        for (int e = std::max(0, v - 1); e <= max_e; ++e) {
            std::vector<int> pick;
            std::function<void(int, int)> rec = [&](int from, int left) {
                if (left == 0) {
                    SmallGraph g{v, {}};
                    for (int s : pick) g.edges.push_back(slots[static_cast<std::size_t>(s)]);
                    // connectivity
                    std::vector<int> parent(v);
                    std::iota(parent.begin(), parent.end(), 0);
                    std::function<int(int)> find = [&](int x) {
                        while (parent[x] != x) x = parent[x] = parent[parent[x]];
                        return x;
                    };
                    for (auto [x, y] : g.edges) parent[find(x)] = find(y);
                    std::set<int> roots;
                    for (int x = 0; x < v; ++x) roots.insert(find(x));
                    if (roots.size() == 1) out.push_back(std::move(g));
                    return;
                }
                for (int s = from; s < static_cast<int>(slots.size()); ++s) {
                    pick.push_back(s);
                    rec(s, left - 1);
                    pick.pop_back();
                }
            };
            rec(0, e);
        }
    }
    return out;
}

// Smallest eigenvalue of a small symmetric matrix (Jacobi rotations).
inline double min_eigenvalue(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    double mn = a[0][0];
    for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, a[i][i]);
    return mn;
}

// Determinant by Gaussian elimination.
inline double determinant(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    return det;
}

}  // namespace confstat::oracles

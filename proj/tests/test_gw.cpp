#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "confstat/canon.hpp"
#include "confstat/formulas.hpp"
#include "confstat/gw.hpp"

using namespace confstat;

namespace {

DegreeDistribution dist13() {
    return DegreeDistribution::from_pmf({{1, 0.5}, {3, 0.5}});
}
DegreeDistribution dist123() {
    return DegreeDistribution::from_pmf({{1, 0.375}, {2, 0.25}, {3, 0.375}});
}

}  // namespace

TEST_CASE("pgf values") {
    DegreeDistribution d = dist13();
    PgfValue at_third = pgf(d, 1.0L / 3.0L);
    CHECK(static_cast<double>(at_third.f1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    PgfValue at_one = pgf(d, 1.0L);
    CHECK(static_cast<double>(at_one.f) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(static_cast<double>(at_one.f1) == doctest::Approx(2.0).epsilon(1e-15));

    DegreeDistribution zeros = DegreeDistribution::from_pmf({{0, 1.0}});
    PgfValue z = pgf(zeros, 0.7L);
    CHECK(static_cast<double>(z.f) == 1.0);
    CHECK(static_cast<double>(z.f1) == 0.0);

    PgfRational exact = pgf_exact(d, Rational(1, 3));
    CHECK(exact.f1 == Rational(2, 3));
    CHECK(exact.f == Rational(5, 27));
    CHECK(exact.f2 == Rational(1));
}

TEST_CASE("extinction roots") {
    CHECK(extinction_root(dist13()) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(extinction_root(DegreeDistribution::from_pmf({{1, 0.5}, {2, 0.5}})) == 1.0);
    CHECK(extinction_root(DegreeDistribution::from_pmf({{2, 1.0}})) == 1.0);
    CHECK(extinction_root(DegreeDistribution::from_pmf({{3, 1.0}})) == 0.0);  // p1 = 0
    CHECK_THROWS_AS(extinction_root(DegreeDistribution::from_pmf({{0, 1.0}})),
                    std::domain_error);
    // |f'(z) - mu z| <= 1e-12 at the returned root
    double z = extinction_root(dist123());
    PgfValue v = pgf(dist123(), z);
    double mu = static_cast<double>(dist123().mean().to_long_double());
    CHECK(std::fabs(static_cast<double>(v.f1) - mu * z) < 1e-12);
}

TEST_CASE("rooted tree probabilities") {
    GwSpec spec = GwSpec::make(dist13());
    RootedTree single{{-1}};
    CHECK(static_cast<double>(rooted_tree_prob(single, spec)) == 0.0);  // p_0 = 0

    DegreeDistribution with0 = DegreeDistribution::from_pmf({{0, 0.25}, {1, 0.25}, {3, 0.5}});
    GwSpec spec0 = GwSpec::make(with0);
    CHECK(static_cast<double>(rooted_tree_prob(single, spec0)) ==
          doctest::Approx(0.25).epsilon(1e-15));

    RootedTree rooted_k2{{-1, 0}};
    CHECK(static_cast<double>(rooted_tree_prob(rooted_k2, spec)) ==
          doctest::Approx(1.0 / 8.0).epsilon(1e-15));

    // root of degree 2: unsupported for {1,3}
    RootedTree cherry{{-1, 0, 0}};
    CHECK(static_cast<double>(rooted_tree_prob(cherry, spec)) == 0.0);
}

TEST_CASE("unrooted tree probabilities") {
    GwSpec spec = GwSpec::make(dist13());
    CHECK(static_cast<double>(unrooted_tree_prob(make_pattern("K2"), spec)) ==
          doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    // tree with a degree-2 vertex is unsupported
    CHECK(static_cast<double>(unrooted_tree_prob(make_pattern("P3"), spec)) == 0.0);
}

TEST_CASE("catalog enumeration: support {1,3}") {
    GwSpec spec = GwSpec::make(dist13());
    TreeCatalog l1 = enumerate_trees(spec, 1);
    REQUIRE(l1.trees.size() == 1);
    CHECK(l1.trees[0].code == canonical_code(make_pattern("K2")).code);

    TreeCatalog l3 = enumerate_trees(spec, 3);
    REQUIRE(l3.trees.size() == 2);
    CHECK(l3.trees[0].code == canonical_code(make_pattern("K2")).code);
    CHECK(l3.trees[1].code == canonical_code(make_pattern("K1_3")).code);

    // all codes distinct, degrees supported, parity v even
    TreeCatalog l12 = enumerate_trees(spec, 12);
    std::set<std::string> codes;
    for (const TreeClass& t : l12.trees) {
        codes.insert(t.code);
        CHECK(t.v % 2 == 0);
        for (const auto& [k, cnt] : t.nk) CHECK((k == 1 || k == 3));
    }
    CHECK(codes.size() == l12.trees.size());
}

TEST_CASE("catalog enumeration: single vertex needs p0") {
    DegreeDistribution with0 = DegreeDistribution::from_pmf({{0, 0.5}, {1, 0.5}});
    GwSpec spec = GwSpec::make(with0);
    TreeCatalog l0 = enumerate_trees(spec, 0);
    REQUIRE(l0.trees.size() == 1);
    CHECK(l0.trees[0].v == 1);
    // K1 and K2 at budget 1
    CHECK(enumerate_trees(spec, 1).trees.size() == 2);
}

TEST_CASE("catalog probabilities are a partial finite-tree mass") {
    GwSpec spec = GwSpec::make(dist13());
    TreeCatalog cat = enumerate_trees(spec, 25);
    long double mass = 0.0L;
    for (const TreeClass& t : cat.trees) {
        CHECK(t.p > 0.0L);
        mass += t.p;
    }
    // P(|T| < infinity) = f(zeta) = 5/27
    CHECK(static_cast<double>(mass) < 5.0 / 27.0);
    CHECK(static_cast<double>(mass) > 5.0 / 27.0 - 1e-3);
}

TEST_CASE("unsupported-degree trees carry zero probability in richer supports") {
    GwSpec spec = GwSpec::make(dist123());
    TreeCatalog cat = enumerate_trees(spec, 6);
    for (const TreeClass& t : cat.trees) CHECK(t.p > 0.0L);
    // P3 is in the catalog for {1,2,3}
    bool has_p3 = false;
    std::string p3 = canonical_code(make_pattern("P3")).code;
    for (const TreeClass& t : cat.trees) has_p3 |= t.code == p3;
    CHECK(has_p3);
}

TEST_CASE("ee_truncated converges to closed forms") {
    DegreeDistribution d = dist13();
    GwSpec spec = GwSpec::make(d);
    TreeCatalog cat = enumerate_trees(spec, 30);

    EeResult mass = ee_truncated(cat, [](const TreeClass&) { return 1.0; });
    CHECK(mass.tail_known);
    CHECK(std::fabs(mass.value - 5.0 / 27.0) <= mass.tail + 1e-6);

    EeResult size = ee_truncated(cat, [](const TreeClass& t) {
        return static_cast<double>(t.v);
    });
    CHECK(std::fabs(size.value - 17.0 / 27.0) <= size.tail + 1e-5);

    EeResult zero = ee_truncated(cat, [](const TreeClass&) { return 0.0; });
    CHECK(zero.value == 0.0);
    CHECK(zero.tail == 0.0);
    CHECK(zero.tail_known);
}

TEST_CASE("fitted tails cover the true truncation error across budgets") {
    DegreeDistribution d = dist13();
    GwSpec spec = GwSpec::make(d);
    EeClosed closed = ee_closed_size_edges(d);
    for (int budget : {15, 21, 27}) {
        TreeCatalog cat = enumerate_trees(spec, budget);
        EeResult mass = ee_truncated(cat, [](const TreeClass&) { return 1.0; });
        REQUIRE(mass.tail_known);
        CHECK(std::fabs(mass.value - 5.0 / 27.0) <= mass.tail);
        EeResult size = ee_truncated(cat, [](const TreeClass& t) {
            return static_cast<double>(t.v);
        });
        CHECK(std::fabs(size.value - closed.mean_size) <= size.tail);
        EeResult edges = ee_truncated(cat, [](const TreeClass& t) {
            return static_cast<double>(t.e);
        });
        CHECK(std::fabs(edges.value - closed.mean_edges) <= edges.tail);
    }
}

TEST_CASE("ee_truncated rejects non-decaying weights") {
    GwSpec spec = GwSpec::make(dist13());
    TreeCatalog cat = enumerate_trees(spec, 15);
    // a weight growing faster than the mass decays violates the polynomial
    // bound and must be reported, not silently extrapolated
    CHECK_THROWS_AS(ee_truncated(cat, [](const TreeClass& t) {
        return std::pow(100.0, t.e);
    }),
                    std::runtime_error);
}

TEST_CASE("catalog level mass decays geometrically") {
    GwSpec spec = GwSpec::make(dist13());
    TreeCatalog cat = enumerate_trees(spec, 21);
    std::map<int, double> level;
    for (const TreeClass& t : cat.trees) level[t.e] += static_cast<double>(t.p);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int pts = 0;
    for (const auto& [l, m] : level) {
        REQUIRE(m > 0);
        double x = l, y = std::log(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++pts;
    }
    double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
    CHECK(slope < 0);
}

TEST_CASE("closed-form tree sums") {
    EeClosed c = ee_closed_size_edges(dist13());
    CHECK(c.mean_size == doctest::Approx(17.0 / 27.0).epsilon(1e-12));
    CHECK(c.mean_edges == doctest::Approx(4.0 / 9.0).epsilon(1e-12));

    EeClosed ones = ee_closed_size_edges(DegreeDistribution::from_pmf({{1, 1.0}}));
    CHECK(ones.mean_size == doctest::Approx(2.0).epsilon(1e-12));

    EeClosed zeros = ee_closed_size_edges(DegreeDistribution::from_pmf({{0, 1.0}}));
    CHECK(zeros.mean_size == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(ee_closed_size_edges(DegreeDistribution::from_pmf({{2, 1.0}})),
                    std::domain_error);  // critical
}

TEST_CASE("gw sampling: degenerate and small-tree frequencies") {
    DegreeDistribution zeros = DegreeDistribution::from_pmf({{0, 1.0}});
    GwSpec spec0 = GwSpec::make(zeros);
    RngStream rng(51, 0);
    for (int i = 0; i < 20; ++i) {
        GwSample s = sample_gw(spec0, rng, 10);
        REQUIRE_FALSE(s.escaped);
        CHECK(s.tree.size() == 1);
    }

    GwSpec spec = GwSpec::make(dist13());
    const int draws = 1000000;
    int k2_count = 0, escaped = 0;
    RngStream rng2(52, 0);
    for (int i = 0; i < draws; ++i) {
        GwSample s = sample_gw(spec, rng2, 64);
        if (s.escaped) {
            ++escaped;
            continue;
        }
        if (s.tree.size() == 2) ++k2_count;
    }
    double p_k2 = static_cast<double>(k2_count) / draws;
    double se = std::sqrt(0.125 * 0.875 / draws);
    CHECK(std::fabs(p_k2 - 0.125) < 4 * se);
    // escape frequency ~ 1 - f(zeta) = 22/27 (cap 64 truncation error is tiny)
    double p_escape = static_cast<double>(escaped) / draws;
    CHECK(std::fabs(p_escape - 22.0 / 27.0) < 0.01);
}

TEST_CASE("simulation matches catalog probabilities within 4 binomial SEs") {
    GwSpec spec = GwSpec::make(dist13());
    TreeCatalog cat = enumerate_trees(spec, 5);
    std::map<std::string, int> counts;
    const int draws = 1000000;
    RngStream rng(53, 0);
    for (int i = 0; i < draws; ++i) {
        GwSample s = sample_gw(spec, rng, 64);
        if (s.escaped || s.tree.size() > 6) continue;
        counts[canonical_code(s.tree.to_graph()).code] += 1;
    }
    for (const TreeClass& t : cat.trees) {
        double p = static_cast<double>(t.p);
        double freq = counts[t.code] / static_cast<double>(draws);
        double se = std::sqrt(p * (1 - p) / draws);
        CHECK_MESSAGE(std::fabs(freq - p) <= 4 * se, "tree v=", t.v, " p=", p,
                      " freq=", freq);
    }
}

TEST_CASE("rooted probability consistency against simulation (multinomial recursion)") {
    // richer support exercises repeated child shapes
    GwSpec spec = GwSpec::make(dist123());
    // path on 3 vertices rooted at an end: root deg 1 -> child with 1 child
    RootedTree path3{{-1, 0, 1}};
    // star rooted at centre
    RootedTree star3{{-1, 0, 0, 0}};
    long double p_path = rooted_tree_prob(path3, spec);
    long double p_star = rooted_tree_prob(star3, spec);

    const int draws = 400000;
    RngStream rng(54, 0);
    int n_path = 0, n_star = 0;
    for (int i = 0; i < draws; ++i) {
        GwSample s = sample_gw(spec, rng, 32);
        if (s.escaped) continue;
        if (s.tree.parent == path3.parent) ++n_path;   // BFS order: unique encoding
        if (s.tree.parent == star3.parent) ++n_star;
    }
    double freq_path = n_path / static_cast<double>(draws);
    double freq_star = n_star / static_cast<double>(draws);
    double se_path = std::sqrt(static_cast<double>(p_path) / draws);
    double se_star = std::sqrt(static_cast<double>(p_star) / draws);
    CHECK(std::fabs(freq_path - static_cast<double>(p_path)) < 4 * se_path);
    CHECK(std::fabs(freq_star - static_cast<double>(p_star)) < 4 * se_star);
}

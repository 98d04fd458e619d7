#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>

#include "confstat/confmodel.hpp"
#include "confstat/formulas.hpp"
#include "confstat/stats.hpp"

using namespace confstat;

namespace {

// labelled-outcome key: sorted edge multiset
std::string outcome_key(const Multigraph& g) {
    auto edges = g.edges;
    std::sort(edges.begin(), edges.end());
    std::ostringstream os;
    for (const auto& [u, v] : edges) os << u << "-" << v << ";";
    return os.str();
}

}  // namespace

TEST_CASE("enumerate_matchings counts (N-1)!!") {
    CHECK(enumerate_matchings(DegreeSequence({1, 1})).size() == 1);
    CHECK(enumerate_matchings(DegreeSequence({1, 1, 1, 1})).size() == 3);
    CHECK(enumerate_matchings(DegreeSequence({3, 1})).size() == 3);
    CHECK(enumerate_matchings(DegreeSequence({3, 1, 1, 1})).size() == 15);
    CHECK(enumerate_matchings(DegreeSequence({1, 1, 1, 1, 1, 1})).size() == 15);
    CHECK_THROWS(enumerate_matchings(DegreeSequence::from_counts({{1, 14}})));
}

TEST_CASE("tiny samplers match exact outcomes") {
    RngStream rng(1, 0);
    // d = (2): always a loop
    DegreeSequence loop_seq({2});
    for (int i = 0; i < 50; ++i) {
        Multigraph g = sample_multigraph(loop_seq, rng);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0].first == g.edges[0].second);
    }
    // d = (1,1): always the single edge
    DegreeSequence edge_seq({1, 1});
    Multigraph e = sample_via_cuffs(edge_seq, rng);
    CHECK(e.edges == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
    // d = (1,1,1,1): always two disjoint edges
    DegreeSequence four({1, 1, 1, 1});
    for (int i = 0; i < 50; ++i) {
        Multigraph g = sample_multigraph(four, rng);
        auto [loops, pp] = loop_and_parallel_counts(g);
        CHECK(loops == 0);
        CHECK(pp == 0);
    }
}

TEST_CASE("incidence always matches the degree sequence") {
    DegreeSequence seq = DegreeSequence::from_counts({{1, 9}, {2, 4}, {3, 5}, {0, 2}});
    RngStream rng(2, 0);
    for (int i = 0; i < 20; ++i) {
        Multigraph a = sample_multigraph(seq, rng);
        Multigraph b = sample_via_cuffs(seq, rng);
        CHECK_NOTHROW(validate_incidence(a, seq));
        CHECK_NOTHROW(validate_incidence(b, seq));
    }
}

TEST_CASE("loop_and_parallel_counts basics") {
    Multigraph two_edges{4, {{0, 1}, {2, 3}}};
    CHECK(loop_and_parallel_counts(two_edges) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
    Multigraph one_loop{1, {{0, 0}}};
    CHECK(loop_and_parallel_counts(one_loop) == std::pair<std::uint64_t, std::uint64_t>{1, 0});
    Multigraph double_edge{2, {{0, 1}, {0, 1}}};
    CHECK(loop_and_parallel_counts(double_edge) ==
          std::pair<std::uint64_t, std::uint64_t>{0, 1});
    Multigraph triple{2, {{0, 1}, {0, 1}, {0, 1}}};  // C(3,2) = 3 pairs
    CHECK(loop_and_parallel_counts(triple).second == 3);
}

TEST_CASE("matching sampler is uniform over the three pairings of (1,1,1,1)") {
    DegreeSequence seq({1, 1, 1, 1});
    std::map<std::string, int> counts;
    RngStream rng(3, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[outcome_key(sample_multigraph(seq, rng))];
    REQUIRE(counts.size() == 3);
    double chi2 = 0;
    for (const auto& [key, c] : counts) {
        double expect = draws / 3.0;
        chi2 += (c - expect) * (c - expect) / expect;
    }
    CHECK(chi_square_pvalue(chi2, 2) > 1e-3);
}

TEST_CASE("both samplers induce the matching distribution (N <= 8)") {
    std::vector<std::vector<int>> seqs = {
        {2, 1, 1}, {2, 2}, {3, 1}, {1, 1, 1, 1}, {3, 2, 1}, {2, 2, 1, 1}, {4, 2, 1, 1}};
    int seed = 100;
    for (const auto& degrees : seqs) {
      for (int variant = 0; variant < 2; ++variant) {
        DegreeSequence seq(degrees);
        auto all = enumerate_matchings(seq);
        std::map<std::string, double> expected;  // outcome -> count among matchings
        for (const auto& [m, g] : all) expected[outcome_key(g)] += 1.0;

        std::map<std::string, int> observed;
        RngStream rng(static_cast<std::uint64_t>(seed++), 0);
        const int draws = 100000;
        for (int i = 0; i < draws; ++i)
            ++observed[outcome_key(variant == 0 ? sample_via_cuffs(seq, rng)
                                                : sample_multigraph(seq, rng))];

        double chi2 = 0;
        int cells = 0;
        for (const auto& [key, cnt] : expected) {
            double expect = cnt / static_cast<double>(all.size()) * draws;
            double obs = observed.count(key) ? observed[key] : 0.0;
            chi2 += (obs - expect) * (obs - expect) / expect;
            ++cells;
        }
        // no unexpected outcomes
        for (const auto& [key, cnt] : observed) REQUIRE(expected.count(key) == 1);
        if (cells > 1)
            CHECK(chi_square_pvalue(chi2, cells - 1) > 1e-3);
        else
            CHECK(observed.begin()->second == draws);
      }
    }
}

TEST_CASE("exact loop-count mean: sum C(d_i,2)/(N-1)") {
    std::vector<std::vector<int>> seqs = {{2, 2}, {3, 3}, {2, 2, 1, 1}, {4, 2, 1, 1}};
    for (const auto& degrees : seqs) {
        DegreeSequence seq(degrees);
        Rational expect(0);
        for (int d : degrees)
            expect += Rational(static_cast<long long>(d) * (d - 1) / 2);
        expect /= Rational(static_cast<long long>(seq.total_degree()) - 1);

        auto all = enumerate_matchings(seq);
        Rational mean(0);
        for (const auto& [m, g] : all) {
            auto [loops, pp] = loop_and_parallel_counts(g);
            mean += Rational(static_cast<long long>(loops));
        }
        mean /= Rational(static_cast<long long>(all.size()));
        CHECK(mean == expect);
    }
    // larger sequence against simulation, 3 sigma
    DegreeSequence big = DegreeSequence::from_counts({{1, 200}, {3, 200}});
    double expect = 0;
    for (int d : big.degrees()) expect += d * (d - 1) / 2.0;
    expect /= static_cast<double>(big.total_degree() - 1);
    RngStream rng(9, 0);
    const int draws = 20000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < draws; ++i) {
        auto [loops, pp] = loop_and_parallel_counts(sample_multigraph(big, rng));
        sum += static_cast<double>(loops);
        sumsq += static_cast<double>(loops) * static_cast<double>(loops);
    }
    double mean = sum / draws;
    double se = std::sqrt((sumsq / draws - mean * mean) / draws);
    CHECK(std::fabs(mean - expect) < 3 * se + 1e-9);
}

TEST_CASE("simple-graph rejection") {
    RngStream rng(4, 0);
    // all outcomes of (1,1,1,1) are simple: first try always succeeds
    DegreeSequence four({1, 1, 1, 1});
    for (int i = 0; i < 10; ++i) CHECK(sample_simple(four, rng).tries == 1);
    // d = (2) can never be simple
    DegreeSequence loop_seq({2});
    CHECK_THROWS_AS(sample_simple(loop_seq, rng, 50), TriesExhausted);
}

TEST_CASE("sample_simple is uniform over simple outcomes") {
    DegreeSequence seq({2, 1, 1, 1, 1});
    auto all = enumerate_matchings(seq);
    std::map<std::string, double> simple_outcomes;
    for (const auto& [m, g] : all) {
        auto [loops, pp] = loop_and_parallel_counts(g);
        if (loops == 0 && pp == 0) simple_outcomes[outcome_key(g)] += 1.0;
    }
    REQUIRE(simple_outcomes.size() > 1);
    double total = 0;
    for (const auto& [k, c] : simple_outcomes) total += c;

    RngStream rng(6, 0);
    std::map<std::string, int> observed;
    const int draws = 50000;
    for (int i = 0; i < draws; ++i)
        ++observed[outcome_key(sample_simple(seq, rng).graph)];
    double chi2 = 0;
    int cells = 0;
    for (const auto& [key, cnt] : simple_outcomes) {
        double expect = cnt / total * draws;
        double obs = observed.count(key) ? observed[key] : 0.0;
        chi2 += (obs - expect) * (obs - expect) / expect;
        ++cells;
    }
    for (const auto& [key, cnt] : observed) REQUIRE(simple_outcomes.count(key) == 1);
    CHECK(chi_square_pvalue(chi2, cells - 1) > 1e-3);
}

TEST_CASE("acceptance rate approaches exp(-4/9) for the {1,2} pmf") {
    DegreeDistribution d = DegreeDistribution::from_pmf({{1, 0.5}, {2, 0.5}});
    DegreeSequence seq = d.rounded_sequence(4000);
    RngStream rng(8, 0);
    const int draws = 20000;
    int simple = 0;
    for (int i = 0; i < draws; ++i) {
        auto [loops, pp] = loop_and_parallel_counts(sample_multigraph(seq, rng));
        if (loops == 0 && pp == 0) ++simple;
    }
    double rate = static_cast<double>(simple) / draws;
    // exp(-lambda_1' - lambda_2') with lambda_1' = E D(D-1)/(2 mu) = 1/3
    CHECK(std::fabs(rate - std::exp(-4.0 / 9.0)) < 0.02);
}

TEST_CASE("acceptance rate for the {1,3} pmf matches exp(-21/16)") {
    DegreeDistribution d = DegreeDistribution::from_pmf({{1, 0.5}, {3, 0.5}});
    DegreeSequence seq = d.rounded_sequence(4000);
    RngStream rng(12, 0);
    const int draws = 20000;
    int simple = 0;
    for (int i = 0; i < draws; ++i) {
        auto [loops, pp] = loop_and_parallel_counts(sample_multigraph(seq, rng));
        if (loops == 0 && pp == 0) ++simple;
    }
    // lambda_1' = 3/4, lambda_2' = 9/16
    double rate = static_cast<double>(simple) / draws;
    CHECK(std::fabs(rate - std::exp(-21.0 / 16.0)) < 0.02);
}

TEST_CASE("degenerate all-zero degrees sample to the empty graph") {
    DegreeSequence zeros = DegreeSequence::from_counts({{0, 6}});
    RngStream rng(14, 0);
    Multigraph g = sample_multigraph(zeros, rng);
    CHECK(g.n == 6);
    CHECK(g.edges.empty());
    Multigraph gc = sample_via_cuffs(zeros, rng);
    CHECK(gc.edges.empty());
}

TEST_CASE("adaptive rejection sampler tracks acceptance") {
    DegreeDistribution d = DegreeDistribution::from_pmf({{1, 0.5}, {2, 0.5}});
    DegreeSequence seq = d.rounded_sequence(500);
    SimpleRejectionSampler sampler;
    RngStream rng(10, 0);
    for (int i = 0; i < 200; ++i) sampler(seq, rng);
    CHECK(std::fabs(sampler.acceptance_estimate() - std::exp(-4.0 / 9.0)) < 0.15);
}

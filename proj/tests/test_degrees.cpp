#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confstat/degrees.hpp"

using namespace confstat;

static DegreeDistribution dist13() {
    return DegreeDistribution::from_pmf({{1, 0.5}, {3, 0.5}});
}

TEST_CASE("from_counts expands histograms and checks parity") {
    DegreeSequence s = DegreeSequence::from_counts({{1, 2}, {3, 2}});
    CHECK(s.n() == 4);
    CHECK(s.total_degree() == 8);
    CHECK(s.degrees() == std::vector<int>{1, 1, 3, 3});

    CHECK_THROWS_AS(DegreeSequence::from_counts({{1, 3}}), ParityViolation);

    DegreeSequence z = DegreeSequence::from_counts({{0, 5}});
    CHECK(z.n() == 5);
    CHECK(z.degenerate());
}

TEST_CASE("from_counts parity fix drops one half-edge at the tail") {
    DegreeSequence s = DegreeSequence::from_counts({{1, 1}, {3, 2}}, true);
    CHECK(s.total_degree() == 6);
    CHECK(s.degrees() == std::vector<int>{1, 3, 2});  // last positive degree decremented
}

TEST_CASE("histogram identity sum k n_k = N") {
    DegreeSequence s = DegreeSequence::from_counts({{1, 5}, {2, 2}, {5, 1}});
    std::uint64_t total = 0;
    for (const auto& [k, cnt] : s.histogram())
        total += static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(cnt);
    CHECK(total == s.total_degree());
}

TEST_CASE("moments are exact rationals") {
    DegreeDistribution d = dist13();
    CHECK(d.moment(0) == Rational(1));
    CHECK(d.moment(1) == Rational(2));
    CHECK(d.moment(2) == Rational(5));
    DegreeSequence s({1, 3, 3, 1});
    CHECK(s.moment(1) == Rational(2));
    CHECK(s.moment(2) == Rational(5));
}

TEST_CASE("size-biased offspring law") {
    DegreeDistribution d = dist13();
    DegreeDistribution off = d.size_biased_offspring();
    CHECK(off.prob(0) == Rational(1, 4));
    CHECK(off.prob(2) == Rational(3, 4));
    Rational mass(0);
    for (const auto& [k, p] : off.pmf()) mass += p;
    CHECK(mass == Rational(1));
    // mean (E D^2 - mu)/mu
    CHECK(off.mean() == (d.moment(2) - d.mean()) / d.mean());

    DegreeDistribution point2 = DegreeDistribution::from_pmf({{2, 1.0}});
    CHECK(point2.size_biased_offspring().prob(1) == Rational(1));

    DegreeDistribution zeros = DegreeDistribution::from_pmf({{0, 1.0}});
    CHECK_THROWS_AS(zeros.size_biased_offspring(), std::domain_error);
}

TEST_CASE("size-biased mean identity holds for assorted pmfs") {
    std::vector<std::vector<std::pair<int, double>>> pmfs = {
        {{1, 0.25}, {2, 0.25}, {3, 0.5}},
        {{1, 0.125}, {4, 0.875}},
        {{2, 0.75}, {5, 0.25}},
    };
    for (const auto& pmf : pmfs) {
        DegreeDistribution d = DegreeDistribution::from_pmf(pmf);
        DegreeDistribution off = d.size_biased_offspring();
        CHECK(off.mean() == (d.moment(2) - d.mean()) / d.mean());
        Rational mass(0);
        for (const auto& [k, p] : off.pmf()) mass += p;
        CHECK(mass == Rational(1));
    }
}

TEST_CASE("assumption report") {
    AssumptionReport a = check_assumptions(dist13());
    CHECK(a.edd2 == Rational(1));
    CHECK(a.supercritical);
    CHECK(a.ap1);
    CHECK(a.edd2 == a.m2 - Rational(2) * a.mu);

    AssumptionReport b =
        check_assumptions(DegreeDistribution::from_pmf({{1, 0.5}, {2, 0.5}}));
    CHECK(b.edd2 == Rational(-1, 2));
    CHECK_FALSE(b.supercritical);

    AssumptionReport c = check_assumptions(DegreeDistribution::from_pmf({{2, 1.0}}));
    CHECK(c.edd2 == Rational(0));
    CHECK_FALSE(c.supercritical);
    CHECK_FALSE(c.ap1);
}

TEST_CASE("pmf validation") {
    CHECK_THROWS(DegreeDistribution::from_pmf({{1, 0.7}, {2, 0.2}}));  // mass 0.9
    CHECK_THROWS(DegreeDistribution::from_pmf({{1, -0.1}, {2, 1.1}}));
    // slightly-off mass within 1e-12 is renormalized exactly
    DegreeDistribution d = DegreeDistribution::from_pmf({{1, 0.5 + 2e-13}, {3, 0.5}});
    Rational mass(0);
    for (const auto& [k, p] : d.pmf()) mass += p;
    CHECK(mass == Rational(1));
}

TEST_CASE("iid sampling: point mass and parity fix") {
    RngStream rng(5, 0);
    DegreeDistribution point2 = DegreeDistribution::from_pmf({{2, 1.0}});
    DegreeSequence s = point2.sample_iid(10, rng);
    CHECK(s.total_degree() == 20);
    for (int d : s.degrees()) CHECK(d == 2);

    DegreeDistribution point1 = DegreeDistribution::from_pmf({{1, 1.0}});
    DegreeSequence t = point1.sample_iid(3, rng);
    CHECK(t.total_degree() == 2);
    CHECK(t.degrees() == std::vector<int>{1, 1, 0});  // last vertex decremented
}

TEST_CASE("iid sampling concentrates and reproduces bit-for-bit") {
    DegreeDistribution d = dist13();
    RngStream rng(42, 17);
    DegreeSequence s = d.sample_iid(100000, rng);
    double frac1 =
        static_cast<double>(s.histogram().at(1)) / static_cast<double>(s.n());
    CHECK(frac1 > 0.49);
    CHECK(frac1 < 0.51);

    RngStream rng2(42, 17);
    DegreeSequence s2 = d.sample_iid(100000, rng2);
    CHECK(s.degrees() == s2.degrees());
}

TEST_CASE("rounded sequence hits the target histogram") {
    DegreeSequence s = dist13().rounded_sequence(100000);
    CHECK(s.n() == 100000);
    CHECK(s.histogram().at(1) == 50000);
    CHECK(s.histogram().at(3) == 50000);
    CHECK(s.total_degree() == 200000);

    // odd-sum case gets the parity fix
    DegreeDistribution d3 = DegreeDistribution::from_pmf({{3, 1.0}});
    DegreeSequence t = d3.rounded_sequence(5);
    CHECK(t.total_degree() == 14);
}

TEST_CASE("truncated poisson keeps requested mass") {
    DegreeDistribution p = DegreeDistribution::truncated_poisson(2.0);
    Rational mass(0);
    for (const auto& [k, pk] : p.pmf()) mass += pk;
    CHECK(mass == Rational(1));  // renormalized exactly
    CHECK(std::fabs(static_cast<double>(p.mean().to_long_double()) - 2.0) < 1e-10);
    CHECK(p.support_max() > 10);
}

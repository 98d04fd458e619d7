#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "confstat/rational.hpp"
#include "confstat/rng.hpp"

namespace confstat {

struct ParityViolation : std::runtime_error {
    explicit ParityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Concrete degree sequence d_1..d_n. Immutable after construction.
class DegreeSequence {
public:
    explicit DegreeSequence(std::vector<int> degrees);

    // Expand a histogram {k -> n_k} in nondecreasing k order.
    // Throws ParityViolation when the total degree is odd, unless
    // fix_parity is set, in which case one half-edge is dropped (the
    // vertex of largest index with d_i >= 1 loses one degree).
    static DegreeSequence from_counts(const std::map<int, std::int64_t>& histogram,
                                      bool fix_parity = false);

    std::size_t n() const { return degrees_.size(); }
    std::uint64_t total_degree() const { return total_; }  // N
    const std::vector<int>& degrees() const { return degrees_; }
    const std::map<int, std::int64_t>& histogram() const { return histogram_; }
    int max_degree() const;
    bool degenerate() const { return total_ == 0; }  // empirical mean 0

    // n^{-1} sum d_i^m, exact.
    Rational moment(unsigned m) const;

private:
    std::vector<int> degrees_;
    std::map<int, std::int64_t> histogram_;
    std::uint64_t total_ = 0;
};

// Finite-support probability mass function with exact rational weights.
class DegreeDistribution {
public:
    // Pairs (k, p_k); probabilities must be nonnegative and sum to 1
    // within 1e-12, after which the mass is renormalized exactly.
    static DegreeDistribution from_pmf(const std::vector<std::pair<int, double>>& pmf);
    static DegreeDistribution from_pmf_exact(std::vector<std::pair<int, Rational>> pmf);
    // Poisson(lambda) truncated at the smallest K with dropped mass < eps.
    static DegreeDistribution truncated_poisson(double lambda, double eps = 1e-12);

    const std::vector<std::pair<int, Rational>>& pmf() const { return pmf_; }
    Rational prob(int k) const;
    double prob_d(int k) const;
    int support_max() const { return support_max_; }
    bool supports(int k) const { return !prob(k).is_zero(); }

    Rational moment(unsigned m) const;  // sum k^m p_k
    Rational mean() const { return mu_; }
    double mean_d() const { return mu_d_; }

    // Offspring law of the size-biased degree minus one:
    // P(j) = (j+1) p_{j+1} / mu. Throws std::domain_error when mu = 0.
    DegreeDistribution size_biased_offspring() const;

    // Draw one degree; inverse-CDF over the support in increasing k.
    int sample(RngStream& rng) const;

    // iid degrees with the deterministic parity fix.
    DegreeSequence sample_iid(std::size_t n, RngStream& rng) const;

    // Fixed sequence with n_k ~ round(p_k n), largest-remainder apportionment,
    // then the parity fix. Deterministic.
    DegreeSequence rounded_sequence(std::size_t n) const;

private:
    std::vector<std::pair<int, Rational>> pmf_;  // sorted by k, positive mass only
    std::vector<double> cdf_;                    // aligned with pmf_
    Rational mu_;
    double mu_d_ = 0;
    int support_max_ = 0;
};

struct AssumptionReport {
    Rational mu;
    Rational m2;    // E D^2
    Rational edd2;  // E D(D-2) = m2 - 2 mu
    bool supercritical = false;
    bool ap1 = false;  // p_1 > 0 and p_0 + p_1 < 1
    std::vector<Rational> moments;  // orders 0..max_order
};

AssumptionReport check_assumptions(const DegreeDistribution& dist, unsigned max_order = 4);

}  // namespace confstat

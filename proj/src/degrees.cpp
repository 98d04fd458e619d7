#include "confstat/degrees.hpp"

#include <algorithm>
#include <cmath>

namespace confstat {

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    for (int d : degrees_) {
        if (d < 0) throw std::invalid_argument("DegreeSequence: negative degree");
        ++histogram_[d];
        total_ += static_cast<std::uint64_t>(d);
    }
    if (total_ % 2 != 0)
        throw ParityViolation("DegreeSequence: sum of degrees is odd");
}

DegreeSequence DegreeSequence::from_counts(const std::map<int, std::int64_t>& histogram,
                                           bool fix_parity) {
    std::vector<int> degrees;
    std::uint64_t total = 0;
    for (const auto& [k, cnt] : histogram) {
        if (k < 0 || cnt < 0)
            throw std::invalid_argument("DegreeSequence: bad histogram entry");
        for (std::int64_t i = 0; i < cnt; ++i) degrees.push_back(k);
        total += static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(cnt);
    }
    if (total % 2 != 0) {
        if (!fix_parity)
            throw ParityViolation("from_counts: sum of degrees is odd");
        for (std::size_t i = degrees.size(); i-- > 0;) {
            if (degrees[i] >= 1) {
                --degrees[i];
                break;
            }
        }
    }
    return DegreeSequence(std::move(degrees));
}

int DegreeSequence::max_degree() const {
    return histogram_.empty() ? 0 : histogram_.rbegin()->first;
}

Rational DegreeSequence::moment(unsigned m) const {
    if (degrees_.empty()) throw std::domain_error("moment: empty sequence");
    BigInt sum(0);
    for (const auto& [k, cnt] : histogram_) {
        BigInt pw(1);
        for (unsigned i = 0; i < m; ++i) pw = pw * BigInt(k);
        sum = sum + pw * BigInt(cnt);
    }
    return Rational(sum, BigInt(static_cast<long long>(degrees_.size())));
}

DegreeDistribution DegreeDistribution::from_pmf(
    const std::vector<std::pair<int, double>>& pmf) {
    std::vector<std::pair<int, Rational>> exact;
    exact.reserve(pmf.size());
    for (const auto& [k, p] : pmf) exact.emplace_back(k, Rational::from_double(p));
    return from_pmf_exact(std::move(exact));
}

DegreeDistribution DegreeDistribution::from_pmf_exact(
    std::vector<std::pair<int, Rational>> pmf) {
    std::sort(pmf.begin(), pmf.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational sum(0);
    for (const auto& [k, p] : pmf) {
        if (k < 0) throw std::invalid_argument("pmf: negative degree");
        if (p.sign() < 0) throw std::invalid_argument("pmf: negative probability");
        sum += p;
    }
    double err = std::fabs(static_cast<double>((sum - Rational(1)).to_long_double()));
    if (err > 1e-12) throw std::invalid_argument("pmf: mass does not sum to 1");
    if (sum.is_zero()) throw std::invalid_argument("pmf: zero mass");

    DegreeDistribution d;
    for (auto& [k, p] : pmf) {
        if (p.is_zero()) continue;
        if (!d.pmf_.empty() && d.pmf_.back().first == k)
            throw std::invalid_argument("pmf: duplicate degree");
        d.pmf_.emplace_back(k, p / sum);
    }
    if (d.pmf_.empty()) throw std::invalid_argument("pmf: empty support");
    d.support_max_ = d.pmf_.back().first;
    Rational mu(0);
    double acc = 0;
    for (const auto& [k, p] : d.pmf_) {
        mu += Rational(k) * p;
        acc += static_cast<double>(p.to_long_double());
        d.cdf_.push_back(acc);
    }
    d.cdf_.back() = 1.0;  // guard against rounding in the last bin
    d.mu_ = mu;
    d.mu_d_ = static_cast<double>(mu.to_long_double());
    return d;
}

DegreeDistribution DegreeDistribution::truncated_poisson(double lambda, double eps) {
    if (lambda <= 0) throw std::invalid_argument("truncated_poisson: lambda <= 0");
    std::vector<std::pair<int, double>> pmf;
    double p = std::exp(-lambda), tail = 1.0;
    int k = 0;
    while (tail >= eps || k <= static_cast<int>(lambda) + 1) {
        pmf.emplace_back(k, p);
        tail -= p;
        ++k;
        p *= lambda / k;
        if (k > 2000) break;
    }
    return from_pmf(pmf);
}

Rational DegreeDistribution::prob(int k) const {
    auto it = std::lower_bound(pmf_.begin(), pmf_.end(), k,
                               [](const auto& e, int key) { return e.first < key; });
    if (it == pmf_.end() || it->first != k) return Rational(0);
    return it->second;
}

double DegreeDistribution::prob_d(int k) const {
    return static_cast<double>(prob(k).to_long_double());
}

Rational DegreeDistribution::moment(unsigned m) const {
    Rational sum(0);
    for (const auto& [k, p] : pmf_) {
        BigInt pw(1);
        for (unsigned i = 0; i < m; ++i) pw = pw * BigInt(k);
        sum += Rational(pw, BigInt(1)) * p;
    }
    return sum;
}

DegreeDistribution DegreeDistribution::size_biased_offspring() const {
    if (mu_.is_zero()) throw std::domain_error("size_biased_offspring: mean is zero");
    std::vector<std::pair<int, Rational>> out;
    for (const auto& [k, p] : pmf_) {
        if (k == 0) continue;
        out.emplace_back(k - 1, Rational(k) * p / mu_);
    }
    return from_pmf_exact(std::move(out));
}

int DegreeDistribution::sample(RngStream& rng) const {
    double u = rng.next_double();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return pmf_[static_cast<std::size_t>(it - cdf_.begin())].first;
}

DegreeSequence DegreeDistribution::sample_iid(std::size_t n, RngStream& rng) const {
    if (n == 0) throw std::invalid_argument("sample_iid: n must be >= 1");
    std::vector<int> degrees(n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        degrees[i] = sample(rng);
        total += static_cast<std::uint64_t>(degrees[i]);
    }
    if (total % 2 != 0) {
        for (std::size_t i = n; i-- > 0;) {
            if (degrees[i] >= 1) {
                --degrees[i];
                break;
            }
        }
    }
    return DegreeSequence(std::move(degrees));
}

DegreeSequence DegreeDistribution::rounded_sequence(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("rounded_sequence: n must be >= 1");
    // Largest-remainder apportionment of n vertices over the support.
    std::vector<std::int64_t> counts(pmf_.size());
    std::vector<std::pair<double, std::size_t>> rema(pmf_.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        double target = static_cast<double>(pmf_[i].second.to_long_double()) *
                        static_cast<double>(n);
        counts[i] = static_cast<std::int64_t>(std::floor(target));
        assigned += counts[i];
        rema[i] = {counts[i] - target, i};  // ascending = largest remainder first
    }
    std::sort(rema.begin(), rema.end());
    for (std::size_t j = 0; assigned < static_cast<std::int64_t>(n); ++j, ++assigned)
        ++counts[rema[j % rema.size()].second];

    std::map<int, std::int64_t> hist;
    for (std::size_t i = 0; i < pmf_.size(); ++i)
        if (counts[i] > 0) hist[pmf_[i].first] = counts[i];
    return DegreeSequence::from_counts(hist, /*fix_parity=*/true);
}

AssumptionReport check_assumptions(const DegreeDistribution& dist, unsigned max_order) {
    AssumptionReport rep;
    rep.mu = dist.mean();
    rep.m2 = dist.moment(2);
    rep.edd2 = rep.m2 - Rational(2) * rep.mu;
    rep.supercritical = rep.edd2.sign() > 0;
    Rational p0 = dist.prob(0), p1 = dist.prob(1);
    rep.ap1 = p1.sign() > 0 && (p0 + p1) < Rational(1);
    for (unsigned m = 0; m <= max_order; ++m) rep.moments.push_back(dist.moment(m));
    return rep;
}

}  // namespace confstat

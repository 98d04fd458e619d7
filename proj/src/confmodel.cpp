#include "confstat/confmodel.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_map>

namespace confstat {

std::vector<std::uint32_t> half_edge_owners(const DegreeSequence& seq) {
    std::vector<std::uint32_t> owner;
    owner.reserve(seq.total_degree());
    const auto& deg = seq.degrees();
    for (std::uint32_t v = 0; v < deg.size(); ++v)
        for (int j = 0; j < deg[v]; ++j) owner.push_back(v);
    return owner;
}

static Multigraph graph_from_stub_pairs(const DegreeSequence& seq,
                                        const std::vector<std::uint32_t>& owner,
                                        const std::vector<std::uint32_t>& stubs) {
    Multigraph g;
    g.n = static_cast<std::uint32_t>(seq.n());
    g.edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        std::uint32_t a = owner[stubs[i]], b = owner[stubs[i + 1]];
        if (a > b) std::swap(a, b);
        g.edges.emplace_back(a, b);
    }
    return g;
}

Multigraph sample_multigraph(const DegreeSequence& seq, RngStream& rng) {
    if (seq.total_degree() % 2 != 0)
        throw ParityViolation("sample_multigraph: odd half-edge count");
    std::vector<std::uint32_t> owner = half_edge_owners(seq);
    const std::size_t N = owner.size();
    std::vector<std::uint32_t> stubs(N);
    std::iota(stubs.begin(), stubs.end(), 0u);
    // Pair stubs[2t] with a uniform pick from positions [2t+1, N).
    for (std::size_t t = 0; 2 * t + 1 < N; ++t) {
        std::size_t j = 2 * t + 1 + rng.next_below(N - (2 * t + 1));
        std::swap(stubs[2 * t + 1], stubs[j]);
    }
    Multigraph g = graph_from_stub_pairs(seq, owner, stubs);
#ifndef NDEBUG
    validate_incidence(g, seq);
#endif
    return g;
}

Multigraph sample_via_cuffs(const DegreeSequence& seq, RngStream& rng) {
    if (seq.total_degree() % 2 != 0)
        throw ParityViolation("sample_via_cuffs: odd half-edge count");
    std::vector<std::uint32_t> owner = half_edge_owners(seq);
    const std::size_t N = owner.size();
    // pi uniform on S_N: vertex half-edge alpha_i joins midpoint half-edge
    // beta_{pi(i)}. Midpoint j owns beta_{2j} and beta_{2j+1}; contracting it
    // joins the two alphas mapped there.
    std::vector<std::uint32_t> pi(N);
    std::iota(pi.begin(), pi.end(), 0u);
    for (std::size_t i = N; i > 1; --i) {
        std::size_t j = rng.next_below(i);
        std::swap(pi[i - 1], pi[j]);
    }
    std::vector<std::uint32_t> alpha_at_beta(N);
    for (std::uint32_t i = 0; i < N; ++i) alpha_at_beta[pi[i]] = i;
    Multigraph g;
    g.n = static_cast<std::uint32_t>(seq.n());
    g.edges.reserve(N / 2);
    for (std::size_t j = 0; j + 1 < N; j += 2) {
        std::uint32_t a = owner[alpha_at_beta[j]], b = owner[alpha_at_beta[j + 1]];
        if (a > b) std::swap(a, b);
        g.edges.emplace_back(a, b);
    }
#ifndef NDEBUG
    validate_incidence(g, seq);
#endif
    return g;
}

std::pair<std::uint64_t, std::uint64_t> loop_and_parallel_counts(const Multigraph& g) {
    std::uint64_t loops = 0, parallel_pairs = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> mult;
    mult.reserve(g.edges.size() * 2);
    for (const auto& [u, v] : g.edges) {
        if (u == v) {
            ++loops;
            continue;
        }
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        std::uint64_t m = ++mult[key];
        parallel_pairs += m - 1;  // adds C(m,2) - C(m-1,2)
    }
    return {loops, parallel_pairs};
}

SimpleSample sample_simple(const DegreeSequence& seq, RngStream& rng,
                           std::uint64_t max_tries) {
    for (std::uint64_t t = 1; t <= max_tries; ++t) {
        Multigraph g = sample_multigraph(seq, rng);
        auto [loops, pp] = loop_and_parallel_counts(g);
        if (loops == 0 && pp == 0) return {std::move(g), t};
    }
    throw TriesExhausted(max_tries);
}

SimpleSample SimpleRejectionSampler::operator()(const DegreeSequence& seq,
                                                RngStream& rng) {
    double est = acceptance_estimate();
    std::uint64_t cap = 10000;
    if (est > 0) {
        double suggested = 1000.0 / est;
        if (suggested > static_cast<double>(cap))
            cap = static_cast<std::uint64_t>(suggested);
    }
    try {
        SimpleSample s = sample_simple(seq, rng, cap);
        attempts_ += s.tries;
        ++successes_;
        return s;
    } catch (const TriesExhausted& e) {
        attempts_ += e.tries;
        throw;
    }
}

double SimpleRejectionSampler::acceptance_estimate() const {
    if (attempts_ == 0) return 0.0;
    return static_cast<double>(successes_) / static_cast<double>(attempts_);
}

static void enumerate_rec(std::vector<std::uint32_t>& free_stubs, Matching& current,
                          const std::vector<std::uint32_t>& owner,
                          const DegreeSequence& seq,
                          std::vector<std::pair<Matching, Multigraph>>& out) {
    if (free_stubs.empty()) {
        Multigraph g;
        g.n = static_cast<std::uint32_t>(seq.n());
        for (const auto& [a, b] : current) {
            std::uint32_t u = owner[a], v = owner[b];
            if (u > v) std::swap(u, v);
            g.edges.emplace_back(u, v);
        }
        out.emplace_back(current, std::move(g));
        return;
    }
    std::uint32_t first = free_stubs.front();
    for (std::size_t j = 1; j < free_stubs.size(); ++j) {
        std::uint32_t partner = free_stubs[j];
        std::vector<std::uint32_t> rest;
        rest.reserve(free_stubs.size() - 2);
        for (std::size_t i = 1; i < free_stubs.size(); ++i)
            if (i != j) rest.push_back(free_stubs[i]);
        current.emplace_back(first, partner);
        enumerate_rec(rest, current, owner, seq, out);
        current.pop_back();
    }
}

std::vector<std::pair<Matching, Multigraph>> enumerate_matchings(const DegreeSequence& seq) {
    if (seq.total_degree() > 12)
        throw std::invalid_argument("enumerate_matchings: N > 12");
    if (seq.total_degree() % 2 != 0)
        throw ParityViolation("enumerate_matchings: odd half-edge count");
    std::vector<std::uint32_t> owner = half_edge_owners(seq);
    std::vector<std::uint32_t> stubs(owner.size());
    std::iota(stubs.begin(), stubs.end(), 0u);
    std::vector<std::pair<Matching, Multigraph>> out;
    Matching current;
    enumerate_rec(stubs, current, owner, seq, out);
    return out;
}

void validate_incidence(const Multigraph& g, const DegreeSequence& seq) {
    std::vector<int> inc = g.incidence_counts();
    const auto& deg = seq.degrees();
    if (inc.size() != deg.size())
        throw std::logic_error("validate_incidence: vertex count mismatch");
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (inc[i] != deg[i])
            throw std::logic_error("validate_incidence: degree mismatch");
}

}  // namespace confstat

#include "confstat/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace confstat {

std::vector<std::vector<std::vector<int>>> set_partitions(int r) {
    if (r < 1 || r > 12) throw std::invalid_argument("set_partitions: need 1 <= r <= 12");
    std::vector<std::vector<std::vector<int>>> out;
    // restricted growth strings
    std::vector<int> rgs(r, 0);
    while (true) {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> part(blocks);
        for (int i = 0; i < r; ++i) part[rgs[i]].push_back(i);
        out.push_back(std::move(part));
        int i = r - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[i] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

Rational mixed_cumulant(const std::function<Rational(std::uint32_t)>& moment, int r) {
    Rational kappa(0);
    for (const auto& part : set_partitions(r)) {
        Rational term(1);
        for (const auto& block : part) {
            std::uint32_t mask = 0;
            for (int i : block) mask |= (1u << i);
            term *= moment(mask);
            if (term.is_zero()) break;
        }
        unsigned q = static_cast<unsigned>(part.size());
        Rational coeff(factorial(q - 1), BigInt(1));
        if (q % 2 == 0) coeff = -coeff;
        kappa += coeff * term;
    }
    return kappa;
}

BlockStructure blocks_and_mue(const IndicatorFamily& fam) {
    const int r = fam.size();
    BlockStructure out;
    out.block_of.assign(r, -1);

    std::vector<int> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, int> first_alpha, first_beta;
    std::map<std::pair<int, int>, int> distinct_pairs;
    for (int i = 0; i < r; ++i) {
        std::map<int, int> alpha_to_beta, beta_to_alpha;
        for (const auto& [a, b] : fam.members[i]) {
            if (a < 1 || a > fam.N || b < 1 || b > fam.N)
                throw std::invalid_argument("blocks_and_mue: constraint out of range");
            auto [ita, ina] = alpha_to_beta.emplace(a, b);
            if (!ina && ita->second != b) out.degenerate = true;  // Y_i == 0
            auto [itb, inb] = beta_to_alpha.emplace(b, a);
            if (!inb && itb->second != a) out.degenerate = true;
            ++distinct_pairs[{a, b}];
            auto [fa, newa] = first_alpha.emplace(a, i);
            if (!newa) parent[find(i)] = find(fa->second);
            auto [fb, newb] = first_beta.emplace(b, i);
            if (!newb) parent[find(i)] = find(fb->second);
        }
    }
    std::map<int, int> root_index;
    for (int i = 0; i < r; ++i) {
        int root = find(i);
        auto [it, fresh] = root_index.emplace(root, static_cast<int>(root_index.size()));
        out.block_of[i] = it->second;
    }
    out.b = static_cast<int>(root_index.size());
    out.mue = static_cast<int>(distinct_pairs.size());
    return out;
}

Rational exact_moment(const IndicatorFamily& fam, std::uint32_t subset_mask) {
    if (fam.N > 1000000)
        throw std::invalid_argument("exact_moment: N capped at 10^6");
    std::map<int, int> alpha_to_beta, beta_to_alpha;
    for (int i = 0; i < fam.size(); ++i) {
        if (!(subset_mask & (1u << i))) continue;
        for (const auto& [a, b] : fam.members[i]) {
            auto [ita, ina] = alpha_to_beta.emplace(a, b);
            if (!ina && ita->second != b) return Rational(0);
            auto [itb, inb] = beta_to_alpha.emplace(b, a);
            if (!inb && itb->second != a) return Rational(0);
        }
    }
    unsigned m = static_cast<unsigned>(alpha_to_beta.size());
    if (static_cast<int>(m) > fam.N)
        throw std::invalid_argument("exact_moment: more constraints than N");
    return Rational(BigInt(1),
                    descending_factorial(static_cast<std::uint64_t>(fam.N), m));
}

Rational exact_mixed_cumulant(const IndicatorFamily& fam) {
    if (fam.size() > 8)
        throw std::invalid_argument("exact_mixed_cumulant: r <= 8 for the partition route");
    return mixed_cumulant([&fam](std::uint32_t mask) { return exact_moment(fam, mask); },
                          fam.size());
}

Rational permutation_oracle(const IndicatorFamily& fam) {
    if (fam.N > 8) throw std::invalid_argument("permutation_oracle: N <= 8");
    const int r = fam.size();
    std::vector<int> perm(fam.N);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::int64_t> satisfied_count(1u << r, 0);
    std::int64_t total = 0;
    do {
        std::uint32_t sat = 0;
        for (int i = 0; i < r; ++i) {
            bool ok = true;
            for (const auto& [a, b] : fam.members[i]) {
                if (perm[a - 1] != b) {
                    ok = false;
                    break;
                }
            }
            if (ok) sat |= (1u << i);
        }
        // every subset of the satisfied set is satisfied
        ++satisfied_count[sat];
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));

    // subset-sum so count[mask] = #perms satisfying all members in mask
    std::vector<std::int64_t> count = satisfied_count;
    for (int bit = 0; bit < r; ++bit)
        for (std::uint32_t mask = 0; mask < (1u << r); ++mask)
            if (mask & (1u << bit)) count[mask ^ (1u << bit)] += count[mask];

    return mixed_cumulant(
        [&](std::uint32_t mask) {
            return Rational(BigInt(count[mask]), BigInt(total));
        },
        r);
}

SlopeReport scaling_exponent(const std::function<IndicatorFamily(int)>& family_at,
                             const std::vector<int>& sizes) {
    if (sizes.size() < 2)
        throw std::invalid_argument("scaling_exponent: need at least two sizes");
    SlopeReport out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        IndicatorFamily fam = family_at(sizes[i]);
        if (i == 0) {
            BlockStructure bs = blocks_and_mue(fam);
            out.bound = -static_cast<double>(bs.b - 1) - static_cast<double>(bs.mue);
        }
        Rational kappa = exact_mixed_cumulant(fam);
        if (kappa.is_zero()) {
            out.kappa_zero = true;
            return out;
        }
        double x = std::log(static_cast<double>(sizes[i]));
        double y = static_cast<double>(kappa.log_abs());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(sizes.size());
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

}  // namespace confstat

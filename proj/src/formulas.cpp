#include "confstat/formulas.hpp"

#include <cmath>

namespace confstat {

Rational lambda_exact(const CanonGraph& h, const DegreeDistribution& dist) {
    if (h.kind == GraphKind::multicyclic)
        throw std::invalid_argument("lambda: requires e(H) <= v(H)");
    Rational mu = dist.mean();
    if (mu.is_zero()) {
        // only isolated vertices occur; K1 keeps its rate p_0
        return h.e == 0 ? dist.prob(0) : Rational(0);
    }
    Rational prod(1);
    for (const auto& [k, cnt] : h.nk) {
        Rational pk = dist.prob(k);
        if (pk.is_zero()) return Rational(0);
        Rational term = pk * Rational(factorial(static_cast<unsigned>(k)), BigInt(1));
        prod *= term.pow(static_cast<unsigned>(cnt));
    }
    Rational mu_pow = mu.pow(static_cast<unsigned>(h.e));
    return prod / mu_pow / Rational(h.aut, BigInt(1));
}

double lambda_value(const CanonGraph& h, const DegreeDistribution& dist) {
    return static_cast<double>(lambda_exact(h, dist).to_long_double());
}

Rational sigma_pair_exact(const CanonGraph& t1, const CanonGraph& t2,
                          const DegreeDistribution& dist) {
    if (t1.kind != GraphKind::tree || t2.kind != GraphKind::tree)
        throw std::invalid_argument("sigma_pair: both classes must be trees");
    Rational l1 = lambda_exact(t1, dist);
    Rational l2 = lambda_exact(t2, dist);
    Rational delta = t1.code == t2.code ? l1 : Rational(0);
    if (l1.is_zero() || l2.is_zero()) return delta;
    Rational bracket(0);
    if (t1.e > 0 && t2.e > 0)  // nonzero rates with edges force mu > 0
        bracket = Rational(2LL * t1.e * t2.e) / dist.mean();
    for (const auto& [k, c1] : t1.nk) {
        auto it = t2.nk.find(k);
        if (it == t2.nk.end()) continue;
        // supported degrees only: lambda != 0 already implies p_k > 0
        bracket -= Rational(static_cast<long long>(c1) * it->second) / dist.prob(k);
    }
    return delta + l1 * l2 * bracket;
}

double sigma_pair(const CanonGraph& t1, const CanonGraph& t2,
                  const DegreeDistribution& dist) {
    return static_cast<double>(sigma_pair_exact(t1, t2, dist).to_long_double());
}

std::pair<Rational, Rational> poisson_rates_exact(const DegreeDistribution& dist) {
    // E[#loops] -> E D(D-1)/(2 mu): the exact mean sum C(d_i,2)/(N-1) in the
    // limit. Pairs of parallel edges get the square.
    Rational edd1 = dist.moment(2) - dist.mean();  // E D(D-1)
    if (edd1.is_zero()) return {Rational(0), Rational(0)};  // no degree >= 2
    Rational l1 = edd1 / (Rational(2) * dist.mean());
    return {l1, l1 * l1};
}

std::pair<double, double> poisson_rates(const DegreeDistribution& dist) {
    auto [l1, l2] = poisson_rates_exact(dist);
    return {static_cast<double>(l1.to_long_double()),
            static_cast<double>(l2.to_long_double())};
}

Rational exact_mean_isolated_labelled(const CanonGraph& h, const DegreeSequence& seq) {
    if (2ull * static_cast<unsigned long long>(h.e) > seq.total_degree())
        throw std::invalid_argument("exact_mean_isolated: 2e(H) > N");
    BigInt num(1);
    const auto& hist = seq.histogram();
    for (const auto& [k, hk] : h.nk) {
        auto it = hist.find(k);
        std::uint64_t nk = it == hist.end() ? 0 : static_cast<std::uint64_t>(it->second);
        num = num * descending_factorial(nk, static_cast<unsigned>(hk));
        if (num.is_zero()) return Rational(0);
        BigInt kfact = factorial(static_cast<unsigned>(k));
        for (int i = 0; i < hk; ++i) num = num * kfact;
    }
    BigInt den = descending_factorial2(seq.total_degree() - 1,
                                       static_cast<unsigned>(h.e));
    return Rational(num, den);
}

Rational exact_mean_isolated(const CanonGraph& h, const DegreeSequence& seq) {
    return exact_mean_isolated_labelled(h, seq) / Rational(h.aut, BigInt(1));
}

Rational exact_cov_isolated(const CanonGraph& t1, const CanonGraph& t2,
                            const DegreeSequence& seq) {
    if (t1.kind != GraphKind::tree || t2.kind != GraphKind::tree)
        throw std::invalid_argument("exact_cov_isolated: both classes must be trees");
    Rational m1 = exact_mean_isolated(t1, seq);
    Rational m2 = exact_mean_isolated(t2, seq);
    Rational delta = t1.code == t2.code ? m1 : Rational(0);
    if (m1.is_zero() || m2.is_zero()) return delta;

    std::uint64_t N = seq.total_degree();
    BigInt ratio_num = descending_factorial2(N - 1, static_cast<unsigned>(t2.e));
    if (N < 2ull * (static_cast<unsigned long long>(t1.e) +
                    static_cast<unsigned long long>(t2.e)))
        throw std::invalid_argument("exact_cov_isolated: sequence too small");
    BigInt ratio_den = descending_factorial2(N - 2ull * static_cast<unsigned>(t1.e) - 1,
                                             static_cast<unsigned>(t2.e));
    Rational ratio(ratio_num, ratio_den);
    const auto& hist = seq.histogram();
    for (const auto& [k, h2k] : t2.nk) {
        auto it = hist.find(k);
        std::uint64_t nk = it == hist.end() ? 0 : static_cast<std::uint64_t>(it->second);
        auto it1 = t1.nk.find(k);
        std::uint64_t h1k = it1 == t1.nk.end() ? 0 : static_cast<std::uint64_t>(it1->second);
        BigInt top = descending_factorial(nk >= h1k ? nk - h1k : 0,
                                          static_cast<unsigned>(h2k));
        BigInt bot = descending_factorial(nk, static_cast<unsigned>(h2k));
        if (bot.is_zero()) return delta;  // mean would have been zero
        ratio *= Rational(top, bot);
    }
    return delta + m1 * m2 * (ratio - Rational(1));
}

namespace {

// Six-term variance of the giant size; numeric and exact versions share the
// term structure through a tiny expression template over the field type.
template <typename F, typename Pgf>
F giant_variance_terms(const F& mu, const F& zeta, const Pgf& at_zeta, const Pgf& at_zeta2,
                       const F& two) {
    F a = mu - at_zeta.f2;
    F zeta2 = zeta * zeta;
    F zeta4 = zeta2 * zeta2;
    F mu2 = mu * mu;
    F t1 = at_zeta.f;
    F t2 = mu2 * zeta2 / a;
    F t3 = two * mu2 * mu * zeta4 / (a * a);
    F t4 = at_zeta2.f;
    F t5 = two * mu * zeta2 * at_zeta2.f1 / a;
    F t6 = mu2 * (zeta4 * at_zeta2.f2 + zeta2 * at_zeta2.f1) / (a * a);
    return t1 + t2 + t3 - t4 - t5 - t6;
}

struct PgfLd {
    long double f, f1, f2;
};

}  // namespace

GiantLaw giant_mean_var(const DegreeDistribution& dist) {
    AssumptionReport rep = check_assumptions(dist);
    if (!rep.supercritical)
        throw NotSupercritical("giant_mean_var: E D(D-2) <= 0");
    long double zeta = extinction_root(dist);
    PgfValue vz = pgf(dist, zeta);
    PgfValue vz2 = pgf(dist, zeta * zeta);
    long double mu = dist.mean().to_long_double();
    if (std::fabs(mu - vz.f2) < 1e-12L)
        throw std::domain_error("giant_mean_var: mu = f''(zeta)");
    PgfLd az{vz.f, vz.f1, vz.f2};
    PgfLd az2{vz2.f, vz2.f1, vz2.f2};
    GiantLaw out;
    out.mean_fraction = static_cast<double>(1.0L - vz.f);
    out.variance = static_cast<double>(
        giant_variance_terms<long double>(mu, zeta, az, az2, 2.0L));
    return out;
}

Rational giant_variance_from_zeta(const DegreeDistribution& dist, const Rational& zeta) {
    PgfRational vz = pgf_exact(dist, zeta);
    PgfRational vz2 = pgf_exact(dist, zeta * zeta);
    Rational mu = dist.mean();
    if ((mu - vz.f2).is_zero())
        throw std::domain_error("giant_variance_from_zeta: mu = f''(zeta)");
    return giant_variance_terms<Rational>(mu, zeta, vz, vz2, Rational(2));
}

SigmaPsiResult sigma_psi(const PsiFn& psi, const DegreeDistribution& dist, int edge_budget,
                         const TreeCatalog* catalog) {
    TreeCatalog local;
    if (catalog == nullptr) {
        GwSpec spec = GwSpec::make(dist);
        local = enumerate_trees(spec, edge_budget);
        catalog = &local;
    }
    auto apply = [&psi](const TreeClass& t) {
        return psi(t.v, t.e, &t.nk);
    };
    EeResult size_psi2 = ee_truncated(*catalog, [&](const TreeClass& t) {
        double val = apply(t);
        return static_cast<double>(t.v) * val * val;
    });
    EeResult e_psi = ee_truncated(*catalog, [&](const TreeClass& t) {
        return static_cast<double>(t.e) * apply(t);
    });
    double mu = static_cast<double>(dist.mean().to_long_double());

    SigmaPsiResult out;
    out.value = size_psi2.value + 2.0 / mu * e_psi.value * e_psi.value;
    out.tail = size_psi2.tail +
               2.0 / mu * (2.0 * std::fabs(e_psi.value) + e_psi.tail) * e_psi.tail;
    out.tail_known = size_psi2.tail_known && e_psi.tail_known;
    for (const auto& [k, pk] : dist.pmf()) {
        EeResult nk_psi = ee_truncated(*catalog, [&, kk = k](const TreeClass& t) {
            auto it = t.nk.find(kk);
            return it == t.nk.end() ? 0.0 : static_cast<double>(it->second) * apply(t);
        });
        double pkd = static_cast<double>(pk.to_long_double());
        out.value -= nk_psi.value * nk_psi.value / pkd;
        out.tail += (2.0 * std::fabs(nk_psi.value) + nk_psi.tail) * nk_psi.tail / pkd;
        out.tail_known = out.tail_known && nk_psi.tail_known;
    }
    return out;
}

Rational sigma_bar_iid_exact(const CanonGraph& t1, const CanonGraph& t2,
                             const DegreeDistribution& dist) {
    if (t1.kind != GraphKind::tree || t2.kind != GraphKind::tree)
        throw std::invalid_argument("sigma_bar_iid: both classes must be trees");
    Rational l1 = lambda_exact(t1, dist);
    Rational l2 = lambda_exact(t2, dist);
    Rational delta = t1.code == t2.code ? l1 : Rational(0);
    if (l1.is_zero() || l2.is_zero()) return delta;
    Rational edd2 = dist.moment(2) - Rational(2) * dist.mean();
    Rational mu2 = dist.mean() * dist.mean();
    Rational bracket = edd2 * Rational(static_cast<long long>(t1.e) * t2.e) / mu2 -
                       Rational(1);
    return delta + l1 * l2 * bracket;
}

Rational sigma_bar_general(const CanonGraph& t1, const CanonGraph& t2,
                           const DegreeDistribution& dist, const CovKernel& gamma) {
    Rational sigma = sigma_pair_exact(t1, t2, dist);
    Rational l1 = lambda_exact(t1, dist);
    Rational l2 = lambda_exact(t2, dist);
    if (l1.is_zero() || l2.is_zero()) return sigma;
    Rational mu = dist.mean();
    auto weight = [&](const CanonGraph& t, int k) {
        auto it = t.nk.find(k);
        Rational nk = it == t.nk.end() ? Rational(0)
                                       : Rational(static_cast<long long>(it->second));
        return nk / dist.prob(k) - Rational(k) * Rational(t.e) / mu;
    };
    Rational dsum(0);
    for (const auto& [k, pk] : dist.pmf()) {
        Rational wk = weight(t1, k);
        if (wk.is_zero()) continue;
        for (const auto& [l, pl] : dist.pmf()) {
            Rational wl = weight(t2, l);
            if (wl.is_zero()) continue;
            dsum += wk * wl * gamma(k, l);
        }
    }
    return sigma + l1 * l2 * dsum;
}

AsymptoticReport asymptotic_report(
    const DegreeDistribution& dist,
    const std::vector<std::pair<std::string, SmallGraph>>& classes) {
    AsymptoticReport rep;
    AssumptionReport assume = check_assumptions(dist);
    rep.supercritical = assume.supercritical;
    rep.zeta = dist.mean().is_zero() ? 1.0 : extinction_root(dist);
    rep.finite_mass = static_cast<double>(pgf(dist, rep.zeta).f);

    std::vector<CanonGraph> trees;
    for (const auto& [name, g] : classes) {
        CanonGraph cls = canonical_code(g);
        rep.lambdas.emplace_back(name, lambda_value(cls, dist));
        if (cls.kind == GraphKind::tree) {
            rep.tree_names.push_back(name);
            trees.push_back(std::move(cls));
        }
    }
    rep.sigma.assign(trees.size(), std::vector<double>(trees.size(), 0.0));
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = 0; j < trees.size(); ++j)
            rep.sigma[i][j] = sigma_pair(trees[i], trees[j], dist);

    auto [pl1, pl2] = poisson_rates(dist);
    rep.poisson_loop_rate = pl1;
    rep.poisson_double_rate = pl2;

    if (rep.supercritical) {
        GiantLaw g = giant_mean_var(dist);
        rep.giant_mean = g.mean_fraction;
        rep.giant_var = g.variance;
    }
    try {
        rep.chi_limit = ee_closed_size_edges(dist).mean_size;
        rep.chi_limit_defined = true;
    } catch (const std::domain_error&) {
        rep.chi_limit_defined = false;
    }
    return rep;
}

}  // namespace confstat

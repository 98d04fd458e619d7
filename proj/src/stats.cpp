#include "confstat/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "confstat/canon.hpp"

namespace confstat {

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        // lower series, Q = 1 - P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ++ap;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    // continued fraction for Q
    const double fpmin = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double chi_square_pvalue(double statistic, int dof) {
    if (dof <= 0) throw std::domain_error("chi_square_pvalue: dof must be positive");
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

KStats k_statistics(std::span<const double> xs) {
    KStats out;
    out.r = xs.size();
    if (xs.size() < 2) throw std::invalid_argument("k_statistics: need at least 2 samples");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    out.mean = mean;
    double s2 = 0, s3 = 0, s4 = 0;
    for (double x : xs) {
        double d = x - mean, d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    out.k2 = s2 / (n - 1);
    if (xs.size() >= 3) out.k3 = n * s3 / ((n - 1) * (n - 2));
    if (xs.size() >= 4)
        out.k4 = ((n * n + n) * s4 - 3.0 * (n - 1) * s2 * s2) /
                 ((n - 1) * (n - 2) * (n - 3));
    if (out.k2 <= 0.0) {
        out.degenerate = true;
        return out;
    }
    out.g1 = out.k3 / std::pow(out.k2, 1.5);
    out.g2 = out.k4 / (out.k2 * out.k2);
    return out;
}

NormalityVerdict normality_diagnostic(std::span<const double> xs) {
    if (xs.size() < 100)
        throw std::invalid_argument("normality_diagnostic: need R >= 100");
    KStats ks = k_statistics(xs);
    NormalityVerdict out;
    double R = static_cast<double>(xs.size());
    out.se_g1 = std::sqrt(6.0 / R);
    out.se_g2 = std::sqrt(24.0 / R);
    if (ks.degenerate) {
        out.degenerate = true;
        return out;
    }
    out.g1 = ks.g1;
    out.g2 = ks.g2;
    out.pass = std::fabs(ks.g1) <= 3.0 * out.se_g1 && std::fabs(ks.g2) <= 3.0 * out.se_g2;
    return out;
}

PoissonVerdict poisson_diagnostic(std::span<const double> xs, double lambda,
                                  double band_scale) {
    if (lambda < 0) throw std::invalid_argument("poisson_diagnostic: lambda < 0");
    if (xs.size() < 100) throw std::invalid_argument("poisson_diagnostic: need R >= 100");
    PoissonVerdict out;
    KStats ks = k_statistics(xs);
    double R = static_cast<double>(xs.size());
    if (ks.mean <= 0.0) {
        // all-zero samples: only consistent with lambda == 0
        out.dispersion_ok = out.gof_ok = out.pass = lambda == 0.0 && ks.k2 == 0.0;
        return out;
    }
    out.dispersion = ks.k2 / ks.mean;
    double band = 3.0 * std::sqrt(2.0 / R) * band_scale;
    out.dispersion_ok = out.dispersion >= 1.0 - band && out.dispersion <= 1.0 + band;

    // chi-square GOF against Po(lambda); pool bins to expected >= 5
    std::size_t kmax = 0;
    for (double x : xs) kmax = std::max(kmax, static_cast<std::size_t>(x));
    std::vector<double> observed(kmax + 2, 0.0);
    for (double x : xs) ++observed[static_cast<std::size_t>(x)];
    std::vector<double> expected(kmax + 2, 0.0);
    double p = std::exp(-lambda), cum = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
        expected[k] = R * p;
        cum += p;
        p *= lambda / static_cast<double>(k + 1);
    }
    expected[kmax + 1] = R * std::max(0.0, 1.0 - cum);  // upper tail bin

    double chi2 = 0.0;
    int bins = 0;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        obs_acc += observed[k];
        exp_acc += expected[k];
        bool last = k + 1 == expected.size();
        if (exp_acc >= 5.0 && (!last)) {
            chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
            ++bins;
            obs_acc = exp_acc = 0.0;
        } else if (last) {
            if (exp_acc > 0.0) {
                chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
                ++bins;
            }
        }
    }
    out.pvalue = bins >= 2 ? chi_square_pvalue(chi2, bins - 1) : 1.0;
    out.gof_ok = out.pvalue >= 1e-3;
    out.pass = out.dispersion_ok && out.gof_ok;
    return out;
}

CovEstimate cross_covariance(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("cross_covariance: length mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("cross_covariance: need at least 2 samples");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxy += xs[i] * ys[i];
    }
    CovEstimate out;
    out.value = (sxy - sx * sy / n) / (n - 1);
    if (xs.size() < 3) return out;

    // leave-one-out covariances from the sufficient statistics
    std::vector<double> loo(xs.size());
    double mean_loo = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double sxi = sx - xs[i], syi = sy - ys[i], sxyi = sxy - xs[i] * ys[i];
        loo[i] = (sxyi - sxi * syi / (n - 1)) / (n - 2);
        mean_loo += loo[i];
    }
    mean_loo /= n;
    double ss = 0.0;
    for (double v : loo) ss += (v - mean_loo) * (v - mean_loo);
    out.se = std::sqrt((n - 1) / n * ss);
    return out;
}

Statistic parse_statistic(const std::string& text) {
    Statistic s;
    s.name = text;
    auto colon = text.find(':');
    std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "ubz") {
        s.kind = StatKind::isolated_class;
        s.pattern = make_pattern(arg);
    } else if (head == "copies") {
        s.kind = StatKind::copies;
        s.pattern = make_pattern(arg);
    } else if (head == "loops") {
        s.kind = StatKind::loops;
    } else if (head == "parallel_pairs") {
        s.kind = StatKind::parallel_pairs;
    } else if (head == "c1") {
        s.kind = StatKind::c1;
    } else if (head == "c2") {
        s.kind = StatKind::c2;
    } else if (head == "c1_edges") {
        s.kind = StatKind::c1_edges;
    } else if (head == "chi_hat") {
        s.kind = StatKind::chi_hat;
    } else if (head == "n_minus_c1") {
        s.kind = StatKind::n_minus_c1;
    } else if (head == "kappa") {
        s.kind = StatKind::kappa;
    } else if (head == "simple") {
        s.kind = StatKind::simple_indicator;
    } else if (head == "psi") {
        s.kind = StatKind::psi;
        if (arg == "one") {
            s.psi = [](std::int64_t, std::int64_t, const std::map<int, int>*) {
                return 1.0;
            };
        } else if (arg == "size") {
            s.psi = [](std::int64_t v, std::int64_t, const std::map<int, int>*) {
                return static_cast<double>(v);
            };
        } else if (arg == "edge_fraction") {
            s.psi = [](std::int64_t v, std::int64_t e, const std::map<int, int>*) {
                return static_cast<double>(e) / static_cast<double>(v);
            };
        } else {
            throw std::invalid_argument("unknown psi functional '" + arg + "'");
        }
    } else {
        throw std::invalid_argument("unknown statistic '" + text + "'");
    }
    return s;
}

namespace {

struct CompiledStats {
    std::vector<Statistic> list;
    std::vector<std::string> class_codes;  // aligned; empty unless pattern-based
    bool need_census = false;
    bool need_loop_counts = false;
};

CompiledStats compile_statistics(const std::vector<Statistic>& stats, int cap) {
    CompiledStats out;
    out.list = stats;
    out.class_codes.resize(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) {
        switch (stats[i].kind) {
            case StatKind::isolated_class:
                out.class_codes[i] = canonical_code(stats[i].pattern, cap).code;
                out.need_census = true;
                break;
            case StatKind::loops:
            case StatKind::parallel_pairs:
            case StatKind::simple_indicator:
                out.need_loop_counts = true;
                break;
            case StatKind::copies:
                break;
            case StatKind::psi:
            default:
                out.need_census = true;
        }
    }
    return out;
}

}  // namespace

std::span<const double> McReport::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return samples[i];
    throw std::out_of_range("McReport: no statistic named '" + name + "'");
}

McReport run_experiment(const ExperimentPlan& plan) {
    if (plan.replications < 2)
        throw std::invalid_argument("run_experiment: need R >= 2");
    if (plan.statistics.empty())
        throw std::invalid_argument("run_experiment: no statistics requested");
    if (plan.mode != SourceMode::fixed_sequence && !plan.dist)
        throw std::invalid_argument("run_experiment: pmf mode without a distribution");
    if (plan.mode == SourceMode::fixed_sequence && !plan.fixed)
        throw std::invalid_argument("run_experiment: fixed mode without a sequence");

    CompiledStats compiled = compile_statistics(plan.statistics, plan.cap);
    const std::size_t S = plan.statistics.size();
    const std::size_t R = plan.replications;

    std::optional<DegreeSequence> shared;
    if (plan.mode == SourceMode::fixed_sequence)
        shared = *plan.fixed;
    else if (plan.mode == SourceMode::rounded_pmf)
        shared = plan.dist->rounded_sequence(plan.n);

    std::vector<std::vector<double>> rows(R);
    std::vector<char> failed(R, 0);

    auto run_one = [&](std::size_t rep) {
        RngStream rng(plan.seed, rep);
        const DegreeSequence* seq = nullptr;
        std::optional<DegreeSequence> own;
        if (plan.mode == SourceMode::iid_pmf) {
            own = plan.dist->sample_iid(plan.n, rng);
            seq = &*own;
        } else {
            seq = &*shared;
        }
        Multigraph g;
        bool is_simple_draw = false;
        if (plan.simple_only) {
            SimpleSample s = sample_simple(*seq, rng, plan.max_tries);
            g = std::move(s.graph);
            is_simple_draw = true;
        } else if (plan.use_cuffs) {
            g = sample_via_cuffs(*seq, rng);
        } else {
            g = sample_multigraph(*seq, rng);
        }

        std::uint64_t loops = 0, pp = 0;
        if (compiled.need_loop_counts || plan.simple_only) {
            if (is_simple_draw) {
                loops = pp = 0;
            } else {
                auto lp = loop_and_parallel_counts(g);
                loops = lp.first;
                pp = lp.second;
            }
        }
        std::optional<ComponentCensus> cen;
        if (compiled.need_census) cen = census(g, plan.cap);

        std::vector<double> row(S, 0.0);
        for (std::size_t i = 0; i < S; ++i) {
            const Statistic& st = plan.statistics[i];
            switch (st.kind) {
                case StatKind::isolated_class:
                    row[i] = static_cast<double>(cen->isolated_count(compiled.class_codes[i]));
                    break;
                case StatKind::loops:
                    row[i] = static_cast<double>(loops);
                    break;
                case StatKind::parallel_pairs:
                    row[i] = static_cast<double>(pp);
                    break;
                case StatKind::c1:
                    row[i] = static_cast<double>(cen->c1);
                    break;
                case StatKind::c2:
                    row[i] = static_cast<double>(cen->c2);
                    break;
                case StatKind::c1_edges:
                    row[i] = static_cast<double>(cen->c1_edges);
                    break;
                case StatKind::chi_hat:
                    row[i] = cen->chi_hat;
                    break;
                case StatKind::n_minus_c1:
                    row[i] = static_cast<double>(static_cast<std::int64_t>(g.n) - cen->c1);
                    break;
                case StatKind::kappa:
                    row[i] = static_cast<double>(cen->kappa);
                    break;
                case StatKind::simple_indicator:
                    row[i] = (loops == 0 && pp == 0) ? 1.0 : 0.0;
                    break;
                case StatKind::copies:
                    row[i] = static_cast<double>(count_copies(st.pattern, g));
                    break;
                case StatKind::psi:
                    row[i] = psi_functional(*cen, st.psi);
                    break;
            }
        }
        rows[rep] = std::move(row);
    };

    unsigned hw = std::thread::hardware_concurrency();
    unsigned nthreads = plan.threads > 0 ? static_cast<unsigned>(plan.threads)
                                         : (hw == 0 ? 1 : std::min(hw, 8u));
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(R));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t rep = next.fetch_add(1);
            if (rep >= R) break;
            try {
                run_one(rep);
            } catch (const TriesExhausted&) {
                failed[rep] = 1;
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    McReport report;
    report.requested = R;
    report.seed = plan.seed;
    for (const auto& st : plan.statistics) report.names.push_back(st.name);
    report.samples.assign(S, {});
    for (std::size_t rep = 0; rep < R; ++rep) {  // replication order: deterministic
        if (failed[rep]) {
            ++report.failures;
            continue;
        }
        for (std::size_t i = 0; i < S; ++i) report.samples[i].push_back(rows[rep][i]);
    }
    report.effective = R - report.failures;
    if (report.effective >= 2) {
        for (std::size_t i = 0; i < S; ++i)
            report.stats.push_back(k_statistics(report.samples[i]));
        report.covariance.assign(S, std::vector<double>(S, 0.0));
        for (std::size_t i = 0; i < S; ++i)
            for (std::size_t j = i; j < S; ++j) {
                double c = cross_covariance(report.samples[i], report.samples[j]).value;
                report.covariance[i][j] = report.covariance[j][i] = c;
            }
    }
    return report;
}

}  // namespace confstat

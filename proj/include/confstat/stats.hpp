#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confstat/census.hpp"
#include "confstat/confmodel.hpp"
#include "confstat/degrees.hpp"
#include "confstat/smallgraph.hpp"

namespace confstat {

// Upper regularized incomplete gamma Q(a, x) = P(X > x) for chi-square tails.
double gamma_q(double a, double x);
double chi_square_pvalue(double statistic, int dof);

struct KStats {
    std::size_t r = 0;
    double mean = 0.0;
    double k2 = 0.0;  // unbiased variance
    double k3 = 0.0;
    double k4 = 0.0;
    double g1 = 0.0;  // k3 / k2^{3/2}
    double g2 = 0.0;  // k4 / k2^2
    bool degenerate = false;  // k2 == 0
};

KStats k_statistics(std::span<const double> xs);

struct NormalityVerdict {
    bool pass = false;
    bool degenerate = false;
    double g1 = 0.0, g2 = 0.0;
    double se_g1 = 0.0, se_g2 = 0.0;  // sqrt(6/R), sqrt(24/R)
};

// Pass iff |g1| <= 3 sqrt(6/R) and |g2| <= 3 sqrt(24/R). Requires R >= 100.
NormalityVerdict normality_diagnostic(std::span<const double> xs);

struct PoissonVerdict {
    bool pass = false;
    bool dispersion_ok = false;
    bool gof_ok = false;
    double dispersion = 0.0;   // variance / mean
    double pvalue = 0.0;       // chi-square GOF against Po(lambda)
};

// Dispersion index within 1 +- 3 sqrt(2/R) and chi-square GOF p-value
// above 1e-3. Requires lambda >= 0 and R >= 100.
PoissonVerdict poisson_diagnostic(std::span<const double> xs, double lambda,
                                  double band_scale = 1.0);

struct CovEstimate {
    double value = 0.0;
    double se = 0.0;  // jackknife standard error
};

CovEstimate cross_covariance(std::span<const double> xs, std::span<const double> ys);

// ----- Monte Carlo harness -----

enum class StatKind {
    isolated_class,   // ubZ of a pattern, components only
    loops,            // loop count (all loops)
    parallel_pairs,   // pairs of parallel edges
    c1,               // largest component size
    c2,
    c1_edges,
    chi_hat,
    n_minus_c1,
    kappa,
    simple_indicator,  // 1 when the sampled multigraph is simple
    copies,            // unlabelled copies of a tree pattern, not nec. isolated
    psi                // functional sum over non-giant components
};

struct Statistic {
    std::string name;
    StatKind kind = StatKind::c1;
    SmallGraph pattern;  // for isolated_class / copies
    PsiFn psi;           // for psi
};

// "ubz:K2", "copies:P3", "loops", "parallel_pairs", "c1", "c2", "c1_edges",
// "chi_hat", "n_minus_c1", "kappa", "simple", and "psi:<name>" with named
// functionals one | size | edge_fraction
Statistic parse_statistic(const std::string& text);

enum class SourceMode { fixed_sequence, rounded_pmf, iid_pmf };

struct ExperimentPlan {
    SourceMode mode = SourceMode::rounded_pmf;
    std::optional<DegreeSequence> fixed;      // fixed_sequence
    std::optional<DegreeDistribution> dist;   // pmf modes
    std::size_t n = 0;                        // pmf modes
    std::size_t replications = 2;
    std::uint64_t seed = 1;
    std::vector<Statistic> statistics;
    bool simple_only = false;
    bool use_cuffs = false;
    std::uint64_t max_tries = 10000;  // rejection cap per replication
    int cap = 32;                     // census classification cap
    int threads = 0;                  // 0 = hardware
};

struct McReport {
    std::vector<std::string> names;
    std::vector<std::vector<double>> samples;     // [stat][replication], failures dropped
    std::vector<KStats> stats;                    // aligned with names
    std::vector<std::vector<double>> covariance;  // unbiased, aligned
    std::size_t requested = 0;
    std::size_t effective = 0;
    std::size_t failures = 0;
    std::uint64_t seed = 0;

    std::span<const double> column(const std::string& name) const;
};

// R replications on per-replication RNG streams keyed by (seed, index);
// the merge is in replication order, so results do not depend on the
// thread count.
McReport run_experiment(const ExperimentPlan& plan);

}  // namespace confstat

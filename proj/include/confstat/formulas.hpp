#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "confstat/canon.hpp"
#include "confstat/census.hpp"
#include "confstat/degrees.hpp"
#include "confstat/gw.hpp"

namespace confstat {

// Per-component rate: lambda_H = mu^{-e(H)} / aut(H) * prod_u p_{d(u)} d(u)!
// Defined for connected H with e(H) <= v(H); zero on unsupported degrees.
Rational lambda_exact(const CanonGraph& h, const DegreeDistribution& dist);
double lambda_value(const CanonGraph& h, const DegreeDistribution& dist);

// Asymptotic covariance of isolated-tree counts per vertex:
// sigma = delta lambda_1 + lambda_1 lambda_2 (2 e1 e2 / mu - sum_k n_k n_k' / p_k).
Rational sigma_pair_exact(const CanonGraph& t1, const CanonGraph& t2,
                          const DegreeDistribution& dist);
double sigma_pair(const CanonGraph& t1, const CanonGraph& t2,
                  const DegreeDistribution& dist);

// Rates of the loop / double-edge Poisson limits:
// (E D(D-1)/(2 mu), (E D(D-1)/(2 mu))^2).
std::pair<Rational, Rational> poisson_rates_exact(const DegreeDistribution& dist);
std::pair<double, double> poisson_rates(const DegreeDistribution& dist);

// Exact finite-n mean of labelled isolated copies:
// prod_k (n_k)_{h_k} k!^{h_k} / ((N-1)(N-3)...(N-2e+1)).
Rational exact_mean_isolated_labelled(const CanonGraph& h, const DegreeSequence& seq);
// Unlabelled version (divided by aut).
Rational exact_mean_isolated(const CanonGraph& h, const DegreeSequence& seq);

// Exact finite-n covariance of unlabelled isolated tree counts.
Rational exact_cov_isolated(const CanonGraph& t1, const CanonGraph& t2,
                            const DegreeSequence& seq);

struct GiantLaw {
    double mean_fraction = 0.0;  // 1 - f(zeta)
    double variance = 0.0;       // per-vertex asymptotic variance
};

// Throws NotSupercritical unless E D(D-2) > 0.
GiantLaw giant_mean_var(const DegreeDistribution& dist);

// The same variance evaluated in exact arithmetic at a caller-supplied
// rational extinction root (for pmfs where the root is rational).
Rational giant_variance_from_zeta(const DegreeDistribution& dist, const Rational& zeta);

struct SigmaPsiResult {
    double value = 0.0;
    double tail = 0.0;
    bool tail_known = true;
};

// Variance of the functional sum over non-giant components:
// EE(|T| psi^2) + (2/mu)(EE e psi)^2 - sum_k (1/p_k)(EE n_k psi)^2, with the
// expectations truncated at the catalog budget and a fitted tail attached.
SigmaPsiResult sigma_psi(const PsiFn& psi, const DegreeDistribution& dist, int edge_budget,
                         const TreeCatalog* catalog = nullptr);

// Covariance for iid random degrees:
// delta lambda + lambda_1 lambda_2 (E D(D-2) e1 e2 / mu^2 - 1).
Rational sigma_bar_iid_exact(const CanonGraph& t1, const CanonGraph& t2,
                             const DegreeDistribution& dist);

// General random-degree covariance with kernel gamma_{kl}:
// sigma + lambda_1 lambda_2 sum_{k,l} w_k(H1) w_l(H2) gamma_{kl},
// w_k(H) = n_k(H)/p_k - (k/mu) e(H).
using CovKernel = std::function<Rational(int, int)>;
Rational sigma_bar_general(const CanonGraph& t1, const CanonGraph& t2,
                           const DegreeDistribution& dist, const CovKernel& gamma);

struct AsymptoticReport {
    std::vector<std::pair<std::string, double>> lambdas;  // per requested class
    std::vector<std::vector<double>> sigma;               // tree classes only
    std::vector<std::string> tree_names;
    double poisson_loop_rate = 0.0;
    double poisson_double_rate = 0.0;
    bool supercritical = false;
    double zeta = 1.0;
    double finite_mass = 1.0;  // f(zeta)
    double giant_mean = 0.0;
    double giant_var = 0.0;
    double chi_limit = 0.0;  // EE |T|
    bool chi_limit_defined = false;
};

AsymptoticReport asymptotic_report(const DegreeDistribution& dist,
                                   const std::vector<std::pair<std::string, SmallGraph>>& classes);

}  // namespace confstat

// Command-line front end: reproducible generation, census, closed-form
// theory, acceptance experiments, and the permutation-cumulant laboratory.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "confstat/acceptance.hpp"
#include "confstat/cumulants.hpp"
#include "confstat/formulas.hpp"
#include "confstat/io.hpp"
#include "confstat/stats.hpp"

using namespace confstat;

namespace {

DegreeSequence sequence_from_options(const std::string& pmf_path,
                                     const std::string& degrees_path, std::size_t n) {
    if (!pmf_path.empty()) {
        DegreeDistribution dist = load_pmf_file(pmf_path);
        return dist.rounded_sequence(n);
    }
    if (!degrees_path.empty()) return load_degree_file(degrees_path, /*fix_parity=*/true);
    throw CLI::ValidationError("either --pmf or --degrees is required");
}

int cmd_gen(const std::string& pmf_path, const std::string& degrees_path, std::size_t n,
            std::uint64_t seed, bool cuffs, bool simple, std::uint64_t max_tries,
            const std::string& out_path, const std::string& meta_path) {
    DegreeSequence seq = sequence_from_options(pmf_path, degrees_path, n);
    RngStream rng(seed, 0);
    Multigraph g;
    std::uint64_t tries = 1;
    if (simple) {
        SimpleSample s = sample_simple(seq, rng, max_tries == 0 ? 10000 : max_tries);
        g = std::move(s.graph);
        tries = s.tries;
    } else if (cuffs) {
        g = sample_via_cuffs(seq, rng);
    } else {
        g = sample_multigraph(seq, rng);
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << "# n=" << g.n << "\n";
        for (const auto& [u, v] : g.edges) std::cout << u << " " << v << "\n";
    } else {
        write_edge_list(out_path, g);
    }
    if (!meta_path.empty()) {
        ordered_json meta;
        meta["n"] = g.n;
        meta["edges"] = g.edges.size();
        meta["seed"] = seed;
        meta["tries"] = tries;
        meta["variant"] = simple ? "simple" : (cuffs ? "cuffs" : "matching");
        std::ofstream mo(meta_path);
        mo << meta.dump(2) << "\n";
    }
    return 0;
}

int cmd_census(const std::string& in_path, std::int64_t n_override, int cap,
               const std::string& out_path) {
    Multigraph g = read_edge_list(in_path, n_override);
    ordered_json j = census_to_json(census(g, cap));
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_theory(const std::string& pmf_path, const std::vector<std::string>& tree_specs,
               int budget, bool with_catalog, const std::string& out_path) {
    DegreeDistribution dist = load_pmf_file(pmf_path);
    std::vector<std::pair<std::string, SmallGraph>> classes;
    for (const std::string& t : tree_specs) classes.emplace_back(t, make_pattern(t));
    ordered_json j = theory_to_json(asymptotic_report(dist, classes));
    GwSpec spec = GwSpec::make(dist);
    try {
        EeClosed ee = ee_closed_size_edges(dist);
        j["ee_size"] = ee.mean_size;
        j["ee_edges"] = ee.mean_edges;
    } catch (const std::domain_error&) {
        // critical case: no closed form
    }
    if (with_catalog) j["catalog"] = catalog_to_json(enumerate_trees(spec, budget));
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_verify(std::vector<std::string> ids, const AcceptanceOptions& opt, bool csv,
               bool json) {
    if (ids.empty() || (ids.size() == 1 && ids[0] == "all"))
        ids = criterion_ids();
    bool all_pass = true;
    ordered_json report = ordered_json::array();
    if (csv) std::cout << "criterion,check,value,target,tolerance,pass\n";
    for (const std::string& id : ids) {
        CriterionResult res = run_criterion(id, opt);
        all_pass = all_pass && res.pass;
        if (json) {
            ordered_json cj;
            cj["criterion"] = res.id;
            cj["pass"] = res.pass;
            cj["seconds"] = res.seconds;
            ordered_json checks = ordered_json::array();
            for (const CheckLine& c : res.checks)
                checks.push_back(ordered_json{{"label", c.label},
                                              {"value", c.value},
                                              {"target", c.target},
                                              {"tolerance", c.tolerance},
                                              {"pass", c.pass}});
            cj["checks"] = std::move(checks);
            report.push_back(std::move(cj));
        } else if (csv) {
            for (const CheckLine& c : res.checks)
                std::cout << res.id << ",\"" << c.label << "\"," << c.value << ","
                          << c.target << "," << c.tolerance << ","
                          << (c.pass ? "1" : "0") << "\n";
        } else {
            std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << res.id << "  ("
                      << res.seconds << " s)\n";
            for (const CheckLine& c : res.checks)
                std::cout << "    " << (c.pass ? "ok   " : "FAIL ") << c.label
                          << ": value=" << c.value << " target=" << c.target
                          << " tol=" << c.tolerance << "\n";
        }
    }
    if (json) std::cout << report.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int cmd_cumulant_lab(const std::string& family_path, const std::string& sweep) {
    std::ifstream in(family_path);
    if (!in) throw std::runtime_error("cannot open '" + family_path + "'");
    ordered_json j;
    in >> j;
    IndicatorFamily fam;
    fam.N = j.at("N").get<int>();
    for (const auto& member : j.at("members")) {
        std::vector<std::pair<int, int>> constraints;
        for (const auto& pair : member)
            constraints.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        fam.members.push_back(std::move(constraints));
    }
    BlockStructure bs = blocks_and_mue(fam);
    Rational kappa = exact_mixed_cumulant(fam);
    ordered_json out;
    out["kappa"] = kappa.to_string();
    out["kappa_value"] = static_cast<double>(kappa.to_long_double());
    out["blocks"] = bs.b;
    out["mue"] = bs.mue;
    out["degenerate_member"] = bs.degenerate;
    out["bound_exponent"] = -(bs.b - 1) - bs.mue;
    if (!kappa.is_zero()) {
        double scaled = static_cast<double>(kappa.log_abs()) +
                        (static_cast<double>(bs.b - 1) + bs.mue) * std::log(fam.N);
        out["log_kappa_scaled"] = scaled;  // log(|kappa| N^{(b-1)+mue})
    }
    if (!sweep.empty()) {
        std::vector<int> sizes;
        std::stringstream ss(sweep);
        std::string tok;
        while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
        SlopeReport rep = scaling_exponent(
            [&fam](int N) {
                IndicatorFamily f = fam;
                f.N = N;
                return f;
            },
            sizes);
        out["sweep_slope"] = rep.slope;
        out["sweep_bound"] = rep.bound;
        out["sweep_kappa_zero"] = rep.kappa_zero;
        out["sweep_compliant"] = rep.kappa_zero || rep.slope <= rep.bound + 0.05;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"configuration-model census and limit-theory toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "sample a multigraph and emit an edge list");
    std::string gen_pmf, gen_degrees, gen_out = "-", gen_meta;
    std::size_t gen_n = 1000;
    std::uint64_t gen_seed = 1, gen_tries = 0;
    bool gen_cuffs = false, gen_simple = false;
    gen->add_option("--pmf", gen_pmf, "pmf JSON file: [[k, p], ...]");
    gen->add_option("--degrees", gen_degrees, "degree file: ints or {\"k\": count}");
    gen->add_option("--n", gen_n, "vertex count for --pmf mode");
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_flag("--cuffs", gen_cuffs, "use the bipartite midpoint construction");
    gen->add_flag("--simple", gen_simple, "rejection-sample a uniform simple graph");
    gen->add_option("--max-tries", gen_tries, "rejection cap (0 = default 10000)");
    gen->add_option("--out", gen_out, "edge-list path ('-' = stdout)");
    gen->add_option("--meta", gen_meta, "write JSON metadata (seed, tries)");

    // census
    auto* cen = app.add_subcommand("census", "classify components of an edge list");
    std::string cen_in, cen_out = "-";
    std::int64_t cen_n = -1;
    int cen_cap = 32;
    cen->add_option("--in", cen_in, "edge-list file")->required();
    cen->add_option("--n", cen_n, "vertex count override");
    cen->add_option("--cap", cen_cap, "classification edge cap");
    cen->add_option("--out", cen_out, "output path ('-' = stdout)");

    // theory
    auto* theory = app.add_subcommand("theory", "closed-form asymptotic report");
    std::string th_pmf, th_out = "-";
    std::vector<std::string> th_trees{"K2", "P3", "K1_3", "loop"};
    int th_budget = 12;
    bool th_catalog = false;
    theory->add_option("--pmf", th_pmf, "pmf JSON file")->required();
    theory->add_option("--trees", th_trees, "class patterns (named or edge lists)");
    theory->add_option("--L", th_budget, "tree catalog edge budget");
    theory->add_flag("--catalog", th_catalog, "include the tree catalog");
    theory->add_option("--out", th_out, "output path ('-' = stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run acceptance experiments");
    std::vector<std::string> ver_ids;
    AcceptanceOptions opt;
    std::size_t ver_n = 0, ver_r = 0;
    std::uint64_t ver_seed = 0;
    bool ver_csv = false, ver_json = false;
    bool ver_seed_set = false;
    std::string ver_config;
    verify->add_option("ids", ver_ids, "AC1..AC11 or 'all'");
    verify->add_option("--config", ver_config,
                       "JSON config {experiments, n, R, seed, threads, csv, json}; "
                       "flags override");
    verify->add_option("--n", ver_n, "override n / draw count");
    verify->add_option("--R", ver_r, "override replication count");
    verify->add_option("--seed", ver_seed, "override the pinned seed")
        ->each([&](const std::string&) { ver_seed_set = true; });
    verify->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    verify->add_flag("--csv", ver_csv, "CSV report");
    verify->add_flag("--json", ver_json, "JSON report");

    // cumulant-lab
    auto* lab = app.add_subcommand("cumulant-lab", "exact permutation cumulants");
    std::string lab_family, lab_sweep;
    lab->add_option("--family", lab_family, "JSON {N, members: [[[a,b],...]]}")->required();
    lab->add_option("--sweep", lab_sweep, "comma-separated N list for a slope fit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_pmf, gen_degrees, gen_n, gen_seed, gen_cuffs, gen_simple,
                           gen_tries, gen_out, gen_meta);
        if (cen->parsed()) return cmd_census(cen_in, cen_n, cen_cap, cen_out);
        if (theory->parsed())
            return cmd_theory(th_pmf, th_trees, th_budget, th_catalog, th_out);
        if (verify->parsed()) {
            if (!ver_config.empty()) {
                std::ifstream in(ver_config);
                if (!in) throw std::runtime_error("cannot open '" + ver_config + "'");
                ordered_json j;
                in >> j;
                if (ver_ids.empty() && j.contains("experiments"))
                    ver_ids = j["experiments"].get<std::vector<std::string>>();
                if (j.contains("n")) opt.n = j["n"].get<std::size_t>();
                if (j.contains("R")) opt.replications = j["R"].get<std::size_t>();
                if (j.contains("seed")) opt.seed = j["seed"].get<std::uint64_t>();
                if (j.contains("threads") && opt.threads == 0)
                    opt.threads = j["threads"].get<int>();
                if (j.contains("csv")) ver_csv = ver_csv || j["csv"].get<bool>();
                if (j.contains("json")) ver_json = ver_json || j["json"].get<bool>();
            }
            if (ver_n > 0) opt.n = ver_n;
            if (ver_r > 0) opt.replications = ver_r;
            if (ver_seed_set) opt.seed = ver_seed;
            return cmd_verify(ver_ids, opt, ver_csv, ver_json);
        }
        if (lab->parsed()) return cmd_cumulant_lab(lab_family, lab_sweep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include "confstat/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace confstat {

namespace {

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ordered_json j;
    in >> j;
    return j;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace

DegreeDistribution pmf_from_json(const ordered_json& j) {
    if (!j.is_array()) throw std::runtime_error("pmf: expected a JSON array of [k, p] pairs");
    std::vector<std::pair<int, double>> pmf;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::runtime_error("pmf: each entry must be [k, p]");
        pmf.emplace_back(entry[0].get<int>(), entry[1].get<double>());
    }
    return DegreeDistribution::from_pmf(pmf);
}

DegreeDistribution load_pmf_file(const std::string& path) {
    return pmf_from_json(load_json_file(path));
}

DegreeSequence load_degree_file(const std::string& path, bool fix_parity) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    char first = 0;
    in >> std::ws;
    first = static_cast<char>(in.peek());
    if (first == '{') {
        ordered_json j;
        in >> j;
        std::map<int, std::int64_t> hist;
        for (const auto& [key, value] : j.items())
            hist[std::stoi(key)] = value.get<std::int64_t>();
        return DegreeSequence::from_counts(hist, fix_parity);
    }
    std::vector<int> degrees;
    int d = 0;
    while (in >> d) degrees.push_back(d);
    if (fix_parity) {
        std::uint64_t total = 0;
        for (int x : degrees) total += static_cast<std::uint64_t>(x);
        if (total % 2 != 0)
            for (std::size_t i = degrees.size(); i-- > 0;)
                if (degrees[i] >= 1) {
                    --degrees[i];
                    break;
                }
    }
    return DegreeSequence(std::move(degrees));
}

void write_edge_list(const std::string& path, const Multigraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "# n=" << g.n << "\n";
    for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
}

Multigraph read_edge_list(const std::string& path, std::int64_t n_override) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Multigraph g;
    std::int64_t n_header = -1;
    std::string line;
    std::uint32_t maxv = 0;
    bool any = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("n=");
            if (pos != std::string::npos) n_header = std::stoll(line.substr(pos + 2));
            continue;
        }
        std::istringstream ls(line);
        std::uint32_t u, v;
        if (!(ls >> u >> v)) throw std::runtime_error("bad edge line: '" + line + "'");
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
        maxv = std::max({maxv, u, v});
        any = true;
    }
    std::int64_t n = n_override >= 0 ? n_override : n_header;
    if (n < 0) n = any ? static_cast<std::int64_t>(maxv) + 1 : 0;
    g.n = static_cast<std::uint32_t>(n);
    return g;
}

ordered_json census_to_json(const ComponentCensus& c) {
    ordered_json j;
    ordered_json classes = ordered_json::array();
    for (const auto& [code, entry] : c.classes) {
        ordered_json cj;
        cj["code"] = code;
        cj["v"] = entry.cls.v;
        cj["e"] = entry.cls.e;
        cj["kind"] = kind_name(entry.cls.kind);
        cj["aut"] = entry.cls.aut.to_string();
        cj["count"] = entry.count;
        classes.push_back(std::move(cj));
    }
    j["classes"] = std::move(classes);
    ordered_json large = ordered_json::array();
    for (const auto& [size, edges] : c.large)
        large.push_back(ordered_json::array({size, edges}));
    j["large"] = std::move(large);
    j["c1"] = c.c1;
    j["c2"] = c.c2;
    j["chi_hat"] = c.chi_hat;
    j["kappa"] = c.kappa;
    j["n"] = c.n;
    return j;
}

ordered_json report_to_json(const McReport& r) {
    ordered_json j;
    j["seed"] = r.seed;
    j["replications"] = r.requested;
    j["effective"] = r.effective;
    j["failures"] = r.failures;
    ordered_json stats = ordered_json::array();
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        ordered_json sj;
        sj["name"] = r.names[i];
        if (i < r.stats.size()) {
            const KStats& k = r.stats[i];
            sj["mean"] = k.mean;
            sj["k2"] = k.k2;
            sj["k3"] = k.k3;
            sj["k4"] = k.k4;
            sj["g1"] = k.g1;
            sj["g2"] = k.g2;
            sj["degenerate"] = k.degenerate;
        }
        stats.push_back(std::move(sj));
    }
    j["statistics"] = std::move(stats);
    j["covariance"] = r.covariance;
    return j;
}

std::string report_to_csv(const McReport& r) {
    std::ostringstream os;
    os << "statistic,R,mean,k2,k3,k4,g1,g2\n";
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        os << r.names[i] << "," << r.effective;
        if (i < r.stats.size()) {
            const KStats& k = r.stats[i];
            os << "," << fmt(k.mean) << "," << fmt(k.k2) << "," << fmt(k.k3) << ","
               << fmt(k.k4) << "," << fmt(k.g1) << "," << fmt(k.g2);
        }
        os << "\n";
    }
    return os.str();
}

ordered_json theory_to_json(const AsymptoticReport& rep) {
    ordered_json j;
    j["supercritical"] = rep.supercritical;
    j["zeta"] = rep.zeta;
    j["finite_mass"] = rep.finite_mass;
    ordered_json lam = ordered_json::array();
    for (const auto& [name, value] : rep.lambdas)
        lam.push_back(ordered_json{{"class", name}, {"lambda", value}});
    j["lambda"] = std::move(lam);
    j["sigma_trees"] = rep.tree_names;
    j["sigma"] = rep.sigma;
    j["poisson_rates"] =
        ordered_json{{"loops", rep.poisson_loop_rate}, {"double_edges", rep.poisson_double_rate}};
    if (rep.supercritical) {
        j["giant_mean"] = rep.giant_mean;
        j["giant_var"] = rep.giant_var;
    }
    if (rep.chi_limit_defined) j["chi_limit"] = rep.chi_limit;
    return j;
}

ordered_json catalog_to_json(const TreeCatalog& cat) {
    ordered_json j;
    j["edge_budget"] = cat.edge_budget;
    ordered_json trees = ordered_json::array();
    for (const TreeClass& t : cat.trees) {
        ordered_json tj;
        tj["code"] = t.code;
        tj["v"] = t.v;
        tj["e"] = t.e;
        tj["p"] = static_cast<double>(t.p);
        trees.push_back(std::move(tj));
    }
    j["trees"] = std::move(trees);
    return j;
}

}  // namespace confstat

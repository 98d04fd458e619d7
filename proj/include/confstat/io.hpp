#pragma once

#include <string>

#include "json.hpp"

#include "confstat/census.hpp"
#include "confstat/confmodel.hpp"
#include "confstat/degrees.hpp"
#include "confstat/formulas.hpp"
#include "confstat/gw.hpp"
#include "confstat/stats.hpp"

namespace confstat {

using ordered_json = nlohmann::ordered_json;

// pmf file: JSON array of [k, p_k] pairs.
DegreeDistribution load_pmf_file(const std::string& path);
DegreeDistribution pmf_from_json(const ordered_json& j);

// degree file: newline-separated integers, or a JSON histogram {"k": count}.
DegreeSequence load_degree_file(const std::string& path, bool fix_parity = false);

// edge list: "# n=<n>" header comment, then one "u v" per line, 0-indexed,
// loops as "v v".
void write_edge_list(const std::string& path, const Multigraph& g);
Multigraph read_edge_list(const std::string& path, std::int64_t n_override = -1);

ordered_json census_to_json(const ComponentCensus& c);
ordered_json report_to_json(const McReport& r);
std::string report_to_csv(const McReport& r);
ordered_json theory_to_json(const AsymptoticReport& rep);
ordered_json catalog_to_json(const TreeCatalog& cat);

}  // namespace confstat

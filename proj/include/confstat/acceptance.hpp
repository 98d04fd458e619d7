#pragma once

#include <optional>
#include <string>
#include <vector>

namespace confstat {

struct CheckLine {
    std::string label;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;  // absolute slack actually applied
    bool pass = false;
};

struct CriterionResult {
    std::string id;
    bool pass = false;
    double seconds = 0.0;
    std::vector<CheckLine> checks;
};

struct AcceptanceOptions {
    std::optional<std::size_t> n;
    std::optional<std::size_t> replications;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

const std::vector<std::string>& criterion_ids();  // AC1..AC11
CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& opt = {});

}  // namespace confstat

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nlcauchy/config.hpp"

namespace nlcauchy {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    Json details;
};

/// Run one acceptance criterion (1..12). Tolerances and grids are pinned in
/// code; the config supplies the global seed and the Monte Carlo budget.
CriterionResult run_criterion(int id, const ExperimentConfig& cfg);

/// All criteria in order; progress lines go to `progress` when given.
std::vector<CriterionResult> run_acceptance(const ExperimentConfig& cfg,
                                            std::ostream* progress = nullptr);

/// Consolidated report with the resolved config and seeds embedded.
Json acceptance_report(const ExperimentConfig& cfg,
                       const std::vector<CriterionResult>& results);

}  // namespace nlcauchy

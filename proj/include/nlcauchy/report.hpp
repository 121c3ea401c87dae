#pragma once

#include <string>
#include <vector>

#include "nlcauchy/config.hpp"
#include "nlcauchy/const_solver.hpp"
#include "nlcauchy/mc.hpp"
#include "nlcauchy/norms.hpp"
#include "nlcauchy/var_solver.hpp"

namespace nlcauchy {

Json to_json(const SeminormWitness& w);
Json to_json(const NormReport& r);
Json to_json(const ClauseResult& c);
Json to_json(const AssumptionReport& r);
Json to_json(const IterationState& s);
Json to_json(const MCEstimate& e);
Json to_json(const std::vector<IncrementStat>& stats);

/// Solution container: a single JSON file or one CSV per stamp plus an index.
void write_solution(const Solution& u, const std::string& out_dir,
                    const std::string& base_name, const std::string& format);

void write_residual_log_csv(const IterationState& s, const std::string& path);
void write_path_csv(const JumpPath& p, const std::string& path);

void write_json_file(const Json& j, const std::string& path);

/// Plain-text table view of a verify report (the `report` subcommand).
std::string render_report(const Json& report);

}  // namespace nlcauchy

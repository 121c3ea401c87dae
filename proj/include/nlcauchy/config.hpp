#pragma once

#include <optional>
#include <string>

#include "nlcauchy/kernel.hpp"
#include "nlcauchy/nonlocal.hpp"

#include <json.hpp>

namespace nlcauchy {

using Json = nlohmann::ordered_json;

/// Everything one experiment needs, read from a single JSON file; scalar
/// fields may be overridden from the command line.
struct ExperimentConfig {
    int schema_version = 1;
    int dim = 1;
    double alpha = 1.5;
    double beta = 0.5;
    double lambda = 1.0;
    double T = 1.0;
    int grid_n = 256;
    int time_cells = 64;

    std::string kernel_preset = "isotropic";
    std::vector<double> kernel_time_breaks;
    std::vector<double> kernel_time_scale;

    bool b_enabled = false;
    double b_alpha_prime = 0.5;
    double b_rho_amplitude = 0.0;   // rho = amp * (1 + cos x1)/2 on the sector
    double b_drift = 0.0;           // constant drift magnitude along x1
    double b_zero_order = 0.0;      // constant l

    double forcing_beta = 0.5;
    int forcing_levels = 4;
    int forcing_count = 10;
    bool forcing_add_mean = false;

    int mc_paths = 20000;
    double mc_delta_cut = 0.0;      // 0 = variance rule
    int mc_substeps = 100;
    bool mc_gaussian = true;

    uint64_t seed = 20240817;
    std::string output_dir = "out";
    std::string output_format = "json";  // or "csv"

    static ExperimentConfig from_json(const Json& j);
    static ExperimentConfig from_file(const std::string& path);
    Json to_json() const;
    void validate() const;  // throws ConfigError

    KernelSpec kernel() const;
    std::optional<BOperatorSpec> b_operator() const;
    /// One member of the forcing suite (index selects the substream).
    GridFunction forcing_member(int index) const;
};

}  // namespace nlcauchy

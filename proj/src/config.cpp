#include "nlcauchy/config.hpp"

#include <cmath>
#include <fstream>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/norms.hpp"
#include "nlcauchy/rng.hpp"

namespace nlcauchy {

namespace {

template <typename T>
void read_into(const Json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    ExperimentConfig c;
    read_into(j, "schema_version", c.schema_version);
    if (c.schema_version != 1)
        throw ConfigError("config: unrecognized schema_version " +
                          std::to_string(c.schema_version));
    read_into(j, "dim", c.dim);
    read_into(j, "alpha", c.alpha);
    read_into(j, "beta", c.beta);
    read_into(j, "lambda", c.lambda);
    read_into(j, "T", c.T);
    if (j.contains("grid")) read_into(j.at("grid"), "points_per_axis", c.grid_n);
    read_into(j, "time_cells", c.time_cells);
    if (j.contains("kernel")) {
        const Json& k = j.at("kernel");
        read_into(k, "preset", c.kernel_preset);
        read_into(k, "time_breaks", c.kernel_time_breaks);
        read_into(k, "time_scale", c.kernel_time_scale);
    }
    if (j.contains("b_operator")) {
        const Json& b = j.at("b_operator");
        c.b_enabled = true;
        read_into(b, "enabled", c.b_enabled);
        read_into(b, "alpha_prime", c.b_alpha_prime);
        read_into(b, "rho_amplitude", c.b_rho_amplitude);
        read_into(b, "drift", c.b_drift);
        read_into(b, "zero_order", c.b_zero_order);
    }
    if (j.contains("forcing")) {
        const Json& f = j.at("forcing");
        read_into(f, "beta", c.forcing_beta);
        read_into(f, "levels", c.forcing_levels);
        read_into(f, "count", c.forcing_count);
        read_into(f, "add_mean", c.forcing_add_mean);
    }
    if (j.contains("mc")) {
        const Json& m = j.at("mc");
        read_into(m, "paths", c.mc_paths);
        read_into(m, "delta_cut", c.mc_delta_cut);
        read_into(m, "substeps", c.mc_substeps);
        read_into(m, "gaussian_correction", c.mc_gaussian);
    }
    read_into(j, "seed", c.seed);
    read_into(j, "output_dir", c.output_dir);
    read_into(j, "output_format", c.output_format);
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: parse failure: ") + e.what());
    }
    return from_json(j);
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["schema_version"] = schema_version;
    j["dim"] = dim;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["lambda"] = lambda;
    j["T"] = T;
    j["grid"] = Json{{"points_per_axis", grid_n}};
    j["time_cells"] = time_cells;
    j["kernel"] = Json{{"preset", kernel_preset},
                       {"time_breaks", kernel_time_breaks},
                       {"time_scale", kernel_time_scale}};
    j["b_operator"] = Json{{"enabled", b_enabled},
                           {"alpha_prime", b_alpha_prime},
                           {"rho_amplitude", b_rho_amplitude},
                           {"drift", b_drift},
                           {"zero_order", b_zero_order}};
    j["forcing"] = Json{{"beta", forcing_beta},
                        {"levels", forcing_levels},
                        {"count", forcing_count},
                        {"add_mean", forcing_add_mean}};
    j["mc"] = Json{{"paths", mc_paths},
                   {"delta_cut", mc_delta_cut},
                   {"substeps", mc_substeps},
                   {"gaussian_correction", mc_gaussian}};
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    j["output_format"] = output_format;
    return j;
}

void ExperimentConfig::validate() const {
    if (dim != 1 && dim != 2) throw ConfigError("config: dim must be 1 or 2");
    if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError("config: alpha must lie in (0,2)");
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("config: beta must lie in (0,1]");
    if (lambda < 0.0) throw ConfigError("config: lambda must be nonnegative");
    if (!(T > 0.0)) throw ConfigError("config: T must be positive");
    if (grid_n < 8 || (grid_n & (grid_n - 1)) != 0)
        throw ConfigError("config: points_per_axis must be a power of two >= 8");
    if (time_cells < 1) throw ConfigError("config: time_cells must be >= 1");
    if (forcing_count < 1) throw ConfigError("config: forcing count must be >= 1");
    if (mc_paths < 2) throw ConfigError("config: mc paths must be >= 2");
    if (output_format != "json" && output_format != "csv")
        throw ConfigError("config: output_format must be json or csv");
    if (b_enabled && !(b_alpha_prime > 0.0 && b_alpha_prime < alpha))
        throw ConfigError("config: b_operator alpha_prime must lie in (0, alpha)");
}

KernelSpec ExperimentConfig::kernel() const {
    KernelSpec spec = make_kernel_preset(kernel_preset, dim, alpha);
    spec.beta = beta;
    if (!kernel_time_breaks.empty()) {
        spec.time_breaks = kernel_time_breaks;
        spec.time_scale = kernel_time_scale;
        spec.check_well_formed();
    }
    return spec;
}

std::optional<BOperatorSpec> ExperimentConfig::b_operator() const {
    if (!b_enabled) return std::nullopt;
    BOperatorSpec b;
    b.dim = dim;
    b.principal_alpha = alpha;
    b.alpha_prime = b_alpha_prime;
    b.beta = beta;
    if (b_rho_amplitude > 0.0) {
        KernelTerm t;
        t.angular = [](double, Point) { return 1.0; };
        double amp = b_rho_amplitude;
        t.coef = [amp](Point x) { return amp * 0.5 * (1.0 + std::cos(x[0])); };
        b.rho_terms.push_back(std::move(t));
        b.rho_sup = b_rho_amplitude;
    }
    if (b_drift != 0.0) {
        double bd = b_drift;
        b.drift = [bd](double, Point) { return Point{bd, 0.0}; };
    }
    if (b_zero_order != 0.0) {
        double l = b_zero_order;
        b.zero_order = [l](double, Point) { return l; };
    }
    return b;
}

GridFunction ExperimentConfig::forcing_member(int index) const {
    uint64_t s = substream_seed(seed, "forcing", uint64_t(index));
    GridFunction f = weierstrass_forcing(dim, grid_n, forcing_beta, forcing_levels, s);
    if (forcing_add_mean) {
        for (auto& v : f.values) v = 1.0 + 0.5 * v;
    }
    return f;
}

}  // namespace nlcauchy

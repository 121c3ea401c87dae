#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/norms.hpp"
#include "nlcauchy/report.hpp"
#include "nlcauchy/rng.hpp"
#include "nlcauchy/var_solver.hpp"
#include "nlcauchy/verify.hpp"

namespace nl = nlcauchy;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    std::string format;
    double lambda = -1.0;
    double alpha = -1.0;
    long long seed = -1;
    int paths = -1;

    nl::ExperimentConfig load() const {
        nl::ExperimentConfig cfg = nl::ExperimentConfig::from_file(config_path);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (!format.empty()) cfg.output_format = format;
        if (lambda >= 0.0) cfg.lambda = lambda;
        if (alpha > 0.0) cfg.alpha = alpha;
        if (seed >= 0) cfg.seed = uint64_t(seed);
        if (paths > 0) cfg.mc_paths = paths;
        cfg.validate();
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "experiment config (JSON)")->required();
    cmd->add_option("-o,--output-dir", args.output_dir, "override output directory");
    cmd->add_option("--format", args.format, "solution format: json or csv");
    cmd->add_option("--lambda", args.lambda, "override lambda");
    cmd->add_option("--alpha", args.alpha, "override alpha");
    cmd->add_option("--seed", args.seed, "override global seed");
    cmd->add_option("--paths", args.paths, "override Monte Carlo path count");
}

std::vector<nl::Point> audit_x_samples(const nl::ExperimentConfig& cfg) {
    std::vector<nl::Point> xs;
    int n = 16;
    for (int i = 0; i < n; ++i) {
        double x = i * nl::kPeriod / n;
        if (cfg.dim == 1) {
            xs.push_back({x, 0.0});
        } else {
            for (int j = 0; j < n; j += 4) xs.push_back({x, j * nl::kPeriod / n});
        }
    }
    return xs;
}

std::vector<double> audit_t_samples(const nl::ExperimentConfig& cfg) {
    std::vector<double> ts;
    for (int i = 0; i < 4; ++i) ts.push_back(cfg.T * (i + 0.5) / 4.0);
    return ts;
}

int cmd_check_kernel(const CommonArgs& args) {
    nl::ExperimentConfig cfg = args.load();
    nl::KernelSpec spec = cfg.kernel();
    nl::AssumptionReport rep =
        nl::validate_assumptions(spec, audit_t_samples(cfg), audit_x_samples(cfg));
    nl::Json j = nl::to_json(rep);
    j["kernel"] = cfg.kernel_preset;
    if (auto b = cfg.b_operator()) {
        nl::AssumptionReport brep = b->validate(audit_t_samples(cfg), audit_x_samples(cfg));
        j["b_operator"] = nl::to_json(brep);
        rep.all_pass = rep.all_pass && brep.all_pass;
        j["all_pass"] = rep.all_pass;
    }
    nl::write_json_file(j, cfg.output_dir + "/assumption_audit.json");
    std::cout << j.dump(2) << "\n";
    return rep.all_pass ? 0 : int(nl::ExitCode::AssumptionFailure);
}

int cmd_solve(const CommonArgs& args, bool variable) {
    nl::ExperimentConfig cfg = args.load();
    nl::KernelSpec spec = cfg.kernel();
    nl::AssumptionReport rep =
        nl::validate_assumptions(spec, audit_t_samples(cfg), audit_x_samples(cfg));
    if (!rep.all_pass) {
        std::cerr << "assumption audit failed; see check-kernel\n";
        return int(nl::ExitCode::AssumptionFailure);
    }
    nl::SolveConfig scfg{cfg.lambda, cfg.T, cfg.time_cells, cfg.grid_n, cfg.dim};
    nl::GridFunction f = cfg.forcing_member(0);
    nl::ForcingComponent fc = nl::ForcingComponent::constant_in_time(f, cfg.time_cells);

    nl::Solution u;
    nl::Json extra;
    if (variable) {
        auto b = cfg.b_operator();
        nl::PicardOptions popts;
        nl::CalibrationResult cal =
            nl::calibrate_lambda(spec, b ? &*b : nullptr, scfg, fc, popts);
        u = cal.run.solution;
        extra["lambda0"] = cal.lambda0;
        extra["iteration"] = nl::to_json(cal.run.state);
        nl::write_residual_log_csv(cal.run.state, cfg.output_dir + "/residuals.csv");
    } else {
        if (!spec.x_independent()) {
            std::cerr << "solve-const requires an x-independent kernel preset\n";
            return int(nl::ExitCode::Configuration);
        }
        u = nl::resolve(spec, scfg, fc);
        extra["defs_residual"] = nl::verify_defs_identity(u, spec, scfg, {fc});
    }
    nl::write_solution(u, cfg.output_dir, variable ? "solution_var" : "solution_const",
                       cfg.output_format);
    nl::NormReport norms = nl::make_norm_report(u.stamps.back(), cfg.alpha, cfg.beta);
    nl::Json j;
    j["config"] = cfg.to_json();
    j["norms"] = nl::to_json(norms);
    j["forcing_norm"] = nl::composite_norm(f, cfg.beta);
    for (auto& [k, v] : extra.items()) j[k] = v;
    nl::write_json_file(j, cfg.output_dir + (variable ? "/solve_var.json" : "/solve_const.json"));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const CommonArgs& args, int dump_paths) {
    nl::ExperimentConfig cfg = args.load();
    nl::KernelSpec spec = cfg.kernel();
    auto b = cfg.b_operator();
    nl::McOptions mopts;
    mopts.delta_cut = cfg.mc_delta_cut;
    mopts.substeps = cfg.mc_substeps;
    mopts.gaussian_correction = cfg.mc_gaussian;

    nl::GridFunction f = cfg.forcing_member(0);
    std::vector<nl::GridFunction> stamps(cfg.time_cells + 1, f);
    for (int j = 0; j <= cfg.time_cells; ++j)
        stamps[j].time_stamp = j * cfg.T / cfg.time_cells;

    nl::Json probes = nl::Json::array();
    int idx = 0;
    for (double s : {0.0, cfg.T / 4.0, cfg.T / 2.0}) {
        for (double x : {0.0, nl::kPeriod / 3.0, 2.0 * nl::kPeriod / 3.0}) {
            nl::MCEstimate est = nl::feynman_kac(
                spec, b ? &*b : nullptr, stamps, cfg.T, s, {x, 0.0}, cfg.mc_paths,
                nl::substream_seed(cfg.seed, "simulate", idx++), mopts);
            probes.push_back(nl::to_json(est));
        }
    }
    for (int p = 0; p < dump_paths; ++p) {
        nl::JumpPath path =
            nl::simulate_path(spec, b ? &*b : nullptr, 0.0, {0.0, 0.0}, cfg.T,
                              nl::substream_seed(cfg.seed, "dump", p), mopts);
        nl::write_path_csv(path, cfg.output_dir + "/path_" + std::to_string(p) + ".csv");
    }
    nl::Json j;
    j["config"] = cfg.to_json();
    j["delta_cut"] = nl::effective_delta_cut(spec, mopts);
    j["feynman_kac"] = probes;
    nl::write_json_file(j, cfg.output_dir + "/simulate.json");
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const CommonArgs& args, const std::vector<int>& only) {
    nl::ExperimentConfig cfg = args.load();
    std::vector<nl::CriterionResult> results;
    if (only.empty()) {
        results = nl::run_acceptance(cfg, &std::cout);
    } else {
        for (int id : only) {
            nl::CriterionResult r = nl::run_criterion(id, cfg);
            std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  ("
                      << r.name << ")\n";
            results.push_back(std::move(r));
        }
    }
    nl::Json report = nl::acceptance_report(cfg, results);
    nl::write_json_file(report, cfg.output_dir + "/verify_report.json");
    bool all = report["all_pass"].get<bool>();
    std::cout << (all ? "all criteria passed\n" : "some criteria FAILED\n");
    return all ? 0 : int(nl::ExitCode::NonConvergence);
}

int cmd_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return int(nl::ExitCode::Configuration);
    }
    nl::Json j;
    in >> j;
    std::cout << nl::render_report(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal Cauchy problem solvers with Monte Carlo cross-validation"};
    app.require_subcommand(1);

    CommonArgs check_args, solve_c_args, solve_v_args, sim_args, verify_args;
    int dump_paths = 0;
    std::vector<int> only_criteria;
    std::string report_path;

    add_common(app.add_subcommand("check-kernel", "audit the standing assumptions"),
               check_args);
    add_common(app.add_subcommand("solve-const", "constant-coefficient solve"), solve_c_args);
    add_common(app.add_subcommand("solve-var", "variable-coefficient Picard solve"),
               solve_v_args);
    auto* sim = app.add_subcommand("simulate", "jump-process Monte Carlo estimates");
    add_common(sim, sim_args);
    sim->add_option("--dump-paths", dump_paths, "write this many path CSVs");
    auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
    add_common(ver, verify_args);
    ver->add_option("--only", only_criteria, "run only these criterion ids");
    auto* rep = app.add_subcommand("report", "render a verify report as text");
    rep->add_option("-i,--input", report_path, "verify_report.json path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("check-kernel")) return cmd_check_kernel(check_args);
        if (app.got_subcommand("solve-const")) return cmd_solve(solve_c_args, false);
        if (app.got_subcommand("solve-var")) return cmd_solve(solve_v_args, true);
        if (app.got_subcommand("simulate")) return cmd_simulate(sim_args, dump_paths);
        if (app.got_subcommand("verify")) return cmd_verify(verify_args, only_criteria);
        if (app.got_subcommand("report")) return cmd_report(report_path);
    } catch (const nl::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return int(nl::ExitCode::Configuration);
    } catch (const nl::AssumptionError& e) {
        std::cerr << "assumption failure: " << e.what() << "\n";
        return int(nl::ExitCode::AssumptionFailure);
    } catch (const nl::NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return int(nl::ExitCode::NonConvergence);
    } catch (const nl::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return int(nl::ExitCode::NonConvergence);
    }
    return 0;
}

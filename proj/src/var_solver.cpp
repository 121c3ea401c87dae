#include "nlcauchy/var_solver.hpp"

#include <cmath>
#include <map>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/norms.hpp"

namespace nlcauchy {

namespace {

size_t kernel_cell_of(const KernelSpec& spec, double t) {
    size_t cell = 0;
    while (cell < spec.time_breaks.size() && t >= spec.time_breaks[cell]) ++cell;
    return cell;
}

struct CellOperators {
    AOperator full;
    AOperator ref;
    std::optional<BOperator> b;
};

}  // namespace

PicardResult picard_solve(const KernelSpec& spec, const BOperatorSpec* bspec,
                          const SolveConfig& cfg, const ForcingComponent& forcing,
                          const PicardOptions& opts) {
    spec.check_well_formed();
    if (forcing.cells() != cfg.time_cells)
        throw ConfigError("picard_solve: forcing stamps must match time_cells");

    KernelSpec ref = (opts.reference == ReferenceKernel::Minorant)
                         ? spec.minorant_as_kernel()
                         : spec.x_averaged(cfg.n);
    double beta_prime = (opts.beta_prime > 0.0) ? opts.beta_prime : spec.beta / 2.0;

    // operators per kernel time cell, at stamp times
    double h = cfg.T / cfg.time_cells;
    std::map<size_t, CellOperators> cells;
    std::vector<const CellOperators*> per_stamp(cfg.time_cells + 1);
    for (int j = 0; j <= cfg.time_cells; ++j) {
        double t = std::min(j * h, cfg.T * (1.0 - 1e-12));
        size_t kcell = kernel_cell_of(spec, t);
        auto it = cells.find(kcell);
        if (it == cells.end()) {
            double tc = kcell < spec.time_breaks.size()
                            ? 0.5 * ((kcell == 0 ? 0.0 : spec.time_breaks[kcell - 1]) +
                                     spec.time_breaks[kcell])
                            : 0.5 * ((kcell == 0 ? 0.0 : spec.time_breaks[kcell - 1]) + cfg.T);
            CellOperators ops{AOperator(spec, cfg.n, tc, opts.symbol),
                              AOperator(ref, cfg.n, tc, opts.symbol),
                              std::nullopt};
            if (bspec) ops.b.emplace(*bspec, cfg.n, tc, opts.symbol);
            it = cells.emplace(kcell, std::move(ops)).first;
        }
        per_stamp[j] = &it->second;
    }

    Solution u;
    u.T = cfg.T;
    u.lambda = cfg.lambda;
    u.stamps.assign(cfg.time_cells + 1, GridFunction::zeros(cfg.dim, cfg.n, 0.0));
    for (int j = 0; j <= cfg.time_cells; ++j) u.stamps[j].time_stamp = j * h;

    IterationState state;
    state.lambda = cfg.lambda;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        // perturbation forcing (A - A_ref + B) u_n stamped at solver times
        ForcingComponent pert;
        pert.stamps.reserve(cfg.time_cells + 1);
        for (int j = 0; j <= cfg.time_cells; ++j) {
            const CellOperators& ops = *per_stamp[j];
            GridFunction g = ops.full.apply(u.stamps[j]);
            g -= ops.ref.apply(u.stamps[j]);
            if (ops.b) g += ops.b->apply(u.stamps[j]);
            g.time_stamp = j * h;
            pert.stamps.push_back(std::move(g));
        }
        Solution next = resolve(ref, cfg, std::vector<ForcingComponent>{forcing, pert},
                                SymbolRoute::Direct, opts.symbol);

        // the residual norm is measured on a stamp subset (always including
        // the final time); the defs identity below covers every stamp
        int stride = std::max(1, cfg.time_cells / 16);
        double res = 0.0;
        for (int j = cfg.time_cells; j >= 0; j -= stride) {
            GridFunction diff = next.stamps[j] - u.stamps[j];
            double weight = std::exp(-opts.weight_rate * j * h);
            res = std::max(res, weight * equiv_norm(diff, spec.alpha, beta_prime));
        }
        state.residuals.push_back(res);
        state.iterations = iter + 1;
        u = std::move(next);

        if (res <= opts.tol) {
            state.converged = true;
            break;
        }
        if (int(state.residuals.size()) >= 2) {
            double prev = state.residuals[state.residuals.size() - 2];
            state.q_hat = (prev > 0.0) ? res / prev : 0.0;
            if (iter + 1 > opts.warmup && state.q_hat >= 1.0)
                throw NonConvergenceError(
                    "picard_solve: residuals stopped contracting (q_hat = " +
                        std::to_string(state.q_hat) + ", lambda = " +
                        std::to_string(cfg.lambda) + "); raise lambda",
                    state.q_hat, cfg.lambda);
        }
    }

    state.defs_residual = verify_defs_identity(u, spec, cfg, {forcing}, bspec, opts.symbol);
    return {std::move(u), std::move(state)};
}

CalibrationResult calibrate_lambda(const KernelSpec& spec, const BOperatorSpec* bspec,
                                   const SolveConfig& cfg, const ForcingComponent& forcing,
                                   const PicardOptions& opts) {
    // probe with doubled lambda until three consecutive contraction ratios
    // stay at or below 0.8 (or the probe converges outright)
    double lambda0 = 1.0;
    bool found = false;
    while (lambda0 <= double(1 << 20)) {
        SolveConfig probe_cfg = cfg;
        probe_cfg.lambda = lambda0;
        PicardOptions probe_opts = opts;
        probe_opts.max_iters = 8;
        probe_opts.weight_rate = 0.0;
        bool ok = false;
        try {
            PicardResult probe = picard_solve(spec, bspec, probe_cfg, forcing, probe_opts);
            if (probe.state.converged && int(probe.state.residuals.size()) <= probe_opts.warmup + 1) {
                ok = true;  // contracted essentially immediately
            } else {
                int streak = 0;
                for (size_t i = 1; i < probe.state.residuals.size(); ++i) {
                    double q = probe.state.residuals[i] / probe.state.residuals[i - 1];
                    streak = (q <= 0.8) ? streak + 1 : 0;
                    if (streak >= 3) ok = true;
                }
                if (probe.state.converged && probe.state.residuals.size() <= 3) ok = true;
            }
        } catch (const NonConvergenceError&) {
            ok = false;
        }
        if (ok) {
            found = true;
            break;
        }
        lambda0 *= 2.0;
    }
    if (!found)
        throw NonConvergenceError("calibrate_lambda: no contraction up to lambda = 2^20",
                                  1.0, lambda0);

    CalibrationResult result;
    result.lambda0 = lambda0;
    PicardOptions run_opts = opts;
    if (cfg.lambda >= lambda0) {
        result.run = picard_solve(spec, bspec, cfg, forcing, run_opts);
    } else {
        // the damped problem contracts; measuring residuals in the
        // exp(-(lambda0-lambda) t)-weighted norm is the discrete form of the
        // substitution u = exp((lambda0-lambda) t) u~
        run_opts.weight_rate = lambda0 - cfg.lambda;
        run_opts.max_iters = std::max(opts.max_iters, 80);
        result.run = picard_solve(spec, bspec, cfg, forcing, run_opts);
    }
    return result;
}

}  // namespace nlcauchy

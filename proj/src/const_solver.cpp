#include "nlcauchy/const_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nlcauchy/errors.hpp"

namespace nlcauchy {

GridFunction ForcingComponent::eval(double t, double T) const {
    int nc = cells();
    if (nc < 1) throw ConfigError("forcing: needs at least two stamps");
    double dt = T / nc;
    double pos = std::clamp(t / dt, 0.0, double(nc));
    int cell = std::min(int(pos), nc - 1);
    double w = pos - cell;
    GridFunction out = stamps[cell];
    out *= (1.0 - w);
    GridFunction hi = stamps[cell + 1];
    hi *= w;
    out += hi;
    out *= std::exp(exp_rate * t);
    out.time_stamp = t;
    return out;
}

ForcingComponent ForcingComponent::constant_in_time(const GridFunction& f, int time_cells) {
    ForcingComponent fc;
    fc.stamps.assign(time_cells + 1, f);
    return fc;
}

GridFunction Solution::eval(double t) const {
    double pos = std::clamp(t / dt(), 0.0, double(cells()));
    int cell = std::min(int(pos), cells() - 1);
    double w = pos - cell;
    GridFunction out = stamps[cell];
    out *= (1.0 - w);
    GridFunction hi = stamps[cell + 1];
    hi *= w;
    out += hi;
    out.time_stamp = t;
    return out;
}

namespace {

// index of the piecewise-constant kernel cell containing time t
size_t kernel_cell_of(const KernelSpec& spec, double t) {
    size_t cell = 0;
    while (cell < spec.time_breaks.size() && t >= spec.time_breaks[cell]) ++cell;
    return cell;
}

// representative time inside a kernel cell (clamped midpoint)
double kernel_cell_time(const KernelSpec& spec, size_t cell, double T) {
    double lo = (cell == 0) ? 0.0 : spec.time_breaks[cell - 1];
    double hi = (cell < spec.time_breaks.size()) ? spec.time_breaks[cell] : T;
    if (hi <= lo) hi = lo + 1.0;
    return 0.5 * (lo + hi);
}

// time integral of the symbol over [s,t] for a piecewise-constant-in-time
// kernel: exact cell-by-cell sum
std::vector<cdouble> symbol_time_integral(const KernelSpec& spec, double s, double t, int n,
                                          SymbolRoute route, const SymbolOptions& opts) {
    std::vector<double> cuts{s};
    for (double b : spec.time_breaks)
        if (b > s && b < t) cuts.push_back(b);
    cuts.push_back(t);
    size_t total = (spec.dim == 1) ? size_t(n) : size_t(n) * n;
    std::vector<cdouble> acc(total, 0.0);
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        double mid = 0.5 * (cuts[c] + cuts[c + 1]);
        double len = cuts[c + 1] - cuts[c];
        SymbolTable tab = build_symbol_table(spec, mid, n, route, opts);
        for (size_t i = 0; i < total; ++i) acc[i] += len * tab.psi[i];
    }
    return acc;
}

}  // namespace

HeatKernelResult heat_kernel(const KernelSpec& spec, double s, double t, int n,
                             SymbolRoute route, const SymbolOptions& opts) {
    if (!(t > s)) throw ConfigError("heat_kernel: requires t > s");
    if (!spec.x_independent()) throw ConfigError("heat_kernel: spec must be x-independent");
    HeatKernelResult res;
    res.dim = spec.dim;
    res.n = n;
    std::vector<cdouble> integral = symbol_time_integral(spec, s, t, n, route, opts);
    res.K.resize(integral.size());
    for (size_t i = 0; i < integral.size(); ++i) res.K[i] = std::exp(integral[i]);

    SpectralField g;
    g.dim = spec.dim;
    g.n = n;
    g.coef.resize(res.K.size());
    double vol = (spec.dim == 1) ? kPeriod : kPeriod * kPeriod;
    for (size_t i = 0; i < res.K.size(); ++i) g.coef[i] = res.K[i] / vol;
    res.G = to_grid(g, t);
    return res;
}

namespace {

// E1 = e^{zh} phi1(w), E2 = e^{zh} phi2(w) with w = (mu - z) h, written in the
// cancellation-free forms (e^{mu h} - e^{zh})/w and (e^{mu h}(w-1)+e^{zh})/w^2.
void stage_weights(cdouble zh, cdouble w, cdouble& e1, cdouble& e2) {
    cdouble ezh = std::exp(zh);
    if (std::abs(w) < 1e-4) {
        cdouble w2 = w * w;
        e1 = ezh * (1.0 + w / 2.0 + w2 / 6.0 + w2 * w / 24.0);
        e2 = ezh * (0.5 + w / 3.0 + w2 / 8.0 + w2 * w / 30.0);
        return;
    }
    cdouble emuh = std::exp(zh + w);
    e1 = (emuh - ezh) / w;
    e2 = (emuh * (w - 1.0) + ezh) / (w * w);
}

}  // namespace

Solution resolve(const KernelSpec& spec, const SolveConfig& cfg,
                 const std::vector<ForcingComponent>& forcing,
                 SymbolRoute route, const SymbolOptions& opts) {
    if (!spec.x_independent()) throw ConfigError("resolve: spec must be x-independent");
    if (cfg.time_cells < 1) throw ConfigError("resolve: time_cells must be >= 1");
    for (const auto& fc : forcing)
        if (fc.cells() != cfg.time_cells)
            throw ConfigError("resolve: forcing stamps must match time_cells");
    for (double b : spec.time_breaks) {
        double cells = b / (cfg.T / cfg.time_cells);
        if (std::abs(cells - std::round(cells)) > 1e-9)
            throw ConfigError("resolve: kernel time breaks must align with solver stamps");
    }

    int n = cfg.n;
    size_t total = (cfg.dim == 1) ? size_t(n) : size_t(n) * n;
    double h = cfg.T / cfg.time_cells;

    // forcing spectra per component and stamp
    std::vector<std::vector<SpectralField>> fhat(forcing.size());
    for (size_t c = 0; c < forcing.size(); ++c) {
        fhat[c].reserve(forcing[c].stamps.size());
        for (const auto& g : forcing[c].stamps) fhat[c].push_back(to_spectral(g));
    }

    Solution sol;
    sol.T = cfg.T;
    sol.lambda = cfg.lambda;
    sol.stamps.reserve(cfg.time_cells + 1);
    sol.stamps.push_back(GridFunction::zeros(cfg.dim, n, 0.0));

    std::vector<cdouble> uhat(total, 0.0);
    std::vector<cdouble> psi;
    size_t psi_cell = size_t(-1);
    for (int cell = 0; cell < cfg.time_cells; ++cell) {
        double t0 = cell * h;
        double tmid = t0 + 0.5 * h;
        size_t kcell = kernel_cell_of(spec, tmid);
        if (psi.empty() || kcell != psi_cell) {
            SymbolTable tab = build_symbol_table(spec, tmid, n, route, opts);
            psi = tab.psi;
            psi_cell = kcell;
        }
        for (size_t i = 0; i < total; ++i) {
            cdouble z = psi[i] - cfg.lambda;
            cdouble zh = z * h;
            cdouble unew = std::exp(zh) * uhat[i];
            for (size_t c = 0; c < forcing.size(); ++c) {
                double mu = forcing[c].exp_rate;
                cdouble e1, e2;
                stage_weights(zh, (mu - z) * h, e1, e2);
                cdouble a = fhat[c][cell].coef[i];
                cdouble b = fhat[c][cell + 1].coef[i] - a;
                unew += std::exp(mu * t0) * h * (a * e1 + b * e2);
            }
            uhat[i] = unew;
        }
        SpectralField s;
        s.dim = cfg.dim;
        s.n = n;
        s.coef = uhat;
        sol.stamps.push_back(to_grid(s, t0 + h));
    }
    return sol;
}

Solution resolve(const KernelSpec& spec, const SolveConfig& cfg,
                 const ForcingComponent& forcing, SymbolRoute route,
                 const SymbolOptions& opts) {
    return resolve(spec, cfg, std::vector<ForcingComponent>{forcing}, route, opts);
}

double verify_defs_identity(const Solution& u, const KernelSpec& spec,
                            const SolveConfig& cfg,
                            const std::vector<ForcingComponent>& forcing,
                            const BOperatorSpec* bspec, const SymbolOptions& opts) {
    int nc = u.cells();
    double h = u.dt();

    // integrand L u - lambda u + f at every stamp; one operator per kernel cell
    std::vector<GridFunction> integrand;
    integrand.reserve(nc + 1);
    std::map<size_t, AOperator> aops;
    std::optional<BOperator> bop;
    if (bspec) bop.emplace(*bspec, cfg.n, 0.0, opts);
    for (int j = 0; j <= nc; ++j) {
        double t = j * h;
        size_t kcell = kernel_cell_of(spec, std::min(t, u.T * (1.0 - 1e-12)));
        auto it = aops.find(kcell);
        if (it == aops.end())
            it = aops.emplace(kcell, AOperator(spec, cfg.n, kernel_cell_time(spec, kcell, u.T),
                                               opts)).first;
        GridFunction g = it->second.apply(u.stamps[j]);
        if (bop) g += bop->apply(u.stamps[j]);
        GridFunction lam = u.stamps[j];
        lam *= -cfg.lambda;
        g += lam;
        for (const auto& fc : forcing) g += fc.eval(t, u.T);
        integrand.push_back(std::move(g));
    }

    double worst = 0.0;
    GridFunction acc = GridFunction::zeros(cfg.dim, cfg.n, 0.0);
    for (int j = 0; j <= nc; ++j) {
        if (j > 0) {
            GridFunction step = integrand[j - 1] + integrand[j];
            step *= 0.5 * h;
            acc += step;
        }
        for (size_t i = 0; i < acc.values.size(); ++i)
            worst = std::max(worst, std::abs(u.stamps[j].values[i] - acc.values[i]));
    }
    return worst;
}

}  // namespace nlcauchy

#pragma once

#include <vector>

#include "nlcauchy/grid.hpp"
#include "nlcauchy/kernel.hpp"
#include "nlcauchy/nonlocal.hpp"

namespace nlcauchy {

/// Forcing over [0, T]: piecewise-linear stamps at uniform times, optionally
/// modulated by exp(exp_rate * t). The modulation is handled exactly by the
/// per-mode integrator.
struct ForcingComponent {
    std::vector<GridFunction> stamps;  // time_cells + 1 stamps
    double exp_rate = 0.0;

    int cells() const { return int(stamps.size()) - 1; }
    GridFunction eval(double t, double T) const;
    static ForcingComponent constant_in_time(const GridFunction& f, int time_cells);
};

struct SolveConfig {
    double lambda = 1.0;
    double T = 1.0;
    int time_cells = 64;
    int n = 256;
    int dim = 1;
};

struct Solution {
    double T = 1.0;
    double lambda = 0.0;
    std::vector<GridFunction> stamps;  // at t_i = i T / time_cells

    int cells() const { return int(stamps.size()) - 1; }
    double dt() const { return T / cells(); }
    GridFunction eval(double t) const;  // piecewise linear between stamps
};

struct HeatKernelResult {
    std::vector<cdouble> K;  // K_{s,t}(xi) per dual index
    GridFunction G;          // periodized transition density
    int dim = 1;
    int n = 0;
};

/// K_{s,t}(xi) = exp(int_s^t psi dr), exact for piecewise-constant kernels,
/// and its inverse transform on the torus.
HeatKernelResult heat_kernel(const KernelSpec& spec, double s, double t, int n,
                             SymbolRoute route = SymbolRoute::Spherical,
                             const SymbolOptions& opts = {});

/// Exponential per-mode integrator for du/dt = (psi - lambda) u + f, u(0) = 0,
/// exact for forcings that are piecewise linear times an exponential.
Solution resolve(const KernelSpec& spec, const SolveConfig& cfg,
                 const std::vector<ForcingComponent>& forcing,
                 SymbolRoute route = SymbolRoute::Direct,
                 const SymbolOptions& opts = {});

Solution resolve(const KernelSpec& spec, const SolveConfig& cfg,
                 const ForcingComponent& forcing,
                 SymbolRoute route = SymbolRoute::Direct,
                 const SymbolOptions& opts = {});

/// Max over stamps and grid points of |u - int_0^t (Lu - lambda u + f) ds|
/// with the operator applied by quadrature-backed multipliers and the time
/// integral by the trapezoid rule on the stamps.
double verify_defs_identity(const Solution& u, const KernelSpec& spec,
                            const SolveConfig& cfg,
                            const std::vector<ForcingComponent>& forcing,
                            const BOperatorSpec* bspec = nullptr,
                            const SymbolOptions& opts = {});

}  // namespace nlcauchy

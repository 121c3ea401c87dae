#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nlcauchy/grid.hpp"
#include "nlcauchy/kernel.hpp"
#include "nlcauchy/nonlocal.hpp"

namespace nlcauchy {

struct McOptions {
    double delta_cut = 0.0;          // 0 = pick by the variance-matching rule
    int substeps = 100;              // drift / Gaussian substeps over [s, T]
    bool gaussian_correction = true; // for components of order >= 1
    SymbolOptions symbol;            // reserved for operator evaluations
};

struct PathEvent {
    double time = 0.0;
    char kind = 'A';   // 'A' / 'B' jump proposal, 'g' Gaussian substep
    Point jump{0.0, 0.0};
    bool accepted = false;
};

/// One cadlag trajectory: states at substep boundaries plus every accepted
/// jump, and the full proposal log.
struct JumpPath {
    uint64_t seed = 0;
    std::vector<double> times;
    std::vector<Point> states;
    std::vector<PathEvent> events;
};

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int paths = 0;
    double s = 0.0;
    Point x{0.0, 0.0};
};

struct IncrementStat {
    double t0 = 0.0, t1 = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    int paths = 0;
};

/// Simulate the canonical jump process of L0 = A + B0 (rho >= 0, l = 0) from
/// (s, x): jumps above delta_cut by thinning against the constant dominating
/// intensity, jumps below replaced by their compensator drift and an optional
/// variance-matched Gaussian. Paths with equal seeds are bit-identical;
/// estimators derive one independent substream per path index, so per-path
/// seeds never repeat within an estimate.
JumpPath simulate_path(const KernelSpec& spec, const BOperatorSpec* bspec, double s,
                       Point x0, double T, uint64_t seed, const McOptions& opts = {});

/// Feynman-Kac probe of the backward problem with zero terminal data:
/// estimates -E int_s^T f(r, X_r) dr; f given as stamps over [0, T].
MCEstimate feynman_kac(const KernelSpec& spec, const BOperatorSpec* bspec,
                       const std::vector<GridFunction>& f_stamps, double T, double s,
                       Point x0, int paths, uint64_t seed, const McOptions& opts = {});

/// Empirical means of the increments of M_t = u(t, X_t) - int_s^t F(r, X_r) dr
/// over the probe time grid; for u solving the backward equation with
/// compensator F the increments are centred.
std::vector<IncrementStat> martingale_residual(const std::vector<GridFunction>& u_stamps,
                                               const std::vector<GridFunction>& f_stamps,
                                               const KernelSpec& spec,
                                               const BOperatorSpec* bspec, double T,
                                               double s, Point x0,
                                               const std::vector<double>& probe_times,
                                               int paths, uint64_t seed,
                                               const McOptions& opts = {});

/// delta_cut actually used for a given configuration (the variance rule).
double effective_delta_cut(const KernelSpec& spec, const McOptions& opts);

}  // namespace nlcauchy

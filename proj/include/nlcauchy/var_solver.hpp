#pragma once

#include <optional>
#include <vector>

#include "nlcauchy/const_solver.hpp"

namespace nlcauchy {

enum class ReferenceKernel { Minorant, XAverage };

struct PicardOptions {
    double tol = 1e-6;        // stopping tolerance on the residual norm
    int max_iters = 50;
    int warmup = 2;           // iterations before q_hat is judged
    double beta_prime = 0.0;  // residual norm exponent; 0 = beta/2
    ReferenceKernel reference = ReferenceKernel::Minorant;
    double weight_rate = 0.0; // residuals measured in exp(-rate t)-weighted norm
    SymbolOptions symbol;
};

struct IterationState {
    int iterations = 0;
    std::vector<double> residuals;  // |u_{n+1} - u_n|_{alpha+beta'} per step
    double q_hat = 0.0;             // last contraction ratio
    double lambda = 0.0;
    double defs_residual = 0.0;     // full-operator identity residual
    bool converged = false;
};

struct PicardResult {
    Solution solution;
    IterationState state;
};

/// Frozen-coefficient iteration u_{n+1} = R_{ref,lambda}[f + (A - A_ref) u_n
/// + B u_n], the constructive form of the damping mechanism: the reference
/// kernel is x-independent so each step is one exact constant-coefficient
/// solve. Throws NonConvergenceError (carrying q_hat and lambda) when the
/// residuals stop contracting after warmup.
PicardResult picard_solve(const KernelSpec& spec, const BOperatorSpec* bspec,
                          const SolveConfig& cfg, const ForcingComponent& forcing,
                          const PicardOptions& opts = {});

struct CalibrationResult {
    double lambda0 = 0.0;
    PicardResult run;  // the solve at the requested lambda (shifted if below lambda0)
};

/// Doubles lambda from 1 until the contraction ratio stays below 0.8, then
/// solves the requested problem; a requested lambda below lambda0 is handled
/// through the exponential time-weight exp((lambda0-lambda) t), the discrete
/// form of the substitution that maps the damped problem back.
CalibrationResult calibrate_lambda(const KernelSpec& spec, const BOperatorSpec* bspec,
                                   const SolveConfig& cfg, const ForcingComponent& forcing,
                                   const PicardOptions& opts = {});

}  // namespace nlcauchy

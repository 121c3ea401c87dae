#pragma once

#include <stdexcept>
#include <string>

namespace nlcauchy {

/// Exit codes used by the CLI. Library errors map onto these.
enum class ExitCode : int {
    Ok = 0,
    AssumptionFailure = 2,
    NonConvergence = 3,
    Configuration = 4,
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AssumptionError : std::runtime_error {
    explicit AssumptionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonConvergenceError : std::runtime_error {
    double q_hat = 0.0;
    double lambda = 0.0;
    NonConvergenceError(const std::string& msg, double q, double lam)
        : std::runtime_error(msg), q_hat(q), lambda(lam) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nlcauchy

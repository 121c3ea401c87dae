#pragma once

#include <map>
#include <optional>
#include <string>

#include "nlcauchy/grid.hpp"

namespace nlcauchy {

/// Location of the maximizing (x, h) pair of a seminorm estimate.
struct SeminormWitness {
    std::array<double, 2> x{0.0, 0.0};
    std::array<double, 2> h{0.0, 0.0};
    double value = 0.0;
};

double sup_norm(const GridFunction& u);

/// First-difference Hölder seminorm sup |u(x+h)-u(x)| / |h|^beta over all grid
/// points and grid displacements up to half a period per axis. `max_h`
/// optionally restricts the displacement length.
double holder_seminorm(const GridFunction& u, double beta,
                       SeminormWitness* witness = nullptr,
                       std::optional<double> max_h = std::nullopt);

/// Second-difference (Zygmund) seminorm sup |u(x+h)+u(x-h)-2u(x)| / |h|.
double zygmund_seminorm(const GridFunction& u, SeminormWitness* witness = nullptr,
                        std::optional<double> max_h = std::nullopt);

/// Hölder-Zygmund norm |u|_beta for beta in (0,2]: sums sup norms of spectral
/// derivatives up to the integer part and the fractional seminorm of the top
/// derivatives (Zygmund form when the fractional part is 1).
double composite_norm(const GridFunction& u, double beta);

/// Equivalent norm |u|_0 + [d^alpha u]_beta with the fractional derivative
/// applied spectrally through the calibrated isotropic multiplier.
double equiv_norm(const GridFunction& u, double alpha, double beta);

/// Norm survey of one grid function, serializable to JSON (see report.hpp).
struct NormReport {
    int dim = 1;
    int n = 0;
    double sup = 0.0;
    std::map<double, double> seminorms;         // exponent -> [u]_beta
    std::map<double, double> composite;         // exponent -> |u|_beta
    std::map<double, SeminormWitness> witnesses;
    double equiv_alpha_beta = 0.0;              // |u|_0 + [d^alpha u]_beta
    double alpha = 0.0;
    double beta = 0.0;
};

NormReport make_norm_report(const GridFunction& u, double alpha, double beta);

/// Test forcing of prescribed regularity: a randomized lacunary cosine sum
/// f = c * sum_{j<=J} 2^{-j beta} cos(2^j x + phi_j), normalized so that
/// composite_norm(f, beta) == 1. Throws ConfigError if 2^J reaches Nyquist.
GridFunction weierstrass_forcing(int dim, int n, double beta, int levels, uint64_t seed);

}  // namespace nlcauchy

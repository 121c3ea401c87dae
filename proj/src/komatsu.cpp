#include <algorithm>
#include <cmath>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/nonlocal.hpp"
#include "nlcauchy/oscillatory.hpp"

namespace nlcauchy {

namespace {

// k^{(delta)}(y, z) in d = 1
inline double komatsu_kernel(double delta, double y, double z) {
    return std::pow(std::abs(z + y), delta - 1.0) - std::pow(std::abs(z), delta - 1.0);
}

constexpr double kNode1 = osc::kGL1;
constexpr double kNode2 = osc::kGL2;
constexpr double kWeight1 = 0.6521451548625461;
constexpr double kWeight2 = 0.3478548451374538;

template <typename F>
double gauss_cell(double a, double b, F&& f) {
    double rm = 0.5 * (a + b), h2 = 0.5 * (b - a);
    return h2 * (kWeight2 * (f(rm - kNode2 * h2) + f(rm + kNode2 * h2)) +
                 kWeight1 * (f(rm - kNode1 * h2) + f(rm + kNode1 * h2)));
}

// z-knots over [-span, span]: uniform cells resolving the top mode of the
// integrand plus log-graded stacks into the singularities at 0 and -y.
std::vector<double> central_knots(double y, double span, double osc_width) {
    std::vector<double> knots;
    for (double z = -span; z <= span + 1e-12; z += osc_width) knots.push_back(z);
    double ay = std::abs(y);
    for (double center : {0.0, -y}) {
        double off = ay;
        while (off > 1e-9 * ay) {
            knots.push_back(center + off);
            knots.push_back(center - off);
            off *= 0.5;
        }
        knots.push_back(center);
    }
    knots.push_back(-y / 2.0);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [&](double a, double b) {
                                return std::abs(a - b) < 1e-13 * std::max(1.0, ay);
                            }),
                knots.end());
    return knots;
}

// Reconstruction integral Q(x) = int k(y,z) P(x-z) dz on every grid point,
// P = d^delta u as a sparse mode list. Central window by Gauss cells, tails
// mode-by-mode with Filon cells (P has no constant mode).
std::vector<double> reconstruction_on_grid(double delta, double y, const GridFunction& u,
                                           const SparseModes& du) {
    int kmax = 1;
    for (const auto& m : du.modes) kmax = std::max(kmax, std::abs(m.k1));
    double span = 16.0 * kPeriod;
    auto knots = central_knots(y, span, kPeriod / (16.0 * kmax));

    int n = u.n;
    double h = u.dx();
    std::vector<double> q(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = i * h;
        double acc = 0.0;
        for (size_t c = 0; c + 1 < knots.size(); ++c)
            acc += gauss_cell(knots[c], knots[c + 1], [&](double z) {
                return komatsu_kernel(delta, y, z) * du.eval(x - z);
            });
        q[i] = acc;
    }

    // tails: int_{|z|>span} k(y,z) e^{-imz} dz, evaluated once per mode
    for (const auto& m : du.modes) {
        cdouble right = 0.0, left = 0.0;
        double cell = span;
        while (cell < 1e7) {
            double next = std::min(1e7, cell * 1.5);
            right += osc::filon_cell(cell, next, -double(m.k1), [&](double z) {
                return komatsu_kernel(delta, y, z);
            });
            left += osc::filon_cell(cell, next, double(m.k1), [&](double z) {
                return komatsu_kernel(delta, y, -z);
            });
            cell = next;
        }
        for (int i = 0; i < n; ++i) {
            double x = i * h;
            cdouble phase(std::cos(m.k1 * x), std::sin(m.k1 * x));
            q[i] += (m.c * phase * (right + left)).real();
        }
    }
    return q;
}

std::vector<double> grid_increment(const GridFunction& u, double y) {
    SpectralField uh = to_spectral(u);
    std::vector<double> lhs(u.n);
    double h = u.dx();
    for (int i = 0; i < u.n; ++i) lhs[i] = fourier_eval(uh, i * h + y) - u.values[i];
    return lhs;
}

}  // namespace

double komatsu_calibrate(double delta, double y_cal, const GridFunction& u) {
    if (delta <= 0.0 || delta >= 1.0) throw ConfigError("komatsu: delta must lie in (0,1)");
    if (u.dim != 1) throw ConfigError("komatsu: implemented for dim 1");
    SparseModes du = sparsify(to_spectral(frac_laplacian(u, delta)));
    std::vector<double> q = reconstruction_on_grid(delta, y_cal, u, du);
    std::vector<double> lhs = grid_increment(u, y_cal);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < u.n; ++i) {
        num += lhs[i] * q[i];
        den += q[i] * q[i];
    }
    if (den == 0.0) throw NumericalError("komatsu_calibrate: degenerate reconstruction");
    return num / den;
}

KomatsuResult komatsu_check(double delta, double y, const GridFunction& u,
                            double calibrated_c) {
    if (delta <= 0.0 || delta >= 1.0) throw ConfigError("komatsu: delta must lie in (0,1)");
    if (u.dim != 1) throw ConfigError("komatsu: implemented for dim 1");

    KomatsuResult res;
    res.constant = calibrated_c;
    if (y == 0.0) return res;  // kernel vanishes identically

    double ay = std::abs(y);

    {  // mass integral with y-scaled knots, so I(cy) = c^delta I(y) exactly
        std::vector<double> full;
        double span = 1e6 * ay;
        double z = ay;
        while (z < span) {
            full.push_back(z);
            full.push_back(-z);
            full.push_back(-y + z);
            full.push_back(-y - z);
            z *= 1.25;
        }
        for (double center : {0.0, -y}) {
            double off = ay;
            while (off > 1e-10 * ay) {
                full.push_back(center + off);
                full.push_back(center - off);
                off *= 0.5;
            }
            full.push_back(center);
        }
        full.push_back(-y / 2.0);
        std::sort(full.begin(), full.end());
        full.erase(std::unique(full.begin(), full.end(),
                               [ay](double a, double b) { return std::abs(a - b) < 1e-14 * ay; }),
                   full.end());
        double mass = 0.0;
        for (size_t c = 0; c + 1 < full.size(); ++c)
            mass += gauss_cell(full[c], full[c + 1], [&](double zz) {
                return std::abs(komatsu_kernel(delta, y, zz));
            });
        // analytic tails: int_Z^inf (z^{delta-1} - (z+a)^{delta-1}) dz
        double zhi = full.back();
        mass += (std::pow(zhi + ay, delta) - std::pow(zhi, delta)) / delta;
        double zlo = -full.front();
        mass += (std::pow(zlo + ay, delta) - std::pow(zlo, delta)) / delta;
        res.mass = mass;
        res.mass_ratio = mass / std::pow(ay, delta);
    }

    SparseModes du = sparsify(to_spectral(frac_laplacian(u, delta)));
    std::vector<double> q = reconstruction_on_grid(delta, y, u, du);
    std::vector<double> lhs = grid_increment(u, y);
    double worst = 0.0;
    for (int i = 0; i < u.n; ++i)
        worst = std::max(worst, std::abs(lhs[i] - calibrated_c * q[i]));
    res.residual = worst;
    return res;
}

}  // namespace nlcauchy

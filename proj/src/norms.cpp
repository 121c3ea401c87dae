#include "nlcauchy/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/rng.hpp"

namespace nlcauchy {

double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

// Iterate displacements (i,j) with i*dx etc., half-plane only since h and -h
// give the same pair set.
template <typename F>
void for_each_displacement(const GridFunction& u, std::optional<double> max_h, F&& body) {
    int n = u.n;
    double h = u.dx();
    if (u.dim == 1) {
        for (int i = 1; i <= n / 2; ++i) {
            double len = i * h;
            if (max_h && len > *max_h) break;
            body(i, 0, len);
        }
    } else {
        for (int i = 0; i <= n / 2; ++i) {
            int jlo = (i == 0) ? 1 : -n / 2;
            for (int j = jlo; j <= n / 2; ++j) {
                double len = h * std::sqrt(double(i) * i + double(j) * j);
                if (max_h && len > *max_h) continue;
                body(i, j, len);
            }
        }
    }
}

inline size_t wrap_index(int i, int n) { return size_t((i % n + n) % n); }

}  // namespace

double holder_seminorm(const GridFunction& u, double beta, SeminormWitness* witness,
                       std::optional<double> max_h) {
    if (beta <= 0.0 || beta >= 1.0)
        throw ConfigError("holder_seminorm: beta must lie in (0,1)");
    int n = u.n;
    double best = 0.0;
    SeminormWitness w;
    for_each_displacement(u, max_h, [&](int di, int dj, double len) {
        double denom = std::pow(len, beta);
        if (u.dim == 1) {
            double peak = 0.0;
            int xi_at = 0;
            for (int i = 0; i < n; ++i) {
                double d = std::abs(u.values[wrap_index(i + di, n)] - u.values[i]);
                if (d > peak) { peak = d; xi_at = i; }
            }
            double r = peak / denom;
            if (r > best) {
                best = r;
                w = {{xi_at * u.dx(), 0.0}, {di * u.dx(), 0.0}, r};
            }
        } else {
            double peak = 0.0;
            int bx = 0, by = 0;
            for (int iy = 0; iy < n; ++iy) {
                size_t ry = wrap_index(iy + dj, n) * n;
                size_t oy = size_t(iy) * n;
                for (int ix = 0; ix < n; ++ix) {
                    double d = std::abs(u.values[ry + wrap_index(ix + di, n)] - u.values[oy + ix]);
                    if (d > peak) { peak = d; bx = ix; by = iy; }
                }
            }
            double r = peak / denom;
            if (r > best) {
                best = r;
                w = {{bx * u.dx(), by * u.dx()}, {di * u.dx(), dj * u.dx()}, r};
            }
        }
    });
    if (witness) *witness = w;
    return best;
}

double zygmund_seminorm(const GridFunction& u, SeminormWitness* witness,
                        std::optional<double> max_h) {
    int n = u.n;
    double best = 0.0;
    SeminormWitness w;
    for_each_displacement(u, max_h, [&](int di, int dj, double len) {
        if (u.dim == 1) {
            double peak = 0.0;
            int xi_at = 0;
            for (int i = 0; i < n; ++i) {
                double d = std::abs(u.values[wrap_index(i + di, n)] +
                                    u.values[wrap_index(i - di, n)] - 2.0 * u.values[i]);
                if (d > peak) { peak = d; xi_at = i; }
            }
            double r = peak / len;
            if (r > best) {
                best = r;
                w = {{xi_at * u.dx(), 0.0}, {di * u.dx(), 0.0}, r};
            }
        } else {
            double peak = 0.0;
            int bx = 0, by = 0;
            for (int iy = 0; iy < n; ++iy) {
                size_t py = wrap_index(iy + dj, n) * n;
                size_t my = wrap_index(iy - dj, n) * n;
                size_t oy = size_t(iy) * n;
                for (int ix = 0; ix < n; ++ix) {
                    double d = std::abs(u.values[py + wrap_index(ix + di, n)] +
                                        u.values[my + wrap_index(ix - di, n)] -
                                        2.0 * u.values[oy + ix]);
                    if (d > peak) { peak = d; bx = ix; by = iy; }
                }
            }
            double r = peak / len;
            if (r > best) {
                best = r;
                w = {{bx * u.dx(), by * u.dx()}, {di * u.dx(), dj * u.dx()}, r};
            }
        }
    });
    if (witness) *witness = w;
    return best;
}

namespace {

double fractional_seminorm(const GridFunction& u, double frac) {
    if (frac == 1.0) return zygmund_seminorm(u);
    return holder_seminorm(u, frac);
}

}  // namespace

double composite_norm(const GridFunction& u, double beta) {
    if (beta <= 0.0 || beta > 2.0)
        throw ConfigError("composite_norm: beta must lie in (0,2]");
    // beta = [beta]^- + {beta}^+ with fractional part in (0,1].
    int whole = (beta > 1.0) ? 1 : 0;
    double frac = beta - whole;

    double total = sup_norm(u);
    if (whole == 0) return total + fractional_seminorm(u, frac);

    double top = 0.0;
    for (int axis = 0; axis < u.dim; ++axis) {
        GridFunction du = spectral_derivative(u, axis);
        total += sup_norm(du);
        top = std::max(top, fractional_seminorm(du, frac));
    }
    return total + top;
}

double frac_laplacian_coefficient(double alpha, int dim);  // kernel.cpp

double equiv_norm(const GridFunction& u, double alpha, double beta) {
    if (alpha <= 0.0 || alpha >= 2.0) throw ConfigError("equiv_norm: alpha must lie in (0,2)");
    if (beta <= 0.0 || beta > 1.0) throw ConfigError("equiv_norm: beta must lie in (0,1]");
    double c = frac_laplacian_coefficient(alpha, u.dim);
    GridFunction da = frac_power(u, alpha);
    da *= -c;
    return sup_norm(u) + fractional_seminorm(da, beta);
}

NormReport make_norm_report(const GridFunction& u, double alpha, double beta) {
    NormReport rep;
    rep.dim = u.dim;
    rep.n = u.n;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.sup = sup_norm(u);
    for (double b : {beta, std::min(1.0, beta + alpha / 2.0)}) {
        SeminormWitness w;
        double v = (b == 1.0) ? zygmund_seminorm(u, &w) : holder_seminorm(u, b, &w);
        rep.seminorms[b] = v;
        rep.witnesses[b] = w;
    }
    rep.composite[beta] = composite_norm(u, beta);
    double top = alpha + beta;
    if (top <= 2.0) rep.composite[top] = composite_norm(u, top);
    rep.equiv_alpha_beta = equiv_norm(u, alpha, beta);
    return rep;
}

GridFunction weierstrass_forcing(int dim, int n, double beta, int levels, uint64_t seed) {
    if (beta <= 0.0 || beta > 1.0)
        throw ConfigError("weierstrass_forcing: beta must lie in (0,1]");
    if ((1 << levels) >= n / 2)
        throw ConfigError("weierstrass_forcing: top frequency 2^J reaches the grid Nyquist");
    RngStream rng(seed);
    GridFunction f = GridFunction::sample(dim, n, [&](std::array<double, 2> x) {
        (void)x;
        return 0.0;
    });
    for (int j = 0; j <= levels; ++j) {
        double amp = std::pow(2.0, -j * beta);
        double phi = rng.uniform() * kPeriod;
        int axis = (dim == 2) ? (j % 2) : 0;
        double k = double(1 << j);
        double h = f.dx();
        if (dim == 1) {
            for (int i = 0; i < n; ++i) f.values[i] += amp * std::cos(k * i * h + phi);
        } else {
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    double coord = (axis == 0) ? ix * h : iy * h;
                    f.values[size_t(iy) * n + ix] += amp * std::cos(k * coord + phi);
                }
        }
    }
    double norm = composite_norm(f, beta);
    f *= 1.0 / norm;
    return f;
}

}  // namespace nlcauchy

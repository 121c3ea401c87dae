#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "nlcauchy/fft.hpp"

namespace nlcauchy {

inline constexpr double kPeriod = 2.0 * std::numbers::pi;

using Point = std::array<double, 2>;

/// Real-valued function sampled on a uniform periodic grid over [0,2pi)^dim.
/// Storage is row-major with x1 fastest: values[ix] (dim 1) or values[iy*n+ix].
struct GridFunction {
    int dim = 1;
    int n = 0;  // points per axis, power of two
    double time_stamp = 0.0;
    std::vector<double> values;

    static GridFunction zeros(int dim, int n, double t = 0.0);

    template <typename F>
    static GridFunction sample(int dim, int n, F&& f, double t = 0.0) {
        GridFunction u = zeros(dim, n, t);
        double h = kPeriod / n;
        if (dim == 1) {
            for (int i = 0; i < n; ++i) u.values[i] = f(std::array<double, 2>{i * h, 0.0});
        } else {
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix)
                    u.values[size_t(iy) * n + ix] = f(std::array<double, 2>{ix * h, iy * h});
        }
        return u;
    }

    size_t size() const { return values.size(); }
    double dx() const { return kPeriod / n; }
    double cell_volume() const { return (dim == 1) ? dx() : dx() * dx(); }

    double& at(int ix, int iy = 0) { return values[size_t(iy) * (dim == 2 ? n : 0) + ix]; }
    double at(int ix, int iy = 0) const { return values[size_t(iy) * (dim == 2 ? n : 0) + ix]; }

    std::array<double, 2> coords(size_t flat) const {
        double h = dx();
        if (dim == 1) return {double(flat) * h, 0.0};
        return {double(flat % n) * h, double(flat / n) * h};
    }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double c);
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

/// DFT coefficients of a grid function; coef[k-index] with the fft.hpp layout.
struct SpectralField {
    int dim = 1;
    int n = 0;
    std::vector<cdouble> coef;

    std::array<int, 2> freqs(size_t flat) const {
        if (dim == 1) return {freq_of_index(int(flat), n), 0};
        return {freq_of_index(int(flat % n), n), freq_of_index(int(flat / n), n)};
    }
};

SpectralField to_spectral(const GridFunction& u);
GridFunction to_grid(const SpectralField& s, double time_stamp = 0.0);

/// Apply a Fourier multiplier mult(k1,k2); Nyquist handling is the caller's
/// business (the multiplier sees the signed frequency with -n/2 for Nyquist).
SpectralField apply_multiplier(const SpectralField& s,
                               const std::function<cdouble(int, int)>& mult);

/// Spectral partial derivative along axis (0 or 1); Nyquist mode zeroed.
GridFunction spectral_derivative(const GridFunction& u, int axis);

/// Pure fractional power multiplier |k|^s (no constant, no sign).
GridFunction frac_power(const GridFunction& u, double s);

/// Evaluate the trigonometric interpolant at an arbitrary point.
double fourier_eval(const SpectralField& s, double x1, double x2 = 0.0);

/// Sparse mode list for fast repeated off-grid evaluation.
struct SparseModes {
    struct Mode {
        int k1, k2;
        cdouble c;
    };
    std::vector<Mode> modes;
    double eval(double x1, double x2 = 0.0) const;
};

SparseModes sparsify(const SpectralField& s, double rel_tol = 1e-13);

}  // namespace nlcauchy

#include "nlcauchy/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlcauchy {

GridFunction GridFunction::zeros(int dim, int n, double t) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("GridFunction: dim must be 1 or 2");
    GridFunction u;
    u.dim = dim;
    u.n = n;
    u.time_stamp = t;
    u.values.assign((dim == 1) ? size_t(n) : size_t(n) * n, 0.0);
    return u;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    for (size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    for (size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (auto& v : values) v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

SpectralField to_spectral(const GridFunction& u) {
    std::vector<cdouble> in(u.values.begin(), u.values.end());
    SpectralField s;
    s.dim = u.dim;
    s.n = u.n;
    fft_forward(u.dim, u.n, in, s.coef);
    return s;
}

GridFunction to_grid(const SpectralField& s, double time_stamp) {
    std::vector<cdouble> out;
    fft_inverse(s.dim, s.n, s.coef, out);
    GridFunction u = GridFunction::zeros(s.dim, s.n, time_stamp);
    for (size_t i = 0; i < out.size(); ++i) u.values[i] = out[i].real();
    return u;
}

SpectralField apply_multiplier(const SpectralField& s,
                               const std::function<cdouble(int, int)>& mult) {
    SpectralField r = s;
    for (size_t i = 0; i < r.coef.size(); ++i) {
        auto [k1, k2] = r.freqs(i);
        r.coef[i] *= mult(k1, k2);
    }
    return r;
}

GridFunction spectral_derivative(const GridFunction& u, int axis) {
    SpectralField s = to_spectral(u);
    int n = u.n;
    for (size_t i = 0; i < s.coef.size(); ++i) {
        auto [k1, k2] = s.freqs(i);
        int k = (axis == 0) ? k1 : k2;
        // Nyquist carries no usable phase for odd-order derivatives.
        if (k == -n / 2) {
            s.coef[i] = 0.0;
        } else {
            s.coef[i] *= cdouble(0.0, double(k));
        }
    }
    return to_grid(s, u.time_stamp);
}

GridFunction frac_power(const GridFunction& u, double p) {
    SpectralField s = to_spectral(u);
    for (size_t i = 0; i < s.coef.size(); ++i) {
        auto [k1, k2] = s.freqs(i);
        double k2norm = std::sqrt(double(k1) * k1 + double(k2) * k2);
        s.coef[i] *= (k2norm == 0.0) ? 0.0 : std::pow(k2norm, p);
    }
    return to_grid(s, u.time_stamp);
}

double fourier_eval(const SpectralField& s, double x1, double x2) {
    cdouble acc = 0.0;
    for (size_t i = 0; i < s.coef.size(); ++i) {
        auto [k1, k2] = s.freqs(i);
        double phase = k1 * x1 + k2 * x2;
        acc += s.coef[i] * cdouble(std::cos(phase), std::sin(phase));
    }
    return acc.real();
}

double SparseModes::eval(double x1, double x2) const {
    double acc = 0.0;
    for (const auto& m : modes) {
        double phase = m.k1 * x1 + m.k2 * x2;
        acc += m.c.real() * std::cos(phase) - m.c.imag() * std::sin(phase);
    }
    return acc;
}

SparseModes sparsify(const SpectralField& s, double rel_tol) {
    double peak = 0.0;
    for (const auto& c : s.coef) peak = std::max(peak, std::abs(c));
    SparseModes out;
    for (size_t i = 0; i < s.coef.size(); ++i) {
        if (std::abs(s.coef[i]) > rel_tol * peak) {
            auto [k1, k2] = s.freqs(i);
            out.modes.push_back({k1, k2, s.coef[i]});
        }
    }
    return out;
}

}  // namespace nlcauchy

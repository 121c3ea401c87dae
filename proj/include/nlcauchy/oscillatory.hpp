#pragma once

#include <cmath>
#include <complex>

namespace nlcauchy::osc {

using cdouble = std::complex<double>;

/// M_j(theta) = int_{-1}^{1} tau^j exp(i theta tau) dtau for j = 0..3.
/// Series branch below |theta| = 0.9 avoids the cancellation of the closed
/// forms; above it the integration-by-parts recursion is stable.
inline void cell_moments(double theta, cdouble m[4]) {
    if (std::abs(theta) < 0.9) {
        double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
        double t2 = theta * theta;
        double even = 1.0;   // theta^{2p} / (2p)!
        double odd = theta;  // theta^{2p+1} / (2p+1)!
        for (int p = 0; p < 14; ++p) {
            double sign = (p % 2 == 0) ? 1.0 : -1.0;
            m0 += sign * even / (2 * p + 1);
            m2 += sign * even / (2 * p + 3);
            m1 += sign * odd / (2 * p + 3);
            m3 += sign * odd / (2 * p + 5);
            even *= t2 / ((2 * p + 1) * (2 * p + 2));
            odd *= t2 / ((2 * p + 2) * (2 * p + 3));
        }
        m[0] = 2.0 * m0;
        m[1] = cdouble(0.0, 2.0 * m1);
        m[2] = 2.0 * m2;
        m[3] = cdouble(0.0, 2.0 * m3);
        return;
    }
    cdouble eip(std::cos(theta), std::sin(theta));
    cdouble eim = std::conj(eip);
    cdouble itheta(0.0, theta);
    m[0] = (eip - eim) / itheta;
    for (int j = 1; j <= 3; ++j) {
        double parity = (j % 2 == 0) ? 1.0 : -1.0;
        m[j] = (eip - parity * eim) / itheta - (double(j) / itheta) * m[j - 1];
    }
}

// 4-point Gauss-Legendre nodes on [-1,1].
inline constexpr double kGL1 = 0.3399810435848563;
inline constexpr double kGL2 = 0.8611363115940526;

/// Cubic through values at tau = -kGL2, -kGL1, +kGL1, +kGL2.
struct CubicFit {
    double c0, c1, c2, c3;
};

inline CubicFit fit_cubic(double a_lo2, double a_lo1, double a_hi1, double a_hi2) {
    double e1 = 0.5 * (a_hi2 + a_lo2);
    double e2 = 0.5 * (a_hi1 + a_lo1);
    double o1 = 0.5 * (a_hi2 - a_lo2);
    double o2 = 0.5 * (a_hi1 - a_lo1);
    double d = kGL2 * kGL2 - kGL1 * kGL1;
    CubicFit f;
    f.c2 = (e1 - e2) / d;
    f.c0 = e2 - f.c2 * kGL1 * kGL1;
    f.c3 = (o1 / kGL2 - o2 / kGL1) / d;
    f.c1 = o2 / kGL1 - f.c3 * kGL1 * kGL1;
    return f;
}

/// int_a^b A(r) exp(isr) dr with A sampled at the 4 Gauss nodes and fitted
/// cubically; the oscillation is integrated exactly, so cells may span many
/// periods as long as the amplitude is smooth across them.
template <typename Amp>
cdouble filon_cell(double a, double b, double s, Amp&& amp) {
    double rm = 0.5 * (a + b), h2 = 0.5 * (b - a);
    CubicFit f = fit_cubic(amp(rm - kGL2 * h2), amp(rm - kGL1 * h2),
                           amp(rm + kGL1 * h2), amp(rm + kGL2 * h2));
    cdouble m[4];
    cell_moments(s * h2, m);
    cdouble v = f.c0 * m[0] + f.c1 * m[1] + f.c2 * m[2] + f.c3 * m[3];
    return h2 * v * cdouble(std::cos(s * rm), std::sin(s * rm));
}

}  // namespace nlcauchy::osc

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlcauchy/fft.hpp"
#include "nlcauchy/grid.hpp"

namespace nlcauchy {

/// Quadrature grid on the unit sphere: two signed points for d=1, uniform
/// midpoint angles for d=2.
struct SphereGrid {
    std::vector<Point> w;
    std::vector<double> weight;
    static SphereGrid make(int dim, int n_angular = 256);
    double surface() const;
};

/// One separable piece of the jump density: g(x) * a(t, y/|y|) * rho(|y|).
/// The full density is the sum over terms. Radial factors cover merely
/// measurable-in-y kernels; homogeneous terms leave `radial` empty.
struct KernelTerm {
    std::function<double(double, Point)> angular;       // a(t, w), |w| = 1
    std::function<double(double)> radial;               // rho(r), empty = 1
    std::vector<double> radial_knots;                   // discontinuities of rho
    std::function<double(Point)> coef;                  // g(x), empty = 1

    bool homogeneous() const { return !radial; }
    bool x_independent() const { return !coef; }
    double eval(double t, Point x, Point w, double r) const;
};

/// Jump kernel m(t,x,y)/|y|^{d+alpha} together with its spherical minorant
/// and the constants of the standing assumptions.
struct KernelSpec {
    int dim = 1;
    double alpha = 1.5;
    double beta = 0.5;   // x-Hölder exponent of m
    double eta = 0.5;    // nondegeneracy lower bound
    double bigK = 2.0;   // uniform bound on m and its x-Hölder norm
    std::vector<KernelTerm> terms;
    std::function<double(double, Point)> minorant;      // m0(t, w)
    std::vector<double> time_breaks;                    // piecewise-constant switches
    std::vector<double> time_scale;                     // per-interval factor, default {1}
    std::string name = "custom";

    double scale_at(double t) const;
    /// Full density m(t, x, y) with y = r * w.
    double density(double t, Point x, Point w, double r) const;
    double minorant_at(double t, Point w) const;

    bool x_independent() const;
    bool homogeneous() const;

    /// Spec with the minorant as its (x-independent) density.
    KernelSpec minorant_as_kernel() const;
    /// Spec with every x-coefficient replaced by its grid average.
    KernelSpec x_averaged(int n) const;

    void check_well_formed() const;  // throws ConfigError
};

/// Named presets used throughout the experiments.
KernelSpec make_kernel_preset(const std::string& name, int dim, double alpha);

// --- assumption audit -------------------------------------------------------

struct ClauseResult {
    std::string clause;
    bool pass = true;
    double value = 0.0;        // measured quantity (infimum, maximum, ...)
    double bound = 0.0;        // the bound it was compared against
    std::vector<double> witness;  // minimizing / violating sample point
    std::string detail;
};

struct AssumptionReport {
    bool all_pass = true;
    std::vector<ClauseResult> clauses;
};

AssumptionReport validate_assumptions(const KernelSpec& spec,
                                      const std::vector<double>& t_samples,
                                      const std::vector<Point>& x_samples);

// --- symbol evaluation ------------------------------------------------------

struct SymbolOptions {
    int radial_cells = 512;
    double r_inner = 1e-4;
    double r_outer = 1e9;
    int n_angular = 256;
    int refine = 1;  // multiplies radial_cells (self-convergence probes)
};

/// Symbol by direct y-space quadrature of the compensated jump integral.
/// Works for merely measurable (radius-dependent) densities.
cdouble symbol_direct(const KernelSpec& spec, double t, Point x, Point xi,
                      const SymbolOptions& opts = {});

/// As above but cross-checked against a doubled radial resolution; throws
/// NumericalError with diagnostics when the two disagree beyond tol.
cdouble symbol_direct_checked(const KernelSpec& spec, double t, Point x, Point xi,
                              double tol, const SymbolOptions& opts = {});

/// Symbol by the spherical Levy-Khintchine formula with calibrated C(alpha).
/// Requires an x-independent, homogeneous-in-y spec.
cdouble symbol_spherical(const KernelSpec& spec, double t, Point xi,
                         const SymbolOptions& opts = {});

/// Calibrated constant of the spherical formula (cached per alpha, dim):
/// fixed by equating the two symbol routes at a reference frequency for the
/// isotropic kernel.
double spherical_constant(double alpha, int dim);

/// Coefficient of the fractional Laplacian: the isotropic unit-density symbol
/// satisfies psi(xi) = -c |xi|^alpha; c is taken from the direct quadrature.
double frac_laplacian_coefficient(double alpha, int dim);

/// Compensated radial integral for a unit homogeneous density at unit
/// frequency; the scaling backbone of the fast symbol path (cached).
cdouble stable_unit_integral(double alpha, int refine = 1);

/// psi_0(t, xi) evaluated on the dual grid of an n-point axis, plus the
/// normalization in effect. Route selects which evaluation produced it.
struct SymbolTable {
    int dim = 1;
    int n = 0;
    double t = 0.0;
    std::vector<cdouble> psi;  // spectral layout (see fft.hpp)
    double normalization = 0.0;
};

enum class SymbolRoute { Direct, Spherical };

SymbolTable build_symbol_table(const KernelSpec& spec, double t, int n,
                               SymbolRoute route = SymbolRoute::Direct,
                               const SymbolOptions& opts = {});

}  // namespace nlcauchy

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nlcauchy/grid.hpp"
#include "nlcauchy/kernel.hpp"

namespace nlcauchy {

/// Fractional Laplacian: spectral multiplier -c_{d,alpha} |k|^alpha with the
/// coefficient taken from the isotropic symbol quadrature.
GridFunction frac_laplacian(const GridFunction& u, double alpha);

/// Precomputed application of a principal-part operator on one grid at one
/// kernel time cell: per separable term, a symbol multiplier plus an optional
/// coefficient field.
class AOperator {
public:
    AOperator(const KernelSpec& spec, int n, double t, const SymbolOptions& opts = {});

    GridFunction apply(const GridFunction& u) const;
    /// Symbol of term sums for x-independent specs (spectral layout).
    const std::vector<cdouble>& plain_symbol() const;
    bool x_independent() const { return coef_fields_.empty(); }
    int n() const { return n_; }

private:
    int dim_;
    int n_;
    std::vector<std::vector<cdouble>> multipliers_;   // per term group
    std::vector<std::vector<double>> coef_fields_;    // parallel; empty field = 1
    std::vector<cdouble> combined_;                   // sum of x-independent groups
};

GridFunction apply_A(const GridFunction& u, const KernelSpec& spec, double t,
                     const SymbolOptions& opts = {});

/// Lower-order operator B of the simple jump family: drift b (active for
/// alpha >= 1), zero-order l, and a jump integral of order alpha' < alpha
/// with weight rho given in the same separable-term form as kernels.
struct BOperatorSpec {
    int dim = 1;
    double principal_alpha = 1.5;  // alpha of the kernel it accompanies
    double alpha_prime = 0.5;      // order of the jump part
    double beta = 0.5;
    double bigK = 5.0;
    std::function<Point(double, Point)> drift;          // b(t,x); empty = 0
    std::function<double(double, Point)> zero_order;    // l(t,x); empty = 0
    std::vector<KernelTerm> rho_terms;                  // weight rho(t,x,y)
    double rho_sup = 0.0;                               // ||rho||_inf for thinning

    void check_well_formed() const;
    /// B1(i) integrability by closed-form radial integrals, B2(i) Hölder
    /// bounds on b and l sampled on a grid.
    AssumptionReport validate(const std::vector<double>& t_samples,
                              const std::vector<Point>& x_samples) const;
};

class BOperator {
public:
    BOperator(const BOperatorSpec& bspec, int n, double t, const SymbolOptions& opts = {});
    GridFunction apply(const GridFunction& u) const;

private:
    BOperatorSpec spec_;
    double t_;
    std::optional<AOperator> jump_;
    std::vector<std::array<double, 2>> drift_field_;
    std::vector<double> zero_field_;
    int n_ = 0;
    int dim_ = 1;
};

GridFunction apply_B(const GridFunction& u, const BOperatorSpec& bspec, double t,
                     const SymbolOptions& opts = {});

/// Numerical probe of the increment identity
///   u(x+y) - u(x) = C int k(y,z) d^delta u(x-z) dz,
///   k(y,z) = |z+y|^{delta-d} - |z|^{delta-d},
/// for d = 1. `calibration` holds the constant fitted on one displacement.
struct KomatsuResult {
    double mass = 0.0;        // int |k(y, .)|
    double mass_ratio = 0.0;  // mass / |y|^delta
    double residual = 0.0;    // max over x of the reconstruction mismatch
    double constant = 0.0;    // calibrated C
};

/// Fit C on displacement y_cal by least squares over the grid.
double komatsu_calibrate(double delta, double y_cal, const GridFunction& u);

KomatsuResult komatsu_check(double delta, double y, const GridFunction& u,
                            double calibrated_c);

}  // namespace nlcauchy

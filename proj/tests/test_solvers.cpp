#include <doctest.h>

#include <cmath>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/norms.hpp"
#include "nlcauchy/rng.hpp"
#include "nlcauchy/var_solver.hpp"

using namespace nlcauchy;

namespace {

GridFunction cosine(int n, double k) {
    return GridFunction::sample(1, n, [k](Point x) { return std::cos(k * x[0]); });
}

}  // namespace

TEST_CASE("heat kernel identities at unit scale") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    CHECK_THROWS_AS((void)heat_kernel(spec, 1.0, 0.5, 64), ConfigError);

    HeatKernelResult hk = heat_kernel(spec, 0.0, 0.5, 256);
    double mass = 0.0;
    for (double v : hk.G.values) mass += v;
    mass *= hk.G.cell_volume();
    CHECK(std::abs(mass - 1.0) <= 1e-6);
    double gmin = 1e300, gmax = -1e300;
    for (double v : hk.G.values) {
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
    }
    CHECK(gmin >= -1e-6 * gmax);

    HeatKernelResult lo = heat_kernel(spec, 0.0, 0.2, 256);
    HeatKernelResult hi = heat_kernel(spec, 0.2, 0.5, 256);
    for (size_t i = 0; i < hk.K.size(); ++i)
        CHECK(std::abs(hk.K[i] - lo.K[i] * hi.K[i]) <= 1e-12);
}

TEST_CASE("zero forcing gives the zero solution") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    SolveConfig cfg{1.0, 1.0, 32, 128, 1};
    Solution u = resolve(spec, cfg,
                         ForcingComponent::constant_in_time(GridFunction::zeros(1, 128), 32));
    for (const auto& g : u.stamps) CHECK(sup_norm(g) == 0.0);
}

TEST_CASE("single-mode closed form and linearity") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    SolveConfig cfg{2.0, 1.0, 64, 128, 1};
    int k = 2;
    double ck = -symbol_direct(spec, 0.0, {0.0, 0.0}, {double(k), 0.0}).real();
    Solution u = resolve(spec, cfg, ForcingComponent::constant_in_time(cosine(128, k), 64));
    double worst = 0.0;
    for (int j = 0; j <= 64; ++j) {
        double t = j * u.dt();
        double amp = (1.0 - std::exp(-(cfg.lambda + ck) * t)) / (cfg.lambda + ck);
        for (int i = 0; i < 128; ++i)
            worst = std::max(worst, std::abs(u.stamps[j].values[i] -
                                             amp * std::cos(k * i * kPeriod / 128.0)));
    }
    CHECK(worst <= 1e-8);

    GridFunction f1 = cosine(128, 1), f2 = cosine(128, 3);
    Solution u1 = resolve(spec, cfg, ForcingComponent::constant_in_time(f1, 64));
    Solution u2 = resolve(spec, cfg, ForcingComponent::constant_in_time(f2, 64));
    Solution u12 = resolve(spec, cfg, ForcingComponent::constant_in_time(f1 + f2, 64));
    double scale = sup_norm(u12.stamps.back());
    for (int j = 0; j <= 64; ++j)
        for (int i = 0; i < 128; ++i)
            CHECK(std::abs(u12.stamps[j].values[i] - u1.stamps[j].values[i] -
                           u2.stamps[j].values[i]) <= 1e-12 * scale);
}

TEST_CASE("piecewise-constant kernel time profile is integrated exactly") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    spec.time_breaks = {0.5};
    spec.time_scale = {1.0, 2.0};
    SolveConfig cfg{0.0, 1.0, 64, 128, 1};
    int k = 3;
    double ck = -symbol_direct(spec, 0.2, {0.0, 0.0}, {double(k), 0.0}).real();
    Solution u = resolve(spec, cfg, ForcingComponent::constant_in_time(cosine(128, k), 64));
    // on [0, 1/2] the decay rate is ck, afterwards 2 ck
    auto amp = [&](double t) {
        if (t <= 0.5) return (1.0 - std::exp(-ck * t)) / ck;
        double a_half = (1.0 - std::exp(-ck * 0.5)) / ck;
        double tau = t - 0.5;
        return a_half * std::exp(-2.0 * ck * tau) + (1.0 - std::exp(-2.0 * ck * tau)) / (2.0 * ck);
    };
    double worst = 0.0;
    for (int j = 0; j <= 64; ++j) {
        double t = j * u.dt();
        for (int i = 0; i < 128; ++i)
            worst = std::max(worst, std::abs(u.stamps[j].values[i] -
                                             amp(t) * std::cos(k * i * kPeriod / 128.0)));
    }
    CHECK(worst <= 1e-10);

    // misaligned breaks are refused
    SolveConfig bad{0.0, 1.0, 3, 128, 1};
    CHECK_THROWS_AS(
        (void)resolve(spec, bad, ForcingComponent::constant_in_time(cosine(128, 1), 3)),
        ConfigError);
}

TEST_CASE("exponentially modulated forcing is integrated exactly") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    SolveConfig cfg{1.0, 1.0, 32, 128, 1};
    int k = 2;
    double mu = -1.7;
    double ck = -symbol_direct(spec, 0.0, {0.0, 0.0}, {double(k), 0.0}).real();
    ForcingComponent fc = ForcingComponent::constant_in_time(cosine(128, k), 32);
    fc.exp_rate = mu;
    Solution u = resolve(spec, cfg, fc);
    double z = -(cfg.lambda + ck);
    double worst = 0.0;
    for (int j = 0; j <= 32; ++j) {
        double t = j * u.dt();
        double amp = (std::exp(mu * t) - std::exp(z * t)) / (mu - z);
        for (int i = 0; i < 128; ++i)
            worst = std::max(worst, std::abs(u.stamps[j].values[i] -
                                             amp * std::cos(k * i * kPeriod / 128.0)));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("integral identity residual: zero forcing, magnitude, and order") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    SolveConfig cfg{1.0, 1.0, 256, 128, 1};
    ForcingComponent zero = ForcingComponent::constant_in_time(GridFunction::zeros(1, 128), 256);
    Solution u0 = resolve(spec, cfg, zero);
    CHECK(verify_defs_identity(u0, spec, cfg, {zero}) == 0.0);

    ForcingComponent fc = ForcingComponent::constant_in_time(cosine(128, 1), 256);
    Solution u = resolve(spec, cfg, fc);
    CHECK(verify_defs_identity(u, spec, cfg, {fc}) <= 1e-4);

    std::vector<double> res;
    for (int nt : {32, 64, 128}) {
        SolveConfig c{1.0, 1.0, nt, 128, 1};
        ForcingComponent f = ForcingComponent::constant_in_time(cosine(128, 1), nt);
        res.push_back(verify_defs_identity(resolve(spec, c, f), spec, c, {f}));
    }
    CHECK(res[1] <= 0.5 * res[0]);
    CHECK(res[2] <= 0.5 * res[1]);
}

TEST_CASE("two-dimensional solve: closed form and identity residual") {
    KernelSpec spec = make_kernel_preset("sector-measurable", 2, 1.5);
    SolveConfig cfg{1.0, 0.5, 32, 32, 2};
    GridFunction f = GridFunction::sample(2, 32, [](Point x) {
        return std::cos(x[0]) + 0.5 * std::cos(x[0] + 2.0 * x[1]);
    });
    ForcingComponent fc = ForcingComponent::constant_in_time(f, 32);
    Solution u = resolve(spec, cfg, fc);

    // per-mode closed form with the (complex) symbol of each excited mode
    auto mode_amp = [&](Point xi, double t) {
        cdouble z = symbol_direct(spec, 0.0, {0.0, 0.0}, xi) - cfg.lambda;
        return (std::exp(z * t) - 1.0) / z;
    };
    double t = 0.5;
    cdouble a1 = 0.5 * mode_amp({1.0, 0.0}, t);   // cos carries half weight per mode
    cdouble a2 = 0.25 * mode_amp({1.0, 2.0}, t);
    double worst = 0.0;
    for (int iy = 0; iy < 32; ++iy)
        for (int ix = 0; ix < 32; ++ix) {
            double x1 = ix * kPeriod / 32.0, x2 = iy * kPeriod / 32.0;
            cdouble e1(std::cos(x1), std::sin(x1));
            cdouble e2(std::cos(x1 + 2.0 * x2), std::sin(x1 + 2.0 * x2));
            double exact = 2.0 * (a1 * e1).real() + 2.0 * (a2 * e2).real();
            worst = std::max(worst,
                             std::abs(u.stamps.back().values[size_t(iy) * 32 + ix] - exact));
        }
    CHECK(worst <= 1e-10);
    CHECK(verify_defs_identity(u, spec, cfg, {fc}) <= 2e-4);
}

TEST_CASE("Picard: zero perturbation converges immediately") {
    KernelSpec spec = make_kernel_preset("isotropic", 1, 1.5);
    SolveConfig cfg{1.0, 1.0, 32, 128, 1};
    ForcingComponent fc = ForcingComponent::constant_in_time(cosine(128, 1), 32);
    PicardResult r = picard_solve(spec, nullptr, cfg, fc);
    CHECK(r.state.converged);
    CHECK(r.state.iterations <= 2);
    Solution direct = resolve(spec, cfg, fc);
    double scale = sup_norm(direct.stamps.back());
    for (int j = 0; j <= 32; ++j)
        for (int i = 0; i < 128; ++i)
            CHECK(std::abs(r.solution.stamps[j].values[i] - direct.stamps[j].values[i]) <=
                  1e-10 * scale);
}

TEST_CASE("Picard: sector kernel contracts and satisfies the identity") {
    KernelSpec spec = make_kernel_preset("sector-variable", 1, 1.5);
    SolveConfig cfg{20.0, 1.0, 128, 128, 1};
    GridFunction f = weierstrass_forcing(1, 128, 0.5, 4, 17);
    ForcingComponent fc = ForcingComponent::constant_in_time(f, cfg.time_cells);
    PicardResult r = picard_solve(spec, nullptr, cfg, fc);
    CHECK(r.state.converged);
    CHECK(r.state.q_hat < 0.8);
    CHECK(r.state.defs_residual <= 1e-3 * sup_norm(f));
}

TEST_CASE("Picard: divergence is reported with diagnostics") {
    KernelSpec spec = make_kernel_preset("sector-variable", 1, 1.5);
    // inflate the x-dependent part so the perturbation dominates at lambda=0
    spec.terms[1].coef = [](Point x) { return 4.0 * (1.0 + std::sin(x[0])); };
    spec.bigK = 12.0;
    SolveConfig cfg{0.0, 1.0, 32, 128, 1};
    ForcingComponent fc = ForcingComponent::constant_in_time(cosine(128, 1), 32);
    CHECK_THROWS_AS((void)picard_solve(spec, nullptr, cfg, fc), NonConvergenceError);
}

TEST_CASE("lambda calibration and the damped-problem shift") {
    KernelSpec iso = make_kernel_preset("isotropic", 1, 1.5);
    SolveConfig cfg{5.0, 1.0, 32, 128, 1};
    ForcingComponent fc = ForcingComponent::constant_in_time(cosine(128, 1), 32);
    CalibrationResult cal = calibrate_lambda(iso, nullptr, cfg, fc);
    CHECK(cal.lambda0 == 1.0);

    KernelSpec spec = make_kernel_preset("sector-variable", 1, 1.5);
    SolveConfig zero_cfg{0.0, 1.0, 64, 128, 1};
    GridFunction f = weierstrass_forcing(1, 128, 0.5, 3, 23);
    ForcingComponent fz = ForcingComponent::constant_in_time(f, 64);
    PicardOptions popts;
    CalibrationResult shifted = calibrate_lambda(spec, nullptr, zero_cfg, fz, popts);
    PicardResult direct = picard_solve(spec, nullptr, zero_cfg, fz, popts);
    REQUIRE(direct.state.converged);
    double diff = 0.0;
    for (int j = 0; j <= 64; ++j)
        diff = std::max(diff, sup_norm(shifted.run.solution.stamps[j] -
                                       direct.solution.stamps[j]));
    CHECK(diff <= 2.0 * popts.tol);
}

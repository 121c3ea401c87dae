#include <doctest.h>

#include <cmath>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/nonlocal.hpp"
#include "nlcauchy/norms.hpp"
#include "nlcauchy/rng.hpp"

using namespace nlcauchy;

namespace {

GridFunction random_modes(int dim, int n, int kmax, uint64_t seed) {
    RngStream rng(seed);
    GridFunction u = GridFunction::zeros(dim, n);
    for (int k = 1; k <= kmax; ++k) {
        double a = (rng.uniform() - 0.5) / (1.0 + k);
        double phi = rng.uniform() * kPeriod;
        for (size_t i = 0; i < u.size(); ++i) {
            auto x = u.coords(i);
            u.values[i] += a * std::cos(k * x[0] + phi);
            if (dim == 2) u.values[i] += 0.3 * a * std::cos(k * (x[0] + x[1]) - phi);
        }
    }
    return u;
}

}  // namespace

TEST_CASE("fractional Laplacian: kernel constant, eigenfunctions, linearity") {
    GridFunction c = GridFunction::zeros(1, 128);
    for (auto& v : c.values) v = 2.0;
    GridFunction fc = frac_laplacian(c, 1.5);
    CHECK(sup_norm(fc) <= 1e-12);

    double alpha = 0.9;
    double coeff = frac_laplacian_coefficient(alpha, 1);
    GridFunction u = GridFunction::sample(1, 128, [](Point x) { return std::cos(4.0 * x[0]); });
    GridFunction fu = frac_laplacian(u, alpha);
    for (int i = 0; i < 128; ++i)
        CHECK(fu.values[i] ==
              doctest::Approx(-coeff * std::pow(4.0, alpha) * u.values[i]).epsilon(1e-10));

    GridFunction v = random_modes(1, 128, 9, 3);
    GridFunction w = random_modes(1, 128, 9, 4);
    GridFunction sum_first = frac_laplacian(u + v, alpha);
    GridFunction split = frac_laplacian(u, alpha) + frac_laplacian(v, alpha);
    (void)w;
    for (int i = 0; i < 128; ++i)
        CHECK(sum_first.values[i] == doctest::Approx(split.values[i]).epsilon(1e-12));
}

TEST_CASE("principal operator: constants, isotropic agreement, superposition") {
    KernelSpec iso = make_kernel_preset("isotropic", 1, 1.5);
    GridFunction c = GridFunction::zeros(1, 128);
    for (auto& v : c.values) v = 1.0;
    CHECK(sup_norm(apply_A(c, iso, 0.0)) <= 1e-12);

    GridFunction u = GridFunction::sample(1, 256, [](Point x) { return std::cos(3.0 * x[0]); });
    GridFunction au = apply_A(u, iso, 0.0);
    GridFunction fl = frac_laplacian(u, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i)
        worst = std::max(worst, std::abs(au.values[i] - fl.values[i]));
    CHECK(worst <= 1e-3 * sup_norm(fl));

    // linearity in u and in the kernel (term superposition)
    KernelSpec sector = make_kernel_preset("sector-measurable", 1, 1.5);
    KernelSpec just_sector = sector;
    just_sector.terms.erase(just_sector.terms.begin());
    GridFunction both = apply_A(u, sector, 0.0);
    GridFunction parts = apply_A(u, iso, 0.0) + apply_A(u, just_sector, 0.0);
    for (int i = 0; i < 256; ++i)
        CHECK(both.values[i] == doctest::Approx(parts.values[i]).epsilon(1e-12));

    GridFunction v = random_modes(1, 256, 10, 11);
    GridFunction lin1 = apply_A(u + v, sector, 0.0);
    GridFunction lin2 = apply_A(u, sector, 0.0) + apply_A(v, sector, 0.0);
    double scale = sup_norm(lin1);
    for (int i = 0; i < 256; ++i)
        CHECK(std::abs(lin1.values[i] - lin2.values[i]) <= 1e-12 * scale);
}

TEST_CASE("principal operator commutes with shifts for x-independent kernels") {
    KernelSpec spec = make_kernel_preset("sector-measurable", 1, 1.2);
    GridFunction u = random_modes(1, 128, 8, 21);
    GridFunction au = apply_A(u, spec, 0.0);
    int shift = 17;
    GridFunction us = GridFunction::zeros(1, 128);
    for (int i = 0; i < 128; ++i) us.values[i] = u.values[(i + shift) % 128];
    GridFunction aus = apply_A(us, spec, 0.0);
    double scale = sup_norm(au);
    for (int i = 0; i < 128; ++i)
        CHECK(std::abs(aus.values[i] - au.values[(i + shift) % 128]) <= 1e-11 * scale);
}

TEST_CASE("single mode ties the grid operator to the symbol") {
    KernelSpec spec = make_kernel_preset("sector-measurable", 1, 1.5);
    int k = 5;
    GridFunction u = GridFunction::sample(1, 256, [&](Point x) { return std::cos(k * x[0]); });
    GridFunction au = apply_A(u, spec, 0.0);
    cdouble psi = symbol_direct(spec, 0.0, {0.0, 0.0}, {double(k), 0.0});
    for (int i = 0; i < 256; ++i) {
        double x = i * u.dx();
        double expected = psi.real() * std::cos(k * x) - psi.imag() * std::sin(k * x);
        CHECK(au.values[i] == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("slow-path kernels self-converge under refinement") {
    KernelSpec ring = make_kernel_preset("ring-variable", 1, 1.5);
    GridFunction u = GridFunction::sample(1, 128, [](Point x) { return std::cos(x[0]); });
    SymbolOptions coarse, fine;
    fine.refine = 4;
    GridFunction a1 = apply_A(u, ring, 0.0, coarse);
    GridFunction a2 = apply_A(u, ring, 0.0, fine);
    double scale = sup_norm(a2);
    for (int i = 0; i < 128; ++i)
        CHECK(std::abs(a1.values[i] - a2.values[i]) <= 1e-4 * scale);

    KernelSpec sector2 = make_kernel_preset("sector-measurable", 2, 1.5);
    GridFunction u2 = GridFunction::sample(2, 32, [](Point x) { return std::cos(x[0]); });
    GridFunction b1 = apply_A(u2, sector2, 0.0, coarse);
    GridFunction b2 = apply_A(u2, sector2, 0.0, fine);
    double scale2 = sup_norm(b2);
    for (size_t i = 0; i < u2.size(); ++i)
        CHECK(std::abs(b1.values[i] - b2.values[i]) <= 1e-4 * scale2);
}

TEST_CASE("lower-order operator: zero case and definitional coincidence") {
    BOperatorSpec none;
    none.dim = 1;
    none.principal_alpha = 1.5;
    none.alpha_prime = 0.5;
    GridFunction u = random_modes(1, 128, 8, 31);
    CHECK(sup_norm(apply_B(u, none, 0.0)) == 0.0);

    BOperatorSpec jump;
    jump.dim = 1;
    jump.principal_alpha = 1.5;
    jump.alpha_prime = 0.6;
    KernelTerm t;
    t.angular = [](double, Point) { return 1.0; };
    jump.rho_terms.push_back(std::move(t));
    jump.rho_sup = 1.0;
    GridFunction bu = apply_B(u, jump, 0.0);
    KernelSpec iso_prime = make_kernel_preset("isotropic", 1, 0.6);
    GridFunction au = apply_A(u, iso_prime, 0.0);
    double scale = sup_norm(au);
    for (int i = 0; i < 128; ++i)
        CHECK(std::abs(bu.values[i] - au.values[i]) <= 1e-12 * scale);

    // drift and zero-order parts
    BOperatorSpec full = jump;
    full.drift = [](double, Point) { return Point{0.5, 0.0}; };
    full.zero_order = [](double, Point) { return -0.3; };
    GridFunction bfull = apply_B(u, full, 0.0);
    GridFunction expected = au;
    GridFunction du = spectral_derivative(u, 0);
    for (int i = 0; i < 128; ++i) expected.values[i] += 0.5 * du.values[i] - 0.3 * u.values[i];
    for (int i = 0; i < 128; ++i)
        CHECK(bfull.values[i] == doctest::Approx(expected.values[i]).epsilon(1e-11));

    BOperatorSpec bad = jump;
    bad.alpha_prime = 1.6;
    CHECK_THROWS_AS((void)apply_B(u, bad, 0.0), ConfigError);
    BOperatorSpec bad2 = jump;
    bad2.principal_alpha = 0.7;
    bad2.alpha_prime = 0.5;
    bad2.drift = [](double, Point) { return Point{1.0, 0.0}; };
    CHECK_THROWS_AS((void)apply_B(u, bad2, 0.0), ConfigError);
}

TEST_CASE("lower-order operator is relatively bounded") {
    BOperatorSpec b;
    b.dim = 1;
    b.principal_alpha = 1.5;
    b.alpha_prime = 0.5;
    b.beta = 0.5;
    KernelTerm t;
    t.angular = [](double, Point) { return 1.0; };
    t.coef = [](Point x) { return 0.25 * (1.0 + std::cos(x[0])); };
    b.rho_terms.push_back(std::move(t));
    b.rho_sup = 0.5;
    b.drift = [](double, Point) { return Point{0.3, 0.0}; };
    b.zero_order = [](double, Point) { return 0.2; };

    double fitted_c = 0.0;
    for (int i = 0; i < 20; ++i) {
        GridFunction u = random_modes(1, 256, 12, 400 + i);
        GridFunction bu = apply_B(u, b, 0.0);
        double lhs = composite_norm(bu, 0.5);
        double high = composite_norm(u, 2.0);
        double low = sup_norm(u);
        fitted_c = std::max(fitted_c, (lhs - 0.5 * high) / low);
    }
    CHECK(std::isfinite(fitted_c));
    // out-of-sample check with a safety margin on the fitted constant
    for (int i = 0; i < 5; ++i) {
        GridFunction u = random_modes(1, 256, 12, 900 + i);
        GridFunction bu = apply_B(u, b, 0.0);
        double lhs = composite_norm(bu, 0.5);
        CHECK(lhs <= 0.5 * composite_norm(u, 2.0) + 1.05 * std::max(fitted_c, 0.0) * sup_norm(u) +
                         1e-9);
    }
}

TEST_CASE("B assumption audit") {
    BOperatorSpec b;
    b.dim = 1;
    b.principal_alpha = 1.5;
    b.alpha_prime = 0.5;
    b.beta = 0.5;
    b.bigK = 10.0;
    KernelTerm t;
    t.angular = [](double, Point) { return 1.0; };
    b.rho_terms.push_back(std::move(t));
    b.rho_sup = 1.0;
    b.drift = [](double, Point x) { return Point{0.2 * std::sin(x[0]), 0.0}; };
    b.zero_order = [](double, Point) { return 0.1; };
    AssumptionReport rep = b.validate({0.0, 0.5}, {{0.0, 0.0}, {1.0, 0.0}, {2.5, 0.0}});
    CHECK(rep.all_pass);
    // B1(i) value matches the closed-form radial integrals
    double surface = 2.0;
    double expected = surface / (1.5 - 0.5) + surface / 0.5;
    for (const auto& c : rep.clauses)
        if (c.clause == "B1(i)") CHECK(c.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("increment identity: kernel mass and reconstruction") {
    GridFunction u = GridFunction::sample(1, 128, [](Point x) { return std::cos(x[0]); });
    KomatsuResult zero = komatsu_check(0.5, 0.0, u, 1.0);
    CHECK(zero.mass == 0.0);
    CHECK(zero.residual == 0.0);

    double c = komatsu_calibrate(0.5, 0.3, u);
    KomatsuResult a = komatsu_check(0.5, 0.4, u, c);
    KomatsuResult b = komatsu_check(0.5, 0.8, u, c);
    CHECK(b.mass / a.mass == doctest::Approx(std::pow(2.0, 0.5)).epsilon(0.01));
    CHECK(a.mass_ratio == doctest::Approx(b.mass_ratio).epsilon(0.01));

    KomatsuResult holdout = komatsu_check(0.5, 0.7, u, c);
    CHECK(holdout.residual <= 1e-3 * sup_norm(u));

    CHECK_THROWS_AS((void)komatsu_check(1.5, 0.3, u, 1.0), ConfigError);
    GridFunction u2 = GridFunction::zeros(2, 16);
    CHECK_THROWS_AS((void)komatsu_check(0.5, 0.3, u2, 1.0), ConfigError);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/kernel.hpp"

using namespace nlcauchy;

namespace {

constexpr double kPi = std::numbers::pi;

KernelSpec unit_iso(int dim, double alpha) { return make_kernel_preset("isotropic", dim, alpha); }

// spec with the same density but a radius factor, forcing the slow path
KernelSpec slow_path_iso(int dim, double alpha) {
    KernelSpec spec = unit_iso(dim, alpha);
    spec.terms[0].radial = [](double) { return 1.0; };
    return spec;
}

std::vector<Point> few_x() { return {{0.0, 0.0}, {1.0, 0.0}, {3.0, 2.0}}; }

}  // namespace

TEST_CASE("stable constant against the special-function oracle") {
    // int_0^inf (e^{iv} - 1 - i chi v) v^{-1-a} dv = Gamma(-a) e^{-i pi a / 2}
    for (double alpha : {0.4, 0.7, 1.3, 1.5, 1.9}) {
        cdouble k = stable_unit_integral(alpha);
        double gamma_neg = std::tgamma(-alpha);  // finite for non-integer
        cdouble oracle = gamma_neg * std::polar(1.0, -kPi * alpha / 2.0);
        CHECK(std::abs(k - oracle) <= 1e-7 * std::abs(oracle));
    }
    // alpha = 1: the cosine part integrates to -pi/2
    CHECK(stable_unit_integral(1.0).real() == doctest::Approx(-kPi / 2.0).epsilon(1e-8));
}

TEST_CASE("spherical normalization matches the analytic constant") {
    // C(alpha) = -Gamma(-alpha) cos(pi alpha / 2)
    for (double alpha : {0.7, 1.5}) {
        double oracle = -std::tgamma(-alpha) * std::cos(kPi * alpha / 2.0);
        CHECK(spherical_constant(alpha, 1) == doctest::Approx(oracle).epsilon(1e-7));
    }
}

TEST_CASE("assumption audit on the worked examples") {
    // isotropic d=1 alpha=1.5: the nondegeneracy infimum is exactly 2
    KernelSpec iso = unit_iso(1, 1.5);
    AssumptionReport rep = validate_assumptions(iso, {0.5}, few_x());
    CHECK(rep.all_pass);
    for (const auto& c : rep.clauses)
        if (c.clause == "A0(iii)") CHECK(c.value == doctest::Approx(2.0).epsilon(1e-12));

    // d=2 alpha=1 with m0 = 1 + w1/2: the odd moment is (pi/2, 0) and fails
    KernelSpec tilted;
    tilted.dim = 2;
    tilted.alpha = 1.0;
    tilted.eta = 0.5;
    tilted.bigK = 2.0;
    KernelTerm t;
    t.angular = [](double, Point w) { return 1.0 + 0.5 * w[0]; };
    tilted.minorant = t.angular;
    tilted.terms.push_back(std::move(t));
    AssumptionReport rep2 = validate_assumptions(tilted, {0.0}, few_x());
    CHECK_FALSE(rep2.all_pass);
    bool saw_moment = false;
    for (const auto& c : rep2.clauses)
        if (c.clause == "A0(ii)") {
            saw_moment = true;
            CHECK_FALSE(c.pass);
            CHECK(c.value == doctest::Approx(kPi / 2.0).epsilon(1e-3));
            CHECK(!c.witness.empty());
        }
    CHECK(saw_moment);

    // smooth-arc d=2 at alpha=1.5: infimum against an independent dense
    // quadrature of the spherical moment
    KernelSpec arc = make_kernel_preset("smooth-arc", 2, 1.5);
    AssumptionReport rep3 = validate_assumptions(arc, {0.0}, few_x());
    double inf_reported = 0.0;
    for (const auto& c : rep3.clauses)
        if (c.clause == "A0(iii)") inf_reported = c.value;
    double inf_oracle = 1e300;
    int n_xi = 720, n_w = 4096;
    for (int i = 0; i < n_xi; ++i) {
        double phi = (i + 0.5) * 2.0 * kPi / n_xi;
        Point xi{std::cos(phi), std::sin(phi)};
        double val = 0.0;
        for (int a = 0; a < n_w; ++a) {
            double th = (a + 0.5) * 2.0 * kPi / n_w;
            Point w{std::cos(th), std::sin(th)};
            val += std::pow(std::abs(w[0] * xi[0] + w[1] * xi[1]), 1.5) *
                   arc.minorant(0.0, w) * 2.0 * kPi / n_w;
        }
        inf_oracle = std::min(inf_oracle, val);
    }
    CHECK(inf_reported == doctest::Approx(inf_oracle).epsilon(1e-3));
    CHECK(rep3.all_pass == (inf_oracle >= arc.eta));

    // degenerate minorant passes with a reported margin
    KernelSpec degen = make_kernel_preset("degenerate-minorant", 2, 1.5);
    AssumptionReport rep4 = validate_assumptions(degen, {0.0}, few_x());
    CHECK(rep4.all_pass);
    for (const auto& c : rep4.clauses)
        if (c.clause == "A0(iii)") CHECK(c.value > degen.eta);

    // malformed specs are configuration errors
    KernelSpec bad = unit_iso(1, 1.5);
    bad.alpha = 2.5;
    CHECK_THROWS_AS(validate_assumptions(bad, {0.0}, few_x()), ConfigError);
    bad = unit_iso(1, 1.5);
    bad.eta = -1.0;
    CHECK_THROWS_AS(validate_assumptions(bad, {0.0}, few_x()), ConfigError);
}

TEST_CASE("spherical symbol: zero frequency, homogeneity, decay fit") {
    KernelSpec iso = unit_iso(1, 1.5);
    CHECK(symbol_spherical(iso, 0.0, {0.0, 0.0}) == cdouble(0.0, 0.0));

    cdouble p1 = symbol_spherical(iso, 0.0, {1.0, 0.0});
    for (double c : {2.0, 4.0}) {
        cdouble pc = symbol_spherical(iso, 0.0, {c, 0.0});
        CHECK(std::abs(pc - std::pow(c, 1.5) * p1) <= 1e-10 * std::abs(pc));
    }

    // Re psi <= -eta' |xi|^alpha with a positive fitted eta'
    KernelSpec arc = make_kernel_preset("smooth-arc", 2, 1.5);
    double eta_fit = 1e300;
    for (int k1 = -8; k1 <= 8; ++k1)
        for (int k2 = -8; k2 <= 8; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            Point xi{double(k1), double(k2)};
            double mag = std::pow(std::hypot(xi[0], xi[1]), 1.5);
            eta_fit = std::min(eta_fit, -symbol_spherical(arc, 0.0, xi).real() / mag);
        }
    CHECK(eta_fit > 0.0);
}

TEST_CASE("direct symbol: conjugate symmetry and self-convergence") {
    KernelSpec spec = make_kernel_preset("sector-measurable", 1, 1.5);
    for (double k : {1.0, 3.0, 17.0}) {
        cdouble plus = symbol_direct(spec, 0.0, {0.0, 0.0}, {k, 0.0});
        cdouble minus = symbol_direct(spec, 0.0, {0.0, 0.0}, {-k, 0.0});
        CHECK(std::abs(plus - std::conj(minus)) <= 1e-12 * std::abs(plus));
    }

    // slow quadrature path: negative real value, refinement-stable to 1e-6
    KernelSpec slow = slow_path_iso(1, 0.7);
    cdouble base = symbol_direct(slow, 0.0, {0.0, 0.0}, {1.0, 0.0});
    CHECK(base.real() < 0.0);
    CHECK(std::abs(base.imag()) <= 1e-9 * std::abs(base));
    SymbolOptions fine;
    fine.refine = 2;
    cdouble refined = symbol_direct(slow, 0.0, {0.0, 0.0}, {1.0, 0.0}, fine);
    CHECK(std::abs(refined - base) <= 1e-6 * std::abs(refined));
    // against the fast scaling path
    cdouble fast = symbol_direct(unit_iso(1, 0.7), 0.0, {0.0, 0.0}, {1.0, 0.0});
    CHECK(std::abs(fast - base) <= 1e-6 * std::abs(fast));
    // the checked variant accepts a healthy quadrature
    CHECK_NOTHROW((void)symbol_direct_checked(slow, 0.0, {0.0, 0.0}, {1.0, 0.0}, 1e-5));

    // zero kernel gives a zero symbol
    KernelSpec zero = unit_iso(1, 0.7);
    zero.terms[0].angular = [](double, Point) { return 0.0; };
    CHECK(std::abs(symbol_direct(zero, 0.0, {0.0, 0.0}, {1.0, 0.0})) == 0.0);
}

TEST_CASE("two symbol routes agree after one-point calibration") {
    for (const std::string name : {"isotropic", "smooth-arc", "sector-measurable"}) {
        for (int dim : {1, 2}) {
            KernelSpec spec = make_kernel_preset(name, dim, 1.5);
            for (double k : {1.0, 2.0, 5.0}) {
                Point xi = (dim == 1) ? Point{k, 0.0} : Point{k, -k};
                cdouble a = symbol_spherical(spec, 0.0, xi);
                cdouble b = symbol_direct(spec, 0.0, {0.0, 0.0}, xi);
                CHECK(std::abs(a - b) <= 1e-4 * std::abs(b));
            }
        }
    }
}

TEST_CASE("x-Hölder transfer from the coefficient to the symbol") {
    KernelSpec spec = make_kernel_preset("sector-variable", 2, 1.5);
    Point x1{0.7, 0.0}, x2{1.1, 0.0};
    Point xi{3.0, 1.0};
    cdouble at1 = symbol_direct(spec, 0.0, x1, xi);
    cdouble at2 = symbol_direct(spec, 0.0, x2, xi);

    // the sector term alone bounds the x-variation
    KernelSpec sector_only = spec;
    sector_only.terms.erase(sector_only.terms.begin());
    sector_only.terms[0].coef = nullptr;
    cdouble sector_part = symbol_direct(sector_only, 0.0, {0.0, 0.0}, xi);
    double coef_lip = 0.5;  // |d/dx sin| <= 1 times the 0.5 amplitude
    double dx = std::abs(x1[0] - x2[0]);
    CHECK(std::abs(at1 - at2) <= coef_lip * dx * std::abs(sector_part) + 1e-12);
}

TEST_CASE("alpha = 1 guards") {
    // asymmetric density at alpha = 1 is rejected
    KernelSpec asym = make_kernel_preset("smooth-arc", 1, 1.0);
    CHECK_THROWS_AS((void)symbol_direct(asym, 0.0, {0.0, 0.0}, {1.0, 0.0}), AssumptionError);
    CHECK_THROWS_AS((void)symbol_spherical(asym, 0.0, {1.0, 0.0}), AssumptionError);

    // symmetric density at alpha = 1: both routes agree
    KernelSpec iso = unit_iso(1, 1.0);
    cdouble a = symbol_spherical(iso, 0.0, {2.0, 0.0});
    cdouble b = symbol_direct(iso, 0.0, {0.0, 0.0}, {2.0, 0.0});
    CHECK(std::abs(a - b) <= 1e-4 * std::abs(b));
    CHECK(a.real() < 0.0);
    CHECK(std::abs(a.imag()) <= 1e-10 * std::abs(a));
}

TEST_CASE("symbol tables carry the multiplier invariants") {
    KernelSpec spec = make_kernel_preset("sector-measurable", 1, 1.5);
    SymbolTable tab = build_symbol_table(spec, 0.0, 64);
    CHECK(tab.psi[0] == cdouble(0.0, 0.0));
    CHECK(tab.normalization > 0.0);
    for (int k = 1; k < 32; ++k) {
        cdouble plus = tab.psi[index_of_freq(k, 64)];
        cdouble minus = tab.psi[index_of_freq(-k, 64)];
        CHECK(std::abs(plus - std::conj(minus)) <= 1e-12 * std::abs(plus));
        CHECK(plus.real() <= 0.0);
    }

    // piecewise-constant time profile scales the symbol
    KernelSpec scaled = spec;
    scaled.time_breaks = {0.5};
    scaled.time_scale = {1.0, 2.0};
    cdouble early = symbol_direct(scaled, 0.2, {0.0, 0.0}, {3.0, 0.0});
    cdouble late = symbol_direct(scaled, 0.7, {0.0, 0.0}, {3.0, 0.0});
    CHECK(std::abs(late - 2.0 * early) <= 1e-12 * std::abs(late));
}

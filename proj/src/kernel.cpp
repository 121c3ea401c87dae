#include "nlcauchy/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/oscillatory.hpp"

namespace nlcauchy {

namespace {

constexpr double kPi = std::numbers::pi;

double dot(Point a, Point b) { return a[0] * b[0] + a[1] * b[1]; }

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SphereGrid SphereGrid::make(int dim, int n_angular) {
    SphereGrid g;
    if (dim == 1) {
        g.w = {{1.0, 0.0}, {-1.0, 0.0}};
        g.weight = {1.0, 1.0};
    } else {
        g.w.reserve(n_angular);
        g.weight.assign(n_angular, 2.0 * kPi / n_angular);
        for (int a = 0; a < n_angular; ++a) {
            double th = (a + 0.5) * 2.0 * kPi / n_angular;
            g.w.push_back({std::cos(th), std::sin(th)});
        }
    }
    return g;
}

double SphereGrid::surface() const {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
}

double KernelTerm::eval(double t, Point x, Point w, double r) const {
    double v = angular(t, w);
    if (radial) v *= radial(r);
    if (coef) v *= coef(x);
    return v;
}

double KernelSpec::scale_at(double t) const {
    if (time_breaks.empty()) return time_scale.empty() ? 1.0 : time_scale[0];
    size_t cell = 0;
    while (cell < time_breaks.size() && t >= time_breaks[cell]) ++cell;
    return time_scale[cell];
}

double KernelSpec::density(double t, Point x, Point w, double r) const {
    double total = 0.0;
    for (const auto& term : terms) total += term.eval(t, x, w, r);
    return scale_at(t) * total;
}

double KernelSpec::minorant_at(double t, Point w) const {
    return scale_at(t) * minorant(t, w);
}

bool KernelSpec::x_independent() const {
    return std::all_of(terms.begin(), terms.end(),
                       [](const KernelTerm& t) { return t.x_independent(); });
}

bool KernelSpec::homogeneous() const {
    return std::all_of(terms.begin(), terms.end(),
                       [](const KernelTerm& t) { return t.homogeneous(); });
}

KernelSpec KernelSpec::minorant_as_kernel() const {
    KernelSpec out = *this;
    out.terms.clear();
    KernelTerm t;
    t.angular = minorant;
    out.terms.push_back(std::move(t));
    out.name = name + "-minorant";
    return out;
}

KernelSpec KernelSpec::x_averaged(int n) const {
    KernelSpec out = *this;
    double h = kPeriod / n;
    for (auto& term : out.terms) {
        if (!term.coef) continue;
        double avg = 0.0;
        if (dim == 1) {
            for (int i = 0; i < n; ++i) avg += term.coef({i * h, 0.0});
            avg /= n;
        } else {
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) avg += term.coef({ix * h, iy * h});
            avg /= double(n) * n;
        }
        auto ang = term.angular;
        term.angular = [ang, avg](double t, Point w) { return avg * ang(t, w); };
        term.coef = nullptr;
    }
    out.name = name + "-xavg";
    return out;
}

void KernelSpec::check_well_formed() const {
    if (dim != 1 && dim != 2) throw ConfigError("kernel: dim must be 1 or 2");
    if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError("kernel: alpha must lie in (0,2)");
    if (!(eta > 0.0)) throw ConfigError("kernel: eta must be positive");
    if (!(bigK > 0.0)) throw ConfigError("kernel: bigK must be positive");
    if (terms.empty()) throw ConfigError("kernel: no density terms");
    if (!minorant) throw ConfigError("kernel: minorant m0 missing");
    size_t cells = time_breaks.size() + 1;
    if (!time_scale.empty() && time_scale.size() != cells)
        throw ConfigError("kernel: time_scale size must be time_breaks size + 1");
}

// --- radial quadrature ---------------------------------------------------------

namespace {

using osc::CubicFit;
using osc::cell_moments;
using osc::fit_cubic;
using osc::kGL1;
using osc::kGL2;

enum class ChiMode { None, UnitBall, All };

ChiMode chi_mode_for(double alpha) {
    if (alpha > 1.0) return ChiMode::All;
    if (alpha == 1.0) return ChiMode::UnitBall;
    return ChiMode::None;
}

// e^{ix} - 1 [- ix], free of cancellation for small |x|
cdouble compensated_exp(double x, bool subtract_linear) {
    if (std::abs(x) < 0.5) {
        cdouble ix(0.0, x);
        cdouble term = subtract_linear ? ix * ix / 2.0 : ix;
        int m = subtract_linear ? 2 : 1;
        cdouble acc = 0.0;
        while (std::abs(term) > 1e-22) {
            acc += term;
            ++m;
            term *= ix / double(m);
        }
        return acc;
    }
    cdouble v = std::polar(1.0, x) - 1.0;
    if (subtract_linear) v -= cdouble(0.0, x);
    return v;
}

constexpr double kGW1 = 0.6521451548625461;  // 4-point Gauss-Legendre weights
constexpr double kGW2 = 0.3478548451374538;

/// Compensated radial integral
///   int_0^inf [exp(isr) - 1 - i chi(r) s r] rho(r) r^{-1-alpha} dr
/// by Filon cells on a log grid (oscillation integrated exactly against a
/// cubic amplitude fit), a Taylor-compensated inner ball and an analytic
/// power tail. rho empty means rho == 1.
cdouble radial_compensated_integral(double s, double alpha,
                                    const std::function<double(double)>& rho,
                                    const std::vector<double>& rho_knots,
                                    double r_inner, double r_outer, int n_cells) {
    ChiMode chi = chi_mode_for(alpha);
    auto amp = [&](double r) {
        double a = std::pow(r, -1.0 - alpha);
        return rho ? a * rho(r) : a;
    };

    // knot ladder: log-uniform plus chi breakpoint and density knots
    std::vector<double> knots;
    knots.reserve(n_cells + 4);
    double lr0 = std::log(r_inner), lr1 = std::log(r_outer);
    for (int i = 0; i <= n_cells; ++i)
        knots.push_back(std::exp(lr0 + (lr1 - lr0) * i / n_cells));
    if (chi == ChiMode::UnitBall) knots.push_back(1.0);
    for (double k : rho_knots)
        if (k > r_inner && k < r_outer) knots.push_back(k);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12 * a; }),
                knots.end());

    cdouble total = 0.0;
    for (size_t c = 0; c + 1 < knots.size(); ++c) {
        double a = knots[c], b = knots[c + 1];
        double rm = 0.5 * (a + b), h2 = 0.5 * (b - a);
        bool chi_here = (chi == ChiMode::All) || (chi == ChiMode::UnitBall && b <= 1.0 + 1e-12);
        if (std::abs(s) * b < 0.5) {
            // small total phase: integrate the compensated factor directly,
            // avoiding the cancellation between the split pieces
            cdouble acc = 0.0;
            const double nodes[4] = {-kGL2, -kGL1, kGL1, kGL2};
            const double wts[4] = {kGW2, kGW1, kGW1, kGW2};
            for (int g = 0; g < 4; ++g) {
                double r = rm + nodes[g] * h2;
                acc += wts[g] * amp(r) * compensated_exp(s * r, chi_here);
            }
            total += h2 * acc;
            continue;
        }
        CubicFit f = fit_cubic(amp(rm - kGL2 * h2), amp(rm - kGL1 * h2),
                               amp(rm + kGL1 * h2), amp(rm + kGL2 * h2));
        double theta = s * h2;
        cdouble m[4];
        cell_moments(theta, m);
        cdouble osc = f.c0 * m[0] + f.c1 * m[1] + f.c2 * m[2] + f.c3 * m[3];
        osc *= cdouble(std::cos(s * rm), std::sin(s * rm));
        double i0 = 2.0 * f.c0 + (2.0 / 3.0) * f.c2;               // int p dtau
        double i1 = (2.0 / 3.0) * f.c1 + (2.0 / 5.0) * f.c3;       // int tau p dtau
        cdouble cell = h2 * osc - h2 * i0;
        if (chi_here) cell -= cdouble(0.0, s) * h2 * (rm * i0 + h2 * i1);
        total += cell;
    }

    // inner ball: second/third/fourth order Taylor with the density frozen at
    // its inner-edge sample (exact for homogeneous rho)
    double rho_in = rho ? rho(r_inner * 0.5) : 1.0;
    if (rho_in != 0.0) {
        double e = r_inner;
        cdouble inner = 0.0;
        if (alpha < 1.0)
            inner += cdouble(0.0, s) * std::pow(e, 1.0 - alpha) / (1.0 - alpha);
        inner -= 0.5 * s * s * std::pow(e, 2.0 - alpha) / (2.0 - alpha);
        inner -= cdouble(0.0, s * s * s / 6.0) * std::pow(e, 3.0 - alpha) / (3.0 - alpha);
        inner += (s * s * s * s / 24.0) * std::pow(e, 4.0 - alpha) / (4.0 - alpha);
        total += rho_in * inner;
    }

    // tail beyond r_outer: the compensator parts are exact power integrals,
    // the oscillatory remainder is below 1e-9 at the default cutoff
    double rho_out = rho ? rho(r_outer * 2.0) : 1.0;
    if (rho_out != 0.0) {
        total -= rho_out * std::pow(r_outer, -alpha) / alpha;
        if (chi == ChiMode::All)
            total -= cdouble(0.0, s) * rho_out * std::pow(r_outer, 1.0 - alpha) / (alpha - 1.0);
    }
    return total;
}

std::mutex g_cache_mutex;

}  // namespace

cdouble stable_unit_integral(double alpha, int refine) {
    static std::map<std::pair<double, int>, cdouble> cache;
    {
        std::lock_guard lock(g_cache_mutex);
        auto it = cache.find({alpha, refine});
        if (it != cache.end()) return it->second;
    }
    cdouble v = radial_compensated_integral(1.0, alpha, nullptr, {}, 1e-6, 1e9,
                                            8192 * refine);
    std::lock_guard lock(g_cache_mutex);
    cache[{alpha, refine}] = v;
    return v;
}

namespace {

// sampled y-symmetry check used by the alpha = 1 paths
bool density_symmetric(const KernelSpec& spec, double t, Point x) {
    SphereGrid sph = SphereGrid::make(spec.dim, 64);
    for (double r : {0.3, 1.0, 3.0}) {
        for (size_t a = 0; a < sph.w.size(); ++a) {
            Point w = sph.w[a];
            Point mw{-w[0], -w[1]};
            double d1 = spec.density(t, x, w, r);
            double d2 = spec.density(t, x, mw, r);
            if (std::abs(d1 - d2) > 1e-10 * (1.0 + std::abs(d1))) return false;
        }
    }
    return true;
}

cdouble term_symbol(const KernelSpec& spec, const KernelTerm& term, double t, Point x,
                    Point xi, const SphereGrid& sph, const SymbolOptions& opts) {
    double g = term.coef ? term.coef(x) : 1.0;
    if (g == 0.0) return 0.0;
    cdouble acc = 0.0;
    if (term.homogeneous()) {
        cdouble K = stable_unit_integral(spec.alpha, opts.refine);
        bool drop_imag = (spec.alpha == 1.0);
        for (size_t a = 0; a < sph.w.size(); ++a) {
            double s = dot(sph.w[a], xi);
            if (s == 0.0) continue;
            double mu = term.angular(t, sph.w[a]);
            if (mu == 0.0) continue;
            double mag = std::pow(std::abs(s), spec.alpha);
            cdouble radial = drop_imag ? cdouble(K.real(), 0.0)
                                       : cdouble(K.real(), sgn(s) * K.imag());
            acc += sph.weight[a] * mu * mag * radial;
        }
    } else {
        for (size_t a = 0; a < sph.w.size(); ++a) {
            double s = dot(sph.w[a], xi);
            double mu = term.angular(t, sph.w[a]);
            if (mu == 0.0) continue;
            acc += sph.weight[a] * mu *
                   radial_compensated_integral(s, spec.alpha, term.radial, term.radial_knots,
                                               opts.r_inner, opts.r_outer,
                                               opts.radial_cells * opts.refine);
        }
    }
    return g * acc;
}

}  // namespace

cdouble symbol_direct(const KernelSpec& spec, double t, Point x, Point xi,
                      const SymbolOptions& opts) {
    spec.check_well_formed();
    if (xi[0] == 0.0 && xi[1] == 0.0) return 0.0;
    if (spec.alpha == 1.0 && !density_symmetric(spec, t, x))
        throw AssumptionError("symbol_direct: alpha = 1 requires a y-symmetric kernel");
    SphereGrid sph = SphereGrid::make(spec.dim, opts.n_angular);
    cdouble total = 0.0;
    for (const auto& term : spec.terms) total += term_symbol(spec, term, t, x, xi, sph, opts);
    return spec.scale_at(t) * total;
}

cdouble symbol_direct_checked(const KernelSpec& spec, double t, Point x, Point xi,
                              double tol, const SymbolOptions& opts) {
    cdouble coarse = symbol_direct(spec, t, x, xi, opts);
    SymbolOptions fine = opts;
    fine.refine *= 2;
    cdouble refined = symbol_direct(spec, t, x, xi, fine);
    double scale = std::max(std::abs(refined), 1e-300);
    double rel = std::abs(refined - coarse) / scale;
    if (rel > tol)
        throw NumericalError("symbol_direct: radial refinement disagreement " +
                             std::to_string(rel) + " at |xi| = " +
                             std::to_string(std::hypot(xi[0], xi[1])) +
                             " (tol " + std::to_string(tol) + ")");
    return refined;
}

namespace {

// spherical formula with C = 1, for calibration and evaluation
cdouble spherical_raw(const KernelSpec& spec, double t, Point xi, const SphereGrid& sph) {
    double alpha = spec.alpha;
    cdouble acc = 0.0;
    for (size_t a = 0; a < sph.w.size(); ++a) {
        double s = dot(sph.w[a], xi);
        if (s == 0.0) continue;
        double m_ang = 0.0;
        for (const auto& term : spec.terms) m_ang += term.angular(t, sph.w[a]);
        if (m_ang == 0.0) continue;
        double mag = std::pow(std::abs(s), alpha);
        cdouble bracket;
        if (alpha != 1.0) {
            bracket = cdouble(1.0, -std::tan(alpha * kPi / 2.0) * sgn(s));
        } else {
            bracket = cdouble(1.0, (2.0 / kPi) * sgn(s) * std::log(std::abs(s)));
        }
        acc -= sph.weight[a] * m_ang * mag * bracket;
    }
    return spec.scale_at(t) * acc;
}

KernelSpec isotropic_unit(int dim, double alpha) {
    KernelSpec spec;
    spec.dim = dim;
    spec.alpha = alpha;
    spec.beta = 0.5;
    spec.eta = 0.5;
    spec.bigK = 1.5;
    KernelTerm t;
    t.angular = [](double, Point) { return 1.0; };
    spec.terms.push_back(std::move(t));
    spec.minorant = [](double, Point) { return 1.0; };
    spec.name = "isotropic";
    return spec;
}

}  // namespace

double spherical_constant(double alpha, int dim) {
    static std::map<std::pair<double, int>, double> cache;
    {
        std::lock_guard lock(g_cache_mutex);
        auto it = cache.find({alpha, dim});
        if (it != cache.end()) return it->second;
    }
    KernelSpec iso = isotropic_unit(dim, alpha);
    Point xi_ref{1.0, 0.0};
    SymbolOptions opts;
    cdouble direct = symbol_direct(iso, 0.0, {0.0, 0.0}, xi_ref, opts);
    SphereGrid sph = SphereGrid::make(dim, opts.n_angular);
    cdouble raw = spherical_raw(iso, 0.0, xi_ref, sph);
    double c = direct.real() / raw.real();
    std::lock_guard lock(g_cache_mutex);
    cache[{alpha, dim}] = c;
    return c;
}

double frac_laplacian_coefficient(double alpha, int dim) {
    static std::map<std::pair<double, int>, double> cache;
    {
        std::lock_guard lock(g_cache_mutex);
        auto it = cache.find({alpha, dim});
        if (it != cache.end()) return it->second;
    }
    KernelSpec iso = isotropic_unit(dim, alpha);
    double c = -symbol_direct(iso, 0.0, {0.0, 0.0}, {1.0, 0.0}).real();
    std::lock_guard lock(g_cache_mutex);
    cache[{alpha, dim}] = c;
    return c;
}

cdouble symbol_spherical(const KernelSpec& spec, double t, Point xi,
                         const SymbolOptions& opts) {
    spec.check_well_formed();
    if (!spec.x_independent())
        throw ConfigError("symbol_spherical: spec must be x-independent");
    if (!spec.homogeneous())
        throw ConfigError("symbol_spherical: spec must be homogeneous in y");
    SphereGrid sph = SphereGrid::make(spec.dim, opts.n_angular);
    if (spec.alpha == 1.0) {
        // A0(ii): the odd angular moment must vanish at alpha = 1
        double mx = 0.0, my = 0.0;
        for (size_t a = 0; a < sph.w.size(); ++a) {
            double m_ang = 0.0;
            for (const auto& term : spec.terms) m_ang += term.angular(t, sph.w[a]);
            mx += sph.weight[a] * m_ang * sph.w[a][0];
            my += sph.weight[a] * m_ang * sph.w[a][1];
        }
        if (std::hypot(mx, my) > 1e-8)
            throw AssumptionError("symbol_spherical: A0(ii) violated at alpha = 1");
    }
    if (xi[0] == 0.0 && xi[1] == 0.0) return 0.0;
    double c = spherical_constant(spec.alpha, spec.dim);
    return c * spherical_raw(spec, t, xi, sph);
}

SymbolTable build_symbol_table(const KernelSpec& spec, double t, int n,
                               SymbolRoute route, const SymbolOptions& opts) {
    if (!spec.x_independent())
        throw ConfigError("build_symbol_table: spec must be x-independent");
    SymbolTable tab;
    tab.dim = spec.dim;
    tab.n = n;
    tab.t = t;
    tab.normalization = spherical_constant(spec.alpha, spec.dim);
    size_t total = (spec.dim == 1) ? size_t(n) : size_t(n) * n;
    tab.psi.resize(total);
    for (size_t i = 0; i < total; ++i) {
        int k1 = freq_of_index(int(spec.dim == 1 ? i : i % n), n);
        int k2 = (spec.dim == 1) ? 0 : freq_of_index(int(i / n), n);
        Point xi{double(k1), double(k2)};
        tab.psi[i] = (route == SymbolRoute::Direct)
                         ? symbol_direct(spec, t, {0.0, 0.0}, xi, opts)
                         : symbol_spherical(spec, t, xi, opts);
    }
    return tab;
}

// --- assumption audit --------------------------------------------------------

AssumptionReport validate_assumptions(const KernelSpec& spec,
                                      const std::vector<double>& t_samples,
                                      const std::vector<Point>& x_samples) {
    spec.check_well_formed();
    if (t_samples.empty() || x_samples.empty())
        throw ConfigError("validate_assumptions: sample sets must be nonempty");

    AssumptionReport rep;
    auto push = [&](ClauseResult c) {
        rep.all_pass = rep.all_pass && c.pass;
        rep.clauses.push_back(std::move(c));
    };

    SphereGrid sph = SphereGrid::make(spec.dim, 256);
    std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 4.0};
    for (const auto& term : spec.terms)
        for (double k : term.radial_knots) {
            radii.push_back(k * 0.99);
            radii.push_back(k * 1.01);
        }

    {  // A0(i): minorant bounds (derivative bounds are not sampled; see docs)
        ClauseResult c{.clause = "A0(i)", .pass = true, .bound = spec.bigK};
        for (double t : t_samples)
            for (size_t a = 0; a < sph.w.size(); ++a) {
                double v = spec.minorant_at(t, sph.w[a]);
                if (v < 0.0 || v > spec.bigK) {
                    c.pass = false;
                    c.value = v;
                    c.witness = {t, sph.w[a][0], sph.w[a][1]};
                }
            }
        c.detail = "0 <= m0 <= K on sampled sphere";
        push(std::move(c));
    }

    if (spec.alpha == 1.0) {  // A0(ii): odd moment of the minorant vanishes
        ClauseResult c{.clause = "A0(ii)", .pass = true, .bound = 1e-8};
        for (double t : t_samples) {
            double mx = 0.0, my = 0.0;
            for (size_t a = 0; a < sph.w.size(); ++a) {
                mx += sph.weight[a] * spec.minorant_at(t, sph.w[a]) * sph.w[a][0];
                my += sph.weight[a] * spec.minorant_at(t, sph.w[a]) * sph.w[a][1];
            }
            double mom = std::hypot(mx, my);
            if (mom > c.value) {
                c.value = mom;
                c.witness = {t, mx, my};
            }
        }
        c.pass = c.value <= c.bound;
        c.detail = "sphere moment of m0 at alpha = 1";
        push(std::move(c));
    }

    {  // A0(iii): nondegeneracy infimum over a dense xi-grid on the sphere
        ClauseResult c{.clause = "A0(iii)", .pass = true, .bound = spec.eta};
        SphereGrid xi_grid = SphereGrid::make(spec.dim, 720);
        double inf = std::numeric_limits<double>::infinity();
        std::vector<double> at{0.0, 0.0, 0.0};
        for (double t : t_samples)
            for (const auto& xi : xi_grid.w) {
                double val = 0.0;
                for (size_t a = 0; a < sph.w.size(); ++a)
                    val += sph.weight[a] * std::pow(std::abs(dot(sph.w[a], xi)), spec.alpha) *
                           spec.minorant_at(t, sph.w[a]);
                if (val < inf) {
                    inf = val;
                    at = {t, xi[0], xi[1]};
                }
            }
        c.value = inf;
        c.witness = at;
        c.pass = inf >= spec.eta;
        c.detail = "inf over |xi| = 1 of the spherical alpha-moment of m0";
        push(std::move(c));
    }

    {  // A(i) lower: m >= m0 on samples
        ClauseResult c{.clause = "A(i)-minorant", .pass = true};
        for (double t : t_samples)
            for (const auto& x : x_samples)
                for (size_t a = 0; a < sph.w.size(); ++a)
                    for (double r : radii) {
                        double m = spec.density(t, x, sph.w[a], r);
                        double m0 = spec.minorant_at(t, sph.w[a]);
                        if (m < m0 - 1e-12) {
                            c.pass = false;
                            c.value = m;
                            c.bound = m0;
                            c.witness = {t, x[0], x[1], sph.w[a][0], sph.w[a][1], r};
                        }
                    }
        c.detail = "m(t,x,y) >= m0(t,y/|y|) on sampled points";
        push(std::move(c));
    }

    {  // A(i) upper: m <= K and x-Hölder seminorm of m(.,y) <= K
        ClauseResult c{.clause = "A(i)-bound", .pass = true, .bound = spec.bigK};
        size_t astep = (spec.dim == 1) ? 1 : 4;
        for (double t : t_samples)
            for (size_t a = 0; a < sph.w.size(); a += astep)
                for (double r : radii) {
                    double sup = 0.0, seminorm = 0.0;
                    for (size_t i = 0; i < x_samples.size(); ++i) {
                        double mi = spec.density(t, x_samples[i], sph.w[a], r);
                        sup = std::max(sup, mi);
                        for (size_t j = i + 1; j < x_samples.size(); ++j) {
                            double mj = spec.density(t, x_samples[j], sph.w[a], r);
                            double dx = std::hypot(x_samples[i][0] - x_samples[j][0],
                                                   x_samples[i][1] - x_samples[j][1]);
                            if (dx > 0.0)
                                seminorm = std::max(seminorm,
                                                    std::abs(mi - mj) / std::pow(dx, spec.beta));
                        }
                    }
                    double worst = std::max(sup, seminorm);
                    if (worst > spec.bigK + 1e-12) {
                        c.pass = false;
                        c.value = worst;
                        c.witness = {t, sph.w[a][0], sph.w[a][1], r};
                    }
                }
        c.detail = "sup m and x-Hölder seminorm of m(.,y) within K";
        push(std::move(c));
    }

    if (spec.alpha == 1.0) {  // A(ii) via enforced y-symmetry
        ClauseResult c{.clause = "A(ii)", .pass = true, .bound = 1e-10};
        for (double t : t_samples)
            for (const auto& x : x_samples)
                if (!density_symmetric(spec, t, x)) {
                    c.pass = false;
                    c.witness = {t, x[0], x[1]};
                }
        c.detail = "y-symmetry (annulus cancellation holds identically)";
        push(std::move(c));
    }

    return rep;
}

// --- presets ------------------------------------------------------------------

namespace {

double smooth_bump(double u) {
    // C^inf bump on (-1,1), max 1 at 0
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double angle_of(Point w) { return std::atan2(w[1], w[0]); }

double wrap_angle(double th) {
    while (th > kPi) th -= 2.0 * kPi;
    while (th < -kPi) th += 2.0 * kPi;
    return th;
}

}  // namespace

KernelSpec make_kernel_preset(const std::string& name, int dim, double alpha) {
    KernelSpec spec;
    spec.dim = dim;
    spec.alpha = alpha;
    spec.beta = 0.5;
    spec.name = name;

    auto unit = [](double, Point) { return 1.0; };

    if (name == "isotropic") {
        KernelTerm t;
        t.angular = unit;
        spec.terms.push_back(std::move(t));
        spec.minorant = unit;
        spec.eta = (dim == 1) ? 1.0 : 1.0;
        spec.bigK = 1.5;
        return spec;
    }

    if (name == "smooth-arc") {
        KernelTerm t;
        if (dim == 1) {
            t.angular = [](double, Point w) { return w[0] > 0.0 ? 1.5 : 0.5; };
        } else {
            t.angular = [](double, Point w) {
                double u = wrap_angle(angle_of(w) - kPi / 3.0);
                return smooth_bump(u / 1.2);
            };
        }
        spec.minorant = t.angular;
        spec.terms.push_back(std::move(t));
        spec.eta = (dim == 1) ? 1.0 : 0.05;
        spec.bigK = 2.0;
        return spec;
    }

    if (name == "sector-measurable" || name == "sector-variable") {
        KernelTerm base;
        base.angular = unit;
        spec.terms.push_back(std::move(base));
        KernelTerm sector;
        if (dim == 1) {
            sector.angular = [](double, Point w) { return w[0] > 0.0 ? 1.0 : 0.0; };
        } else {
            sector.angular = [](double, Point w) {
                double th = angle_of(w);
                return (th > 0.5 && th < 1.8) ? 1.0 : 0.0;
            };
        }
        if (name == "sector-variable")
            sector.coef = [](Point x) { return 0.5 * (1.0 + std::sin(x[0])); };
        spec.terms.push_back(std::move(sector));
        spec.minorant = unit;
        spec.eta = (dim == 1) ? 1.0 : 1.0;
        spec.bigK = 2.5;
        return spec;
    }

    if (name == "degenerate-minorant") {
        KernelTerm t;
        if (dim == 1) {
            t.angular = [](double, Point w) { return w[0] > 0.0 ? 2.0 : 0.0; };
        } else {
            t.angular = [](double, Point w) {
                double c = std::max(0.0, w[0]);
                return 2.0 * c * c;
            };
        }
        spec.minorant = t.angular;
        spec.terms.push_back(std::move(t));
        spec.eta = (dim == 1) ? 1.0 : 0.3;
        spec.bigK = 2.5;
        return spec;
    }

    if (name == "modulated-isotropic") {
        KernelTerm base;
        base.angular = unit;
        spec.terms.push_back(std::move(base));
        KernelTerm mod;
        mod.angular = unit;
        mod.coef = [](Point x) { return 0.5 * (1.0 + std::sin(x[0])); };
        spec.terms.push_back(std::move(mod));
        spec.minorant = unit;
        spec.eta = 1.0;
        spec.bigK = 2.5;
        return spec;
    }

    if (name == "ring-variable") {
        KernelTerm base;
        base.angular = unit;
        spec.terms.push_back(std::move(base));
        KernelTerm ring;
        ring.angular = unit;
        ring.radial = [](double r) { return (r >= 1.0 && r <= 2.0) ? 1.0 : 0.0; };
        ring.radial_knots = {1.0, 2.0};
        ring.coef = [](Point x) { return 0.5 * (1.0 + std::sin(x[0])); };
        spec.terms.push_back(std::move(ring));
        spec.minorant = unit;
        spec.eta = 1.0;
        spec.bigK = 2.5;
        return spec;
    }

    throw ConfigError("unknown kernel preset: " + name);
}

}  // namespace nlcauchy

#include "nlcauchy/nonlocal.hpp"

#include <cmath>

#include "nlcauchy/errors.hpp"

namespace nlcauchy {

GridFunction frac_laplacian(const GridFunction& u, double alpha) {
    if (alpha <= 0.0 || alpha >= 2.0)
        throw ConfigError("frac_laplacian: alpha must lie in (0,2)");
    double c = frac_laplacian_coefficient(alpha, u.dim);
    GridFunction out = frac_power(u, alpha);
    out *= -c;
    return out;
}

namespace {

// A mode is self-conjugate when negating its frequency lands on itself mod n;
// keeping the multiplier real there keeps real inputs real.
bool self_conjugate(int k, int n) { return k == 0 || k == -n / 2; }

std::vector<cdouble> term_multiplier(const KernelSpec& spec, const KernelTerm& term,
                                     int n, double t, const SymbolOptions& opts) {
    KernelSpec sub = spec;
    sub.terms.clear();
    KernelTerm stripped = term;
    stripped.coef = nullptr;
    sub.terms.push_back(std::move(stripped));

    size_t total = (spec.dim == 1) ? size_t(n) : size_t(n) * n;
    std::vector<cdouble> mult(total);
    for (size_t i = 0; i < total; ++i) {
        int k1 = freq_of_index(int(spec.dim == 1 ? i : i % n), n);
        int k2 = (spec.dim == 1) ? 0 : freq_of_index(int(i / n), n);
        cdouble psi = symbol_direct(sub, t, {0.0, 0.0}, {double(k1), double(k2)}, opts);
        bool self = (spec.dim == 1) ? self_conjugate(k1, n)
                                    : (self_conjugate(k1, n) && self_conjugate(k2, n));
        mult[i] = self ? cdouble(psi.real(), 0.0) : psi;
    }
    return mult;
}

std::vector<double> sample_field(const std::function<double(Point)>& f, int dim, int n) {
    double h = kPeriod / n;
    if (dim == 1) {
        std::vector<double> out(n);
        for (int i = 0; i < n; ++i) out[i] = f({i * h, 0.0});
        return out;
    }
    std::vector<double> out(size_t(n) * n);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) out[size_t(iy) * n + ix] = f({ix * h, iy * h});
    return out;
}

}  // namespace

AOperator::AOperator(const KernelSpec& spec, int n, double t, const SymbolOptions& opts)
    : dim_(spec.dim), n_(n) {
    spec.check_well_formed();
    size_t total = (dim_ == 1) ? size_t(n) : size_t(n) * n;
    combined_.assign(total, cdouble(0.0, 0.0));
    for (const auto& term : spec.terms) {
        std::vector<cdouble> mult = term_multiplier(spec, term, n, t, opts);
        if (term.x_independent()) {
            for (size_t i = 0; i < total; ++i) combined_[i] += mult[i];
        } else {
            multipliers_.push_back(std::move(mult));
            coef_fields_.push_back(sample_field(term.coef, dim_, n));
        }
    }
}

GridFunction AOperator::apply(const GridFunction& u) const {
    if (u.n != n_ || u.dim != dim_) throw ConfigError("AOperator: grid mismatch");
    SpectralField uh = to_spectral(u);
    SpectralField work = uh;
    for (size_t i = 0; i < work.coef.size(); ++i) work.coef[i] *= combined_[i];
    GridFunction out = to_grid(work, u.time_stamp);
    for (size_t g = 0; g < multipliers_.size(); ++g) {
        for (size_t i = 0; i < work.coef.size(); ++i)
            work.coef[i] = uh.coef[i] * multipliers_[g][i];
        GridFunction part = to_grid(work, u.time_stamp);
        const auto& field = coef_fields_[g];
        for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += field[i] * part.values[i];
    }
    return out;
}

const std::vector<cdouble>& AOperator::plain_symbol() const {
    if (!coef_fields_.empty())
        throw ConfigError("AOperator: plain symbol requires an x-independent kernel");
    return combined_;
}

GridFunction apply_A(const GridFunction& u, const KernelSpec& spec, double t,
                     const SymbolOptions& opts) {
    return AOperator(spec, u.n, t, opts).apply(u);
}

// --- B operator ----------------------------------------------------------------

void BOperatorSpec::check_well_formed() const {
    if (dim != 1 && dim != 2) throw ConfigError("B operator: dim must be 1 or 2");
    if (!(principal_alpha > 0.0 && principal_alpha < 2.0))
        throw ConfigError("B operator: principal alpha must lie in (0,2)");
    if (!rho_terms.empty()) {
        if (!(alpha_prime > 0.0)) throw ConfigError("B operator: alpha' must be positive");
        if (alpha_prime >= principal_alpha)
            throw ConfigError("B operator: alpha' must be strictly below alpha");
    }
    if (drift && principal_alpha < 1.0)
        throw ConfigError("B operator: drift term requires alpha >= 1");
}

AssumptionReport BOperatorSpec::validate(const std::vector<double>& t_samples,
                                         const std::vector<Point>& x_samples) const {
    check_well_formed();
    AssumptionReport rep;
    auto push = [&](ClauseResult c) {
        rep.all_pass = rep.all_pass && c.pass;
        rep.clauses.push_back(std::move(c));
    };

    {  // B1(i): closed-form radial integrals of the Remark family
        ClauseResult c{.clause = "B1(i)", .pass = true, .bound = bigK};
        if (!rho_terms.empty()) {
            double surface = SphereGrid::make(dim).surface();
            double inner = surface / (principal_alpha - alpha_prime);
            double outer = surface / alpha_prime;
            c.value = rho_sup * (inner + outer);
            c.pass = c.value <= bigK;
            c.detail = "int_{U1} |c|^a dpi + int_{U1^c} 1 dpi (weighted by ||rho||)";
        } else {
            c.detail = "no jump part";
        }
        push(std::move(c));
    }

    {  // B2(i): |b|_beta + |l|_beta on sampled points
        ClauseResult c{.clause = "B2(i)", .pass = true, .bound = bigK};
        double worst = 0.0;
        std::vector<double> at{0.0, 0.0, 0.0};
        for (double t : t_samples) {
            double sup = 0.0, semi = 0.0;
            for (size_t i = 0; i < x_samples.size(); ++i) {
                double bi = drift ? std::hypot(drift(t, x_samples[i])[0],
                                               drift(t, x_samples[i])[1])
                                  : 0.0;
                double li = zero_order ? std::abs(zero_order(t, x_samples[i])) : 0.0;
                sup = std::max(sup, bi + li);
                for (size_t j = i + 1; j < x_samples.size(); ++j) {
                    double dx = std::hypot(x_samples[i][0] - x_samples[j][0],
                                           x_samples[i][1] - x_samples[j][1]);
                    if (dx == 0.0) continue;
                    double db = 0.0, dl = 0.0;
                    if (drift) {
                        auto b1 = drift(t, x_samples[i]);
                        auto b2 = drift(t, x_samples[j]);
                        db = std::hypot(b1[0] - b2[0], b1[1] - b2[1]);
                    }
                    if (zero_order)
                        dl = std::abs(zero_order(t, x_samples[i]) - zero_order(t, x_samples[j]));
                    semi = std::max(semi, (db + dl) / std::pow(dx, beta));
                }
            }
            if (sup + semi > worst) {
                worst = sup + semi;
                at = {t, 0.0, 0.0};
            }
        }
        c.value = worst;
        c.pass = worst <= bigK;
        c.witness = at;
        c.detail = "|b|_beta + |l|_beta sampled";
        push(std::move(c));
    }

    {  // B2(iv): rho bounded by rho_sup and Hölder in x within K
        ClauseResult c{.clause = "B2(iv)", .pass = true, .bound = std::max(rho_sup, bigK)};
        SphereGrid sph = SphereGrid::make(dim, 64);
        for (double t : t_samples)
            for (const auto& x : x_samples)
                for (size_t a = 0; a < sph.w.size(); ++a)
                    for (double r : {0.5, 1.0, 2.0}) {
                        double v = 0.0;
                        for (const auto& term : rho_terms) v += term.eval(t, x, sph.w[a], r);
                        if (v < 0.0 || v > rho_sup + 1e-12) {
                            c.pass = false;
                            c.value = v;
                            c.witness = {t, x[0], x[1], sph.w[a][0], sph.w[a][1], r};
                        }
                    }
        c.detail = "0 <= rho <= ||rho||_inf on sampled points";
        push(std::move(c));
    }

    return rep;
}

namespace {

KernelSpec rho_as_kernel(const BOperatorSpec& bspec) {
    KernelSpec spec;
    spec.dim = bspec.dim;
    spec.alpha = bspec.alpha_prime;
    spec.beta = bspec.beta;
    spec.eta = 1.0;   // nondegeneracy is not required of the lower-order part
    spec.bigK = std::max(1.0, bspec.rho_sup);
    spec.terms = bspec.rho_terms;
    spec.minorant = [](double, Point) { return 0.0; };
    spec.name = "b-weight";
    return spec;
}

}  // namespace

BOperator::BOperator(const BOperatorSpec& bspec, int n, double t, const SymbolOptions& opts)
    : spec_(bspec), t_(t), n_(n), dim_(bspec.dim) {
    bspec.check_well_formed();
    if (!bspec.rho_terms.empty()) jump_.emplace(rho_as_kernel(bspec), n, t, opts);
    if (bspec.drift && bspec.principal_alpha >= 1.0) {
        double h = kPeriod / n;
        size_t total = (dim_ == 1) ? size_t(n) : size_t(n) * n;
        drift_field_.resize(total);
        for (size_t i = 0; i < total; ++i) {
            Point x = (dim_ == 1) ? Point{double(i) * h, 0.0}
                                  : Point{double(i % n) * h, double(i / n) * h};
            drift_field_[i] = bspec.drift(t, x);
        }
    }
    if (bspec.zero_order) {
        double h = kPeriod / n;
        size_t total = (dim_ == 1) ? size_t(n) : size_t(n) * n;
        zero_field_.resize(total);
        for (size_t i = 0; i < total; ++i) {
            Point x = (dim_ == 1) ? Point{double(i) * h, 0.0}
                                  : Point{double(i % n) * h, double(i / n) * h};
            zero_field_[i] = bspec.zero_order(t, x);
        }
    }
}

GridFunction BOperator::apply(const GridFunction& u) const {
    GridFunction out = GridFunction::zeros(u.dim, u.n, u.time_stamp);
    if (jump_) out += jump_->apply(u);
    if (!drift_field_.empty()) {
        GridFunction d1 = spectral_derivative(u, 0);
        if (dim_ == 1) {
            for (size_t i = 0; i < out.values.size(); ++i)
                out.values[i] += drift_field_[i][0] * d1.values[i];
        } else {
            GridFunction d2 = spectral_derivative(u, 1);
            for (size_t i = 0; i < out.values.size(); ++i)
                out.values[i] += drift_field_[i][0] * d1.values[i] +
                                 drift_field_[i][1] * d2.values[i];
        }
    }
    if (!zero_field_.empty())
        for (size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += zero_field_[i] * u.values[i];
    return out;
}

GridFunction apply_B(const GridFunction& u, const BOperatorSpec& bspec, double t,
                     const SymbolOptions& opts) {
    return BOperator(bspec, u.n, t, opts).apply(u);
}

}  // namespace nlcauchy

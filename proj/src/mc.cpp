#include "nlcauchy/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlcauchy/errors.hpp"
#include "nlcauchy/rng.hpp"

namespace nlcauchy {

namespace {

double wrap_torus(double v) {
    v = std::fmod(v, kPeriod);
    return (v < 0.0) ? v + kPeriod : v;
}

// int_a^b r^e rho(r) dr; closed form for homogeneous terms, log-space Gauss
// between knots otherwise. b may be +inf (analytic tail for bounded rho).
double radial_power_integral(const KernelTerm& term, double e, double a, double b) {
    auto plain = [&](double lo, double hi) {
        if (e == -1.0) return std::log(hi / lo);
        return (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
    };
    if (!term.radial) {
        if (std::isinf(b)) return -std::pow(a, e + 1.0) / (e + 1.0);  // needs e < -1
        return plain(a, b);
    }
    double hi_cut = std::isinf(b) ? 1e6 : b;
    std::vector<double> knots{a, hi_cut};
    for (double k : term.radial_knots)
        if (k > a && k < hi_cut) knots.push_back(k);
    std::sort(knots.begin(), knots.end());
    double total = 0.0;
    for (size_t c = 0; c + 1 < knots.size(); ++c) {
        double lo = knots[c], hi = knots[c + 1];
        int pts = 64;
        double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < pts; ++i) {
            double lr = llo + (lhi - llo) * (i + 0.5) / pts;
            double r = std::exp(lr);
            total += term.radial(r) * std::pow(r, e + 1.0) * (lhi - llo) / pts;
        }
    }
    if (std::isinf(b))  // analytic remainder with the density frozen out there
        total += term.radial(2e6) * (-std::pow(hi_cut, e + 1.0) / (e + 1.0));
    return total;
}

// one jump component: the principal kernel or the B-weight
struct Component {
    char kind;             // 'A' or 'B'
    double order;          // alpha or alpha'
    double bound;          // dominating constant (bigK resp. ||rho||)
    const std::vector<KernelTerm>* terms;
    double term_scale = 1.0;  // kernel time scale at the current cell
    double rate = 0.0;        // proposal intensity above delta_cut

    // per-term angular moments at the current kernel cell
    std::vector<double> drift_radial;        // signed radial factor for drift
    std::vector<Point> ang_m1;
    std::vector<std::array<double, 3>> ang_m2;  // xx, xy, yy
    std::vector<double> var_radial;          // int_0^delta r^{1-order} rho dr
};

struct SimContext {
    const KernelSpec& spec;
    const BOperatorSpec* bspec;
    double delta;
    double surface;
    SphereGrid sph;
    std::vector<Component> comps;
    double total_rate = 0.0;
    bool gaussian = false;

    SimContext(const KernelSpec& sp, const BOperatorSpec* b, double t_repr,
               const McOptions& opts)
        : spec(sp), bspec(b), delta(effective_delta_cut(sp, opts)),
          sph(SphereGrid::make(sp.dim, 256)) {
        surface = sph.surface();
        Component a{'A', sp.alpha, sp.bigK, &sp.terms};
        a.term_scale = sp.scale_at(t_repr);
        comps.push_back(a);
        if (b && !b->rho_terms.empty()) {
            b->check_well_formed();
            Component bc{'B', b->alpha_prime, b->rho_sup, &b->rho_terms};
            comps.push_back(bc);
        }
        gaussian = opts.gaussian_correction;
        for (auto& c : comps) {
            c.rate = c.bound * surface * std::pow(delta, -c.order) / c.order;
            total_rate += c.rate;
            for (const auto& term : *c.terms) {
                Point m1{0.0, 0.0};
                std::array<double, 3> m2{0.0, 0.0, 0.0};
                for (size_t i = 0; i < sph.w.size(); ++i) {
                    double mu = term.angular(t_repr, sph.w[i]) * sph.weight[i];
                    m1[0] += mu * sph.w[i][0];
                    m1[1] += mu * sph.w[i][1];
                    m2[0] += mu * sph.w[i][0] * sph.w[i][0];
                    m2[1] += mu * sph.w[i][0] * sph.w[i][1];
                    m2[2] += mu * sph.w[i][1] * sph.w[i][1];
                }
                c.ang_m1.push_back(m1);
                c.ang_m2.push_back(m2);
                double drift_rad = 0.0;
                if (c.order < 1.0) {
                    // mean of the dropped small jumps
                    drift_rad = radial_power_integral(term, -c.order, 1e-12, delta);
                } else if (c.order > 1.0) {
                    // compensation of the simulated jumps
                    drift_rad = -radial_power_integral(term, -c.order, delta,
                                                       std::numeric_limits<double>::infinity());
                }
                c.drift_radial.push_back(drift_rad);
                c.var_radial.push_back(radial_power_integral(term, 1.0 - c.order, 1e-12, delta));
            }
        }
    }

    Point drift_at(double t, Point x) const {
        Point d{0.0, 0.0};
        for (const auto& c : comps) {
            double sc = (c.kind == 'A') ? spec.scale_at(t) : 1.0;
            for (size_t p = 0; p < c.terms->size(); ++p) {
                const auto& term = (*c.terms)[p];
                double g = sc * (term.coef ? term.coef(x) : 1.0);
                d[0] += g * c.ang_m1[p][0] * c.drift_radial[p];
                d[1] += g * c.ang_m1[p][1] * c.drift_radial[p];
            }
        }
        if (bspec && bspec->drift && spec.alpha >= 1.0) {
            Point b = bspec->drift(t, x);
            d[0] += b[0];
            d[1] += b[1];
        }
        return d;
    }

    // covariance of the Gaussian stand-in for sub-delta jumps, per unit time
    std::array<double, 3> small_jump_cov(double t, Point x) const {
        std::array<double, 3> cov{0.0, 0.0, 0.0};
        for (const auto& c : comps) {
            if (c.order < 1.0) continue;  // small jumps absorbed into the drift
            double sc = (c.kind == 'A') ? spec.scale_at(t) : 1.0;
            for (size_t p = 0; p < c.terms->size(); ++p) {
                const auto& term = (*c.terms)[p];
                double g = sc * (term.coef ? term.coef(x) : 1.0);
                cov[0] += g * c.ang_m2[p][0] * c.var_radial[p];
                cov[1] += g * c.ang_m2[p][1] * c.var_radial[p];
                cov[2] += g * c.ang_m2[p][2] * c.var_radial[p];
            }
        }
        return cov;
    }

    double density_of(const Component& c, double t, Point x, Point w, double r) const {
        double total = 0.0;
        for (const auto& term : *c.terms) total += term.eval(t, x, w, r);
        return (c.kind == 'A') ? spec.scale_at(t) * total : total;
    }
};

// visitor interface:
//  segment(t0, t1, x0, velocity) for each drift piece,
//  jump(t, before, after, kind, accepted) for each proposal,
//  gaussian(t, before, after) for each substep kick.
template <typename Visitor>
void simulate_visit(const KernelSpec& spec, const BOperatorSpec* bspec, double s,
                    Point x0, double T, uint64_t seed, const McOptions& opts,
                    Visitor&& visit) {
    spec.check_well_formed();
    if (spec.alpha == 1.0) {
        // pragmatic guard: the simulator relies on the annulus cancellation
        SphereGrid probe = SphereGrid::make(spec.dim, 32);
        for (size_t i = 0; i < probe.w.size(); ++i) {
            Point w = probe.w[i], mw{-w[0], -w[1]};
            if (std::abs(spec.density(s, x0, w, 1.0) - spec.density(s, x0, mw, 1.0)) > 1e-10)
                throw AssumptionError("simulate: alpha = 1 requires a y-symmetric kernel");
        }
    }

    RngStream rng(seed);
    SimContext ctx(spec, bspec, s, opts);

    double t = s;
    Point x = x0;
    double dt_sub = (T - s) / opts.substeps;
    int next_sub = 1;
    double next_jump = t + rng.exponential() / ctx.total_rate;

    while (t < T) {
        double t_sub = s + next_sub * dt_sub;
        double t_next = std::min({T, t_sub, next_jump});
        if (t_next > t) {
            Point v = ctx.drift_at(t, x);
            visit.segment(t, t_next, x, v);
            x[0] = wrap_torus(x[0] + v[0] * (t_next - t));
            if (spec.dim == 2) x[1] = wrap_torus(x[1] + v[1] * (t_next - t));
            t = t_next;
        }
        if (t >= T) break;
        if (t == next_jump) {
            // choose a component proportionally to its proposal rate
            double pick = rng.uniform() * ctx.total_rate;
            const Component* comp = &ctx.comps[0];
            for (const auto& c : ctx.comps) {
                if (pick < c.rate) {
                    comp = &c;
                    break;
                }
                pick -= c.rate;
            }
            double r = ctx.delta * std::pow(rng.uniform(), -1.0 / comp->order);
            Point w{1.0, 0.0};
            if (spec.dim == 1) {
                w[0] = (rng.uniform() < 0.5) ? 1.0 : -1.0;
            } else {
                double th = rng.uniform() * kPeriod;
                w = {std::cos(th), std::sin(th)};
            }
            double accept_p = ctx.density_of(*comp, t, x, w, r) / comp->bound;
            bool accepted = rng.uniform() < accept_p;
            Point before = x;
            if (accepted) {
                x[0] = wrap_torus(x[0] + r * w[0]);
                if (spec.dim == 2) x[1] = wrap_torus(x[1] + r * w[1]);
            }
            visit.jump(t, before, x, comp->kind, accepted, Point{r * w[0], r * w[1]});
            next_jump = t + rng.exponential() / ctx.total_rate;
        }
        if (t == t_sub && next_sub <= opts.substeps) {
            if (ctx.gaussian) {
                auto cov = ctx.small_jump_cov(t, x);
                Point before = x;
                double n1 = rng.normal();
                double sxx = std::sqrt(std::max(0.0, cov[0]) * dt_sub);
                if (spec.dim == 1) {
                    x[0] = wrap_torus(x[0] + sxx * n1);
                } else {
                    double n2 = rng.normal();
                    // Cholesky of the 2x2 covariance
                    double l11 = std::sqrt(std::max(1e-300, cov[0]));
                    double l21 = cov[1] / l11;
                    double l22 = std::sqrt(std::max(0.0, cov[2] - l21 * l21));
                    double sq = std::sqrt(dt_sub);
                    x[0] = wrap_torus(x[0] + sq * l11 * n1);
                    x[1] = wrap_torus(x[1] + sq * (l21 * n1 + l22 * n2));
                }
                visit.gaussian(t, before, x);
            }
            ++next_sub;
        }
    }
}

struct RecordingVisitor {
    JumpPath path;
    void segment(double, double t1, Point, Point) { pending_t = t1; }
    void jump(double t, Point, Point after, char kind, bool accepted, Point size) {
        path.events.push_back({t, kind, size, accepted});
        if (accepted) record(t, after);
    }
    void gaussian(double t, Point, Point after) {
        path.events.push_back({t, 'g', {after[0], after[1]}, true});
        record(t, after);
    }
    void record(double t, Point x) {
        path.times.push_back(t);
        path.states.push_back(x);
    }
    double pending_t = 0.0;
};

}  // namespace

double effective_delta_cut(const KernelSpec& spec, const McOptions& opts) {
    if (opts.delta_cut > 0.0) return opts.delta_cut;
    if (opts.gaussian_correction && spec.alpha >= 1.0) return 0.05;
    // variance-matching: jumps below delta carry at most 1% of the variance
    // accumulated up to radius one
    return std::min(0.05, std::pow(0.01, 1.0 / (2.0 - spec.alpha)));
}

JumpPath simulate_path(const KernelSpec& spec, const BOperatorSpec* bspec, double s,
                       Point x0, double T, uint64_t seed, const McOptions& opts) {
    RecordingVisitor rec;
    rec.path.seed = seed;
    rec.record(s, x0);
    simulate_visit(spec, bspec, s, x0, T, seed, opts, rec);
    return std::move(rec.path);
}

namespace {

// piecewise-linear-in-time, spectral-in-x evaluation of stamped fields
struct StampedField {
    double T;
    std::vector<SparseModes> modes;
    double dt() const { return T / double(modes.size() - 1); }
    double eval(double t, Point x) const {
        double pos = std::clamp(t / dt(), 0.0, double(modes.size() - 1));
        int cell = std::min(int(pos), int(modes.size()) - 2);
        double w = pos - cell;
        double lo = modes[cell].eval(x[0], x[1]);
        double hi = modes[cell + 1].eval(x[0], x[1]);
        return (1.0 - w) * lo + w * hi;
    }
};

StampedField make_field(const std::vector<GridFunction>& stamps, double T) {
    StampedField f;
    f.T = T;
    f.modes.reserve(stamps.size());
    for (const auto& g : stamps) f.modes.push_back(sparsify(to_spectral(g)));
    return f;
}

struct IntegratingVisitor {
    const StampedField* f;
    double acc = 0.0;
    // two-point Gauss along each affine segment
    void segment(double t0, double t1, Point x0, Point v) {
        double hm = 0.5 * (t1 - t0);
        double tm = 0.5 * (t0 + t1);
        static constexpr double g = 0.5773502691896257;
        for (double tau : {tm - g * hm, tm + g * hm}) {
            Point xt{wrap_torus(x0[0] + v[0] * (tau - t0)),
                     wrap_torus(x0[1] + v[1] * (tau - t0))};
            acc += hm * f->eval(tau, xt);
        }
    }
    void jump(double, Point, Point, char, bool, Point) {}
    void gaussian(double, Point, Point) {}
};

}  // namespace

MCEstimate feynman_kac(const KernelSpec& spec, const BOperatorSpec* bspec,
                       const std::vector<GridFunction>& f_stamps, double T, double s,
                       Point x0, int paths, uint64_t seed, const McOptions& opts) {
    if (paths < 2) throw ConfigError("feynman_kac: needs at least two paths");
    StampedField f = make_field(f_stamps, T);
    double sum = 0.0, sumsq = 0.0;
    for (int p = 0; p < paths; ++p) {
        IntegratingVisitor visitor{&f};
        uint64_t path_seed = substream_seed(seed, "fk-path", uint64_t(p));
        simulate_visit(spec, bspec, s, x0, T, path_seed, opts, visitor);
        double v = -visitor.acc;
        sum += v;
        sumsq += v * v;
    }
    MCEstimate est;
    est.paths = paths;
    est.s = s;
    est.x = x0;
    est.value = sum / paths;
    double var = std::max(0.0, (sumsq - sum * sum / paths) / (paths - 1));
    est.std_error = std::sqrt(var / paths);
    return est;
}

namespace {

struct MartingaleVisitor {
    const StampedField* u;
    const StampedField* f;
    const std::vector<double>* probes;
    std::vector<double> u_at;      // u(t_i, X_{t_i})
    std::vector<double> int_f;     // int_{t_i}^{t_{i+1}} f(r, X_r) dr
    size_t next_probe = 0;
    double acc = 0.0;

    void start() {
        u_at.assign(probes->size(), 0.0);
        int_f.assign(probes->size() - 1, 0.0);
        next_probe = 0;
    }

    void piece(double t0, double t1, Point x0, Point v) {
        double a = t0;
        while (true) {
            // capture due probes; one that falls exactly on this piece's end
            // is deferred to the next piece so it sees the post-event state
            // (the terminal probe has no successor and is taken here)
            while (next_probe < probes->size()) {
                double pt = (*probes)[next_probe];
                if (pt > a + 1e-15) break;
                bool last = (next_probe + 1 == probes->size());
                if (a >= t1 - 1e-15 && !last) break;
                Point xp{wrap_torus(x0[0] + v[0] * (pt - t0)),
                         wrap_torus(x0[1] + v[1] * (pt - t0))};
                u_at[next_probe] = u->eval(pt, xp);
                ++next_probe;
            }
            if (a >= t1 - 1e-15) break;
            double b = (next_probe < probes->size()) ? std::min(t1, (*probes)[next_probe]) : t1;
            double hm = 0.5 * (b - a);
            double tm = 0.5 * (a + b);
            static constexpr double g = 0.5773502691896257;
            double add = 0.0;
            for (double tau : {tm - g * hm, tm + g * hm}) {
                Point xt{wrap_torus(x0[0] + v[0] * (tau - t0)),
                         wrap_torus(x0[1] + v[1] * (tau - t0))};
                add += hm * f->eval(tau, xt);
            }
            if (next_probe >= 1 && next_probe - 1 < int_f.size()) int_f[next_probe - 1] += add;
            a = b;
        }
    }

    void segment(double t0, double t1, Point x0, Point v) { piece(t0, t1, x0, v); }
    void jump(double, Point, Point, char, bool, Point) {}
    void gaussian(double, Point, Point) {}
};

}  // namespace

std::vector<IncrementStat> martingale_residual(const std::vector<GridFunction>& u_stamps,
                                               const std::vector<GridFunction>& f_stamps,
                                               const KernelSpec& spec,
                                               const BOperatorSpec* bspec, double T,
                                               double s, Point x0,
                                               const std::vector<double>& probe_times,
                                               int paths, uint64_t seed,
                                               const McOptions& opts) {
    if (probe_times.size() < 2)
        throw ConfigError("martingale_residual: need at least two probe times");
    StampedField u = make_field(u_stamps, T);
    StampedField f = make_field(f_stamps, T);

    size_t windows = probe_times.size() - 1;
    std::vector<double> sum(windows, 0.0), sumsq(windows, 0.0);
    for (int p = 0; p < paths; ++p) {
        MartingaleVisitor visitor;
        visitor.u = &u;
        visitor.f = &f;
        visitor.probes = &probe_times;
        visitor.start();
        uint64_t path_seed = substream_seed(seed, "mart-path", uint64_t(p));
        simulate_visit(spec, bspec, s, x0, T, path_seed, opts, visitor);
        for (size_t wdx = 0; wdx < windows; ++wdx) {
            double inc = visitor.u_at[wdx + 1] - visitor.u_at[wdx] - visitor.int_f[wdx];
            sum[wdx] += inc;
            sumsq[wdx] += inc * inc;
        }
    }
    std::vector<IncrementStat> stats(windows);
    for (size_t wdx = 0; wdx < windows; ++wdx) {
        stats[wdx].t0 = probe_times[wdx];
        stats[wdx].t1 = probe_times[wdx + 1];
        stats[wdx].paths = paths;
        stats[wdx].mean = sum[wdx] / paths;
        double var = std::max(0.0, (sumsq[wdx] - sum[wdx] * sum[wdx] / paths) / (paths - 1));
        stats[wdx].std_error = std::sqrt(var / paths);
    }
    return stats;
}

}  // namespace nlcauchy

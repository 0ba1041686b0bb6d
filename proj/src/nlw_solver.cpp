#include "wavelab/nlw_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "wavelab/linear_wave.hpp"
#include "wavelab/numerics.hpp"
#include "wavelab/radial_core.hpp"

namespace wavelab {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::completed: return "completed";
        case SolveStatus::blowup_detected: return "blowup_detected";
        case SolveStatus::window_exhausted: return "window_exhausted";
    }
    return "unknown";
}

CharProfile pad_profile(const CharProfile& prof, long kmax) {
    if (kmax <= prof.kmax) return prof;
    CharProfile out(prof.h, kmax);
    for (long k = -prof.kmax; k <= prof.kmax; ++k) out.ref(k) = prof.at(k);
    return out;
}

namespace {

struct Stepper {
    const ModelParams& params;
    const DiamondOptions& opts;
    double h;
    std::size_t n;

    double source(std::size_t step, std::size_t j, double U) const {
        if (j == 0) return 0.0;
        const double r = static_cast<double>(j) * h;
        double s = 0.0;
        if (opts.nonlinear) {
            bool active = true;
            if (opts.cone_A) {
                const double edge = std::max(0.0, *opts.cone_A + static_cast<double>(step) * h);
                active = r >= edge - 1e-12 * h;
            }
            if (active) s += params.iota * signed_pow(U, 2.0 * params.m + 1.0) / std::pow(r, 2.0 * params.m);
        }
        if (opts.source && step < opts.source->frames()) s += r * opts.source->f[step][j];
        return s;
    }
};

double sup_abs_u(const std::vector<double>& U, double h, std::size_t jmax) {
    double s = 0.0;
    for (std::size_t j = 1; j <= jmax; ++j) s = std::max(s, std::fabs(U[j]) / (static_cast<double>(j) * h));
    if (U.size() > 2) s = std::max(s, std::fabs((8.0 * U[1] - U[2]) / (6.0 * h)));
    return s;
}

Evolution evolve_impl(const RadialPair& data_in, const ModelParams& params, const DiamondOptions& opts, int direction) {
    data_in.validate();
    if (!(opts.t_final > 0.0)) fail(ErrorKind::invalid_argument, "t_final must be > 0");
    if (opts.store_stride == 0) fail(ErrorKind::invalid_argument, "store_stride must be >= 1");
    RadialPair data = data_in;
    if (direction < 0)
        for (double& v : data.u1) v = -v;

    const double h = data.grid.h;
    const std::size_t n = data.grid.n;
    const std::size_t steps = static_cast<std::size_t>(std::llround(std::ceil(opts.t_final / h - 1e-9)));
    const double m = params.m;
    const double q = (2.0 * m + 1.0) * m;

    const CharProfile prof = to_characteristic(data);
    const std::vector<double> F = prof.cumulative();
    auto Fk = [&](long k) {
        k = std::clamp(k, -prof.kmax, prof.kmax);
        return F[static_cast<std::size_t>(k + prof.kmax)];
    };

    Stepper st{params, opts, h, n};
    std::vector<double> prev(n), cur(n), next(n);
    for (std::size_t j = 0; j < n; ++j) prev[j] = Fk(static_cast<long>(j)) - Fk(-static_cast<long>(j));
    prev[0] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cur[j] = Fk(1 + static_cast<long>(j)) - Fk(1 - static_cast<long>(j)) + 0.5 * h * h * st.source(0, j, prev[j]);
    }
    cur[0] = 0.0;
    std::vector<double> ut0(n);
    for (std::size_t j = 0; j < n; ++j) ut0[j] = prof.at(static_cast<long>(j)) - prof.at(-static_cast<long>(j));

    Evolution evo;
    SpaceTimeField& fld = evo.field;
    SolveOutcome& out = evo.outcome;
    fld.grid = data.grid;
    fld.t0 = 0.0;
    fld.direction = direction;
    fld.stride = opts.store_stride;
    fld.cone_A = opts.cone_A;

    auto valid_at = [&](std::size_t step) {
        const double R = data.grid.extent();
        return opts.shrink_valid ? std::max(0.0, R - static_cast<double>(step) * h) : R;
    };
    auto jmax_at = [&](std::size_t step) {
        return std::min(n - 1, static_cast<std::size_t>(std::floor(valid_at(step) / h + 1e-9)));
    };

    double s_cum = 0.0, prev_inner_root = 0.0;
    auto record = [&](std::size_t step, const std::vector<double>& U, const std::vector<double>& Ut) {
        const std::size_t jm = jmax_at(step);
        out.times.push_back(direction * static_cast<double>(step) * h);
        out.sup_u.push_back(sup_abs_u(U, h, jm));
        if (!opts.track_norms) return;
        std::vector<double> fl(jm + 1, 0.0), fs(jm + 1, 0.0);
        for (std::size_t j = 1; j <= jm; ++j) {
            const double r = static_cast<double>(j) * h;
            const double Ur = j + 1 < n ? (U[j + 1] - U[j - 1]) / (2.0 * h) : (U[j] - U[j - 1]) / h;
            fl[j] = pow_abs(Ur - U[j] / r, m) + pow_abs(Ut[j], m);
            fs[j] = pow_abs(U[j] / r, q) * pow_abs(r, m);
        }
        const double lm = simpson(fl, h).value;
        out.lm_history.push_back(lm > 0.0 ? std::pow(lm, 1.0 / m) : 0.0);
        const double inner = std::max(simpson(fs, h).value, 0.0);
        const double root = inner > 0.0 ? std::pow(inner, 1.0 / m) : 0.0;
        if (step > 0) s_cum += 0.5 * h * (prev_inner_root + root);
        prev_inner_root = root;
        out.s_norm_history.push_back(s_cum > 0.0 ? std::pow(s_cum, 1.0 / (2.0 * m + 1.0)) : 0.0);
    };
    auto store = [&](std::size_t step, const std::vector<double>& U, std::vector<double> Ut) {
        if (step % opts.store_stride != 0) return;
        fld.push(U, std::move(Ut), valid_at(step));
    };

    record(0, prev, ut0);
    store(0, prev, ut0);
    const double sup0 = std::max(out.sup_u.front(), 1e-300);
    const double boundary0 = std::fabs(prev[n - 1]);
    double umax_seen = 0.0;

    out.status = SolveStatus::completed;
    std::size_t last_step = steps;
    bool finished = steps <= 1;
    for (std::size_t s = 1; s < steps && !finished; ++s) {
        // next = U^{s+1}
        next[0] = 0.0;
        for (std::size_t j = 1; j + 1 < n; ++j)
            next[j] = cur[j - 1] + cur[j + 1] - prev[j] + h * h * st.source(s, j, cur[j]);
        next[n - 1] = cur[n - 2];
        std::vector<double> ut(n);
        for (std::size_t j = 0; j < n; ++j) ut[j] = (next[j] - prev[j]) / (2.0 * h);
        record(s, cur, ut);
        store(s, cur, ut);

        const double sup_next = sup_abs_u(next, h, jmax_at(s + 1));
        bool finite = std::isfinite(sup_next);
        for (std::size_t j = 0; j < n && finite; ++j) finite = std::isfinite(next[j]);
        umax_seen = std::max(umax_seen, std::fabs(cur[n - 1]));
        if (!finite || sup_next > opts.u_cap) {
            if (!finite && out.sup_u.back() < 10.0 * sup0)
                fail(ErrorKind::numerical, "non-finite state without preceding growth");
            out.status = SolveStatus::blowup_detected;
            last_step = s + 1;
            finished = true;
            break;
        }
        std::swap(prev, cur);
        std::swap(cur, next);
        if (s + 1 == steps) {
            std::vector<double> utf(n);
            for (std::size_t j = 0; j < n; ++j) utf[j] = 2.0 * (cur[j] - prev[j]) / h - ut[j];
            record(steps, cur, utf);
            store(steps, cur, utf);
        }
    }
    if (steps == 1) {
        std::vector<double> utf(n);
        for (std::size_t j = 0; j < n; ++j) utf[j] = 2.0 * (cur[j] - prev[j]) / h - ut0[j];
        record(1, cur, utf);
        store(1, cur, utf);
    }
    out.t_reached = direction * static_cast<double>(std::min(last_step, steps)) * h;

    if (out.status == SolveStatus::blowup_detected) {
        const double T = static_cast<double>(last_step) * h;
        out.T_plus_estimate = direction * T;
        const double lo = opts.fit_floor_steps * h;
        const double hi = 10.0 * lo;
        std::vector<double> ts, ys;
        for (std::size_t k = 0; k < out.times.size(); ++k) {
            const double gap = T - std::fabs(out.times[k]);
            if (gap >= lo && gap <= hi && out.sup_u[k] > 0.0) {
                ts.push_back(std::fabs(out.times[k]));
                ys.push_back(std::log(out.sup_u[k]));
            }
        }
        out.t_fit_lo = T - hi;
        out.t_fit_hi = T - lo;
        if (ts.size() >= 5) {
            // Power law fit with the breakdown time as a free parameter.
            auto fit_at = [&](double Tc, double* slope) {
                std::vector<double> xs(ts.size());
                for (std::size_t k = 0; k < ts.size(); ++k) xs[k] = std::log(Tc - ts[k]);
                const LineFit lf = fit_line(xs, ys);
                double res = 0.0;
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    const double e = ys[k] - lf.intercept - lf.slope * xs[k];
                    res += e * e;
                }
                if (slope) *slope = lf.slope;
                return res;
            };
            double a = T - 0.5 * lo, b = T + 0.5 * lo;
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 100; ++it) {
                const double c1 = b - g * (b - a), c2 = a + g * (b - a);
                if (fit_at(c1, nullptr) < fit_at(c2, nullptr)) b = c2;
                else a = c1;
            }
            double slope = 0.0;
            const double Tfit = 0.5 * (a + b);
            fit_at(Tfit, &slope);
            out.blowup_exponent_fit = slope;
            out.T_fit = direction * Tfit;
        }
    } else if (boundary0 < 1e-12 * sup0 && !opts.shrink_valid && umax_seen > 1e-8 * sup0 * data.grid.extent()) {
        out.status = SolveStatus::window_exhausted;
    }
    return evo;
}

SpaceTimeField subtract(const SpaceTimeField& a, const SpaceTimeField& b) {
    SpaceTimeField d = a;
    for (std::size_t i = 0; i < d.frames(); ++i)
        for (std::size_t j = 0; j < d.grid.n; ++j) {
            d.U[i][j] -= b.U[i][j];
            d.Ut[i][j] -= b.Ut[i][j];
        }
    return d;
}

}  // namespace

Evolution evolve_diamond(const RadialPair& data, const ModelParams& params, const DiamondOptions& opts) {
    return evolve_impl(data, params, opts, +1);
}

Evolution evolve_diamond_backward(const RadialPair& data, const ModelParams& params, const DiamondOptions& opts) {
    Evolution e = evolve_impl(data, params, opts, -1);
    for (auto& fr : e.field.Ut)
        for (double& v : fr) v = -v;
    return e;
}

double blowup_constant(double m) { return std::pow((m + 1.0) / (m * m), 1.0 / (2.0 * m)); }

double ode_blowup_time(double m, double c) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;
    if (!(c > 0.0)) fail(ErrorKind::invalid_argument, "ODE amplitude must be > 0");
    auto rhs = [m](const State& x, State& dx, double) {
        dx[0] = x[1];
        dx[1] = signed_pow(x[0], 2.0 * m + 1.0);
    };
    auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State>>(1e-15, 1e-15);
    State x{c, 0.0};
    double t = 0.0, dt = 1e-3;
    const double Y = 1e3 * c;
    int guard = 0;
    while (x[0] < Y) {
        if (++guard > 10000000) fail(ErrorKind::numerical, "ODE oracle did not reach the threshold");
        // Keep the step short relative to the local growth time.
        const double scale = x[0] / std::max(std::fabs(x[1]), 1e-300);
        dt = std::min(dt, 0.05 * scale);
        if (stepper.try_step(rhs, x, t, dt) == ode::fail) continue;
    }
    // Remaining time from energy conservation, y'^2 = (y^{2m+2} - c^{2m+2}) / (m + 1).
    const double y = x[0];
    const double tail = std::sqrt(m + 1.0) * std::pow(y, -m) / m *
                        (1.0 + 0.5 * std::pow(c / y, 2.0 * m + 2.0) * m / (3.0 * m + 2.0));
    return t + tail;
}

PicardResult picard_solve(const RadialPair& data, const ModelParams& params, double T, const PicardOptions& opts) {
    data.validate();
    if (!(T > 0.0)) fail(ErrorKind::invalid_argument, "T must be > 0");
    const double h = data.grid.h;
    const std::size_t nr = data.grid.n;
    const std::size_t nt = static_cast<std::size_t>(std::llround(T / h)) + 1;
    const double m = params.m;
    CharProfile prof = pad_profile(to_characteristic(data), static_cast<long>(nt + nr));
    const SpaceTimeField lin = linear_field(prof, 0.0, nt, nr);

    PicardResult res;
    res.delta = s_norm(lin, m).value;
    SpaceTimeField v = lin;
    double prev_diff = -1.0;
    SourceField src;
    src.grid = data.grid;
    src.t0 = 0.0;
    src.f.assign(nt, std::vector<double>(nr, 0.0));
    for (int it = 1; it <= opts.max_iter; ++it) {
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 1; j < nr; ++j)
                src.f[i][j] = params.iota * signed_pow(v.u(i, j), 2.0 * m + 1.0);
        const SpaceTimeField d = duhamel(src);
        SpaceTimeField vn = lin;
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < nr; ++j) {
                vn.U[i][j] += d.U[i][j];
                vn.Ut[i][j] += d.Ut[i][j];
            }
        const double diff = s_norm(subtract(vn, v), m).value;
        res.differences.push_back(diff);
        res.iterations = it;
        const double noise = 1e-12 * std::max(1.0, res.delta);
        if (prev_diff > noise && diff > noise) {
            const double f = diff / prev_diff;
            res.factors.push_back(f);
            res.max_factor = std::max(res.max_factor, f);
        }
        v = std::move(vn);
        if (diff < opts.tol) {
            res.converged = true;
            break;
        }
        if (!std::isfinite(diff) || (prev_diff > 0.0 && diff > 4.0 * prev_diff && it > 3)) break;
        prev_diff = diff;
    }
    res.s_norm = s_norm(v, m).value;
    res.field = std::move(v);
    return res;
}

Calibration calibrate_delta0(const ModelParams& params, const RadialGrid& grid, double T, const PicardOptions& opts) {
    auto ok = [&](double a, double* delta) {
        RadialPair d = sample_pair(
            grid, [a](double r) { return a * std::exp(-r * r); }, nullptr,
            [a](double r) { return -2.0 * a * r * std::exp(-r * r); });
        PicardResult pr = picard_solve(d, params, T, opts);
        if (delta) *delta = pr.delta;
        return pr.converged && pr.max_factor <= 0.5 && pr.s_norm <= 2.0 * pr.delta;
    };
    Calibration cal;
    double lo = 0.05, hi = 0.1;
    while (!ok(lo, nullptr)) {
        lo *= 0.5;
        if (lo < 1e-8) fail(ErrorKind::numerical, "calibration found no contracting amplitude");
    }
    hi = 2.0 * lo;
    while (ok(hi, nullptr)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) fail(ErrorKind::numerical, "calibration did not find an upper bracket");
    }
    for (int k = 0; k < 30 && hi / lo > 1.0 + 1e-4; ++k) {
        const double mid = std::sqrt(lo * hi);
        if (ok(mid, nullptr)) lo = mid;
        else hi = mid;
        cal.bisection_steps = k + 1;
    }
    double delta = 0.0;
    ok(lo, &delta);
    cal.amplitude0 = lo;
    cal.delta0 = delta;
    return cal;
}

namespace {

// Discrete characteristic increments a_k = F_k - F_{k-1} of the free wave matching
// slices (n-1, n); returned on global indices [n - J, n + J].
std::vector<double> increments(const std::vector<double>& Uprev, const std::vector<double>& Ucur) {
    const std::size_t N = Ucur.size();
    const long J = static_cast<long>(N) - 1;
    // b[k - (n - J)] = a_{k-1} + a_k for k in [n - J + 1, n + J]
    std::vector<double> b(static_cast<std::size_t>(2 * J + 1), 0.0);
    for (long j = 1; j <= J; ++j) {
        b[static_cast<std::size_t>(J + j)] = Ucur[static_cast<std::size_t>(j)] - Uprev[static_cast<std::size_t>(j - 1)];
        b[static_cast<std::size_t>(J - j + 1)] = Uprev[static_cast<std::size_t>(j)] - Ucur[static_cast<std::size_t>(j - 1)];
    }
    std::vector<double> a(static_cast<std::size_t>(2 * J + 1), 0.0);
    for (long k = 2 * J; k >= 1; --k) a[static_cast<std::size_t>(k - 1)] = b[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k)];
    return a;
}

}  // namespace

ScatterReport scattering_extract(const Evolution& evo, const RadialPair& data, const ModelParams& params,
                                 double scatter_tol, std::size_t sample_every) {
    const SpaceTimeField& f = evo.field;
    if (f.stride != 1 || f.direction != 1) fail(ErrorKind::invalid_argument, "scattering extraction needs every forward frame");
    if (f.frames() < 3) fail(ErrorKind::invalid_argument, "too few frames");
    const double m = params.m;
    const double h = f.grid.h;
    const long J = static_cast<long>(f.grid.n) - 1;
    const long nmax = static_cast<long>(f.frames()) - 1;
    const long gmin = -J, gmax = nmax + J;
    const std::size_t G = static_cast<std::size_t>(gmax - gmin + 1);

    auto global = [&](long n) {
        std::vector<double> a = increments(f.U[static_cast<std::size_t>(n - 1)], f.U[static_cast<std::size_t>(n)]);
        std::vector<double> g(G, 0.0);
        for (long k = n - J; k <= n + J; ++k) g[static_cast<std::size_t>(k - gmin)] = a[static_cast<std::size_t>(k - (n - J))];
        return g;
    };
    auto em_dist = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (std::size_t k = 0; k < G; ++k) s += pow_abs(2.0 * (x[k] - y[k]) / h, m) * h;
        return s > 0.0 ? std::pow(s, 1.0 / m) : 0.0;
    };

    ScatterReport rep;
    rep.data_norm = lm_norm(data, m).value;
    const std::vector<double> first = global(1);
    const std::vector<double> last = global(nmax);
    const double em0 = em_dist(first, std::vector<double>(G, 0.0));

    std::vector<long> samples;
    for (long n = 1; n <= nmax; n += static_cast<long>(std::max<std::size_t>(sample_every, 1))) samples.push_back(n);
    if (samples.back() != nmax) samples.push_back(nmax);

    std::vector<double> prev = first;
    for (long n : samples) {
        const std::vector<double> cur = global(n);
        rep.times.push_back(f.t(static_cast<std::size_t>(n)));
        rep.pullback_distance.push_back(em0 > 0.0 ? em_dist(cur, last) / em0 : 0.0);
        rep.drift = std::max(rep.drift, em0 > 0.0 ? em_dist(cur, prev) / em0 : 0.0);
        prev = cur;
        // State difference u(t_n) - u_L(t_n) as a local profile around sigma = t_n.
        CharProfile loc(h, J);
        for (long k = -J; k <= J; ++k) {
            const long gk = n + k;
            auto at = [&](long idx) {
                if (idx < gmin || idx > gmax) return 0.0;
                const std::size_t s = static_cast<std::size_t>(idx - gmin);
                return cur[s] - last[s];
            };
            loc.ref(k) = 0.5 * (at(gk) + at(gk + 1)) / h;
        }
        const RadialPair diff = from_characteristic(loc, 0.0);
        rep.lm_distance.push_back(lm_norm(diff, m).value);
    }
    const std::size_t half = rep.lm_distance.size() / 2;
    for (std::size_t k = half; k < rep.lm_distance.size(); ++k) rep.tail_distance = std::max(rep.tail_distance, rep.lm_distance[k]);
    rep.relative_tail = rep.data_norm > 0.0 ? rep.tail_distance / rep.data_norm : 0.0;
    rep.cauchy = evo.outcome.status == SolveStatus::completed && rep.relative_tail < scatter_tol;
    rep.scattering_observed = rep.cauchy;

    rep.profile = CharProfile(h, gmax);
    for (long k = gmin; k <= gmax; ++k) {
        const std::size_t s = static_cast<std::size_t>(k - gmin);
        const double nxt = k + 1 <= gmax ? last[s + 1] : 0.0;
        rep.profile.ref(k) = 0.5 * (last[s] + nxt) / h;
    }
    return rep;
}

FrameEnergy exterior_frame_energy(const SpaceTimeField& f, std::size_t i, double m, double r_from) {
    const std::size_t n = f.grid.n;
    const double h = f.grid.h;
    const std::size_t jm = std::min(n - 1, static_cast<std::size_t>(std::floor(f.radius_limit(i) / h + 1e-9)));
    const std::vector<double> Ur = derivative(f.U[i], h);
    std::vector<double> pm(jm + 1, 0.0), gr(jm + 1, 0.0);
    for (std::size_t j = 0; j <= jm; ++j) {
        const double Ut = f.Ut[i][j];
        pm[j] = pow_abs(Ur[j] + Ut, m) + pow_abs(Ur[j] - Ut, m);
        const double r = f.grid.r(j);
        const double rur = j > 0 ? Ur[j] - f.U[i][j] / r : 0.0;
        gr[j] = pow_abs(rur, m) + pow_abs(Ut, m);
    }
    FrameEnergy e;
    if (r_from >= f.grid.r(jm)) return e;
    e.pm = trapezoid_from(pm, h, r_from);
    e.grad = trapezoid_from(gr, h, r_from);
    return e;
}

PerturbationReport perturbation_check(const RadialPair& u_data, const RadialPair& ut_data, const SourceField* error_source,
                                      double A, const ModelParams& params, double T) {
    if (!u_data.grid.same_as(ut_data.grid)) fail(ErrorKind::grid_mismatch, "data grids differ");
    const double m = params.m;
    const bool whole = std::isinf(A) && A < 0.0;
    PerturbationReport rep;
    rep.A = A;

    DiamondOptions full;
    full.t_final = T;
    full.track_norms = false;
    DiamondOptions trunc = full;
    if (!whole) trunc.cone_A = A;
    trunc.source = error_source;
    DiamondOptions lin = full;
    lin.nonlinear = false;

    const Evolution u = evolve_diamond(u_data, params, full);
    const Evolution ut = evolve_diamond(ut_data, params, trunc);
    RadialPair diff = u_data;
    for (std::size_t j = 0; j < diff.grid.n; ++j) {
        diff.u0[j] -= ut_data.u0[j];
        diff.u1[j] -= ut_data.u1[j];
    }
    if (diff.du0 && ut_data.du0)
        for (std::size_t j = 0; j < diff.grid.n; ++j) (*diff.du0)[j] -= (*ut_data.du0)[j];
    else
        diff.du0.reset();
    const Evolution rl = evolve_diamond(diff, params, lin);
    if (u.outcome.status == SolveStatus::blowup_detected || ut.outcome.status == SolveStatus::blowup_detected) {
        rep.blowup = true;
        return rep;
    }
    const std::size_t nf = std::min({u.field.frames(), ut.field.frames(), rl.field.frames()});
    SpaceTimeField eps = u.field;
    eps.U.resize(nf);
    eps.Ut.resize(nf);
    eps.valid_radius.resize(nf);
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < eps.grid.n; ++j) {
            eps.U[i][j] -= ut.field.U[i][j] + rl.field.U[i][j];
            eps.Ut[i][j] -= ut.field.Ut[i][j] + rl.field.Ut[i][j];
        }
    const double tend = eps.t(nf - 1);
    const ConeRegion region(0.0, tend, A);
    rep.eps_s_norm = s_norm(eps, m, region).value;
    rep.M = s_norm(ut.field, m, region).value;
    double err_int = 0.0;
    if (error_source) {
        std::vector<double> per(std::min(nf, error_source->frames()), 0.0);
        for (std::size_t i = 0; i < per.size(); ++i) {
            std::vector<double> g(eps.grid.n);
            for (std::size_t j = 0; j < g.size(); ++j) g[j] = pow_abs(eps.grid.r(j) * error_source->f[i][j], m);
            const double v = trapezoid_from(g, eps.grid.h, region.r_min(eps.t(i)));
            per[i] = v > 0.0 ? std::pow(v, 1.0 / m) : 0.0;
        }
        err_int = trapezoid(per, eps.grid.h).value;
    }
    rep.eps_small = s_norm(rl.field, m, region).value + err_int;
    for (std::size_t i = 0; i < nf; ++i)
        rep.eps_energy_sup = std::max(rep.eps_energy_sup, exterior_frame_energy(eps, i, m, region.r_min(eps.t(i))).grad);
    const double lhs = rep.eps_s_norm + (rep.eps_energy_sup > 0.0 ? std::pow(rep.eps_energy_sup, 1.0 / m) : 0.0);
    rep.C_M = rep.eps_small > 0.0 ? lhs / rep.eps_small : 0.0;
    return rep;
}

BB1Report bb1_experiment(const RadialPair& data, const ModelParams& params, double A, double T, double eta_fraction) {
    BB1Report rep;
    rep.A = A;
    const double m = params.m;
    const RadialPair td = truncate_TA(data, A);
    bool zero = true;
    for (std::size_t j = 0; j < td.grid.n && zero; ++j) zero = td.u0[j] == 0.0 && td.u1[j] == 0.0;
    if (zero) {
        rep.excluded = true;
        return rep;
    }
    const CharProfile prof = to_characteristic(td);
    const ChannelReport lin = channel_report(prof, m, A, {});
    rep.linear_prediction = std::max(lin.left, lin.right);
    rep.exterior_data = lin.lhs;

    DiamondOptions opts;
    opts.t_final = T;
    opts.cone_A = A;
    opts.shrink_valid = true;
    opts.track_norms = false;
    const Evolution fw = evolve_diamond(td, params, opts);
    const Evolution bw = evolve_diamond_backward(td, params, opts);
    rep.forward_status = fw.outcome.status;
    rep.backward_status = bw.outcome.status;
    auto scan = [&](const Evolution& e, double& inf_pm, double& inf_grad) {
        inf_pm = inf_grad = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < e.field.frames(); ++i) {
            const double t = e.field.t(i);
            const FrameEnergy fe = exterior_frame_energy(e.field, i, m, std::max(0.0, A + std::fabs(t)));
            inf_pm = std::min(inf_pm, fe.pm);
            inf_grad = std::min(inf_grad, fe.grad);
        }
        if (e.outcome.status == SolveStatus::blowup_detected) inf_pm = inf_grad = 0.0;
    };
    scan(fw, rep.inf_forward, rep.inf_forward_grad);
    scan(bw, rep.inf_backward, rep.inf_backward_grad);
    rep.eta = eta_fraction * rep.exterior_data;
    rep.channel_observed = std::max(rep.inf_forward, rep.inf_backward) >= rep.eta && rep.eta > 0.0;
    return rep;
}

namespace {

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_f64(std::istream& is) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) fail(ErrorKind::invalid_argument, "truncated checkpoint");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

}  // namespace

void write_checkpoint(std::ostream& os, const SpaceTimeField& field, const ModelParams& params) {
    std::ostringstream hdr;
    hdr.precision(17);
    hdr << "wavelab-checkpoint h=" << field.grid.h << " n=" << field.grid.n << " m=" << params.m << " iota=" << params.iota
        << " A=";
    if (field.cone_A) hdr << *field.cone_A;
    else hdr << "none";
    hdr << " frames=" << field.frames() << "\n";
    os << hdr.str();
    for (std::size_t i = 0; i < field.frames(); ++i) {
        put_f64(os, field.t(i));
        for (double v : field.U[i]) put_f64(os, v);
        for (double v : field.Ut[i]) put_f64(os, v);
    }
}

SpaceTimeField read_checkpoint(std::istream& is, ModelParams* params) {
    std::string line;
    if (!std::getline(is, line)) fail(ErrorKind::invalid_argument, "missing checkpoint header");
    std::istringstream hs(line);
    std::string tag;
    hs >> tag;
    if (tag != "wavelab-checkpoint") fail(ErrorKind::invalid_argument, "not a checkpoint");
    double h = 0.0, m = 0.0;
    std::size_t n = 0, frames = 0;
    int iota = 1;
    std::string A = "none";
    std::string kv;
    while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) fail(ErrorKind::invalid_argument, "bad checkpoint header field");
        const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "h") h = std::stod(v);
        else if (k == "n") n = std::stoul(v);
        else if (k == "m") m = std::stod(v);
        else if (k == "iota") iota = std::stoi(v);
        else if (k == "A") A = v;
        else if (k == "frames") frames = std::stoul(v);
        else fail(ErrorKind::invalid_argument, "unknown checkpoint header field " + k);
    }
    SpaceTimeField f;
    f.grid = RadialGrid(h, n);
    if (A != "none") f.cone_A = std::stod(A);
    if (params) *params = ModelParams(m, iota);
    std::vector<double> times;
    for (std::size_t i = 0; i < frames; ++i) {
        times.push_back(get_f64(is));
        std::vector<double> U(n), Ut(n);
        for (double& v : U) v = get_f64(is);
        for (double& v : Ut) v = get_f64(is);
        f.push(std::move(U), std::move(Ut), f.grid.extent());
    }
    if (!times.empty()) {
        f.t0 = times.front();
        if (times.size() > 1) {
            const double dt = times[1] - times[0];
            f.direction = dt < 0.0 ? -1 : 1;
            f.stride = static_cast<std::size_t>(std::llround(std::fabs(dt) / h));
            if (f.stride == 0) f.stride = 1;
        }
    }
    return f;
}

}  // namespace wavelab

#include "wavelab/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include <boost/numeric/odeint.hpp>

#include "json.hpp"
#include "wavelab/numerics.hpp"

namespace wavelab {

namespace ode = boost::numeric::odeint;
using State2 = std::array<double, 2>;

namespace {

std::vector<double> tail_integral(const std::vector<double>& f, double ds) {
    // int_{s_k}^{s_end} f ds for every node
    const std::vector<double> c = cumulative_integral(f, ds);
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = c.back() - c[k];
    return out;
}

struct TailAttempt {
    std::vector<double> s, r, delta, gp;
    std::vector<double> distances, factors;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool contracting = true;
};

TailAttempt tail_attempt(double m, int iota, double ell, double r0, const TailOptions& o) {
    TailAttempt a;
    const double s0 = std::log(r0), s1 = std::log(o.R_max);
    const std::size_t N = static_cast<std::size_t>(std::ceil((s1 - s0) / o.ds)) + 1;
    const double ds = (s1 - s0) / static_cast<double>(N - 1);
    a.s.resize(N);
    a.r.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        a.s[k] = s0 + static_cast<double>(k) * ds;
        a.r[k] = std::exp(a.s[k]);
    }
    a.r.back() = o.R_max;
    const double R = o.R_max;
    const double w = 2.0 * m - 2.0;
    const double scale = std::max(1.0, std::fabs(ell));
    std::vector<double> delta(N, 0.0), f2(N), f1(N);
    auto apply = [&](const std::vector<double>& d, std::vector<double>& out, std::vector<double>* gp) {
        for (std::size_t k = 0; k < N; ++k) {
            const double g = ell + d[k];
            const double phi = signed_pow(g, 2.0 * m + 1.0) * std::pow(a.r[k], -2.0 * m);
            f2[k] = phi * a.r[k] * a.r[k];
            f1[k] = phi * a.r[k];
        }
        const std::vector<double> I1 = tail_integral(f2, ds);
        const std::vector<double> I0 = tail_integral(f1, ds);
        const double c = signed_pow(ell + d.back(), 2.0 * m + 1.0);
        out.resize(N);
        for (std::size_t k = 0; k < N; ++k) {
            const double rk = a.r[k];
            const double closure =
                c * (std::pow(R, 2.0 - 2.0 * m) / (2.0 * m - 2.0) - rk * std::pow(R, 1.0 - 2.0 * m) / (2.0 * m - 1.0));
            out[k] = -iota * (I1[k] - rk * I0[k] + closure);
        }
        if (gp) {
            gp->resize(N);
            for (std::size_t k = 0; k < N; ++k) (*gp)[k] = iota * (I0[k] + c * std::pow(R, 1.0 - 2.0 * m) / (2.0 * m - 1.0));
        }
    };
    auto dist = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double d = 0.0;
        for (std::size_t k = 0; k < N; ++k) d = std::max(d, std::pow(a.r[k], w) * std::fabs(x[k] - y[k]));
        return d;
    };
    std::vector<double> next;
    const double noise = 1e-14 * scale;
    for (int it = 1; it <= o.max_iter; ++it) {
        apply(delta, next, nullptr);
        const double d = dist(next, delta);
        if (!std::isfinite(d)) {
            a.contracting = false;
            break;
        }
        if (!a.distances.empty() && a.distances.back() > noise && d > noise) a.factors.push_back(d / a.distances.back());
        a.distances.push_back(d);
        delta.swap(next);
        a.iterations = it;
        if (!a.factors.empty() && a.factors.back() >= 0.5 && it <= 4) {
            a.contracting = false;
            break;
        }
        if (d < o.tol * scale) {
            a.converged = true;
            break;
        }
    }
    apply(delta, next, &a.gp);
    a.residual = dist(next, delta);
    a.delta = delta;
    return a;
}

double fit_power(const std::vector<double>& r, const std::vector<double>& y, double lo, double hi, double* constant) {
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k] >= lo && r[k] <= hi && std::fabs(y[k]) > 1e-13) {
            xs.push_back(std::log(r[k]));
            ys.push_back(std::log(std::fabs(y[k])));
        }
    if (xs.size() < 3) return 0.0;
    const LineFit lf = fit_line(xs, ys);
    if (constant) *constant = std::exp(lf.intercept);
    return lf.slope;
}

}  // namespace

TailSolution fixed_point_tail(const ModelParams& params, const TailOptions& opts, double ell) {
    if (ell == 0.0) fail(ErrorKind::invalid_argument, "ell must be nonzero");
    if (!(opts.r0 > 0.0) || !(opts.R_max > 2.0 * opts.r0)) fail(ErrorKind::invalid_argument, "need 0 < r0 < R_max / 2");
    TailSolution out;
    out.m = params.m;
    out.iota = params.iota;
    out.ell = ell;
    out.R_max = opts.R_max;
    double r0 = opts.r0;
    for (int esc = 0; esc <= opts.max_escalations; ++esc) {
        if (r0 * 2.0 > opts.R_max) break;
        TailAttempt a = tail_attempt(params.m, params.iota, ell, r0, opts);
        const double worst = a.factors.empty() ? 0.0 : *std::max_element(a.factors.begin(), a.factors.end());
        if (a.contracting && a.converged && worst < 0.5) {
            out.r0 = r0;
            out.r = a.r;
            out.g.resize(a.r.size());
            for (std::size_t k = 0; k < a.r.size(); ++k) out.g[k] = ell + a.delta[k];
            out.gp = a.gp;
            out.distances = a.distances;
            out.factors = a.factors;
            out.contraction = worst;
            out.residual = a.residual;
            out.iterations = a.iterations;
            out.escalations = esc;
            out.converged = true;
            return out;
        }
        r0 *= 2.0;
    }
    fail(ErrorKind::numerical, "tail fixed point did not contract after escalation");
}

namespace {

struct Integrator {
    double m;
    int iota;
    double rtol, atol;

    // d/dr (g, g')
    void rhs_r(const State2& x, State2& dx, double r) const {
        dx[0] = x[1];
        dx[1] = -iota * std::pow(r, -2.0 * m) * signed_pow(x[0], 2.0 * m + 1.0);
    }
    // d/ds (g, p = r g'), r = e^s
    void rhs_s(const State2& x, State2& dx, double s) const {
        const double r = std::exp(s);
        dx[0] = x[1];
        dx[1] = x[1] - iota * std::pow(r, 2.0 - 2.0 * m) * signed_pow(x[0], 2.0 * m + 1.0);
    }
};

void integrate_r(const Integrator& I, State2& x, double from, double to) {
    if (from == to) return;
    auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State2>>(I.atol, I.rtol);
    auto rhs = [&I](const State2& y, State2& dy, double r) { I.rhs_r(y, dy, r); };
    ode::integrate_adaptive(stepper, rhs, x, from, to, 0.01 * (to - from));
}

}  // namespace

double StationaryProfile::g_at(double radius) const {
    if (r.empty()) fail(ErrorKind::invalid_argument, "empty profile");
    if (radius < r.front() || radius > r.back()) fail(ErrorKind::window_violation, "radius outside the profile");
    const auto it = std::lower_bound(r.begin(), r.end(), radius);
    std::size_t k = static_cast<std::size_t>(it - r.begin());
    if (k == r.size()) k = r.size() - 1;
    if (k > 0 && std::fabs(r[k - 1] - radius) < std::fabs(r[k] - radius) && !singular) k -= 1;
    State2 x{g[k], gp[k]};
    Integrator I{m, iota, 1e-14, 1e-16};
    integrate_r(I, x, r[k], radius);
    return x[0];
}

StationaryProfile continue_inward(const TailSolution& tail, const InwardOptions& o) {
    if (!tail.converged || tail.r.empty()) fail(ErrorKind::invalid_argument, "tail solution not converged");
    StationaryProfile p;
    p.m = tail.m;
    p.iota = tail.iota;
    p.ell = tail.ell;
    p.r0 = tail.r0;
    p.R_max = tail.R_max;
    p.fixed_point_residual = tail.residual;
    p.contraction = tail.contraction;
    const double m = tail.m;
    Integrator I{m, tail.iota, o.rtol, o.atol};
    std::vector<double> rin, gin, gpin;  // decreasing r

    if (tail.iota > 0) {
        if (!(o.r_min > 0.0 && o.r_min < tail.r0)) fail(ErrorKind::invalid_argument, "r_min must lie in (0, r0)");
        const double s0 = std::log(tail.r0), s1 = std::log(o.r_min);
        const std::size_t N = static_cast<std::size_t>(std::floor((s0 - s1) / o.ds_out + 1e-9));
        State2 x{tail.g.front(), tail.r0 * tail.gp.front()};
        auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State2>>(o.atol, o.rtol);
        auto rhs = [&I](const State2& y, State2& dy, double s) { I.rhs_s(y, dy, s); };
        std::vector<double> su{s0}, gu{x[0]}, pu{x[1]};
        for (std::size_t k = 1; k <= N; ++k) {
            const double a = s0 - static_cast<double>(k - 1) * o.ds_out;
            const double b = s0 - static_cast<double>(k) * o.ds_out;
            ode::integrate_adaptive(stepper, rhs, x, a, b, -0.25 * o.ds_out);
            if (!std::isfinite(x[0]) || !std::isfinite(x[1])) fail(ErrorKind::numerical, "non-finite focusing trajectory");
            su.push_back(b);
            gu.push_back(x[0]);
            pu.push_back(x[1]);
        }
        for (std::size_t k = su.size(); k-- > 1;) {
            const double rr = std::exp(su[k]);
            rin.push_back(rr);
            gin.push_back(gu[k]);
            gpin.push_back(pu[k] / rr);
        }
        std::reverse(su.begin(), su.end());
        std::reverse(gu.begin(), gu.end());
        std::reverse(pu.begin(), pu.end());
        p.s_uniform = std::move(su);
        p.g_uniform = std::move(gu);
        p.p_uniform = std::move(pu);
        p.R_detect = 0.0;
        p.r_min_reached = std::exp(p.s_uniform.front());
        p.singular = false;
    } else {
        // Regular layer in r, then ln|g| as the independent variable in the singular layer.
        const double g_switch = 1e3;
        State2 x{tail.g.front(), tail.gp.front()};
        double r = tail.r0;
        auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State2>>(o.atol, o.rtol);
        auto rhs = [&I](const State2& y, State2& dy, double rr) { I.rhs_r(y, dy, rr); };
        double dt = -o.dr_out;
        bool switched = false;
        while (r > o.r_min) {
            dt = std::max(dt, -o.dr_out);
            dt = std::max(dt, o.r_min - r);
            const State2 keep = x;
            const double rkeep = r;
            if (stepper.try_step(rhs, x, r, dt) == ode::fail) {
                if (std::fabs(dt) < 1e-15 * r) fail(ErrorKind::numerical, "step underflow before the singular layer");
                continue;
            }
            if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
                x = keep;
                r = rkeep;
                dt *= 0.25;
                continue;
            }
            rin.push_back(r);
            gin.push_back(x[0]);
            gpin.push_back(x[1]);
            if (std::fabs(x[0]) > g_switch) {
                switched = true;
                break;
            }
        }
        if (!switched) {
            p.singular = false;
            p.R_detect = 0.0;
            p.r_min_reached = r;
        } else {
            const double sg = x[0] > 0.0 ? 1.0 : -1.0;
            // State (r, q = d|g|/dr) against w = ln|g|.
            State2 y{r, sg * x[1]};
            auto rhs_w = [m](const State2& st, State2& dst, double w) {
                const double yv = std::exp(w);
                const double drdw = yv / st[1];
                dst[0] = drdw;
                dst[1] = std::pow(st[0], -2.0 * m) * std::pow(yv, 2.0 * m + 1.0) * drdw;
            };
            const double w0 = std::log(std::fabs(x[0]));
            const double w1 = std::log(o.g_cap * std::max(1.0, r));
            auto stw = ode::make_controlled<ode::runge_kutta_fehlberg78<State2>>(o.atol, o.rtol);
            const int pieces = 200;
            for (int k = 1; k <= pieces; ++k) {
                const double a = w0 + (w1 - w0) * (k - 1) / pieces;
                const double b = w0 + (w1 - w0) * k / pieces;
                ode::integrate_adaptive(stw, rhs_w, y, a, b, 0.1 * (b - a));
                if (y[0] < rin.back()) {
                    rin.push_back(y[0]);
                    gin.push_back(sg * std::exp(b));
                    gpin.push_back(sg * y[1]);
                }
            }
            if (y[0] <= rin.back()) {
                rin.back() = y[0];
                gin.back() = sg * std::exp(w1);
                gpin.back() = sg * y[1];
            }
            p.singular = true;
            p.R_detect = y[0];
            p.r_min_reached = y[0];
        }
        std::reverse(rin.begin(), rin.end());
        std::reverse(gin.begin(), gin.end());
        std::reverse(gpin.begin(), gpin.end());
    }
    p.r = rin;
    p.g = gin;
    p.gp = gpin;
    // Append the tail nodes above r0.
    for (std::size_t k = 0; k < tail.r.size(); ++k) {
        if (!p.r.empty() && tail.r[k] <= p.r.back()) continue;
        p.r.push_back(tail.r[k]);
        p.g.push_back(tail.g[k]);
        p.gp.push_back(tail.gp[k]);
    }
    p.g_inner = std::fabs(p.g.front());
    p.Z_inner = std::fabs(p.g.front()) / p.r.front();

    std::vector<double> dev(tail.r.size()), dev_d(tail.r.size());
    for (std::size_t k = 0; k < tail.r.size(); ++k) {
        dev[k] = tail.g[k] - tail.ell;
        dev_d[k] = tail.r[k] * tail.gp[k] - dev[k];
    }
    const double kappa = std::pow(std::fabs(tail.ell), m / (m - 1.0));
    const double lo = std::max(4.0 * tail.r0, 5.0 * kappa), hi = tail.R_max / 4.0;
    p.tail_exponent = fit_power(tail.r, dev, lo, hi, &p.tail_constant);
    p.tail_exponent_deriv = fit_power(tail.r, dev_d, lo, hi, nullptr);
    return p;
}

StationaryProfile build_stationary(const ModelParams& params, double ell, const TailOptions& topts, const InwardOptions& iopts) {
    TailOptions t = topts;
    const double kappa = std::pow(std::fabs(ell), params.m / (params.m - 1.0));
    if (kappa > 1.0) {
        t.r0 *= kappa;
        t.R_max *= kappa;
    }
    return continue_inward(fixed_point_tail(params, t, ell), iopts);
}

StationaryResiduals stationary_residuals(const StationaryProfile& prof) {
    StationaryResiduals res;
    if (prof.iota < 0 || prof.s_uniform.size() < 3) return res;
    const double m = prof.m;
    const Integrator I{m, prof.iota, 1e-15, 1e-300};
    static constexpr double w8[9] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    const double ds_out = prof.s_uniform[1] - prof.s_uniform[0];

    // ODE residual: g'' from an eighth-order stencil of g alone, sampled by short
    // re-integrations around every output node with the step set by the local rate.
    static constexpr double w2[9] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
    for (std::size_t k = 1; k + 1 < prof.s_uniform.size(); ++k) {
        const double sc = prof.s_uniform[k];
        const State2 xc{prof.g_uniform[k], prof.p_uniform[k]};
        State2 dxc;
        I.rhs_s(xc, dxc, sc);
        const double src = xc[1] - dxc[1];
        const double ag = std::fabs(xc[0]) + 1e-300;
        // Oscillation frequency of the linearised equation, and the variation rate of the
        // source weighted by its share of the local terms (the stencil error scales with its
        // eighth power).
        const double weight = std::fabs(src) / (std::fabs(src) + std::fabs(xc[1]) + std::fabs(dxc[1]) + 1e-300);
        const double omega = std::max(1.0, std::sqrt(std::fabs(src) / ag));
        const double rate = std::pow(weight, 0.125) * ((2.0 * m + 1.0) * std::fabs(xc[1]) / ag + 2.0 * m - 2.0);
        const double delta = std::min({ds_out, 0.015 / omega, 0.1 / std::max(rate, 1.0)});
        double st[9];
        st[4] = xc[0];
        // Local variable tau = s - sc keeps the stencil offsets exact.
        auto rhs_local = [&I, sc](const State2& y, State2& dy, double tau) { I.rhs_s(y, dy, sc + tau); };
        for (int side : {-1, 1}) {
            State2 x = xc;
            auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State2>>(1e-300, 1e-15);
            double tau = 0.0;
            for (int j = 1; j <= 4; ++j) {
                const double to = side * j * delta;
                ode::integrate_adaptive(stepper, rhs_local, x, tau, to, side * 0.25 * delta);
                tau = to;
                st[4 + side * j] = x[0];
            }
        }
        double d1 = 0.0, d2 = 0.0;
        for (int j = 0; j < 9; ++j) {
            d1 += w8[j] * st[j];
            d2 += w2[j] * st[j];
        }
        d1 /= delta;
        d2 /= delta * delta;
        // r^2 g'' = g_ss - g_s
        const double e = std::fabs(d2 - d1 + src) / (std::fabs(d2) + std::fabs(d1) + std::fabs(src) + 1e-300);
        res.ode = std::max(res.ode, e);
    }

    // Lyapunov law and the v-identity in integrated form: the change of G (resp. H) along the
    // trajectory against the integral of the claimed derivative, carried as extra states.
    using State4 = std::array<double, 4>;
    auto lyap = [m](double s, double g, double p) {
        const double r = std::exp(s);
        const double gpr = p / r;
        return 0.5 * gpr * gpr + pow_abs(g, 2.0 * m + 2.0) / ((2.0 * m + 2.0) * std::pow(r, 2.0 * m));
    };
    auto vq = [m](double s, double g, double p, double* dv) {
        const double r = std::exp(s);
        const double v = std::pow(r, 1.0 / m - 1.0) * g;
        *dv = (1.0 / m - 1.0) * v + std::pow(r, 1.0 / m - 1.0) * p;
        return 0.5 * (*dv) * (*dv) - (m - 1.0) / (2.0 * m * m) * v * v + pow_abs(v, 2.0 * m + 2.0) / (2.0 * m + 2.0);
    };
    auto rhs4 = [&](const State4& y, State4& dy, double s) {
        const double r = std::exp(s);
        dy[0] = y[1];
        dy[1] = y[1] - prof.iota * std::pow(r, 2.0 - 2.0 * m) * signed_pow(y[0], 2.0 * m + 1.0);
        dy[2] = -(m / (m + 1.0)) * pow_abs(y[0], 2.0 * m + 2.0) / std::pow(r, 2.0 * m);
        double dv = 0.0;
        vq(s, y[0], y[1], &dv);
        dy[3] = (2.0 - m) / m * dv * dv;
    };
    const std::size_t N = prof.s_uniform.size();
    State4 y{prof.g_uniform[N - 1], prof.p_uniform[N - 1], 0.0, 0.0};
    double dv0 = 0.0;
    const double G0 = lyap(prof.s_uniform[N - 1], y[0], y[1]);
    const double H0 = vq(prof.s_uniform[N - 1], y[0], y[1], &dv0);
    auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State4>>(1e-300, 1e-15);
    for (std::size_t k = N - 1; k-- > 0;) {
        const double a = prof.s_uniform[k + 1], b = prof.s_uniform[k];
        ode::integrate_adaptive(stepper, rhs4, y, a, b, -0.25 * ds_out);
        double dv = 0.0;
        const double dG = lyap(b, y[0], y[1]) - G0;
        const double dH = vq(b, y[0], y[1], &dv) - H0;
        res.lyapunov = std::max(res.lyapunov, std::fabs(dG - y[2]) / (std::max(std::fabs(dG), std::fabs(y[2])) + 1e-300));
        res.identity = std::max(res.identity, std::fabs(dH - y[3]) / (std::max(std::fabs(dH), std::fabs(y[3])) + 1e-300));
    }
    return res;
}

StationaryProfile z_ell(const StationaryProfile& prof, double ell) {
    if (ell == 0.0) fail(ErrorKind::invalid_argument, "ell must be nonzero");
    const double m = prof.m;
    const double kappa = std::pow(std::fabs(ell), m / (m - 1.0));
    const double sg = ell > 0.0 ? 1.0 : -1.0;
    const double mag = std::fabs(ell);
    StationaryProfile out = prof;
    out.ell = prof.ell * ell;
    for (std::size_t k = 0; k < prof.r.size(); ++k) {
        out.r[k] = kappa * prof.r[k];
        out.g[k] = sg * mag * prof.g[k];
        out.gp[k] = sg * mag * prof.gp[k] / kappa;
    }
    for (std::size_t k = 0; k < prof.s_uniform.size(); ++k) {
        out.s_uniform[k] = prof.s_uniform[k] + std::log(kappa);
        out.g_uniform[k] = sg * mag * prof.g_uniform[k];
        out.p_uniform[k] = sg * mag * prof.p_uniform[k];
    }
    out.R_detect = kappa * prof.R_detect;
    out.r_min_reached = kappa * prof.r_min_reached;
    out.r0 = kappa * prof.r0;
    out.R_max = kappa * prof.R_max;
    out.g_inner = mag * prof.g_inner;
    out.Z_inner = mag / kappa * prof.Z_inner;
    out.tail_constant = prof.tail_constant * mag * std::pow(kappa, -prof.tail_exponent);
    return out;
}

L3mReport not_in_l3m_check(const StationaryProfile& prof) {
    L3mReport rep;
    if (prof.iota < 0) {
        rep.excluded = true;
        return rep;
    }
    const double m = prof.m;
    // int |Z|^{3m} r^2 dr = int |g|^{3m} r^{3 - 3m} ds on the log grid; trapezoid from each r_min.
    const std::size_t N = prof.r.size();
    std::vector<double> cum(N, 0.0);  // int_{r_k}^{R_max}
    for (std::size_t k = N - 1; k-- > 0;) {
        auto f = [&](std::size_t i) { return pow_abs(prof.g[i], 3.0 * m) * std::pow(prof.r[i], 3.0 - 3.0 * m); };
        const double dsl = std::log(prof.r[k + 1]) - std::log(prof.r[k]);
        cum[k] = cum[k + 1] + 0.5 * dsl * (f(k) + f(k + 1));
    }
    auto at = [&](double rm) {
        const auto it = std::lower_bound(prof.r.begin(), prof.r.end(), rm * (1.0 - 1e-12));
        return cum[static_cast<std::size_t>(it - prof.r.begin())];
    };
    const double rlo = prof.r.front();
    for (int e = 0; std::pow(10.0, -e) >= rlo * (1.0 - 1e-6); ++e) {
        const double rm = std::max(std::pow(10.0, -e), rlo);
        rep.r_min.push_back(rm);
        rep.partial.push_back(at(rm));
    }
    rep.tail_integral = at(1.0);
    const std::size_t K = rep.partial.size();
    if (K >= 3) {
        rep.growth_last_two_decades = rep.partial[K - 1] / rep.partial[K - 3];
        rep.log_slope = (rep.partial[K - 1] - rep.partial[K - 3]) / std::log(100.0);
        rep.divergence_observed = rep.growth_last_two_decades >= 10.0;
    }
    return rep;
}

void write_profile_csv(std::ostream& os, const StationaryProfile& prof) {
    os << "r,g,gp,Z,Zp\n";
    char buf[160];
    for (std::size_t k = 0; k < prof.r.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", prof.r[k], prof.g[k], prof.gp[k], prof.Z(k), prof.dZ(k));
        os << buf;
    }
}

void write_profile_json(std::ostream& os, const StationaryProfile& prof) {
    nlohmann::json j;
    j["m"] = prof.m;
    j["iota"] = prof.iota;
    j["ell"] = prof.ell;
    j["R_detect"] = prof.R_detect;
    j["singular"] = prof.singular;
    j["r_min_reached"] = prof.r_min_reached;
    j["r0"] = prof.r0;
    j["R_max"] = prof.R_max;
    j["tail_fit"] = {{"exponent", prof.tail_exponent},
                     {"constant", prof.tail_constant},
                     {"derivative_exponent", prof.tail_exponent_deriv}};
    j["fixed_point_residual"] = prof.fixed_point_residual;
    j["contraction"] = prof.contraction;
    os << std::setw(2) << j << "\n";
}

}  // namespace wavelab

#include "wavelab/radial_core.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/numerics.hpp"

namespace wavelab {

CharProfile to_characteristic(const RadialPair& pair) {
    pair.validate();
    const std::size_t n = pair.grid.n;
    const double h = pair.grid.h;
    std::vector<double> d_ru0(n);
    if (pair.du0) {
        for (std::size_t j = 0; j < n; ++j) d_ru0[j] = pair.u0[j] + pair.grid.r(j) * (*pair.du0)[j];
    } else {
        std::vector<double> ru0(n);
        for (std::size_t j = 0; j < n; ++j) ru0[j] = pair.grid.r(j) * pair.u0[j];
        d_ru0 = derivative(ru0, h);
    }
    const long kmax = static_cast<long>(n) - 1;
    CharProfile prof(h, kmax);
    for (long k = -kmax; k <= kmax; ++k) {
        const std::size_t j = static_cast<std::size_t>(std::labs(k));
        prof.ref(k) = 0.5 * d_ru0[j] + 0.5 * prof.sigma(k) * pair.u1[j];
    }
    return prof;
}

RadialPair from_characteristic(const CharProfile& prof, double t, std::size_t n_out) {
    prof.validate();
    if (!std::isfinite(t)) fail(ErrorKind::invalid_argument, "time must be finite");
    const double h = prof.h;
    const double L = prof.window();
    const double room = L - std::fabs(t);
    if (n_out == 0) {
        if (room < 3.0 * h * (1.0 - 1e-9)) fail(ErrorKind::window_violation, "profile window too small for t");
        n_out = static_cast<std::size_t>(std::floor(room / h + 1e-9)) + 1;
    }
    const RadialGrid grid(h, n_out);
    if (grid.extent() + std::fabs(t) > L * (1.0 + 1e-12) + 1e-12)
        fail(ErrorKind::window_violation, "profile window does not cover R + |t|");

    const std::vector<double> F = prof.cumulative();
    const std::vector<double> dF = derivative(prof.fdot, h);
    const std::size_t len = F.size();
    const double tk = t / h;
    const long ti = std::lround(tk);
    const bool aligned = std::fabs(tk - static_cast<double>(ti)) < 1e-9;

    auto sample = [&](const std::vector<double>& arr, double s) -> double {
        const double x = s / h + static_cast<double>(prof.kmax);
        return interp_cubic(arr.data(), len, std::clamp(x, 0.0, static_cast<double>(len - 1)));
    };
    auto idx = [&](long k) { return static_cast<std::size_t>(k + prof.kmax); };

    std::vector<double> v(n_out), vt(n_out), vr(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        double Fp, Fm, Dp, Dm;
        if (aligned) {
            const long kp = ti + static_cast<long>(j), km = ti - static_cast<long>(j);
            Fp = F[idx(kp)];
            Fm = F[idx(km)];
            Dp = prof.fdot[idx(kp)];
            Dm = prof.fdot[idx(km)];
        } else {
            const double r = grid.r(j);
            Fp = sample(F, t + r);
            Fm = sample(F, t - r);
            Dp = sample(prof.fdot, t + r);
            Dm = sample(prof.fdot, t - r);
        }
        if (j == 0) {
            v[0] = 2.0 * Dp;
            vt[0] = 2.0 * (aligned ? dF[idx(ti)] : sample(dF, t));
            vr[0] = 0.0;
        } else {
            const double r = grid.r(j);
            v[j] = (Fp - Fm) / r;
            vt[j] = (Dp - Dm) / r;
            vr[j] = (Dp + Dm - v[j]) / r;
        }
    }
    return RadialPair(grid, std::move(v), std::move(vt), std::move(vr));
}

RadialPair truncate_TA(const RadialPair& pair, double A) {
    pair.validate();
    const RadialGrid& g = pair.grid;
    if (!(A >= 0.0) || A > g.extent()) fail(ErrorKind::invalid_argument, "truncation radius outside the grid");
    if (A == 0.0) return pair;
    const std::size_t n = g.n;
    const double xa = A / g.h;
    std::size_t j0 = static_cast<std::size_t>(std::ceil(xa - 1e-9));
    double u0A;
    if (std::fabs(xa - std::round(xa)) < 1e-9) {
        u0A = pair.u0[j0];
    } else {
        // Cubic through nodes at or beyond A so that re-truncation is exact.
        const std::size_t s0 = std::min(j0, n - 4);
        const double xi = xa - static_cast<double>(s0);
        u0A = 0.0;
        for (int a = 0; a < 4; ++a) {
            double la = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) la *= (xi - b) / static_cast<double>(a - b);
            u0A += la * pair.u0[s0 + a];
        }
    }
    RadialPair out = pair;
    std::vector<double> d = pair.derivative();
    for (std::size_t j = 0; j < j0; ++j) {
        out.u0[j] = u0A;
        out.u1[j] = 0.0;
        d[j] = 0.0;
    }
    out.du0 = std::move(d);
    out.flat_below = std::max(A, pair.flat_below);
    return out;
}

namespace {

double cutoff_phi(double x) {
    const double a = std::fabs(x);
    return smooth_step_down(a - 1.0);
}

// Bump supported in (-1/2, 0), exp(1/(s^2-1)) profile in s = 4x + 1.
double mollifier_shape(double x) {
    const double s = 4.0 * x + 1.0;
    if (std::fabs(s) >= 1.0) return 0.0;
    return std::exp(1.0 / (s * s - 1.0));
}

}  // namespace

RadialPair regularize(const RadialPair& pair, double eps) {
    pair.validate();
    if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::invalid_argument, "eps must lie in (0, 1)");
    const RadialGrid& g = pair.grid;
    const std::size_t n = g.n;

    std::vector<double> gx, gw;
    const int nq = 48;
    gauss_legendre(nq, gx, gw);
    // Nodes on (-eps/2, 0), normalised so the discrete mollifier has unit mass.
    std::vector<double> rho(nq), wt(nq);
    double mass = 0.0;
    for (int q = 0; q < nq; ++q) {
        rho[q] = -0.25 * eps + 0.25 * eps * gx[q];
        wt[q] = 0.25 * eps * gw[q] * mollifier_shape(rho[q] / eps) / eps;
        mass += wt[q];
    }
    for (double& w : wt) w /= mass;

    auto convolve = [&](const std::vector<double>& f, std::size_t j) {
        double s = 0.0;
        for (int q = 0; q < nq; ++q) {
            const double x = (g.r(j) - rho[q]) / g.h;
            if (x > static_cast<double>(n - 1)) continue;
            s += wt[q] * interp_cubic(f.data(), n, x);
        }
        return s;
    };

    std::vector<double> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = g.r(j);
        const double cut = cutoff_phi(eps * r) * (1.0 - cutoff_phi(r / eps));
        if (cut == 0.0) {
            a[j] = b[j] = 0.0;
            continue;
        }
        a[j] = cut * convolve(pair.u0, j);
        b[j] = cut * convolve(pair.u1, j);
    }
    return RadialPair(g, std::move(a), std::move(b));
}

PointwiseBoundReport pointwise_radial_bound_check(const RadialPair& pair, double m) {
    pair.validate();
    const RadialGrid& g = pair.grid;
    const std::size_t n = g.n;
    const std::vector<double> d = pair.derivative();
    std::vector<double> ext(n), in(n), su(n);
    for (std::size_t j = 0; j < n; ++j) {
        ext[j] = pow_abs(g.r(j) * d[j], m);
        su[j] = g.r(j) * pair.u0[j];
    }
    const std::vector<double> dsu = derivative(su, g.h);
    for (std::size_t j = 0; j < n; ++j) in[j] = pow_abs(dsu[j], m);
    const std::vector<double> cext = cumulative_integral(ext, g.h);
    const std::vector<double> cin = cumulative_integral(in, g.h);

    PointwiseBoundReport rep;
    rep.tolerance = 1e-6 + 10.0 * g.h * g.h;
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(pair.u0[j]));
    if (scale == 0.0) return rep;
    for (std::size_t j = 1; j < n; ++j) {
        const double r = g.r(j);
        const double tail = std::max(cext.back() - cext[j], 0.0);
        const double bound1 = std::pow(r, -1.0 / m) * std::pow(tail, 1.0 / m);
        const double v1 = std::fabs(pair.u0[j]) - bound1;
        const double bound2 = std::pow(r, (m - 1.0) / m) * std::pow(std::max(cin[j], 0.0), 1.0 / m);
        const double v2 = std::fabs(su[j]) - bound2;
        rep.exterior_violation = std::max(rep.exterior_violation, v1 / std::max(bound1, scale));
        rep.interior_violation = std::max(rep.interior_violation, v2 / std::max(bound2, scale * r));
    }
    rep.max_violation = std::max(rep.exterior_violation, rep.interior_violation);
    rep.ok = rep.max_violation <= rep.tolerance;
    return rep;
}

RadialPair sample_pair(const RadialGrid& grid, const std::function<double(double)>& u0,
                       const std::function<double(double)>& u1, const std::function<double(double)>& du0) {
    std::vector<double> a(grid.n), b(grid.n);
    std::optional<std::vector<double>> d;
    if (du0) d.emplace(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double r = grid.r(j);
        a[j] = u0 ? u0(r) : 0.0;
        b[j] = u1 ? u1(r) : 0.0;
        if (d) (*d)[j] = du0(r);
    }
    return RadialPair(grid, std::move(a), std::move(b), std::move(d));
}

CharProfile sample_profile(double h, long kmax, const std::function<double(double)>& fdot) {
    CharProfile p(h, kmax);
    for (long k = -kmax; k <= kmax; ++k) p.ref(k) = fdot(p.sigma(k));
    return p;
}

RadialPair rescale_pair(const RadialPair& pair, double lambda, double m) {
    if (!(lambda > 0.0)) fail(ErrorKind::invalid_argument, "lambda must be > 0");
    RadialPair out = pair;
    out.grid = RadialGrid(pair.grid.h / lambda, pair.grid.n);
    const double a = std::pow(lambda, 1.0 / m);
    const double b = a * lambda;
    for (double& v : out.u0) v *= a;
    for (double& v : out.u1) v *= b;
    if (out.du0)
        for (double& v : *out.du0) v *= b;
    out.flat_below = pair.flat_below / lambda;
    return out;
}

CharProfile rescale_profile(const CharProfile& prof, double lambda, double m) {
    if (!(lambda > 0.0)) fail(ErrorKind::invalid_argument, "lambda must be > 0");
    CharProfile out = prof;
    out.h = prof.h / lambda;
    const double a = std::pow(lambda, 1.0 / m);
    for (double& v : out.fdot) v *= a;
    return out;
}

}  // namespace wavelab

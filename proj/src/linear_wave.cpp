#include "wavelab/linear_wave.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/numerics.hpp"
#include "wavelab/radial_core.hpp"

namespace wavelab {

RadialPair propagate(const CharProfile& prof, double t, std::size_t n_out) {
    return from_characteristic(prof, t, n_out);
}

SpaceTimeField linear_field(const CharProfile& prof, double t_lo, std::size_t nt, std::size_t nr) {
    prof.validate();
    const double h = prof.h;
    const long i0 = std::lround(t_lo / h);
    if (std::fabs(t_lo / h - static_cast<double>(i0)) > 1e-9)
        fail(ErrorKind::invalid_argument, "t_lo must be a multiple of h");
    const long reach = std::max(std::labs(i0), std::labs(i0 + static_cast<long>(nt) - 1)) + static_cast<long>(nr) - 1;
    if (reach > prof.kmax) fail(ErrorKind::window_violation, "profile window does not cover the lattice");
    const std::vector<double> F = prof.cumulative();
    auto at = [&](const std::vector<double>& v, long k) { return v[static_cast<std::size_t>(k + prof.kmax)]; };

    SpaceTimeField out;
    out.grid = RadialGrid(h, nr);
    out.t0 = static_cast<double>(i0) * h;
    for (std::size_t i = 0; i < nt; ++i) {
        const long ti = i0 + static_cast<long>(i);
        std::vector<double> U(nr), Ut(nr);
        for (std::size_t j = 0; j < nr; ++j) {
            const long kp = ti + static_cast<long>(j), km = ti - static_cast<long>(j);
            U[j] = at(F, kp) - at(F, km);
            Ut[j] = at(prof.fdot, kp) - at(prof.fdot, km);
        }
        out.push(std::move(U), std::move(Ut), out.grid.extent());
    }
    return out;
}

SpaceTimeField duhamel(const SourceField& source) {
    const std::size_t nt = source.frames();
    const std::size_t nr = source.grid.n;
    const double h = source.grid.h;
    if (nt == 0) fail(ErrorKind::coverage, "empty source");
    for (const auto& fr : source.f)
        if (fr.size() != nr) fail(ErrorKind::grid_mismatch, "source frame size mismatch");

    const long J = static_cast<long>(nr) - 1;
    const long kmin = -J;
    const long kmax = static_cast<long>(nt) - 1 + J;
    const std::size_t K = static_cast<std::size_t>(kmax - kmin + 1);
    auto g = [&](std::size_t i, long y) -> double {
        const long ay = std::labs(y);
        if (ay > J) return 0.0;
        return static_cast<double>(y) * h * source.f[i][static_cast<std::size_t>(ay)];
    };

    std::vector<double> S(K, 0.0);
    SpaceTimeField out;
    out.grid = source.grid;
    out.t0 = source.t0;
    std::vector<double> Gwin(static_cast<std::size_t>(2 * J + 1));
    for (std::size_t n = 0; n < nt; ++n) {
        const long ln = static_cast<long>(n);
        for (long k = kmin; k <= kmax; ++k) S[static_cast<std::size_t>(k - kmin)] += g(n, k - ln);
        // G_n(k) on k = n - J .. n + J
        for (long q = -J; q <= J; ++q) {
            const long k = ln + q;
            double val = 0.0;
            if (n > 0) val = h * (S[static_cast<std::size_t>(k - kmin)] - 0.5 * g(0, k) - 0.5 * g(n, k - ln));
            Gwin[static_cast<std::size_t>(q + J)] = val;
        }
        const std::vector<double> C = cumulative_integral(Gwin, h);
        std::vector<double> U(nr), Ut(nr);
        for (std::size_t j = 0; j < nr; ++j) {
            const std::size_t p = static_cast<std::size_t>(J + static_cast<long>(j));
            const std::size_t m = static_cast<std::size_t>(J - static_cast<long>(j));
            U[j] = 0.5 * (C[p] - C[m]);
            Ut[j] = 0.5 * (Gwin[p] - Gwin[m]);
        }
        out.push(std::move(U), std::move(Ut), out.grid.extent());
    }
    return out;
}

RadialPair duhamel_at(const SourceField& source, std::size_t time_index) {
    if (time_index >= source.frames()) fail(ErrorKind::coverage, "time index beyond the source");
    SourceField cut = source;
    cut.f.resize(time_index + 1);
    SpaceTimeField fld = duhamel(cut);
    const std::size_t nr = fld.grid.n;
    std::vector<double> u(nr), ut(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        u[j] = fld.u(time_index, j);
        ut[j] = j > 0 ? fld.Ut[time_index][j] / fld.grid.r(j) : 0.0;
    }
    if (nr > 2) ut[0] = (8.0 * fld.Ut[time_index][1] - fld.Ut[time_index][2]) / (6.0 * fld.grid.h);
    return RadialPair(fld.grid, std::move(u), std::move(ut));
}

namespace {

// Half-line samples |2 Fdot(s sigma)|^m for sigma = 0, h, 2h, ... with s = +-1.
std::vector<double> half_line(const CharProfile& prof, double m, int s) {
    std::vector<double> f(static_cast<std::size_t>(prof.kmax + 1));
    for (long k = 0; k <= prof.kmax; ++k) f[static_cast<std::size_t>(k)] = pow_abs(2.0 * prof.at(s * k), m);
    return f;
}

}  // namespace

double exterior_energy(const CharProfile& prof, double m, double R, double t) {
    const std::vector<double> pos = half_line(prof, m, +1);
    const std::vector<double> neg = half_line(prof, m, -1);
    const double at = std::fabs(t);
    if (t >= 0.0) return trapezoid_from(pos, prof.h, R + 2.0 * at) + trapezoid_from(neg, prof.h, R);
    return trapezoid_from(pos, prof.h, R) + trapezoid_from(neg, prof.h, R + 2.0 * at);
}

ChannelReport channel_report(const CharProfile& prof, double m, double R, const std::vector<double>& t_samples) {
    prof.validate();
    if (!(R >= 0.0)) fail(ErrorKind::invalid_argument, "R must be >= 0");
    double tmax = 0.0;
    for (double t : t_samples) tmax = std::max(tmax, std::fabs(t));
    if (R + 2.0 * tmax > prof.window() + 1e-12) fail(ErrorKind::window_violation, "window must cover R + 2 max|t|");
    ChannelReport rep;
    rep.R = R;
    rep.m = m;
    const std::vector<double> pos = half_line(prof, m, +1);
    const std::vector<double> neg = half_line(prof, m, -1);
    rep.right = trapezoid_from(pos, prof.h, R);
    rep.left = trapezoid_from(neg, prof.h, R);
    std::vector<double> q(pos.size());
    for (long k = 0; k <= prof.kmax; ++k) {
        const double a = prof.at(k), b = prof.at(-k);
        q[static_cast<std::size_t>(k)] = pow_abs(a + b, m) + pow_abs(a - b, m);
    }
    rep.lhs = trapezoid_from(q, prof.h, R);
    rep.t_samples = t_samples;
    rep.inf_forward = rep.left;
    rep.inf_backward = rep.right;
    for (double t : t_samples) {
        const double e = exterior_energy(prof, m, R, t);
        rep.exterior.push_back(e);
        if (t >= 0.0) rep.inf_forward = std::min(rep.inf_forward, e);
        if (t <= 0.0) rep.inf_backward = std::min(rep.inf_backward, e);
    }
    rep.dichotomy_holds = std::max(rep.inf_forward, rep.inf_backward) >= 0.5 * rep.lhs;
    rep.convexity_holds = rep.left + rep.right >= rep.lhs;
    return rep;
}

namespace {

struct Pt {
    double x, y;
};

double slope(const Pt& a, const Pt& b) { return (b.y - a.y) / (b.x - a.x); }

double cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<Pt> upper_hull(const std::vector<Pt>& pts) {
    std::vector<Pt> h;
    for (const Pt& p : pts) {
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) >= 0.0) h.pop_back();
        h.push_back(p);
    }
    return h;
}

std::vector<Pt> lower_hull(const std::vector<Pt>& pts) {
    std::vector<Pt> h;
    for (const Pt& p : pts) {
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) <= 0.0) h.pop_back();
        h.push_back(p);
    }
    return h;
}

// Max slope from q to a hull vertex; slopes along the hull are unimodal.
double best_slope(const Pt& q, const std::vector<Pt>& hull) {
    std::size_t lo = 0, hi = hull.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (slope(q, hull[mid]) < slope(q, hull[mid + 1])) lo = mid + 1;
        else hi = mid;
    }
    return slope(q, hull[lo]);
}

void maximal_rec(const std::vector<double>& P, std::size_t lo, std::size_t hi, std::vector<double>& out) {
    if (hi - lo <= 1) return;
    const std::size_t mid = (lo + hi) / 2;
    // Left endpoints k in [lo, mid-1], right endpoints l in [mid+1, hi].
    std::vector<Pt> left, right;
    for (std::size_t k = lo; k < mid; ++k) left.push_back({static_cast<double>(k), P[k]});
    for (std::size_t l = mid + 1; l <= hi; ++l) right.push_back({static_cast<double>(l), P[l]});
    const std::vector<Pt> uh = upper_hull(right);
    const std::vector<Pt> lh = lower_hull(left);
    double run = 0.0;
    for (std::size_t k = lo; k < mid; ++k) {
        run = std::max(run, best_slope({static_cast<double>(k), P[k]}, uh));
        out[k] = std::max(out[k], run);
    }
    run = 0.0;
    for (std::size_t l = hi; l >= mid + 1; --l) {
        // Slope from a left point to q equals slope(q', left) with the order swapped.
        const Pt q{static_cast<double>(l), P[l]};
        std::size_t a = 0, b = lh.size() - 1;
        while (a < b) {
            const std::size_t c = (a + b) / 2;
            if (slope(lh[c], q) < slope(lh[c + 1], q)) a = c + 1;
            else b = c;
        }
        run = std::max(run, slope(lh[a], q));
        out[l - 1] = std::max(out[l - 1], run);
        if (l == mid + 1) break;
    }
    maximal_rec(P, lo, mid, out);
    maximal_rec(P, mid, hi, out);
}

}  // namespace

std::vector<double> maximal_function(const std::vector<double>& G) {
    const std::size_t n = G.size();
    std::vector<double> P(n + 1, 0.0), out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        P[i + 1] = P[i] + std::fabs(G[i]);
        out[i] = std::fabs(G[i]);
    }
    maximal_rec(P, 0, n, out);
    return out;
}

WeakLattice averaging_operator(const std::vector<double>& G, double h, double t0, double radius) {
    (void)t0;
    const long N = static_cast<long>(G.size());
    const long J = static_cast<long>(std::ceil(radius / h - 1e-9));
    // Padded samples on indices -2J .. N-1+2J.
    const long pad = 2 * J;
    std::vector<double> g(static_cast<std::size_t>(N + 2 * pad), 0.0);
    for (long i = 0; i < N; ++i) g[static_cast<std::size_t>(i + pad)] = G[static_cast<std::size_t>(i)];
    std::vector<double> C(g.size(), 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) C[i] = C[i - 1] + 0.5 * h * (g[i - 1] + g[i]);

    WeakLattice lat;
    lat.h = h;
    lat.dt = h;
    lat.nr = static_cast<std::size_t>(J + 1);
    lat.nt = static_cast<std::size_t>(N + 2 * J);
    lat.g.assign(lat.nt * lat.nr, 0.0);
    for (long i = 0; i < static_cast<long>(lat.nt); ++i) {
        const long c = i + J;  // index in padded arrays (t = t0 + (i - J) h)
        for (long j = 0; j <= J; ++j) {
            double v;
            if (j == 0) v = g[static_cast<std::size_t>(c)];
            else v = (C[static_cast<std::size_t>(c + j)] - C[static_cast<std::size_t>(c - j)]) / (2.0 * j * h);
            lat.g[static_cast<std::size_t>(i) * lat.nr + static_cast<std::size_t>(j)] = v;
        }
    }
    return lat;
}

WeakTypeReport weak_type_check(const std::vector<double>& G, double h, double alpha, double radius_factor,
                               double dilation) {
    if (!(alpha > 1.0)) fail(ErrorKind::invalid_argument, "alpha must be > 1");
    WeakTypeReport rep;
    rep.alpha = alpha;
    std::vector<double> ag(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) ag[i] = std::fabs(G[i]);
    rep.g_l1 = trapezoid(ag, h).value;
    if (rep.g_l1 == 0.0) return rep;
    const double support = static_cast<double>(G.size() - 1) * h;
    const double radius = radius_factor * std::max(support, h);
    auto eval = [&](double hh, double rad, double l1) {
        WeakLattice lat = averaging_operator(G, hh, 0.0, rad);
        const double sup = weak_lq(lat, alpha).value;
        return std::make_pair(sup / l1, lat);
    };
    auto [r1, lat] = eval(h, radius, rep.g_l1);
    rep.sup_value = r1 * rep.g_l1;
    rep.ratio = r1;
    rep.ratio_pow = std::pow(r1, alpha);
    rep.lattice = std::move(lat);
    auto d = eval(h * dilation, radius * dilation, rep.g_l1 * dilation);
    rep.dilated_ratio = d.first;
    rep.dilation_defect = std::fabs(rep.dilated_ratio - rep.ratio) / rep.ratio;
    return rep;
}

MixedExponents mixed_exponents(double m) {
    MixedExponents e;
    if (m > 2.0) {
        const double c = 2.0 * m * (m - 1.0) * (m + 2.0);
        e.a = c / (m * m + 3.0 * m - 2.0);
        e.b = c / (m - 2.0);
        e.valid = true;
    } else if (m > 1.0 && m < 2.0) {
        const double c = m * (m + 2.0) * (3.0 - m);
        e.a = c / (m * m - m + 2.0);
        e.b = c / (2.0 * (2.0 - m));
        e.valid = true;
    }
    return e;
}

}  // namespace wavelab

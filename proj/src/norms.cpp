#include "wavelab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavelab/numerics.hpp"

namespace wavelab {

namespace {

NormValue root_of(const Quad& q, double p, const std::string& kind) {
    NormValue v;
    v.kind = kind;
    const double I = std::max(q.value, 0.0);
    v.value = I > 0.0 ? std::pow(I, 1.0 / p) : 0.0;
    v.quad_error_estimate = I > 0.0 ? v.value * q.error / (p * I) : 0.0;
    return v;
}

void check_exponent(double x, double lo, const char* what) {
    if (!(x >= lo) || !std::isfinite(x)) fail(ErrorKind::invalid_argument, what);
}

// Index range of frames whose time lies in [lo, hi].
std::pair<std::size_t, std::size_t> frame_range(const SpaceTimeField& f, double lo, double hi) {
    std::size_t a = f.frames(), b = 0;
    const double tol = 1e-9 * f.dt();
    for (std::size_t i = 0; i < f.frames(); ++i) {
        const double t = f.t(i);
        if (t >= lo - tol && t <= hi + tol) {
            a = std::min(a, i);
            b = std::max(b, i);
        }
    }
    return {a, b};
}

// Outer time integral over a set of per-frame values (frames are uniform in t).
Quad time_integral(const std::vector<double>& vals, double dt) {
    if (vals.size() == 1) return {};
    return simpson(vals, dt);
}

}  // namespace

ConeRegion::ConeRegion(double lo, double hi, double a) : t_lo(lo), t_hi(hi), A(a) {
    if (!(lo <= hi)) fail(ErrorKind::invalid_argument, "cone region needs t_lo <= t_hi");
}

double ConeRegion::r_min(double t) const {
    if (std::isinf(A) && A < 0.0) return 0.0;
    return std::max(0.0, A + std::fabs(t));
}

NormValue lm_norm(const RadialPair& pair, double m, double R) {
    pair.validate();
    if (!(R >= 0.0)) fail(ErrorKind::invalid_argument, "R must be >= 0");
    if (R > pair.grid.extent()) fail(ErrorKind::invalid_argument, "R beyond the grid");
    const std::size_t n = pair.grid.n;
    const std::vector<double> d = pair.derivative();
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = pair.grid.r(j);
        f[j] = pow_abs(r * d[j], m) + pow_abs(r * pair.u1[j], m);
    }
    const double a = std::max(R, pair.flat_below);
    const bool one_sided = pair.flat_below > 0.0 && a == pair.flat_below;
    return root_of(integrate_from(f, pair.grid.h, a, one_sided), m, "lm");
}

NormValue em_energy(const CharProfile& prof, double m) {
    prof.validate();
    std::vector<double> f(prof.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = pow_abs(2.0 * prof.fdot[k], m);
    const Quad q = trapezoid(f, prof.h);
    return {q.value, "em", q.error};
}

NormValue em_energy_pair(const RadialPair& pair, double m) {
    pair.validate();
    const std::size_t n = pair.grid.n;
    const double h = pair.grid.h;
    std::vector<double> D(n);
    if (pair.du0) {
        for (std::size_t j = 0; j < n; ++j) D[j] = pair.u0[j] + pair.grid.r(j) * (*pair.du0)[j];
    } else {
        std::vector<double> ru(n);
        for (std::size_t j = 0; j < n; ++j) ru[j] = pair.grid.r(j) * pair.u0[j];
        D = derivative(ru, h);
    }
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double b = pair.grid.r(j) * pair.u1[j];
        f[j] = pow_abs(D[j] + b, m) + pow_abs(D[j] - b, m);
    }
    const Quad q = simpson(f, h);
    return {q.value, "em_pair", q.error};
}

double exterior_data_quantity(const RadialPair& pair, double m, double R) {
    const std::size_t n = pair.grid.n;
    std::vector<double> ru(n), f(n);
    for (std::size_t j = 0; j < n; ++j) ru[j] = pair.grid.r(j) * pair.u0[j];
    std::vector<double> D;
    if (pair.du0) {
        D.resize(n);
        for (std::size_t j = 0; j < n; ++j) D[j] = pair.u0[j] + pair.grid.r(j) * (*pair.du0)[j];
    } else {
        D = derivative(ru, pair.grid.h);
    }
    for (std::size_t j = 0; j < n; ++j) f[j] = pow_abs(D[j], m) + pow_abs(pair.grid.r(j) * pair.u1[j], m);
    return trapezoid_from(f, pair.grid.h, R);
}

NormValue s_norm(const SpaceTimeField& field, double m, const ConeRegion& region) {
    check_exponent(m, 1.0, "m must be > 1");
    if (field.frames() == 0) return {0.0, "s", 0.0};
    const double tmin = std::min(field.t(0), field.t(field.frames() - 1));
    const double tmax = std::max(field.t(0), field.t(field.frames() - 1));
    const double tol = 1e-9 * field.dt();
    if (region.t_lo < tmin - tol || region.t_hi > tmax + tol)
        fail(ErrorKind::coverage, "region exceeds the field's time coverage");
    auto [a, b] = frame_range(field, region.t_lo, region.t_hi);
    if (a > b) return {0.0, "s", 0.0};
    const double q = (2.0 * m + 1.0) * m;
    const std::size_t n = field.grid.n;
    std::vector<double> outer;
    double inner_err = 0.0;
    for (std::size_t i = a; i <= b; ++i) {
        const double t = field.t(i);
        const double rlo = region.r_min(t);
        const double rhi = field.radius_limit(i);
        std::vector<double> f(n, 0.0);
        const std::size_t jmax = std::min(n - 1, static_cast<std::size_t>(std::floor(rhi / field.grid.h + 1e-9)));
        for (std::size_t j = 0; j <= jmax; ++j) {
            const double r = field.grid.r(j);
            f[j] = pow_abs(field.u(i, j), q) * pow_abs(r, m);
        }
        f.resize(jmax + 1);
        Quad in = rlo < field.grid.r(jmax) ? integrate_from(f, field.grid.h, rlo) : Quad{};
        const double val = std::max(in.value, 0.0);
        outer.push_back(val > 0.0 ? std::pow(val, 1.0 / m) : 0.0);
        inner_err = std::max(inner_err, val > 0.0 ? outer.back() * in.error / (m * val) : 0.0);
    }
    Quad tq = time_integral(outer, field.dt());
    tq.error += inner_err * (region.t_hi - region.t_lo);
    return root_of(tq, 2.0 * m + 1.0, "s");
}

NormValue s_norm(const SpaceTimeField& field, double m) {
    const double lo = std::min(field.t(0), field.t(field.frames() - 1));
    const double hi = std::max(field.t(0), field.t(field.frames() - 1));
    return s_norm(field, m, ConeRegion(lo, hi));
}

NormValue w1m_norm(const RadialPair& pair, double m) {
    pair.validate();
    const std::vector<double> d = pair.derivative();
    std::vector<double> f(pair.grid.n);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = pow_abs(d[j], m) * pow_abs(pair.grid.r(j), m);
    return root_of(simpson(f, pair.grid.h), m, "w1m");
}

NormValue l3m_norm(const RadialPair& pair, double m) {
    pair.validate();
    std::vector<double> f(pair.grid.n);
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double r = pair.grid.r(j);
        f[j] = pow_abs(pair.u0[j], 3.0 * m) * r * r;
    }
    return root_of(simpson(f, pair.grid.h), 3.0 * m, "l3m");
}

NormValue mixed_norm(const SpaceTimeField& field, double a, double b, double weight_power) {
    check_exponent(a, 1.0, "time exponent must be >= 1");
    check_exponent(b, 1.0, "space exponent must be >= 1");
    const std::size_t n = field.grid.n;
    std::vector<double> outer(field.frames());
    for (std::size_t i = 0; i < field.frames(); ++i) {
        std::vector<double> f(n);
        for (std::size_t j = 0; j < n; ++j) f[j] = pow_abs(field.u(i, j), b) * pow_abs(field.grid.r(j), weight_power);
        const double in = std::max(simpson(f, field.grid.h).value, 0.0);
        outer[i] = in > 0.0 ? std::pow(in, a / b) : 0.0;
    }
    return root_of(time_integral(outer, field.dt()), a, "mixed");
}

NormValue lq_lsigma_norm(const SpaceTimeField& field, double q, double sigma) {
    NormValue v = mixed_norm(field, q, sigma, 2.0);
    v.kind = "lq_lsigma";
    return v;
}

NormValue weighted_st_norm(const SpaceTimeField& field, double alpha, double m) {
    if (!(alpha > 1.0)) fail(ErrorKind::invalid_argument, "alpha must be > 1");
    check_exponent(m, 1.0, "m must be > 1");
    const std::size_t n = field.grid.n;
    std::vector<double> outer(field.frames());
    for (std::size_t i = 0; i < field.frames(); ++i) {
        std::vector<double> f(n);
        for (std::size_t j = 0; j < n; ++j) f[j] = pow_abs(field.u(i, j), alpha * m);
        outer[i] = product_trapezoid(f, field.grid.h, alpha - 2.0);
    }
    return root_of(time_integral(outer, field.dt()), alpha * m, "weighted_st");
}

NormValue l2_linf_norm(const SpaceTimeField& field) {
    std::vector<double> outer(field.frames());
    for (std::size_t i = 0; i < field.frames(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < field.grid.n; ++j) s = std::max(s, std::fabs(field.u(i, j)));
        outer[i] = s * s;
    }
    return root_of(time_integral(outer, field.dt()), 2.0, "l2_linf");
}

std::vector<double> weak_cell_measure(const WeakLattice& lat, double alpha) {
    const double p = alpha - 2.0;
    std::vector<double> mu(lat.nr);
    auto prim = [p](double r) { return r > 0.0 ? std::pow(r, p + 1.0) / (p + 1.0) : 0.0; };
    for (std::size_t j = 0; j < lat.nr; ++j) {
        const double r = static_cast<double>(j) * lat.h;
        const double a = std::max(0.0, r - 0.5 * lat.h);
        const double b = r + 0.5 * lat.h;
        mu[j] = lat.dt * (prim(b) - prim(a));
    }
    return mu;
}

NormValue weak_lq(const WeakLattice& lat, double alpha) {
    if (!(alpha > 1.0)) fail(ErrorKind::invalid_argument, "alpha must be > 1");
    if (lat.g.size() != lat.nt * lat.nr) fail(ErrorKind::grid_mismatch, "lattice size mismatch");
    const std::vector<double> mu = weak_cell_measure(lat, alpha);
    std::vector<std::pair<double, double>> cells;
    cells.reserve(lat.g.size());
    for (std::size_t i = 0; i < lat.nt; ++i)
        for (std::size_t j = 0; j < lat.nr; ++j) {
            const double v = std::fabs(lat.g[i * lat.nr + j]);
            if (v > 0.0) cells.emplace_back(v, mu[j]);
        }
    std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    double best = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        acc += cells[k].second;
        // Only evaluate once every cell at this level is included.
        if (k + 1 < cells.size() && cells[k + 1].first == cells[k].first) continue;
        best = std::max(best, cells[k].first * std::pow(acc, 1.0 / alpha));
    }
    return {best, "weak_lq", 0.0};
}

NormValue lq_cells(const WeakLattice& lat, double alpha) {
    const std::vector<double> mu = weak_cell_measure(lat, alpha);
    double s = 0.0;
    for (std::size_t i = 0; i < lat.nt; ++i)
        for (std::size_t j = 0; j < lat.nr; ++j) s += pow_abs(lat.g[i * lat.nr + j], alpha) * mu[j];
    return {s > 0.0 ? std::pow(s, 1.0 / alpha) : 0.0, "lq_cells", 0.0};
}

}  // namespace wavelab

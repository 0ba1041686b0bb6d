#include "wavelab/types.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/numerics.hpp"

namespace wavelab {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

ModelParams::ModelParams(double m_, int iota_) : m(m_), iota(iota_) {
    if (!(m > 1.0) || !std::isfinite(m)) fail(ErrorKind::invalid_argument, "m must be > 1");
    if (iota != 1 && iota != -1) fail(ErrorKind::invalid_argument, "iota must be +1 or -1");
}

RadialGrid::RadialGrid(double h_, std::size_t n_) : h(h_), n(n_) {
    if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::invalid_argument, "grid spacing must be > 0");
    if (n < 4) fail(ErrorKind::invalid_argument, "grid needs at least 4 nodes");
}

RadialGrid RadialGrid::covering(double h, double radius) {
    const double k = std::ceil(radius / h - 1e-9);
    return RadialGrid(h, static_cast<std::size_t>(std::max(k, 3.0)) + 1);
}

RadialPair::RadialPair(RadialGrid g, std::vector<double> a, std::vector<double> b,
                       std::optional<std::vector<double>> da)
    : grid(g), u0(std::move(a)), u1(std::move(b)), du0(std::move(da)) {
    validate();
}

void RadialPair::validate() const {
    if (u0.size() != grid.n || u1.size() != grid.n || (du0 && du0->size() != grid.n))
        fail(ErrorKind::grid_mismatch, "pair samples do not match the grid");
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    if (!finite(u0) || !finite(u1) || (du0 && !finite(*du0)))
        fail(ErrorKind::invalid_argument, "pair contains non-finite samples");
}

std::vector<double> RadialPair::derivative() const {
    if (du0) return *du0;
    return wavelab::derivative(u0, grid.h);
}

DecayReport decay_check(const RadialPair& pair, double m, double decay_tol) {
    DecayReport rep;
    const std::size_t n = pair.grid.n;
    for (std::size_t j = 1; j + 1 < n; ++j)
        rep.interior_max = std::max(rep.interior_max, std::pow(pair.grid.r(j), 1.0 / m) * std::fabs(pair.u0[j]));
    rep.boundary_value = std::pow(pair.grid.r(n - 1), 1.0 / m) * std::fabs(pair.u0[n - 1]);
    rep.ratio = rep.interior_max > 0.0 ? rep.boundary_value / rep.interior_max : 0.0;
    rep.ok = rep.boundary_value <= decay_tol * rep.interior_max || rep.interior_max == 0.0;
    return rep;
}

CharProfile::CharProfile(double h_, long kmax_) : h(h_), kmax(kmax_), fdot(static_cast<std::size_t>(2 * kmax_ + 1), 0.0) {
    if (!(h > 0.0) || kmax < 1) fail(ErrorKind::invalid_argument, "bad profile grid");
}

CharProfile::CharProfile(double h_, long kmax_, std::vector<double> samples)
    : h(h_), kmax(kmax_), fdot(std::move(samples)) {
    validate();
}

void CharProfile::validate() const {
    if (!(h > 0.0) || kmax < 1 || fdot.size() != static_cast<std::size_t>(2 * kmax + 1))
        fail(ErrorKind::grid_mismatch, "profile samples do not match the window");
    for (double v : fdot)
        if (!std::isfinite(v)) fail(ErrorKind::invalid_argument, "profile contains non-finite samples");
}

double CharProfile::eval(double s) const {
    const double x = s / h + static_cast<double>(kmax);
    const double last = static_cast<double>(fdot.size() - 1);
    if (x < 0.0 || x > last) return 0.0;
    return interp_cubic(fdot.data(), fdot.size(), x);
}

std::vector<double> CharProfile::cumulative() const {
    std::vector<double> c = cumulative_integral(fdot, h);
    const double anchor = c[static_cast<std::size_t>(kmax)];
    for (double& v : c) v -= anchor;
    return c;
}

double SpaceTimeField::u(std::size_t i, std::size_t j) const {
    const auto& f = U[i];
    if (j > 0) return f[j] / grid.r(j);
    if (f.size() < 3) return 0.0;
    return (8.0 * f[1] - f[2]) / (6.0 * grid.h);
}

std::vector<double> SpaceTimeField::u_frame(std::size_t i) const {
    std::vector<double> out(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) out[j] = u(i, j);
    return out;
}

void SpaceTimeField::push(std::vector<double> frame, std::vector<double> frame_t, double valid) {
    U.push_back(std::move(frame));
    Ut.push_back(std::move(frame_t));
    valid_radius.push_back(valid);
}

}  // namespace wavelab

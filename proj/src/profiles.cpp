#include "wavelab/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/norms.hpp"
#include "wavelab/numerics.hpp"
#include "wavelab/radial_core.hpp"

namespace wavelab {

namespace {

// Eight-point Lagrange interpolation at fractional index x (relative to -kmax), clamped
// to the stencil range; exact node hits return the sample.
double interp8(const CharProfile& p, double x) {
    const double xr = std::nearbyint(x);
    if (std::fabs(x - xr) < 1e-9) return p.at(static_cast<long>(xr));
    const long base = static_cast<long>(std::floor(x)) - 3;
    double v = 0.0, lo = INFINITY, hi = -INFINITY;
    for (long i = 0; i < 8; ++i) {
        const long ki = base + i;
        const double fi = p.at(ki);
        lo = std::min(lo, fi);
        hi = std::max(hi, fi);
        double w = 1.0;
        for (long j = 0; j < 8; ++j)
            if (j != i) w *= (x - static_cast<double>(base + j)) / static_cast<double>(i - j);
        v += w * fi;
    }
    return std::clamp(v, lo, hi);
}

long fit_kmax(double h, double window, double lambda, double t0) {
    return static_cast<long>(std::ceil((std::fabs(t0) + lambda * window) / h)) + 8;
}

}  // namespace

CharProfile modulate(const CharProfile& prof, double lambda, double t0, double m, long kmax_out) {
    if (!(lambda > 0.0)) fail(ErrorKind::invalid_argument, "lambda must be > 0");
    if (kmax_out < 0) kmax_out = fit_kmax(prof.h, prof.window(), lambda, t0);
    CharProfile out(prof.h, kmax_out);
    const double amp = std::pow(lambda, -1.0 / m);
    for (long k = -kmax_out; k <= kmax_out; ++k) {
        const double src = (out.sigma(k) - t0) / lambda;
        if (std::fabs(src) > prof.window() + 4.0 * prof.h) continue;
        out.ref(k) = amp * interp8(prof, src / prof.h);
    }
    return out;
}

CharProfile modulate_fn(const std::function<double(double)>& fdot, double lambda, double t0, double m, double h, long kmax) {
    if (!(lambda > 0.0)) fail(ErrorKind::invalid_argument, "lambda must be > 0");
    CharProfile out(h, kmax);
    const double amp = std::pow(lambda, -1.0 / m);
    for (long k = -kmax; k <= kmax; ++k) out.ref(k) = amp * fdot((out.sigma(k) - t0) / lambda);
    return out;
}

CharProfile indicator_profile(double h, long kmax, double a, double b, double height) {
    CharProfile p(h, kmax);
    for (long k = -kmax; k <= kmax; ++k) {
        const double s = p.sigma(k);
        if (s >= a - 1e-12 * h && s < b - 1e-12 * h) p.ref(k) = height;
    }
    return p;
}

bool ProfileParams::pseudo_orthogonal(std::string* why) const {
    const std::size_t J = profiles(), N = length();
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t k = j + 1; k < J; ++k) {
            double prev = -INFINITY;
            for (std::size_t n = 0; n < N; ++n) {
                const double q = lambda[j][n] / lambda[k][n] + lambda[k][n] / lambda[j][n] + std::fabs(t[j][n] - t[k][n]) / lambda[j][n];
                if (!(q > prev)) {
                    if (why) *why = "pair (" + std::to_string(j) + "," + std::to_string(k) + ") not increasing at n=" + std::to_string(n);
                    return false;
                }
                prev = q;
            }
        }
    return true;
}

CharProfile modulated(const SyntheticSequence& seq, std::size_t j, std::size_t n) {
    const double lam = seq.params.lambda.at(j).at(n), t0 = seq.params.t.at(j).at(n);
    if (j < seq.shapes.size() && seq.shapes[j]) return modulate_fn(seq.shapes[j], lam, t0, seq.m, seq.h, seq.kmax);
    return modulate(seq.base.at(j), lam, t0, seq.m, seq.kmax);
}

CharProfile sum_sequence(const SyntheticSequence& seq, std::size_t n) {
    CharProfile out(seq.h, seq.kmax);
    for (std::size_t j = 0; j < seq.params.profiles(); ++j) {
        const CharProfile p = modulated(seq, j, n);
        for (std::size_t i = 0; i < out.size(); ++i) out.fdot[i] += p.fdot[i];
    }
    if (n < seq.remainders.size()) {
        const CharProfile& w = seq.remainders[n];
        if (w.h != seq.h || w.kmax != seq.kmax) fail(ErrorKind::grid_mismatch, "remainder window mismatch");
        for (std::size_t i = 0; i < out.size(); ++i) out.fdot[i] += w.fdot[i];
    }
    return out;
}

double cross_energy(const CharProfile& a, const CharProfile& b, double m) {
    if (a.h != b.h || a.kmax != b.kmax) fail(ErrorKind::grid_mismatch, "profile grids differ");
    std::vector<double> f(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) f[i] = pow_abs(2.0 * a.fdot[i], m - 1.0) * std::fabs(2.0 * b.fdot[i]);
    return trapezoid(f, a.h).value;
}

DecouplingReport decoupling_check(const SyntheticSequence& seq, const std::vector<std::size_t>& n_list) {
    DecouplingReport rep;
    rep.n_list = n_list;
    rep.pseudo_orthogonal = seq.params.pseudo_orthogonal();
    const std::size_t J = seq.params.profiles();
    const double m = seq.m;
    bool disjoint_seen = false;
    rep.exact_zero_tail = true;
    for (std::size_t n : n_list) {
        std::vector<CharProfile> mods;
        CharProfile sum(seq.h, seq.kmax);
        double sumE = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            mods.push_back(modulated(seq, j, n));
            sumE += em_energy(mods.back(), m).value;
            for (std::size_t i = 0; i < sum.size(); ++i) sum.fdot[i] += mods.back().fdot[i];
        }
        rep.delta.push_back(std::fabs(em_energy(sum, m).value - sumE));
        double cross = 0.0, ratio = INFINITY, sep = INFINITY;
        bool overlap = false;
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t k = j + 1; k < J; ++k) {
                const double lj = seq.params.lambda[j][n], lk = seq.params.lambda[k][n];
                const std::size_t wide = lj >= lk ? j : k, narrow = lj >= lk ? k : j;
                cross += cross_energy(mods[wide], mods[narrow], m);
                ratio = std::min(ratio, std::min(lj, lk) / std::max(lj, lk));
                sep = std::min(sep, lj / lk + lk / lj + std::fabs(seq.params.t[j][n] - seq.params.t[k][n]) / lj);
                for (std::size_t i = 0; i < mods[j].size() && !overlap; ++i)
                    overlap = mods[j].fdot[i] != 0.0 && mods[k].fdot[i] != 0.0;
            }
        rep.cross.push_back(cross);
        rep.scale_ratio.push_back(ratio);
        rep.separation.push_back(sep);
        if (!overlap) disjoint_seen = true;
        if (disjoint_seen && rep.delta.back() != 0.0) rep.exact_zero_tail = false;
    }
    if (!disjoint_seen) rep.exact_zero_tail = false;
    rep.vanishing = rep.delta.size() >= 2 && rep.delta.back() < rep.delta.front();
    std::vector<double> x, yd, yc;
    for (std::size_t i = 0; i < rep.delta.size(); ++i) {
        if (!(rep.scale_ratio[i] < 1.0) || !(rep.delta[i] > 0.0) || !(rep.cross[i] > 0.0)) continue;
        x.push_back(std::log(rep.scale_ratio[i]));
        yd.push_back(std::log(rep.delta[i]));
        yc.push_back(std::log(rep.cross[i]));
    }
    if (x.size() >= 2) {
        rep.delta_slope = fit_line(x, yd).slope;
        rep.cross_slope = fit_line(x, yc).slope;
    }
    return rep;
}

CharProfile dual_profile(const CharProfile& prof, double m) {
    CharProfile d(prof.h, prof.kmax);
    for (std::size_t i = 0; i < prof.size(); ++i) d.fdot[i] = 0.5 * signed_pow(2.0 * prof.fdot[i], m - 1.0);
    return d;
}

double dual_pairing(const CharProfile& dual, const CharProfile& prof) {
    if (dual.h != prof.h || dual.kmax != prof.kmax) fail(ErrorKind::grid_mismatch, "profile grids differ");
    // sum_pm int_0^inf [Phi]_pm [U]_pm dr with [f]_pm(r) = 2 f_dot(+-r), folded onto one line.
    return hilbert_inner(dual, prof);
}

double hilbert_inner(const CharProfile& a, const CharProfile& b) {
    if (a.h != b.h || a.kmax != b.kmax) fail(ErrorKind::grid_mismatch, "profile grids differ");
    std::vector<double> f(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) f[i] = (2.0 * a.fdot[i]) * (2.0 * b.fdot[i]);
    return trapezoid(f, a.h).value;
}

BesselReport bessel_check(const SyntheticSequence& seq, const std::vector<std::size_t>& n_list, double eps_tol) {
    BesselReport rep;
    rep.n_list = n_list;
    const double m = seq.m;
    const std::size_t J = seq.params.profiles();
    rep.min_relative = INFINITY;
    for (std::size_t n : n_list) {
        std::vector<CharProfile> mods;
        double sumE = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            mods.push_back(modulated(seq, j, n));
            const double E = em_energy(mods.back(), m).value;
            sumE += E;
            if (E > 0.0) {
                const double pair = dual_pairing(dual_profile(mods.back(), m), mods.back());
                rep.dual_pairing_error = std::max(rep.dual_pairing_error, std::fabs(pair - E) / E);
            }
        }
        const CharProfile u = sum_sequence(seq, n);
        const double Eu = em_energy(u, m).value;
        const double defect = Eu - sumE;
        rep.energy.push_back(Eu);
        rep.defect.push_back(defect);
        rep.relative.push_back(Eu > 0.0 ? defect / Eu : 0.0);
        rep.min_relative = std::min(rep.min_relative, rep.relative.back());
        if (m == 2.0) {
            double hd = 0.0;
            const bool has_w = n < seq.remainders.size();
            if (has_w) hd += hilbert_inner(seq.remainders[n], seq.remainders[n]);
            for (std::size_t j = 0; j < J; ++j) {
                for (std::size_t k = j + 1; k < J; ++k) hd += 2.0 * hilbert_inner(mods[j], mods[k]);
                if (has_w) hd += 2.0 * hilbert_inner(mods[j], seq.remainders[n]);
            }
            rep.hilbert_defect.push_back(hd);
            rep.hilbert_error = std::max(rep.hilbert_error, Eu > 0.0 ? std::fabs(defect - hd) / Eu : std::fabs(defect - hd));
        }
    }
    rep.liminf_relative = rep.relative.empty() ? 0.0 : rep.relative.back();
    rep.holds = !rep.relative.empty() && rep.liminf_relative >= -eps_tol;
    return rep;
}

ExteriorProfilesReport exterior_profiles_check(const SyntheticSequence& seq, std::size_t k, const std::vector<std::size_t>& n_list,
                                               const std::vector<ExteriorWindow>& windows, double tol) {
    if (windows.size() != n_list.size()) fail(ErrorKind::invalid_argument, "one window per n required");
    ExteriorProfilesReport rep;
    const double m = seq.m, h = seq.h;
    auto window_energy = [&](const CharProfile& prof, const ExteriorWindow& w) {
        if (!(w.sigma > w.rho) || w.rho < 0.0) fail(ErrorKind::invalid_argument, "bad exterior window");
        const std::size_t n_out = static_cast<std::size_t>(std::ceil(w.sigma / h)) + 2;
        const RadialPair pair = from_characteristic(prof, w.theta, n_out);
        const std::vector<double> du = pair.derivative();
        std::vector<double> f(pair.grid.n);
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double r = pair.grid.r(j);
            f[j] = pow_abs(r * du[j], m) + pow_abs(r * pair.u1[j], m);
        }
        return trapezoid_from(f, h, w.rho) - trapezoid_from(f, h, w.sigma);
    };
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const std::size_t n = n_list[i];
        const double lhs = window_energy(sum_sequence(seq, n), windows[i]);
        const double rhs = window_energy(modulated(seq, k, n), windows[i]);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        rep.o_n.push_back(std::max(0.0, rhs - lhs));
        rep.o_relative.push_back(rhs > 0.0 ? rep.o_n.back() / rhs : 0.0);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rep.o_relative.size(); ++i) monotone = monotone && rep.o_relative[i] <= rep.o_relative[i - 1] + 1e-15;
    rep.holds = !rep.o_relative.empty() && monotone && rep.o_relative.back() <= tol;
    return rep;
}

}  // namespace wavelab

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "wavelab/generators.hpp"
#include "wavelab/lab.hpp"
#include "wavelab/linear_wave.hpp"
#include "wavelab/nlw_solver.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/numerics.hpp"
#include "wavelab/profiles.hpp"
#include "wavelab/radial_core.hpp"
#include "wavelab/stationary.hpp"

namespace wavelab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

long steps(double t, double h) { return std::lround(t / h); }
long cells(double x, double h) { return static_cast<long>(std::ceil(x / h - 1e-9)); }
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
double flag(bool b) { return b ? 1.0 : 0.0; }

RadialPair pair_from(const PairFamily& p, const RadialGrid& g) { return sample_pair(g, p.u0, p.u1, p.du0); }

Config defaults(const std::string& name, double m, int iota, double h, double radius, double t_final, std::size_t trials,
                std::map<std::string, double> tol, std::map<std::string, std::string> params) {
    Config c;
    c.experiment = name;
    c.m = m;
    c.iota = iota;
    c.h = h;
    c.radius = radius;
    c.t_final = t_final;
    c.trials = trials;
    c.tolerances = std::move(tol);
    c.params = std::move(params);
    return c;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Field of the free wave with profile prof on [-T, T] x [0, R], plus the data at t = 0.
struct FreeWave {
    SpaceTimeField field;
    RadialPair data;
};

FreeWave free_wave(const CharProfile& prof, long nT, std::size_t nr) {
    FreeWave w;
    w.field = linear_field(prof, -static_cast<double>(nT) * prof.h, static_cast<std::size_t>(2 * nT + 1), nr);
    w.data = from_characteristic(prof, 0.0, nr);
    return w;
}

// ---------------------------------------------------------------- conservation
void run_conservation(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const double support = c.param("support");
    const long ns = std::max(1L, std::lround(c.param("t_samples")));
    R.column("drift", Reduce::max);
    R.column("lm_ratio_max", Reduce::max);
    R.column("lm_ratio_min", Reduce::min);
    R.column("energy", Reduce::mean);
    R.trials(c.trials, [&](std::size_t, TrialRecord& rec) {
        Rng rng(rec.seed);
        const ProfileFamily fam = gaussian_profile(rng, support);
        rec.data = fam.describe();
        const long k0 = cells(c.radius, h);
        const long nt = steps(c.t_final, h);
        const CharProfile base = sample_profile(h, k0, fam.fdot);
        const CharProfile prof = pad_profile(base, k0 + 2 * nt + 2);
        const std::size_t n_out = static_cast<std::size_t>(k0 + nt + 1);
        const double E0 = em_energy(base, m).value;
        const double L0 = lm_norm(propagate(prof, 0.0, n_out), m).value;
        double drift = 0.0, lmax = 0.0, lmin = INFINITY;
        for (long s = 0; s <= ns; ++s) {
            const double t = static_cast<double>((s * nt) / ns) * h;
            const RadialPair st = propagate(prof, t, n_out);
            drift = std::max(drift, rel(em_energy(to_characteristic(st), m).value, E0));
            const double q = lm_norm(st, m).value / L0;
            lmax = std::max(lmax, q);
            lmin = std::min(lmin, q);
        }
        rec.values = {drift, lmax, lmin, E0};
    });
    R.verdict("energy_drift", R.aggregate("drift"), "<=", c.tol("drift"));
}

// ---------------------------------------------------------------- dichotomy
void run_dichotomy(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const std::vector<double> Rs = c.param_list("R_list");
    const long nts = std::max(2L, std::lround(c.param("t_count")));
    const double support = c.param("support");
    std::vector<double> ts;
    const long nT = steps(c.t_final, h);
    for (long i = 0; i < nts; ++i) ts.push_back(static_cast<double>(-nT + (2 * nT * i) / (nts - 1)) * h);
    R.column("margin_min", Reduce::min);
    R.column("convexity_ok", Reduce::min);
    R.column("convexity_slack_min", Reduce::min);
    R.column("forward_share", Reduce::mean);
    R.trials(c.trials, [&](std::size_t, TrialRecord& rec) {
        Rng rng(rec.seed);
        const ProfileFamily fam = random_profile(rng, support);
        rec.data = fam.describe();
        const CharProfile prof = sample_profile(h, cells(c.radius, h), fam.fdot);
        double margin = INFINITY, slack = INFINITY, fwd = 0.0;
        bool conv = true;
        for (double Rv : Rs) {
            const ChannelReport cr = channel_report(prof, m, Rv, ts);
            if (cr.lhs > 0.0) margin = std::min(margin, std::max(cr.inf_forward, cr.inf_backward) / cr.lhs);
            conv = conv && cr.convexity_holds;
            if (cr.lhs > 0.0) slack = std::min(slack, (cr.left + cr.right - cr.lhs) / cr.lhs);
            fwd += flag(cr.inf_forward >= cr.inf_backward) / static_cast<double>(Rs.size());
        }
        rec.values = {margin, flag(conv), slack, fwd};
    });
    R.verdict("channel_dichotomy", R.aggregate("margin_min"), ">=", c.tol("constant"));
    R.verdict("convexity", R.aggregate("convexity_ok"), ">=", 1.0);
}

// ---------------------------------------------------------------- strichartz_scan
void run_strichartz(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const double lam = c.param("lambda");
    const double support = c.param("support");
    const std::vector<double> alphas = c.param_list("alphas");
    const MixedExponents me = mixed_exponents(m);
    R.column("s_ratio", Reduce::max);
    R.column("s_ratio_min", Reduce::min);
    R.column("s_scale_defect", Reduce::max);
    for (double a : alphas) {
        R.column("w" + num(a) + "_ratio", Reduce::max);
        R.column("w" + num(a) + "_scale_defect", Reduce::max);
    }
    R.column("mixed_ratio", Reduce::max);
    R.column("mixed_scale_defect", Reduce::max);
    const long nT = steps(c.t_final, h);
    const std::size_t nr = static_cast<std::size_t>(cells(c.radius + c.t_final, h)) + 1;
    const long kmax = nT + static_cast<long>(nr) + 2;
    R.trials(c.trials, [&](std::size_t, TrialRecord& rec) {
        Rng rng(rec.seed);
        const ProfileFamily fam = random_profile(rng, support);
        rec.data = fam.describe();
        const CharProfile prof = sample_profile(h, kmax, fam.fdot);
        const CharProfile scaled = rescale_profile(prof, lam, m);
        const FreeWave a = free_wave(prof, nT, nr), b = free_wave(scaled, nT, nr);
        const double La = lm_norm(a.data, m).value, Lb = lm_norm(b.data, m).value;
        std::vector<double> v;
        const double sa = s_norm(a.field, m).value / La, sb = s_norm(b.field, m).value / Lb;
        v.insert(v.end(), {sa, sa, rel(sb, sa)});
        for (double al : alphas) {
            const double wa = weighted_st_norm(a.field, al, m).value / La;
            const double wb = weighted_st_norm(b.field, al, m).value / Lb;
            v.insert(v.end(), {wa, rel(wb, wa)});
        }
        if (me.valid) {
            const double xa = mixed_norm(a.field, me.a, me.b, m).value / La;
            const double xb = mixed_norm(b.field, me.a, me.b, m).value / Lb;
            v.insert(v.end(), {xa, rel(xb, xa)});
        } else {
            v.insert(v.end(), {kNaN, kNaN});
        }
        rec.values = std::move(v);
    });
    double worst_ratio = R.aggregate("s_ratio"), worst_defect = R.aggregate("s_scale_defect");
    for (double a : alphas) {
        worst_ratio = std::max(worst_ratio, R.aggregate("w" + num(a) + "_ratio"));
        worst_defect = std::max(worst_defect, R.aggregate("w" + num(a) + "_scale_defect"));
    }
    if (me.valid) {
        worst_ratio = std::max(worst_ratio, R.aggregate("mixed_ratio"));
        worst_defect = std::max(worst_defect, R.aggregate("mixed_scale_defect"));
        R.metric("mixed_a", me.a);
        R.metric("mixed_b", me.b);
    }
    R.verdict("ratios_finite", flag(std::isfinite(worst_ratio) && R.aggregate("s_ratio_min") > 0.0), ">=", 1.0);
    R.verdict("scale_invariance", worst_defect, "<=", c.tol("scale"));
}

// ---------------------------------------------------------------- gv_scan
void run_gv(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const double lam = c.param("lambda");
    const double support = c.param("support");
    const std::vector<double> sf = c.param_list("sigma_factors");
    std::vector<std::pair<double, double>> pairs;  // (q, sigma) with 1/q + 3/sigma = 1/m
    for (double f : sf) {
        const double sigma = f * m;
        const double inv_q = 1.0 / m - 3.0 / sigma;
        if (!(inv_q > 0.0)) throw UsageError("sigma_factors must exceed 3");
        pairs.emplace_back(1.0 / inv_q, sigma);
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        R.column("gv" + std::to_string(k) + "_ratio", Reduce::max);
        R.column("gv" + std::to_string(k) + "_scale_defect", Reduce::max);
    }
    R.column("endpoint_ratio", Reduce::max);
    R.column("endpoint_scale_defect", Reduce::max);
    const long nT = steps(c.t_final, h);
    const std::size_t nr = static_cast<std::size_t>(cells(c.radius + c.t_final, h)) + 1;
    const long kmax = nT + static_cast<long>(nr) + 2;
    R.trials(c.trials, [&](std::size_t, TrialRecord& rec) {
        Rng rng(rec.seed);
        const ProfileFamily fam = random_profile(rng, support);
        rec.data = fam.describe();
        const CharProfile prof = sample_profile(h, kmax, fam.fdot);
        const FreeWave a = free_wave(prof, nT, nr), b = free_wave(rescale_profile(prof, lam, m), nT, nr);
        const double La = lm_norm(a.data, m).value, Lb = lm_norm(b.data, m).value;
        std::vector<double> v;
        for (const auto& [q, sigma] : pairs) {
            const double ra = lq_lsigma_norm(a.field, q, sigma).value / La;
            const double rb = lq_lsigma_norm(b.field, q, sigma).value / Lb;
            v.insert(v.end(), {ra, rel(rb, ra)});
        }
        const FreeWave e = free_wave(rescale_profile(prof, lam, 2.0), nT, nr);
        const double ea = l2_linf_norm(a.field).value / lm_norm(a.data, 2.0).value;
        const double eb = l2_linf_norm(e.field).value / lm_norm(e.data, 2.0).value;
        v.insert(v.end(), {ea, rel(eb, ea)});
        rec.values = std::move(v);
    });
    double worst_ratio = R.aggregate("endpoint_ratio"), worst_defect = R.aggregate("endpoint_scale_defect");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        worst_ratio = std::max(worst_ratio, R.aggregate("gv" + std::to_string(k) + "_ratio"));
        worst_defect = std::max(worst_defect, R.aggregate("gv" + std::to_string(k) + "_scale_defect"));
        R.metric("gv" + std::to_string(k) + "_q", pairs[k].first);
        R.metric("gv" + std::to_string(k) + "_sigma", pairs[k].second);
    }
    R.verdict("ratios_finite", flag(std::isfinite(worst_ratio)), ">=", 1.0);
    R.verdict("scale_invariance", worst_defect, "<=", c.tol("scale"));
}

// ---------------------------------------------------------------- weak_type

// Direct evaluation: lattice values by explicit trapezoid sums and the supremum by
// enumerating every realised level against every cell.
double brute_weak_sup(const std::vector<double>& G, double h, double alpha, double radius) {
    const long N = static_cast<long>(G.size());
    const long J = cells(radius, h);
    auto g = [&](long k) { return (k >= 0 && k < N) ? G[static_cast<std::size_t>(k)] : 0.0; };
    std::vector<double> vals, mus;
    const double p = alpha - 2.0;
    auto prim = [p](double r) { return r > 0.0 ? std::pow(r, p + 1.0) / (p + 1.0) : 0.0; };
    for (long i = -J; i < N + J; ++i)
        for (long j = 0; j <= J; ++j) {
            double v;
            if (j == 0) {
                v = g(i);
            } else {
                double s = 0.0;
                for (long k = i - j; k < i + j; ++k) s += 0.5 * h * (g(k) + g(k + 1));
                v = s / (2.0 * static_cast<double>(j) * h);
            }
            const double r = static_cast<double>(j) * h;
            vals.push_back(std::fabs(v));
            mus.push_back(h * (prim(r + 0.5 * h) - prim(std::max(0.0, r - 0.5 * h))));
        }
    double best = 0.0;
    for (double L : vals) {
        if (!(L > 0.0)) continue;
        double mu = 0.0;
        for (std::size_t k = 0; k < vals.size(); ++k)
            if (vals[k] >= L) mu += mus[k];
        best = std::max(best, L * std::pow(mu, 1.0 / alpha));
    }
    return best;
}

void run_weak_type(Run& R) {
    const Config& c = R.cfg();
    const double h = c.h;
    const std::vector<double> alphas = c.param_list("alphas");
    const std::size_t ncell = static_cast<std::size_t>(std::lround(c.param("cells")));
    const std::size_t nbrute = static_cast<std::size_t>(std::lround(c.param("brute_trials")));
    const std::size_t bcell = static_cast<std::size_t>(std::lround(c.param("brute_cells")));
    const double rf = c.param("radius_factor");
    for (double a : alphas) {
        R.column("ratio_a" + num(a), Reduce::max);
        R.column("dilation_defect_a" + num(a), Reduce::max);
        R.column("brute_error_a" + num(a), Reduce::max);
    }
    R.column("chebyshev_ok", Reduce::min);
    R.column("maximal_dominates", Reduce::min);
    R.trials(c.trials, [&](std::size_t i, TrialRecord& rec) {
        Rng rng(rec.seed);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        std::vector<double> G(ncell);
        for (double& g : G) g = U(rng) < 0.3 ? 0.0 : U(rng);
        G.front() = std::max(G.front(), 0.1);
        std::vector<double> Gs(bcell);
        for (double& g : Gs) g = U(rng);
        rec.data = "random_cells(" + std::to_string(ncell) + ")";
        std::vector<double> v;
        bool cheb = true;
        for (double a : alphas) {
            const WeakTypeReport wr = weak_type_check(G, h, a, rf);
            cheb = cheb && wr.sup_value <= lq_cells(wr.lattice, a).value * (1.0 + 1e-12);
            double berr = kNaN;
            if (i < nbrute) {
                const WeakTypeReport sr = weak_type_check(Gs, h, a, 2.0);
                const double support = static_cast<double>(Gs.size() - 1) * h;
                const double b = brute_weak_sup(Gs, h, a, 2.0 * std::max(support, h));
                berr = rel(sr.sup_value, b);
            }
            v.insert(v.end(), {wr.ratio, wr.dilation_defect, berr});
        }
        const std::vector<double> M = maximal_function(G);
        bool dom = true;
        for (std::size_t k = 0; k < G.size(); ++k) dom = dom && M[k] >= std::fabs(G[k]);
        v.insert(v.end(), {flag(cheb), flag(dom)});
        rec.values = std::move(v);
    });
    double ratio = 0.0, dil = 0.0, brute = 0.0;
    for (double a : alphas) {
        ratio = std::max(ratio, R.aggregate("ratio_a" + num(a)));
        dil = std::max(dil, R.aggregate("dilation_defect_a" + num(a)));
        const double b = R.aggregate("brute_error_a" + num(a));
        if (!std::isnan(b)) brute = std::max(brute, b);
    }
    R.verdict("ratio_finite", flag(std::isfinite(ratio)), ">=", 1.0);
    R.verdict("dilation_invariance", dil, "<=", c.tol("dilation"));
    R.verdict("brute_force_agreement", brute, "<=", c.tol("brute"));
    R.verdict("chebyshev", R.aggregate("chebyshev_ok"), ">=", 1.0);
    R.verdict("maximal_dominates", R.aggregate("maximal_dominates"), ">=", 1.0);
}

// ---------------------------------------------------------------- small_data
void run_small_data(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const double T = c.t_final;
    const int nref = std::max(2, static_cast<int>(std::lround(c.param("refinements"))));
    const double frac = c.param("amplitude_fraction");
    R.column("delta0", Reduce::max);
    R.column("amplitude", Reduce::max);
    R.column("delta", Reduce::max);
    R.column("max_factor", Reduce::max);
    R.column("s_over_2delta", Reduce::max);
    R.column("iterations", Reduce::max);
    R.column("converged", Reduce::min);
    for (int k = 0; k < nref; ++k) R.column("diff_h" + std::to_string(k), Reduce::max);
    for (int k = 1; k < nref; ++k) R.column("order_ratio" + std::to_string(k), Reduce::max);
    R.trials(1, [&](std::size_t, TrialRecord& rec) {
        const Calibration cal = calibrate_delta0(p, RadialGrid::covering(c.h, c.radius), T);
        const double a = frac * cal.amplitude0;
        const PairFamily fam = gaussian_pair(a, 1.0);
        rec.data = fam.describe();
        std::vector<double> diffs;
        double maxf = 0.0, s2d = 0.0, delta = 0.0, iters = 0.0;
        bool conv = true;
        for (int k = 0; k < nref; ++k) {
            const double hk = c.h / std::pow(2.0, k);
            const RadialPair d = pair_from(fam, RadialGrid::covering(hk, c.radius));
            const PicardResult pr = picard_solve(d, p, T);
            DiamondOptions o;
            o.t_final = T;
            o.track_norms = false;
            const Evolution e = evolve_diamond(d, p, o);
            const std::size_t nf = std::min(pr.field.frames(), e.field.frames());
            SpaceTimeField diff = pr.field;
            diff.U.resize(nf);
            diff.Ut.resize(nf);
            diff.valid_radius.resize(nf);
            for (std::size_t i = 0; i < nf; ++i)
                for (std::size_t j = 0; j < diff.grid.n; ++j) {
                    diff.U[i][j] -= e.field.U[i][j];
                    diff.Ut[i][j] -= e.field.Ut[i][j];
                }
            diffs.push_back(s_norm(diff, p.m).value);
            if (k == 0) {
                maxf = pr.max_factor;
                s2d = pr.s_norm / (2.0 * pr.delta);
                delta = pr.delta;
                iters = pr.iterations;
            }
            conv = conv && pr.converged;
        }
        rec.values = {cal.delta0, a, delta, maxf, s2d, iters, flag(conv)};
        for (double d : diffs) rec.values.push_back(d);
        for (int k = 1; k < nref; ++k) rec.values.push_back(diffs[k - 1] / diffs[k]);
    });
    R.verdict("contraction_factor", R.aggregate("max_factor"), "<=", c.tol("factor"));
    R.verdict("s_norm_bound", R.aggregate("s_over_2delta"), "<=", 1.0);
    R.verdict("picard_converged", R.aggregate("converged"), ">=", 1.0);
    for (int k = 1; k < nref; ++k) {
        const double r = R.aggregate("order_ratio" + std::to_string(k));
        R.verdict("order_ratio" + std::to_string(k) + "_lo", r, ">=", c.tol("order_lo"));
        R.verdict("order_ratio" + std::to_string(k) + "_hi", r, "<=", c.tol("order_hi"));
    }
}

// ---------------------------------------------------------------- blow-up helpers
double history_at(const SolveOutcome& o, const std::vector<double>& hist, double t) {
    double v = hist.empty() ? kNaN : hist.front();
    for (std::size_t k = 0; k < o.times.size() && k < hist.size(); ++k)
        if (o.times[k] <= t) v = hist[k];
    return v;
}

void run_blowup_cone(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const double amp = c.param("c");
    R.column("blowup", Reduce::min);
    R.column("T_ode", Reduce::max);
    R.column("T_numerical", Reduce::max);
    R.column("T_rel_error", Reduce::max);
    R.column("exponent", Reduce::max);
    R.column("exponent_rel_error", Reduce::max);
    R.column("lm_growth", Reduce::min);
    R.column("fit_window_lo", Reduce::max);
    R.column("fit_window_hi", Reduce::max);
    R.trials(1, [&](std::size_t, TrialRecord& rec) {
        rec.data = "constant(" + num(amp) + ")";
        const RadialGrid g = RadialGrid::covering(c.h, c.radius);
        const RadialPair d = sample_pair(g, [amp](double) { return amp; }, nullptr, [](double) { return 0.0; });
        DiamondOptions o;
        o.t_final = c.t_final;
        o.shrink_valid = true;
        o.fit_floor_steps = c.param("fit_floor");
        o.store_stride = static_cast<std::size_t>(std::max(1L, steps(c.t_final, c.h) / 200));
        const Evolution e = evolve_diamond(d, p, o);
        const double To = ode_blowup_time(p.m, amp);
        const bool blown = e.outcome.status == SolveStatus::blowup_detected;
        const double Tn = e.outcome.T_fit.value_or(e.outcome.T_plus_estimate.value_or(kNaN));
        const double ex = e.outcome.blowup_exponent_fit.value_or(kNaN);
        const double target = -1.0 / p.m;
        const double growth = e.outcome.lm_history.empty()
                                  ? kNaN
                                  : history_at(e.outcome, e.outcome.lm_history, e.outcome.t_fit_hi) /
                                        history_at(e.outcome, e.outcome.lm_history, e.outcome.t_fit_lo);
        rec.values = {flag(blown), To, Tn, rel(Tn, To), ex, rel(ex, target), growth, e.outcome.t_fit_lo, e.outcome.t_fit_hi};
        if (c.param("checkpoint") != 0.0)
            R.artifact("blowup_cone.ckpt", [&](std::ostream& os) { write_checkpoint(os, e.field, p); }, true);
    });
    R.verdict("blowup_detected", R.aggregate("blowup"), ">=", 1.0);
    R.verdict("blowup_time", R.aggregate("T_rel_error"), "<=", c.tol("time"));
    R.verdict("growth_exponent", R.aggregate("exponent_rel_error"), "<=", c.tol("exponent"));
    R.verdict("lm_norm_growth", R.aggregate("lm_growth"), ">=", c.tol("growth"));
}

void run_blowup_divergence(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const double m = p.m;
    R.column("blowup", Reduce::min);
    R.column("T_fit", Reduce::max);
    R.column("lm_growth", Reduce::min);
    R.column("s_growth", Reduce::min);
    R.column("s_monotone", Reduce::min);
    R.column("s_log_slope", Reduce::max);
    R.column("s_log_slope_selfsimilar", Reduce::max);
    R.trials(1, [&](std::size_t, TrialRecord& rec) {
        const PairFamily fam = plateau_pair(c.param("c"), c.param("plateau"), c.param("ramp"));
        rec.data = fam.describe();
        const RadialPair d = pair_from(fam, RadialGrid::covering(c.h, c.radius));
        DiamondOptions o;
        o.t_final = c.t_final;
        o.store_stride = static_cast<std::size_t>(std::max(1L, steps(c.t_final, c.h) / 200));
        const Evolution e = evolve_diamond(d, p, o);
        const SolveOutcome& oc = e.outcome;
        const bool blown = oc.status == SolveStatus::blowup_detected;
        double lm_g = kNaN, s_g = kNaN, slope = kNaN;
        bool mono = true;
        const double T = oc.T_fit.value_or(oc.T_plus_estimate.value_or(kNaN));
        if (blown) {
            lm_g = history_at(oc, oc.lm_history, oc.t_fit_hi) / history_at(oc, oc.lm_history, oc.t_fit_lo);
            s_g = history_at(oc, oc.s_norm_history, oc.t_fit_hi) / history_at(oc, oc.s_norm_history, oc.t_fit_lo);
            std::vector<double> x, y;
            for (std::size_t k = 0; k < oc.times.size(); ++k) {
                if (k > 0) mono = mono && oc.s_norm_history[k] >= oc.s_norm_history[k - 1];
                if (oc.times[k] < oc.t_fit_lo || oc.times[k] > oc.t_fit_hi) continue;
                x.push_back(std::log(T - oc.times[k]));
                y.push_back(std::log(oc.s_norm_history[k]));
            }
            if (x.size() >= 2) slope = fit_line(x, y).slope;
        }
        rec.values = {flag(blown), T, lm_g, s_g, flag(mono), slope, -(m + 1.0) / (m * (2.0 * m + 1.0))};
    });
    R.verdict("blowup_detected", R.aggregate("blowup"), ">=", 1.0);
    R.verdict("lm_norm_growth", R.aggregate("lm_growth"), ">=", c.tol("lm_growth"));
    R.verdict("s_norm_monotone", R.aggregate("s_monotone"), ">=", 1.0);
    R.verdict("s_norm_diverging", R.aggregate("s_log_slope"), "<", 0.0);
}

// ---------------------------------------------------------------- duhamel_strichartz
void run_duhamel(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const double lam = c.param("lambda");
    const double t_span = c.param("t_span"), r_span = c.param("r_span");
    R.column("ratio", Reduce::max);
    R.column("ratio_min", Reduce::min);
    R.column("scale_defect", Reduce::max);
    R.column("energy_ratio", Reduce::max);
    R.column("energy_scale_defect", Reduce::max);
    const std::size_t nt = static_cast<std::size_t>(steps(c.t_final, h)) + 1;
    const std::size_t nr = static_cast<std::size_t>(cells(r_span + c.t_final, h)) + 1;
    auto measure = [&](const SourceField& src, double* energy) {
        const SpaceTimeField u = duhamel(src);
        std::vector<double> per(src.frames());
        for (std::size_t i = 0; i < per.size(); ++i) {
            std::vector<double> g(nr);
            for (std::size_t j = 0; j < nr; ++j) g[j] = pow_abs(src.grid.r(j) * src.f[i][j], m);
            const double v = trapezoid(g, src.grid.h).value;
            per[i] = v > 0.0 ? std::pow(v, 1.0 / m) : 0.0;
        }
        const double rhs = trapezoid(per, src.grid.h).value;
        double e = 0.0;
        for (std::size_t i = 0; i < u.frames(); ++i) e = std::max(e, exterior_frame_energy(u, i, m, 0.0).grad);
        *energy = std::pow(e, 1.0 / m) / rhs;
        return s_norm(u, m).value / rhs;
    };
    R.trials(c.trials, [&](std::size_t, TrialRecord& rec) {
        Rng rng(rec.seed);
        const SourceFamily fam = random_source(rng, t_span, r_span);
        rec.data = fam.describe();
        SourceField src;
        src.grid = RadialGrid(h, nr);
        src.f.assign(nt, std::vector<double>(nr));
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < nr; ++j) src.f[i][j] = fam.f(static_cast<double>(i) * h, src.grid.r(j));
        SourceField scaled = src;
        scaled.grid = RadialGrid(h / lam, nr);
        const double amp = std::pow(lam, 2.0 + 1.0 / m);
        for (auto& fr : scaled.f)
            for (double& v : fr) v *= amp;
        double ea = 0.0, eb = 0.0;
        const double ra = measure(src, &ea), rb = measure(scaled, &eb);
        rec.values = {ra, ra, rel(rb, ra), ea, rel(eb, ea)};
    });
    R.verdict("ratio_finite", flag(std::isfinite(R.aggregate("ratio")) && R.aggregate("ratio_min") > 0.0), ">=", 1.0);
    R.verdict("scale_invariance", std::max(R.aggregate("scale_defect"), R.aggregate("energy_scale_defect")), "<=",
              c.tol("scale"));
}

// ---------------------------------------------------------------- stationary_profile
void run_stationary(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m;
    TailOptions topt;
    topt.R_max = c.param("R_max");
    InwardOptions iopt;
    iopt.r_min = c.param("r_min");
    iopt.g_cap = c.param("g_cap");
    const std::vector<std::string> cols = {"tail_exponent", "tail_exponent_rel_error", "deriv_exponent_rel_error",
                                           "tail_constant", "contraction", "fixed_point_residual", "ode_residual",
                                           "lyapunov_residual", "identity_residual", "l3m_growth", "l3m_partial_last",
                                           "l3m_tail", "l3m_tail_ratio", "overlap_defect", "R1", "Z_at_R1", "defocusing_singular"};
    for (const auto& k : cols) R.column(k, Reduce::max);
    R.trials(1, [&](std::size_t, TrialRecord& rec) {
        rec.data = "stationary(m=" + num(m) + ")";
        const ModelParams pf(m, 1), pd(m, -1);
        const TailSolution tail = fixed_point_tail(pf, topt);
        const StationaryProfile F = continue_inward(tail, iopt);
        const StationaryResiduals res = stationary_residuals(F);
        const L3mReport l3 = not_in_l3m_check(F);
        TailOptions alt = topt;
        alt.R_max = c.param("R_max_alt");
        alt.r0 = tail.r0;
        alt.max_escalations = 0;
        const TailSolution tail2 = fixed_point_tail(pf, alt);
        double overlap = 0.0;
        for (std::size_t k = 0; k < std::min(tail.r.size(), tail2.r.size()); ++k)
            if (std::fabs(tail.r[k] - tail2.r[k]) <= 1e-12 * tail.r[k])
                overlap = std::max(overlap, std::fabs(tail.g[k] - tail2.g[k]));
        const StationaryProfile D = build_stationary(pd, 1.0, topt, iopt);
        const double target = -(2.0 * m - 2.0);
        const double tail_oracle = 1.0 / (3.0 * m - 3.0);
        rec.values = {F.tail_exponent, rel(F.tail_exponent, target), rel(F.tail_exponent_deriv, target), F.tail_constant,
                      F.contraction, F.fixed_point_residual, res.ode, res.lyapunov, res.identity,
                      l3.growth_last_two_decades, l3.partial.empty() ? kNaN : l3.partial.back(), l3.tail_integral,
                      l3.tail_integral / tail_oracle, overlap / topt.tol, D.R_detect, D.Z_inner, flag(D.singular)};
        R.artifact("stationary_focusing.csv", [&](std::ostream& os) { write_profile_csv(os, F); });
        R.artifact("stationary_focusing.json", [&](std::ostream& os) { write_profile_json(os, F); });
        R.artifact("stationary_defocusing.csv", [&](std::ostream& os) { write_profile_csv(os, D); });
        R.artifact("stationary_defocusing.json", [&](std::ostream& os) { write_profile_json(os, D); });
    });
    R.verdict("tail_exponent", R.aggregate("tail_exponent_rel_error"), "<=", c.tol("tail"));
    R.verdict("ode_residual", R.aggregate("ode_residual"), "<=", c.tol("ode"));
    R.verdict("lyapunov_residual", R.aggregate("lyapunov_residual"), "<=", c.tol("lyapunov"));
    R.verdict("identity_residual", R.aggregate("identity_residual"), "<=", c.tol("identity"));
    R.verdict("contraction", R.aggregate("contraction"), "<", 0.5);
    R.verdict("not_in_l3m", R.aggregate("l3m_growth"), ">=", c.tol("l3m_growth"));
    R.verdict("overlap", R.aggregate("overlap_defect"), "<=", 10.0);
    R.verdict("defocusing_radius", R.aggregate("R1"), ">", 0.0);
    R.verdict("defocusing_cap", R.aggregate("Z_at_R1"), ">=", iopt.g_cap);
}

// ---------------------------------------------------------------- rl_scaling
void run_rl_scaling(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const double m = p.m;
    const std::vector<double> ells = c.param_list("ell_list");
    const std::vector<double> factors = c.param_list("radius_factors");
    for (double e : ells)
        if (e == 0.0) throw UsageError("ell_list must not contain 0");
    R.column("ell", Reduce::max);
    R.column("R_ell", Reduce::max);
    R.column("law_error", Reduce::max);
    R.column("reintegration_R_error", Reduce::max);
    R.column("reintegration_g_error", Reduce::max);
    const StationaryProfile base = build_stationary(p, 1.0);
    R.trials(ells.size(), [&](std::size_t i, TrialRecord& rec) {
        const double ell = ells[i];
        rec.data = "ell(" + num(ell) + ")";
        const double kappa = std::pow(std::fabs(ell), m / (m - 1.0));
        const StationaryProfile z = z_ell(base, ell);
        const StationaryProfile direct = build_stationary(p, ell);
        double law = kNaN, rerr = kNaN;
        if (base.singular) {
            law = rel(z.R_detect / base.R_detect, kappa);
            rerr = rel(direct.R_detect, z.R_detect);
        }
        const double anchor = base.singular ? z.R_detect : kappa;
        double gerr = 0.0;
        for (double f : factors) {
            const double r = anchor * f;
            gerr = std::max(gerr, rel(direct.g_at(r), z.g_at(r)));
        }
        rec.values = {ell, z.R_detect, law, rerr, gerr};
    });
    double worst = R.aggregate("reintegration_g_error");
    if (!std::isnan(R.aggregate("reintegration_R_error"))) worst = std::max(worst, R.aggregate("reintegration_R_error"));
    if (!std::isnan(R.aggregate("law_error"))) worst = std::max(worst, R.aggregate("law_error"));
    R.metric("R1", base.R_detect);
    R.verdict("scaling_law", worst, "<=", c.tol("scaling"));
}

// ---------------------------------------------------------------- profile_decoupling
SyntheticSequence two_profile_sequence(double m, double h, long kmax, std::function<double(double)> wide,
                                       std::function<double(double)> narrow, const std::vector<double>& lam2,
                                       const std::vector<double>& t2) {
    SyntheticSequence s;
    s.m = m;
    s.h = h;
    s.kmax = kmax;
    s.shapes = {std::move(wide), std::move(narrow)};
    s.params.lambda = {std::vector<double>(lam2.size(), 1.0), lam2};
    s.params.t = {std::vector<double>(lam2.size(), 0.0), t2};
    return s;
}

std::function<double(double)> indicator(double a, double b, double height) {
    return [=](double s) { return (s >= a && s < b) ? height : 0.0; };
}

void run_decoupling(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const int nmax = static_cast<int>(std::lround(c.param("n_max")));
    const double base = c.param("ratio_base");
    const double shift = c.param("shift");
    R.column("cross_slope", Reduce::max);
    R.column("cross_slope_rel_error", Reduce::max);
    R.column("delta_slope", Reduce::max);
    R.column("vanishing", Reduce::min);
    R.column("pseudo_orthogonal", Reduce::min);
    R.column("time_separation_exact_zero", Reduce::min);
    R.column("single_profile_delta", Reduce::max);
    const double target = 1.0 - 1.0 / m;
    R.trials(c.trials, [&](std::size_t i, TrialRecord& rec) {
        Rng rng(rec.seed);
        std::uniform_int_distribution<int> Q(1, 3);
        std::uniform_real_distribution<double> H(0.5, 2.0);
        double wa = 0.0, wb = 1.0, na = 0.0, nb = 1.0, wh = 1.0, nh = 1.0;
        if (i > 0) {
            wa = -0.25 * Q(rng);
            wb = 0.25 * Q(rng);
            na = -0.25 * (Q(rng) - 1);
            nb = na + 0.25 * Q(rng);
            wh = H(rng);
            nh = H(rng) * (Q(rng) == 2 ? -1.0 : 1.0);
        }
        rec.data = "indicators(" + num(wa) + ";" + num(wb) + ";" + num(wh) + ";" + num(na) + ";" + num(nb) + ";" + num(nh) + ")";
        std::vector<double> lam, t0, teq;
        std::vector<std::size_t> ns;
        for (int n = 1; n <= nmax; ++n) {
            lam.push_back(std::pow(base, -n));
            t0.push_back(0.0);
            teq.push_back(shift * n * (nb - na));
            ns.push_back(static_cast<std::size_t>(n - 1));
        }
        const long kmax = cells(std::max(c.radius, 2.0), h);
        const DecouplingReport d =
            decoupling_check(two_profile_sequence(m, h, kmax, indicator(wa, wb, wh), indicator(na, nb, nh), lam, t0), ns);
        const long kmax_t = cells(std::max(std::fabs(wa), std::fabs(wb)) + teq.back() + std::fabs(na) + std::fabs(nb) + 1.0, h);
        SyntheticSequence ts = two_profile_sequence(m, h, kmax_t, indicator(na, nb, nh), indicator(na, nb, nh),
                                                    std::vector<double>(ns.size(), 1.0), teq);
        const DecouplingReport dt = decoupling_check(ts, ns);
        SyntheticSequence one = ts;
        one.shapes.resize(1);
        one.params.lambda.resize(1);
        one.params.t.resize(1);
        const DecouplingReport d1 = decoupling_check(one, ns);
        double single = 0.0;
        for (double v : d1.delta) single = std::max(single, v);
        rec.values = {d.cross_slope, rel(d.cross_slope, target), d.delta_slope, flag(d.vanishing), flag(d.pseudo_orthogonal),
                      flag(dt.exact_zero_tail), single};
    });
    R.metric("expected_cross_slope", target);
    R.verdict("cross_energy_rate", R.aggregate("cross_slope_rel_error"), "<=", c.tol("slope"));
    R.verdict("vanishing", R.aggregate("vanishing"), ">=", 1.0);
    R.verdict("pseudo_orthogonal", R.aggregate("pseudo_orthogonal"), ">=", 1.0);
    R.verdict("time_separation_exact_zero", R.aggregate("time_separation_exact_zero"), ">=", 1.0);
    R.verdict("single_profile_zero", R.aggregate("single_profile_delta"), "<=", 0.0);
}

// ---------------------------------------------------------------- bessel
ProfileFamily random_compact_profile(Rng& rng) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return smooth_indicator_profile(rng, 1.0);
        case 1: return fourier_profile(rng, 1.0);
        default: return bump_profile(rng, 1.0);
    }
}

struct BesselSetup {
    std::vector<std::function<double(double)>> shapes;
    std::vector<std::vector<double>> lambda, t;
    double w_amp = 0.0;
    std::string text;
};

SyntheticSequence bessel_sequence(const BesselSetup& s, double m, double h, int nmax) {
    SyntheticSequence q;
    q.m = m;
    q.h = h;
    q.kmax = cells(2.5 * nmax + 3.0, h);
    q.shapes = s.shapes;
    q.params.lambda = s.lambda;
    q.params.t = s.t;
    for (int n = 0; n <= nmax; ++n) {
        const double amp = s.w_amp;
        q.remainders.push_back(modulate_fn([amp](double x) { return amp * bump(x); }, 0.5 * std::pow(4.0, -n), -2.0, m, h, q.kmax));
    }
    return q;
}

void run_bessel(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const int nmax = static_cast<int>(std::lround(c.param("n_max")));
    R.column("profiles", Reduce::max);
    R.column("liminf_relative_defect", Reduce::min);
    R.column("min_relative_defect", Reduce::min);
    R.column("dual_pairing_error", Reduce::max);
    R.column("hilbert_error", Reduce::max);
    R.column("pseudo_orthogonal", Reduce::min);
    std::vector<std::size_t> ns;
    for (int n = 0; n <= nmax; ++n) ns.push_back(static_cast<std::size_t>(n));
    R.trials(c.trials, [&](std::size_t i, TrialRecord& rec) {
        Rng rng(rec.seed);
        BesselSetup s;
        const std::size_t J = 1 + i % 3;
        for (std::size_t j = 0; j < J; ++j) {
            const ProfileFamily f = random_compact_profile(rng);
            s.shapes.push_back(f.fdot);
            s.text += (j ? "+" : "") + f.describe();
            std::vector<double> lam, tt;
            for (int n = 0; n <= nmax; ++n) {
                if (j == 0) {
                    lam.push_back(1.0);
                    tt.push_back(0.0);
                } else if (j == 1) {
                    lam.push_back(std::pow(4.0, -n));
                    tt.push_back(1.5 * (1.0 - std::pow(2.0, -n)));
                } else {
                    lam.push_back(1.0);
                    tt.push_back(2.5 * n);
                }
            }
            s.lambda.push_back(lam);
            s.t.push_back(tt);
        }
        s.w_amp = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
        rec.data = s.text + "+remainder(" + num(s.w_amp) + ")";
        const SyntheticSequence q = bessel_sequence(s, m, h, nmax);
        const BesselReport b = bessel_check(q, ns, c.tol("defect"));
        const BesselReport b2 = bessel_check(bessel_sequence(s, 2.0, h, nmax), ns, c.tol("defect"));
        rec.values = {static_cast<double>(J), b.liminf_relative, b.min_relative, std::max(b.dual_pairing_error, b2.dual_pairing_error),
                      b2.hilbert_error, flag(q.params.pseudo_orthogonal())};
    });
    R.verdict("bessel_inequality", R.aggregate("liminf_relative_defect"), ">=", -c.tol("defect"));
    R.verdict("dual_pairing", R.aggregate("dual_pairing_error"), "<=", c.tol("dual"));
    R.verdict("hilbert_oracle", R.aggregate("hilbert_error"), "<=", c.tol("hilbert"));
    R.verdict("pseudo_orthogonal", R.aggregate("pseudo_orthogonal"), ">=", 1.0);
}

// ---------------------------------------------------------------- exterior_profiles
void run_exterior_profiles(Run& R) {
    const Config& c = R.cfg();
    const double m = c.m, h = c.h;
    const int nmax = static_cast<int>(std::lround(c.param("n_max")));
    const ExteriorWindow w{c.param("rho"), c.param("sigma"), static_cast<double>(steps(c.param("theta"), h)) * h};
    R.column("o_first", Reduce::max);
    R.column("o_last", Reduce::max);
    R.column("holds", Reduce::min);
    R.column("rhs_last", Reduce::max);
    R.column("lhs_last", Reduce::max);
    R.column("narrow_o_last", Reduce::max);
    std::vector<std::size_t> ns;
    std::vector<ExteriorWindow> ws;
    for (int n = 1; n <= nmax; ++n) {
        ns.push_back(static_cast<std::size_t>(n - 1));
        ws.push_back(w);
    }
    R.trials(c.trials, [&](std::size_t i, TrialRecord& rec) {
        Rng rng(rec.seed);
        std::function<double(double)> wide = [](double s) { return bump(s); };
        std::function<double(double)> narrow = [](double s) { return bump(s); };
        rec.data = "bump+bump";
        if (i > 0) {
            const ProfileFamily fw = random_compact_profile(rng), fn = random_compact_profile(rng);
            wide = fw.fdot;
            narrow = fn.fdot;
            rec.data = fw.describe() + "+" + fn.describe();
        }
        std::vector<double> lam;
        for (int n = 1; n <= nmax; ++n) lam.push_back(std::pow(4.0, -n));
        const SyntheticSequence s =
            two_profile_sequence(m, h, cells(std::max(c.radius, w.sigma + std::fabs(w.theta) + 1.0), h), wide, narrow, lam,
                                 std::vector<double>(lam.size(), 0.0));
        const ExteriorProfilesReport a = exterior_profiles_check(s, 0, ns, ws, c.tol("o"));
        const ExteriorProfilesReport b = exterior_profiles_check(s, 1, ns, ws, c.tol("o"));
        rec.values = {a.o_relative.front(), a.o_relative.back(), flag(a.holds), a.rhs.back(), a.lhs.back(), b.o_relative.back()};
    });
    R.verdict("exterior_profile_inequality", R.aggregate("holds"), ">=", 1.0);
    R.verdict("o_vanishing", R.aggregate("o_last"), "<=", c.tol("o"));
}

// ---------------------------------------------------------------- perturbation
void run_perturbation(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const std::vector<double> sizes = c.param_list("sizes");
    const double A = c.param("A");
    const double amp = c.param("amplitude");
    const RadialGrid g = RadialGrid::covering(c.h, c.radius);
    const PairFamily base = gaussian_pair(amp, 1.0);
    const RadialPair u = pair_from(base, g);
    R.column("size", Reduce::max);
    R.column("eps_s_norm", Reduce::max);
    R.column("eps_energy_sup", Reduce::max);
    R.column("eps_small", Reduce::max);
    R.column("M", Reduce::max);
    R.column("C_M", Reduce::max);
    R.column("blowup", Reduce::max);
    R.trials(sizes.size(), [&](std::size_t i, TrialRecord& rec) {
        const PairFamily pert = bump_pair(sizes[i], 0.0, 2.0);
        rec.data = base.describe() + "+" + pert.describe();
        RadialPair ut = u;
        const RadialPair dp = pair_from(pert, g);
        for (std::size_t j = 0; j < g.n; ++j) {
            ut.u0[j] += dp.u0[j];
            ut.u1[j] += dp.u1[j];
            (*ut.du0)[j] += (*dp.du0)[j];
        }
        const PerturbationReport pr = perturbation_check(u, ut, nullptr, A, p, c.t_final);
        rec.values = {sizes[i], pr.eps_s_norm, pr.eps_energy_sup, pr.eps_small, pr.M, pr.C_M, flag(pr.blowup)};
    });
    const PerturbationReport zero = perturbation_check(u, u, nullptr, A, p, c.t_final);
    R.metric("identical_data_eps", zero.eps_s_norm);
    std::vector<double> x, y;
    for (const auto& row : R.rows())
        if (row.values[1] > 0.0) {
            x.push_back(std::log(row.values[0]));
            y.push_back(std::log(row.values[1]));
        }
    const double slope = x.size() >= 2 ? fit_line(x, y).slope : kNaN;
    R.metric("log_log_slope", slope);
    R.verdict("no_blowup", R.aggregate("blowup"), "<=", 0.0);
    R.verdict("linear_scaling", std::fabs(slope - 1.0), "<=", c.tol("slope"));
    R.verdict("identical_data_zero", zero.eps_s_norm, "<=", 0.0);
}

// ---------------------------------------------------------------- bb1_channel
void run_bb1(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const double A = c.param("A");
    const double amp = c.param("amplitude");
    const int family = static_cast<int>(std::lround(c.param("family")));
    R.column("inf_forward", Reduce::min);
    R.column("inf_backward", Reduce::min);
    R.column("inf_forward_grad", Reduce::min);
    R.column("inf_backward_grad", Reduce::min);
    R.column("linear_prediction", Reduce::max);
    R.column("eta", Reduce::max);
    R.column("channel_ratio", Reduce::min);
    R.column("channel_observed", Reduce::min);
    R.trials(1, [&](std::size_t, TrialRecord& rec) {
        const RadialGrid g = RadialGrid::covering(c.h, c.radius);
        RadialPair d;
        if (family == 0) {
            const PairFamily f = gaussian_pair(amp, 1.5);
            rec.data = f.describe();
            d = pair_from(f, g);
        } else {
            const StationaryProfile Z = build_stationary(ModelParams(p.m, 1), 1.0);
            const double rlo = Z.r.front();
            rec.data = "stationary+bump_pair(" + num(amp) + ")";
            d = sample_pair(
                g, [&](double r) { return Z.g_at(std::max(r, std::max(rlo, A))) / std::max(r, std::max(rlo, A)) + amp * bump((r - A - 1.0)); },
                [](double) { return 0.0; });
        }
        const BB1Report b = bb1_experiment(d, p, A, c.t_final, c.param("eta_fraction"));
        const double best = std::max(b.inf_forward, b.inf_backward);
        rec.values = {b.inf_forward, b.inf_backward, b.inf_forward_grad, b.inf_backward_grad, b.linear_prediction, b.eta,
                      b.linear_prediction > 0.0 ? best / b.linear_prediction : kNaN, flag(b.channel_observed)};
    });
    R.verdict("channel_observed", R.aggregate("channel_observed"), ">=", 1.0);
}

// ---------------------------------------------------------------- scattering_extract
void run_scattering(Run& R) {
    const Config& c = R.cfg();
    const ModelParams p = c.model();
    const std::size_t every = static_cast<std::size_t>(std::max(1L, std::lround(c.param("sample_every"))));
    const double tol = c.tol("scatter");
    R.column("linear_drift", Reduce::max);
    R.column("relative_tail", Reduce::max);
    R.column("scattering_observed", Reduce::min);
    R.column("data_norm", Reduce::max);
    R.column("focusing_status_blowup", Reduce::max);
    R.column("focusing_declared", Reduce::max);
    R.trials(1, [&](std::size_t, TrialRecord& rec) {
        const RadialGrid g = RadialGrid::covering(c.h, c.radius);
        const PairFamily small = gaussian_pair(c.param("amplitude"), 1.0);
        const PairFamily big = gaussian_pair(c.param("focusing_amplitude"), 1.0);
        rec.data = small.describe() + "|" + big.describe();
        const RadialPair ds = pair_from(small, g), db = pair_from(big, g);
        DiamondOptions o;
        o.t_final = c.t_final;
        o.track_norms = false;
        DiamondOptions lin = o;
        lin.nonlinear = false;
        const Evolution el = evolve_diamond(ds, p, lin);
        const ScatterReport sl = scattering_extract(el, ds, p, tol, every);
        const Evolution en = evolve_diamond(ds, p, o);
        const ScatterReport sn = scattering_extract(en, ds, p, tol, every);
        const ModelParams pf(p.m, 1);
        const Evolution ef = evolve_diamond(db, pf, o);
        bool declared = false;
        if (ef.field.frames() >= 3 && ef.outcome.status != SolveStatus::blowup_detected)
            declared = scattering_extract(ef, db, pf, tol, every).scattering_observed;
        rec.values = {sl.drift, sn.relative_tail, flag(sn.scattering_observed), sn.data_norm,
                      flag(ef.outcome.status == SolveStatus::blowup_detected), flag(declared)};
        if (c.param("checkpoint") != 0.0)
            R.artifact("scattering_extract.ckpt", [&](std::ostream& os) { write_checkpoint(os, en.field, p); }, true);
    });
    R.verdict("linear_pullback_drift", R.aggregate("linear_drift"), "<=", c.tol("drift"));
    R.verdict("scattering_observed", R.aggregate("relative_tail"), "<", tol);
    R.verdict("focusing_not_declared", R.aggregate("focusing_declared"), "<=", 0.0);
}

std::vector<ExperimentInfo> build_registry() {
    std::vector<ExperimentInfo> r;
    r.push_back({"conservation", "E_m conservation of the free flow on grid-aligned times (random Gaussian profiles)",
                 "time independence of the generalized energy E_m for the linear radial wave",
                 defaults("conservation", 3.0, 1, 0.01, 12.0, 10.0, 3, {{"drift", 1e-12}},
                          {{"support", "3"}, {"t_samples", "50"}}),
                 {{"support", "Gaussian centres lie in [-support, support]"},
                  {"t_samples", "number of grid-aligned sample times in [0, t_final]"}},
                 {{"drift", "max relative |E_m(t) - E_m(0)| / E_m(0)"}},
                 run_conservation});
    r.push_back({"dichotomy", "exterior-energy channel dichotomy over random profiles and radii",
                 "exterior energy bound: one time direction keeps half the exterior data quantity",
                 defaults("dichotomy", 3.0, 1, 0.01, 12.0, 4.0, 100, {{"constant", 0.5}},
                          {{"support", "3"}, {"R_list", "0,0.5,1,2"}, {"t_count", "41"}}),
                 {{"support", "profile support half-width"},
                  {"R_list", "exterior radii"},
                  {"t_count", "sample times in [-t_final, t_final]"}},
                 {{"constant", "required max(inf_forward, inf_backward) / exterior data quantity"}},
                 run_dichotomy});
    r.push_back({"strichartz_scan", "S-norm, weighted and mixed space-time ratios of free waves with scale checks",
                 "homogeneous Strichartz estimate in the S norm, the weighted symmetric estimate and the (a, b) mixed estimates",
                 defaults("strichartz_scan", 3.0, 1, 0.025, 4.0, 5.0, 200, {{"scale", 1e-8}},
                          {{"support", "2"}, {"lambda", "2"}, {"alphas", "1.5,2,4"}}),
                 {{"support", "profile support half-width"},
                  {"lambda", "rescaling factor for the invariance check (a power of two keeps samples exact)"},
                  {"alphas", "weights of the symmetric estimate"}},
                 {{"scale", "max relative change of each ratio under rescaling"}},
                 run_strichartz});
    r.push_back({"gv_scan", "scale-invariant L^q L^sigma norms and the L^2 L^inf endpoint of free waves",
                 "classical Strichartz norms at the L^m scaling and the radial endpoint estimate",
                 defaults("gv_scan", 3.0, 1, 0.025, 4.0, 5.0, 200, {{"scale", 1e-8}},
                          {{"support", "2"}, {"lambda", "2"}, {"sigma_factors", "3.5,4,6"}}),
                 {{"support", "profile support half-width"},
                  {"lambda", "rescaling factor"},
                  {"sigma_factors", "sigma = factor * m, q from 1/q + 3/sigma = 1/m"}},
                 {{"scale", "max relative change of each ratio under rescaling"}},
                 run_gv});
    r.push_back({"weak_type", "weak-type bound of the averaging operator with brute-force cross-check",
                 "weak-type estimate for (1/2r) int_{t-r}^{t+r} G and the maximal function",
                 defaults("weak_type", 3.0, 1, 0.05, 1.0, 1.0, 20, {{"dilation", 1e-6}, {"brute", 1e-3}},
                          {{"alphas", "1.5,2,4"}, {"cells", "40"}, {"brute_trials", "5"}, {"brute_cells", "8"}, {"radius_factor", "8"}}),
                 {{"alphas", "exponents alpha > 1"},
                  {"cells", "samples of G"},
                  {"brute_trials", "trials that also run the brute-force oracle"},
                  {"brute_cells", "samples of G for the brute-force instance"},
                  {"radius_factor", "lattice radius as a multiple of the support of G"}},
                 {{"dilation", "relative change of the ratio under dilation"}, {"brute", "relative disagreement with the oracle"}},
                 run_weak_type});
    r.push_back({"small_data", "Picard contraction at half the calibrated threshold and second-order agreement with the diamond scheme (single case, run.trials ignored)",
                 "small-data local well-posedness by contraction",
                 defaults("small_data", 3.0, 1, 0.05, 6.0, 2.0, 1, {{"factor", 0.5}, {"order_lo", 3.2}, {"order_hi", 4.8}},
                          {{"refinements", "3"}, {"amplitude_fraction", "0.5"}}),
                 {{"refinements", "number of grids h, h/2, ... (run.trials is ignored)"},
                  {"amplitude_fraction", "data amplitude as a fraction of the calibrated amplitude"}},
                 {{"factor", "max contraction factor"}, {"order_lo", "lower bound of the h-halving ratio"}, {"order_hi", "upper bound"}},
                 run_small_data});
    r.push_back({"blowup_cone", "focusing blow-up from constant data against the ODE oracle (single case, run.trials ignored)",
                 "finite-time blow-up of y'' = |y|^{2m} y inside the light cone and the self-similar rate -1/m",
                 defaults("blowup_cone", 3.0, 1, 5e-4, 1.5, 2.0, 1, {{"time", 0.02}, {"exponent", 0.05}, {"growth", 10.0}},
                          {{"c", "1"}, {"fit_floor", "20"}, {"checkpoint", "0"}}),
                 {{"c", "constant data value"},
                  {"fit_floor", "fit excludes T - t below fit_floor * h"},
                  {"checkpoint", "1 writes blowup_cone.ckpt into the output directory"}},
                 {{"time", "relative error of the blow-up time"}, {"exponent", "relative error of the growth exponent"},
                  {"growth", "minimum L^m growth over the fit window"}},
                 run_blowup_cone});
    r.push_back({"blowup_norm_divergence", "running L^m and S norms approaching breakdown for plateau data (single case, run.trials ignored)",
                 "blow-up criterion: the S norm is unbounded on the maximal interval",
                 defaults("blowup_norm_divergence", 3.0, 1, 1e-3, 4.0, 2.0, 1, {{"lm_growth", 10.0}},
                          {{"c", "1"}, {"plateau", "1.5"}, {"ramp", "1"}}),
                 {{"c", "plateau height"}, {"plateau", "radius of the flat part"}, {"ramp", "width of the smooth fall"}},
                 {{"lm_growth", "minimum L^m growth over the final decade of T - t"}},
                 run_blowup_divergence});
    r.push_back({"duhamel_strichartz", "inhomogeneous S-norm and energy ratios for random sources",
                 "inhomogeneous Strichartz estimate and the energy estimate with source",
                 defaults("duhamel_strichartz", 3.0, 1, 0.025, 3.0, 3.0, 200, {{"scale", 1e-8}},
                          {{"lambda", "2"}, {"t_span", "1"}, {"r_span", "2"}}),
                 {{"lambda", "rescaling factor"}, {"t_span", "source time support"}, {"r_span", "source radial support"}},
                 {{"scale", "max relative change of each ratio under rescaling"}},
                 run_duhamel});
    r.push_back({"stationary_profile", "singular stationary solutions: tail, inward continuation, residuals, defocusing radius (single case, run.trials ignored)",
                 "existence of the singular stationary solutions, their tail, the Lyapunov law and the L^{3m} exclusion",
                 defaults("stationary_profile", 3.0, 1, 0.02, 10.0, 1.0, 1,
                          {{"tail", 0.05}, {"ode", 1e-10}, {"lyapunov", 1e-8}, {"identity", 1e-8}, {"l3m_growth", 10.0}},
                          {{"R_max", "200"}, {"R_max_alt", "100"}, {"r_min", "1e-6"}, {"g_cap", "1e8"}}),
                 {{"R_max", "outer radius of the tail fixed point"},
                  {"R_max_alt", "second outer radius for the closure overlap test"},
                  {"r_min", "inner radius of the focusing continuation"},
                  {"g_cap", "defocusing detection threshold"}},
                 {{"tail", "relative error of the tail exponent"}, {"ode", "ODE residual"}, {"lyapunov", "Lyapunov law residual"},
                  {"identity", "v-identity residual"}, {"l3m_growth", "partial L^{3m} growth over the last two decades"}},
                 run_stationary});
    r.push_back({"rl_scaling", "scaling law of Z_ell against direct re-integration",
                 "scaling relation between Z_ell and Z_1, R_ell = R_1 |ell|^{m/(m-1)}",
                 defaults("rl_scaling", 3.0, -1, 0.02, 10.0, 1.0, 1, {{"scaling", 1e-6}},
                          {{"ell_list", "2,0.5,-1,3"}, {"radius_factors", "1.5,2,5,10"}}),
                 {{"ell_list", "levels ell, one row each (run.trials is ignored)"},
                  {"radius_factors", "comparison radii as multiples of R_ell (or |ell|^{m/(m-1)} when focusing)"}},
                 {{"scaling", "relative agreement"}},
                 run_rl_scaling});
    r.push_back({"profile_decoupling", "energy decoupling of scale- and time-separated profiles",
                 "decoupling of linear profiles in the profile decomposition",
                 defaults("profile_decoupling", 3.0, 1, 1.0 / 4096.0, 2.0, 1.0, 1, {{"slope", 0.1}},
                          {{"n_max", "5"}, {"ratio_base", "4"}, {"shift", "0.5"}}),
                 {{"n_max", "sequence length"},
                  {"ratio_base", "scale ratio base: lambda_2 = base^{-n}"},
                  {"shift", "time translation per step, in units of the profile width"}},
                 {{"slope", "relative error of the cross-energy slope against 1 - 1/m"}},
                 run_decoupling});
    r.push_back({"bessel", "Bessel-type energy inequality, dual pairing and the m = 2 Hilbert oracle",
                 "Bessel-type inequality of the profile decomposition",
                 defaults("bessel", 3.0, 1, 1.0 / 1024.0, 10.0, 1.0, 20, {{"defect", 1e-8}, {"dual", 1e-10}, {"hilbert", 1e-10}},
                          {{"n_max", "3"}}),
                 {{"n_max", "sequence indices 0..n_max"}},
                 {{"defect", "allowed negative relative defect"}, {"dual", "dual pairing error"}, {"hilbert", "m = 2 oracle error"}},
                 run_bessel});
    r.push_back({"exterior_profiles", "exterior energy of a sum against a single profile on a window",
                 "exterior energy of profiles",
                 defaults("exterior_profiles", 3.0, 1, 1.0 / 1024.0, 3.0, 1.0, 1, {{"o", 1e-2}},
                          {{"n_max", "5"}, {"rho", "0.25"}, {"sigma", "1"}, {"theta", "0.5"}}),
                 {{"n_max", "sequence length"}, {"rho", "window start"}, {"sigma", "window end"}, {"theta", "evaluation time"}},
                 {{"o", "relative o_n at the last index"}},
                 run_exterior_profiles});
    r.push_back({"perturbation", "exterior long-time perturbation: error S norm against perturbation size",
                 "long-time perturbation theory outside a light cone",
                 defaults("perturbation", 3.0, 1, 0.02, 8.0, 3.0, 1, {{"slope", 0.1}},
                          {{"amplitude", "0.5"}, {"sizes", "1e-4,1e-3,1e-2"}, {"A", "0.5"}}),
                 {{"amplitude", "base Gaussian amplitude"},
                  {"sizes", "perturbation sizes, one row each (run.trials is ignored)"},
                  {"A", "cone apex; -inf selects the whole space"}},
                 {{"slope", "allowed |slope - 1| in log-log"}},
                 run_perturbation});
    r.push_back({"bb1_channel", "exterior channel of the cone-truncated evolution (single case, run.trials ignored)",
                 "exterior lower bound for solutions of the truncated equation",
                 defaults("bb1_channel", 3.0, 1, 0.02, 12.0, 4.0, 1, {},
                          {{"amplitude", "0.3"}, {"A", "1"}, {"family", "0"}, {"eta_fraction", "0.25"}}),
                 {{"amplitude", "data amplitude"},
                  {"A", "truncation radius"},
                  {"family", "0: Gaussian data, 1: stationary profile plus a bump"},
                  {"eta_fraction", "eta as a fraction of the linear channel"}},
                 {},
                 run_bb1});
    r.push_back({"scattering_extract", "pullback of the free profile along the evolution and the scattering test (single case, run.trials ignored)",
                 "scattering to a free wave for small data",
                 defaults("scattering_extract", 3.0, -1, 0.02, 25.0, 15.0, 1, {{"drift", 1e-12}, {"scatter", 1e-2}},
                          {{"amplitude", "0.3"}, {"focusing_amplitude", "2"}, {"sample_every", "25"}, {"checkpoint", "0"}}),
                 {{"amplitude", "small-data amplitude"},
                  {"focusing_amplitude", "amplitude of the focusing control run"},
                  {"sample_every", "frames between pullback samples"},
                  {"checkpoint", "1 writes scattering_extract.ckpt into the output directory"}},
                 {{"drift", "pullback drift of the linear run"}, {"scatter", "final distance to the free wave / data norm"}},
                 run_scattering});
    return r;
}

}  // namespace

const std::vector<ExperimentInfo>& registry() {
    static const std::vector<ExperimentInfo> r = build_registry();
    return r;
}

}  // namespace wavelab

#include "wavelab/generators.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wavelab/numerics.hpp"

namespace wavelab {

namespace {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

std::string join(const std::string& family, const std::vector<double>& p) {
    std::string s = family + "(";
    char buf[32];
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", p[i]);
        s += (i ? ";" : "") + std::string(buf);
    }
    return s + ")";
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double bump(double x) {
    const double q = 1.0 - x * x;
    return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double bump_deriv(double x) {
    const double q = 1.0 - x * x;
    return q > 0.0 ? std::exp(-1.0 / q) * (-2.0 * x / (q * q)) : 0.0;
}

std::string ProfileFamily::describe() const { return join(family, params); }
std::string PairFamily::describe() const { return join(family, params); }
std::string SourceFamily::describe() const { return join("source_bump", params); }

ProfileFamily gaussian_profile(Rng& rng, double support) {
    const int n = uniform_int(rng, 1, 3);
    std::vector<double> p;
    for (int i = 0; i < n; ++i) {
        const double w = uniform(rng, 0.2, 0.3 * support);
        const double c = uniform(rng, -support + 3.0 * w, support - 3.0 * w);
        const double a = uniform(rng, -1.0, 1.0);
        p.insert(p.end(), {a, c, w});
    }
    ProfileFamily f{"gaussian", p, {}};
    f.fdot = [p](double s) {
        double v = 0.0;
        for (std::size_t i = 0; i + 2 < p.size(); i += 3) {
            const double z = (s - p[i + 1]) / p[i + 2];
            v += p[i] * std::exp(-z * z);
        }
        return v;
    };
    return f;
}

ProfileFamily smooth_indicator_profile(Rng& rng, double support) {
    const double a = uniform(rng, -support, 0.5 * support);
    const double b = uniform(rng, a + 0.3 * support, support);
    const double ramp = uniform(rng, 0.05, 0.2) * (b - a);
    const double height = uniform(rng, 0.5, 1.5) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    ProfileFamily f{"smooth_indicator", {height, a, b, ramp}, {}};
    f.fdot = [=](double s) {
        if (s <= a || s >= b) return 0.0;
        return height * (1.0 - smooth_step_down((s - a) / ramp)) * smooth_step_down((s - b + ramp) / ramp);
    };
    return f;
}

ProfileFamily fourier_profile(Rng& rng, double support) {
    const int n = uniform_int(rng, 2, 5);
    std::vector<double> p{support};
    for (int k = 1; k <= n; ++k) p.insert(p.end(), {uniform(rng, -1.0, 1.0) / k, uniform(rng, 0.0, 2.0 * std::numbers::pi)});
    ProfileFamily f{"fourier", p, {}};
    f.fdot = [p](double s) {
        const double L = p[0];
        const double env = bump(s / L);
        if (env == 0.0) return 0.0;
        double v = 0.0;
        for (std::size_t i = 1, k = 1; i + 1 < p.size(); i += 2, ++k)
            v += p[i] * std::sin(std::numbers::pi * static_cast<double>(k) * s / L + p[i + 1]);
        return env * v;
    };
    return f;
}

ProfileFamily bump_profile(Rng& rng, double support) {
    const int n = uniform_int(rng, 1, 3);
    std::vector<double> p;
    for (int i = 0; i < n; ++i) {
        const double w = uniform(rng, 0.3, 0.4 * support);
        const double c = uniform(rng, -support + w, support - w);
        p.insert(p.end(), {uniform(rng, -2.0, 2.0), c, w});
    }
    ProfileFamily f{"bump", p, {}};
    f.fdot = [p](double s) {
        double v = 0.0;
        for (std::size_t i = 0; i + 2 < p.size(); i += 3) v += p[i] * bump((s - p[i + 1]) / p[i + 2]);
        return v;
    };
    return f;
}

ProfileFamily random_profile(Rng& rng, double support) {
    switch (uniform_int(rng, 0, 3)) {
        case 0: return gaussian_profile(rng, support);
        case 1: return smooth_indicator_profile(rng, support);
        case 2: return fourier_profile(rng, support);
        default: return bump_profile(rng, support);
    }
}

PairFamily gaussian_pair(double a, double w, double b) {
    PairFamily p{"gaussian_pair", {a, w, b}, {}, {}, {}};
    p.u0 = [=](double r) { return a * std::exp(-(r / w) * (r / w)); };
    p.u1 = [=](double r) { return b * std::exp(-(r / w) * (r / w)); };
    p.du0 = [=](double r) { return -2.0 * a * r / (w * w) * std::exp(-(r / w) * (r / w)); };
    return p;
}

PairFamily bump_pair(double a, double c, double w, double b) {
    PairFamily p{"bump_pair", {a, c, w, b}, {}, {}, {}};
    p.u0 = [=](double r) { return a * bump((r - c) / w); };
    p.u1 = [=](double r) { return b * bump((r - c) / w); };
    p.du0 = [=](double r) { return a * bump_deriv((r - c) / w) / w; };
    return p;
}

PairFamily plateau_pair(double c, double R0, double width) {
    PairFamily p{"plateau_pair", {c, R0, width}, {}, {}, {}};
    p.u0 = [=](double r) { return c * smooth_step_down((r - R0) / width); };
    p.u1 = [](double) { return 0.0; };
    p.du0 = [=](double r) {
        const double s = (r - R0) / width;
        if (s <= 0.0 || s >= 1.0) return 0.0;
        const double a = std::exp(-1.0 / (1.0 - s)), b = std::exp(-1.0 / s);
        return -c * a * b * (1.0 / ((1.0 - s) * (1.0 - s)) + 1.0 / (s * s)) / ((a + b) * (a + b) * width);
    };
    return p;
}

PairFamily random_pair(Rng& rng, double a) {
    const double amp = a * uniform(rng, 0.5, 1.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const double vel = a * uniform(rng, -0.5, 0.5);
    if (uniform(rng, 0.0, 1.0) < 0.5) return gaussian_pair(amp, uniform(rng, 0.5, 1.5), vel);
    const double w = uniform(rng, 0.5, 1.5);
    return bump_pair(amp, 0.0, w, vel);
}

SourceFamily random_source(Rng& rng, double t_span, double r_span) {
    const double tw = uniform(rng, 0.2, 0.4) * t_span;
    const double tc = uniform(rng, tw, t_span - tw);
    const double rw = uniform(rng, 0.15, 0.3) * r_span;
    const double rc = uniform(rng, rw, r_span - rw);
    const double a = uniform(rng, -1.0, 1.0);
    SourceFamily s{{a, tc, tw, rc, rw}, {}};
    s.f = [=](double t, double r) { return a * bump((t - tc) / tw) * bump((r - rc) / rw); };
    return s;
}

}  // namespace wavelab

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace wavelab {

// Per-trial seed derived from the run seed by a splitmix64 step.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

using Rng = std::mt19937_64;

// C-infinity bump exp(-1/(1-x^2)) on |x| < 1 and its derivative.
double bump(double x);
double bump_deriv(double x);

// Analytic profile Fdot with the parameters used to build it.
struct ProfileFamily {
    std::string family;
    std::vector<double> params;
    std::function<double(double)> fdot;
    std::string describe() const;
};

// Sum of 1-3 Gaussians centred in [-support, support].
ProfileFamily gaussian_profile(Rng& rng, double support);
// Smoothed indicator of a random interval inside [-support, support].
ProfileFamily smooth_indicator_profile(Rng& rng, double support);
// Random trigonometric sum under a smooth compact envelope on [-support, support].
ProfileFamily fourier_profile(Rng& rng, double support);
// Sum of compact bumps.
ProfileFamily bump_profile(Rng& rng, double support);
// One of the four families chosen uniformly.
ProfileFamily random_profile(Rng& rng, double support);

// Radial data u0, u1 with the analytic derivative of u0.
struct PairFamily {
    std::string family;
    std::vector<double> params;
    std::function<double(double)> u0, u1, du0;
    std::string describe() const;
};

// u0 = a exp(-(r/w)^2), u1 = b exp(-(r/w)^2).
PairFamily gaussian_pair(double a, double w, double b = 0.0);
// u0 = a bump((r - c)/w) (c = 0 gives a centred bump), u1 = b bump((r - c)/w).
PairFamily bump_pair(double a, double c, double w, double b = 0.0);
// u0 = c on r <= R0 with a smooth fall to 0 on [R0, R0 + width].
PairFamily plateau_pair(double c, double R0, double width);
// Random Gaussian or bump pair with amplitude scale a.
PairFamily random_pair(Rng& rng, double a);

// Smooth source f(t, r) = a bump((t - tc)/tw) bump((r - rc)/rw).
struct SourceFamily {
    std::vector<double> params;
    std::function<double(double, double)> f;
    std::string describe() const;
};
SourceFamily random_source(Rng& rng, double t_span, double r_span);

}  // namespace wavelab

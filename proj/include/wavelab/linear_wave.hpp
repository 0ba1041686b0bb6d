#pragma once

#include <vector>

#include "wavelab/norms.hpp"
#include "wavelab/types.hpp"

namespace wavelab {

RadialPair propagate(const CharProfile& prof, double t, std::size_t n_out = 0);

// Free solution on the lattice t_i = t_lo + i h, i < nt, r_j = j h, j < nr.
// t_lo must be a multiple of h; all reads are exact sample lookups.
SpaceTimeField linear_field(const CharProfile& prof, double t_lo, std::size_t nt, std::size_t nr);

// Inhomogeneous solution with zero data, u(t, r) = (1/2r) int_{t-r}^{t+r} G(t, rho) drho,
// G(t, rho) = int_0^t g(s, rho - s) ds, g(t, rho) = rho f(t, |rho|).  One frame per source frame.
SpaceTimeField duhamel(const SourceField& source);
// State at a single time index of the source lattice.
RadialPair duhamel_at(const SourceField& source, std::size_t time_index);

struct ChannelReport {
    double R = 0.0;
    double m = 0.0;
    double left = 0.0;   // int_{sigma <= -R} |2 Fdot|^m
    double right = 0.0;  // int_{sigma >= R} |2 Fdot|^m
    double lhs = 0.0;    // int_R^inf |d_r(r v0)|^m + |r v1|^m dr
    std::vector<double> t_samples;
    std::vector<double> exterior;  // exterior energy at each sample time
    double inf_forward = 0.0;
    double inf_backward = 0.0;
    bool dichotomy_holds = false;
    bool convexity_holds = false;
};

// Exterior energy at time t in the [v]_{+-} gauge.
double exterior_energy(const CharProfile& prof, double m, double R, double t);
ChannelReport channel_report(const CharProfile& prof, double m, double R, const std::vector<double>& t_samples);

// Uncentered Hardy-Littlewood maximal function of piecewise-constant cells.
std::vector<double> maximal_function(const std::vector<double>& G);

struct WeakTypeReport {
    double alpha = 0.0;
    double g_l1 = 0.0;
    double sup_value = 0.0;     // sup_lambda lambda mu(E_lambda)^{1/alpha}
    double ratio = 0.0;         // sup_value / ||G||_1
    double ratio_pow = 0.0;     // ratio^alpha
    double dilated_ratio = 0.0;
    double dilation_defect = 0.0;
    WeakLattice lattice;
};

// Lattice values of TG(t, r) = (1/2r) int_{t-r}^{t+r} G for G sampled at t0 + i h.
WeakLattice averaging_operator(const std::vector<double>& G, double h, double t0, double radius);
WeakTypeReport weak_type_check(const std::vector<double>& G, double h, double alpha, double radius_factor = 8.0,
                               double dilation = 2.0);

// Exponent pairs (a, b) of the weighted mixed estimates.
struct MixedExponents {
    double a = 0.0;
    double b = 0.0;
    bool valid = false;
};
MixedExponents mixed_exponents(double m);

}  // namespace wavelab

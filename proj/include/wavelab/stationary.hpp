#pragma once

#include <iosfwd>
#include <vector>

#include "wavelab/types.hpp"

namespace wavelab {

struct TailOptions {
    double r0 = 1.0;          // starting inner radius, doubled until the map contracts
    double R_max = 200.0;
    double tol = 1e-12;       // weighted-metric stopping tolerance
    double ds = 1e-3;         // spacing in log r
    int max_iter = 200;
    int max_escalations = 20;
};

struct TailSolution {
    double m = 3.0;
    int iota = 1;
    double ell = 1.0;
    double r0 = 0.0;
    double R_max = 0.0;
    std::vector<double> r, g, gp;  // increasing r
    std::vector<double> distances;  // d(g_{k+1}, g_k) in the weighted metric
    std::vector<double> factors;
    double contraction = 0.0;       // largest measured factor
    double residual = 0.0;          // d(A(g), g) at acceptance
    int iterations = 0;
    int escalations = 0;
    bool converged = false;
};

// Fixed point of g = ell - iota int_r^inf (s - r) s^{-2m} |g|^{2m} g ds on [r0, R_max]
// with the analytic closure beyond R_max.
TailSolution fixed_point_tail(const ModelParams& params, const TailOptions& opts = {}, double ell = 1.0);

struct InwardOptions {
    double r_min = 1e-6;
    double g_cap = 1e8;
    double ds_out = 5e-3;      // output spacing in log r (focusing)
    double dr_out = 2e-3;      // output spacing in r (defocusing, before the singular layer)
    double rtol = 1e-13;
    double atol = 1e-15;
};

struct StationaryProfile {
    double m = 3.0;
    int iota = 1;
    double ell = 1.0;
    std::vector<double> r, g, gp;  // increasing r, from the inner end to R_max
    double R_detect = 0.0;
    double r_min_reached = 0.0;
    double g_inner = 0.0;         // |g| at the inner end
    double Z_inner = 0.0;         // |Z| at the inner end
    bool singular = false;        // defocusing blow-up radius found
    double r0 = 0.0;
    double R_max = 0.0;
    double tail_exponent = 0.0;        // fit of |g - ell| ~ C r^p
    double tail_constant = 0.0;
    double tail_exponent_deriv = 0.0;  // fit of |r^2 Z' + ell| ~ C r^p
    double fixed_point_residual = 0.0;
    double contraction = 0.0;
    // Uniform log-r block used for residual evaluation (focusing).
    std::vector<double> s_uniform, g_uniform, p_uniform;

    // g at an arbitrary radius by re-integrating the ODE from the nearest stored node.
    double g_at(double radius) const;
    double Z(std::size_t k) const { return g[k] / r[k]; }
    double dZ(std::size_t k) const { return gp[k] / r[k] - g[k] / (r[k] * r[k]); }
};

StationaryProfile continue_inward(const TailSolution& tail, const InwardOptions& opts = {});

// Convenience: tail construction followed by inward continuation.
StationaryProfile build_stationary(const ModelParams& params, double ell = 1.0, const TailOptions& topts = {},
                                   const InwardOptions& iopts = {});

struct StationaryResiduals {
    double ode = 0.0;       // g'' + iota r^{-2m}|g|^{2m}g, relative to the term sizes
    double lyapunov = 0.0;  // G' + m/(m+1) g^{2m+2}/r^{2m+1}
    double identity = 0.0;  // d/dr(r^2 v'^2/2 - (m-1)v^2/(2m^2) + v^{2m+2}/(2m+2)) - (2-m)/m r v'^2
};

StationaryResiduals stationary_residuals(const StationaryProfile& prof);

// Z_ell from Z_1 by the scaling law.
StationaryProfile z_ell(const StationaryProfile& prof, double ell);

struct L3mReport {
    bool excluded = false;
    std::vector<double> r_min;
    std::vector<double> partial;  // int_{r_min}^{R_max} |Z|^{3m} r^2 dr
    double growth_last_two_decades = 0.0;
    double log_slope = 0.0;       // d partial / d ln(1/r_min) over the last two decades
    double tail_integral = 0.0;   // r >= 1 part
    bool divergence_observed = false;
};

L3mReport not_in_l3m_check(const StationaryProfile& prof);

// CSV columns r,g,gp,Z,Zp and a JSON sidecar with the metadata.
void write_profile_csv(std::ostream& os, const StationaryProfile& prof);
void write_profile_json(std::ostream& os, const StationaryProfile& prof);

}  // namespace wavelab

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/norms.hpp"
#include "wavelab/types.hpp"

namespace wavelab {

enum class SolveStatus { completed, blowup_detected, window_exhausted };
std::string to_string(SolveStatus s);

struct SolveOutcome {
    SolveStatus status = SolveStatus::completed;
    double t_reached = 0.0;
    std::optional<double> T_plus_estimate;
    std::optional<double> blowup_exponent_fit;
    std::optional<double> T_fit;  // breakdown time fitted jointly with the exponent
    // Fit window [t_fit_lo, t_fit_hi] (final resolved decade of T - t).
    double t_fit_lo = 0.0;
    double t_fit_hi = 0.0;
    std::vector<double> times;           // every step
    std::vector<double> sup_u;           // sup_r |u| per step
    std::vector<double> lm_history;      // L^m norm of the state per step
    std::vector<double> s_norm_history;  // running S-norm from t = 0
};

struct DiamondOptions {
    double t_final = 1.0;
    std::optional<double> cone_A;       // source active only where r >= (A + |t|)_+
    bool nonlinear = true;
    const SourceField* source = nullptr;  // prescribed f, added as r f
    double u_cap = 1e8;
    std::size_t store_stride = 1;
    bool shrink_valid = false;          // trust only r <= R - |t| (non-decaying data)
    double fit_floor_steps = 20.0;      // blow-up fit excludes T - t < floor * h
    bool track_norms = true;
};

struct Evolution {
    SpaceTimeField field;
    SolveOutcome outcome;
};

Evolution evolve_diamond(const RadialPair& data, const ModelParams& params, const DiamondOptions& opts);
// Backward-in-time evolution (t from 0 to -t_final); frames carry direction -1.
Evolution evolve_diamond_backward(const RadialPair& data, const ModelParams& params, const DiamondOptions& opts);

// Blow-up time of y'' = |y|^{2m} y, y(0) = c, y'(0) = 0 by adaptive high-order integration.
double ode_blowup_time(double m, double c);
// Self-similar constant: y = c_* (T - t)^{-1/m}.
double blowup_constant(double m);

struct PicardOptions {
    double tol = 1e-10;
    int max_iter = 50;
};

struct PicardResult {
    SpaceTimeField field;
    double delta = 0.0;  // S-norm of the free evolution
    double s_norm = 0.0;
    std::vector<double> differences;
    std::vector<double> factors;
    int iterations = 0;
    bool converged = false;
    double max_factor = 0.0;
};

// Fixed point of v = S_L(t) data + iota Duhamel(|v|^{2m} v) on [0, T].
PicardResult picard_solve(const RadialPair& data, const ModelParams& params, double T, const PicardOptions& opts = {});

struct Calibration {
    double delta0 = 0.0;
    double amplitude0 = 0.0;
    int bisection_steps = 0;
};
// Largest delta on the Gaussian family a e^{-r^2} for which Picard converges with
// every contraction factor <= 1/2 and ||u||_S <= 2 delta.
Calibration calibrate_delta0(const ModelParams& params, const RadialGrid& grid, double T, const PicardOptions& opts = {});

struct ScatterReport {
    std::vector<double> times;
    std::vector<double> pullback_distance;  // E_m distance to the final pullback / data E_m^{1/m}
    std::vector<double> lm_distance;        // ||u(t) - u_L(t)||_{L^m}
    double data_norm = 0.0;
    double tail_distance = 0.0;
    double relative_tail = 0.0;
    double drift = 0.0;  // max E_m distance between successive pullbacks (relative)
    bool cauchy = false;
    bool scattering_observed = false;
    CharProfile profile;  // pulled-back data at the final time
};

ScatterReport scattering_extract(const Evolution& evo, const RadialPair& data, const ModelParams& params,
                                 double scatter_tol = 1e-2, std::size_t sample_every = 1);

struct PerturbationReport {
    double A = 0.0;
    double eps_small = 0.0;         // ||R_L||_{S(exterior)} + source error integral
    double eps_s_norm = 0.0;        // ||u - u~ - R_L||_{S(exterior)}
    double eps_energy_sup = 0.0;    // sup_t exterior L^m energy of the error
    double M = 0.0;                 // ||u~||_{S(exterior)}
    double C_M = 0.0;
    bool blowup = false;
};

PerturbationReport perturbation_check(const RadialPair& u_data, const RadialPair& ut_data, const SourceField* error_source,
                                      double A, const ModelParams& params, double T);

struct BB1Report {
    double A = 0.0;
    double inf_forward = 0.0;
    double inf_backward = 0.0;
    double inf_forward_grad = 0.0;   // |r d_{t,r} u|^m version
    double inf_backward_grad = 0.0;
    double exterior_data = 0.0;
    double linear_prediction = 0.0;  // max(left, right) of the free channel
    double eta = 0.0;
    bool excluded = false;  // zero data
    bool channel_observed = false;
    SolveStatus forward_status = SolveStatus::completed;
    SolveStatus backward_status = SolveStatus::completed;
};

BB1Report bb1_experiment(const RadialPair& data, const ModelParams& params, double A, double T, double eta_fraction = 0.25);

// Exterior energy of a field frame in the [v]_{+-} gauge and in the gradient gauge.
struct FrameEnergy {
    double pm = 0.0;
    double grad = 0.0;
};
FrameEnergy exterior_frame_energy(const SpaceTimeField& f, std::size_t i, double m, double r_from);

// Checkpoint: one text header line, then per frame t, U[n], Ut[n] as little-endian f64.
void write_checkpoint(std::ostream& os, const SpaceTimeField& field, const ModelParams& params);
SpaceTimeField read_checkpoint(std::istream& is, ModelParams* params = nullptr);

// Zero-extend a profile to a larger window.
CharProfile pad_profile(const CharProfile& prof, long kmax);

}  // namespace wavelab

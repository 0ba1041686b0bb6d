#pragma once

#include <limits>
#include <string>
#include <vector>

#include "wavelab/types.hpp"

namespace wavelab {

struct NormValue {
    double value = 0.0;
    std::string kind;
    double quad_error_estimate = 0.0;
};

// {(t, r): t in [t_lo, t_hi], r >= max(0, A + |t|)}; A = -inf means the whole space.
struct ConeRegion {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double A = -std::numeric_limits<double>::infinity();

    ConeRegion() = default;
    ConeRegion(double lo, double hi, double a = -std::numeric_limits<double>::infinity());
    double r_min(double t) const;
};

// (int_R^inf |r d_r u0|^m + |r u1|^m dr)^{1/m}
NormValue lm_norm(const RadialPair& pair, double m, double R = 0.0);
// int |2 Fdot|^m dsigma (equal-weight rule: grid shifts are exact relabelings)
NormValue em_energy(const CharProfile& prof, double m);
// int_0^inf |d_r(r v0) + r v1|^m + |d_r(r v0) - r v1|^m dr
NormValue em_energy_pair(const RadialPair& pair, double m);
// Space-time S-norm restricted to a cone region.
NormValue s_norm(const SpaceTimeField& field, double m, const ConeRegion& region);
// Whole-field S-norm.
NormValue s_norm(const SpaceTimeField& field, double m);

NormValue w1m_norm(const RadialPair& pair, double m);
// (int |u0|^{3m} r^2 dr)^{1/(3m)}
NormValue l3m_norm(const RadialPair& pair, double m);
// (int (int |u|^sigma r^2 dr)^{q/sigma} dt)^{1/q}
NormValue lq_lsigma_norm(const SpaceTimeField& field, double q, double sigma);
// (int (int |u|^b r^w dr)^{a/b} dt)^{1/a}
NormValue mixed_norm(const SpaceTimeField& field, double a, double b, double weight_power);
// (int int |u|^{alpha m} r^{alpha - 2} dr dt)^{1/(alpha m)}
NormValue weighted_st_norm(const SpaceTimeField& field, double alpha, double m);
// (int sup_r |u|^2 dt)^{1/2}
NormValue l2_linf_norm(const SpaceTimeField& field);

// Sample lattice G(t_i, r_j) with cell measure r^{alpha-2} dr dt, piecewise constant.
struct WeakLattice {
    double h = 0.0;         // spacing in r
    double dt = 0.0;        // spacing in t
    std::size_t nt = 0;
    std::size_t nr = 0;
    std::vector<double> g;  // g[i * nr + j]
};

// Cell measures mu_j = dt * int_{cell j} r^{alpha-2} dr.
std::vector<double> weak_cell_measure(const WeakLattice& lat, double alpha);
// sup over realised levels L of L * mu(|G| >= L)^{1/alpha}
NormValue weak_lq(const WeakLattice& lat, double alpha);
// Strong counterpart on the same cells.
NormValue lq_cells(const WeakLattice& lat, double alpha);

// Exterior L^m quantities used by channels: int_R^inf (|d_r(rv0)|^m + |r v1|^m) dr.
double exterior_data_quantity(const RadialPair& pair, double m, double R);

}  // namespace wavelab

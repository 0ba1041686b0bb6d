#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wavelab/types.hpp"

namespace wavelab {

// Fdot_out(sigma) = lambda^{-1/m} Fdot((sigma - t0) / lambda) on the input spacing.
// Samples that land on input nodes are copied; others use an eight-point local
// interpolant clamped to the stencil range.  kmax_out < 0 sizes the window to fit.
CharProfile modulate(const CharProfile& prof, double lambda, double t0, double m, long kmax_out = -1);
// Same map applied to an analytic profile, sampled directly.
CharProfile modulate_fn(const std::function<double(double)>& fdot, double lambda, double t0, double m, double h, long kmax);

// Half-open indicator height * 1_[a, b) on the grid.
CharProfile indicator_profile(double h, long kmax, double a, double b, double height = 1.0);

struct ProfileParams {
    // lambda[j][n], t[j][n]
    std::vector<std::vector<double>> lambda;
    std::vector<std::vector<double>> t;

    std::size_t profiles() const { return lambda.size(); }
    std::size_t length() const { return lambda.empty() ? 0 : lambda.front().size(); }
    // Every pair's orthogonality quantity strictly increases along n.
    bool pseudo_orthogonal(std::string* why = nullptr) const;
};

struct SyntheticSequence {
    std::vector<std::function<double(double)>> shapes;  // analytic U^j in the Fdot gauge
    std::vector<CharProfile> base;                      // U^j sampled on the sequence grid
    ProfileParams params;
    std::vector<CharProfile> remainders;  // w_n, one per n (may be empty)
    double h = 0.0;
    long kmax = 0;
    double m = 3.0;
};

// Profile j at index n on the sequence grid.
CharProfile modulated(const SyntheticSequence& seq, std::size_t j, std::size_t n);
CharProfile sum_sequence(const SyntheticSequence& seq, std::size_t n);

// int |2a|^{m-1} |2b| on a common grid.
double cross_energy(const CharProfile& a, const CharProfile& b, double m);

struct DecouplingReport {
    std::vector<std::size_t> n_list;
    std::vector<double> delta;        // |E(sum) - sum E|
    std::vector<double> cross;        // sum over pairs of int |wide|^{m-1} |narrow|
    std::vector<double> scale_ratio;  // min over pairs of lambda_narrow / lambda_wide
    std::vector<double> separation;   // min over pairs of the orthogonality quantity
    double delta_slope = 0.0;         // log delta against log scale ratio
    double cross_slope = 0.0;
    bool vanishing = false;           // delta decreases along n
    bool exact_zero_tail = false;     // delta == 0 for every n after supports disjoin
    bool pseudo_orthogonal = false;
};

DecouplingReport decoupling_check(const SyntheticSequence& seq, const std::vector<std::size_t>& n_list);

// Phi with 2 Phi_dot = |2 Fdot|^{m-2} 2 Fdot, and the pairing sum_pm int [Phi]_pm [U]_pm dr.
CharProfile dual_profile(const CharProfile& prof, double m);
double dual_pairing(const CharProfile& dual, const CharProfile& prof);

struct BesselReport {
    std::vector<std::size_t> n_list;
    std::vector<double> energy;   // E(u_n)
    std::vector<double> defect;   // E(u_n) - sum_j E(U^j_n)
    std::vector<double> relative; // defect / E(u_n)
    double liminf_relative = 0.0; // relative defect at the last n
    double min_relative = 0.0;
    double dual_pairing_error = 0.0;  // max relative |pairing - E| over profiles
    // m = 2 only: Hilbert expansion E(w) + 2 sum cross inner products.
    std::vector<double> hilbert_defect;
    double hilbert_error = 0.0;       // max |defect - hilbert| / E(u_n)
    bool holds = false;
};

BesselReport bessel_check(const SyntheticSequence& seq, const std::vector<std::size_t>& n_list, double eps_tol = 1e-8);

// Hilbert inner product <a, b> = int (2 a_dot)(2 b_dot) (the m = 2 energy form).
double hilbert_inner(const CharProfile& a, const CharProfile& b);

struct ExteriorWindow {
    double rho = 0.0;
    double sigma = 0.0;
    double theta = 0.0;
};

struct ExteriorProfilesReport {
    std::vector<double> lhs;  // int_rho^sigma |r d_{r,t} u_{L,n}(theta)|^m
    std::vector<double> rhs;  // same for profile k alone
    std::vector<double> o_n;  // max(0, rhs - lhs)
    std::vector<double> o_relative;
    bool holds = false;       // o_n non-increasing with the last one below tol * rhs
};

// Windows are per n; theta must be grid aligned.
ExteriorProfilesReport exterior_profiles_check(const SyntheticSequence& seq, std::size_t k,
                                               const std::vector<std::size_t>& n_list,
                                               const std::vector<ExteriorWindow>& windows, double tol = 1e-2);

}  // namespace wavelab

#pragma once

#include <functional>

#include "wavelab/types.hpp"

namespace wavelab {

// Fdot(sigma) = 1/2 d_r(r u0)(|sigma|) + 1/2 sigma u1(|sigma|) on the window of the grid.
CharProfile to_characteristic(const RadialPair& pair);

// Linear solution at time t on n_out nodes (0 picks the largest grid the window allows).
RadialPair from_characteristic(const CharProfile& prof, double t, std::size_t n_out = 0);

// Replaces the data inside r < A by (u0(A), 0).
RadialPair truncate_TA(const RadialPair& pair, double A);

// Cutoff-and-mollify: phi(eps r)(1 - phi(r/eps)) (f * zeta_eps), componentwise.
RadialPair regularize(const RadialPair& pair, double eps);

struct PointwiseBoundReport {
    double exterior_violation = 0.0;  // |u0| <= r^{-1/m} (int_r^inf |s u0'|^m)^{1/m}
    double interior_violation = 0.0;  // |r u0| <= r^{(m-1)/m} (int_0^r |(s u0)'|^m)^{1/m}
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool ok = true;
};

PointwiseBoundReport pointwise_radial_bound_check(const RadialPair& pair, double m);

// Sampling helpers used by generators and tests.
RadialPair sample_pair(const RadialGrid& grid, const std::function<double(double)>& u0,
                       const std::function<double(double)>& u1,
                       const std::function<double(double)>& du0 = {});
CharProfile sample_profile(double h, long kmax, const std::function<double(double)>& fdot);

// Discrete scaling (lambda^{1/m} u0(lambda r), lambda^{1/m+1} u1(lambda r)) realised
// on the grid of spacing h / lambda, so samples scale exactly.
RadialPair rescale_pair(const RadialPair& pair, double lambda, double m);
CharProfile rescale_profile(const CharProfile& prof, double lambda, double m);

}  // namespace wavelab

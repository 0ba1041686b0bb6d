#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace wavelab {

// |x|^p as exp(p log|x|), zero below 1e-300.
inline double pow_abs(double x, double p) {
    const double a = std::fabs(x);
    if (a < 1e-300) return 0.0;
    return std::exp(p * std::log(a));
}

// sign(x) |x|^p
inline double signed_pow(double x, double p) {
    const double v = pow_abs(x, p);
    return x < 0.0 ? -v : v;
}

struct Quad {
    double value = 0.0;
    double error = 0.0;
};

// Composite Simpson over uniformly spaced samples (3/8 rule closes an odd
// interval count).  error is the Richardson estimate against spacing 2h.
Quad simpson(const std::vector<double>& f, double h);
Quad simpson(const double* f, std::size_t n, double h);

// Composite trapezoid with Richardson estimate.
Quad trapezoid(const std::vector<double>& f, double h);

// Simpson from the point a (measured from node 0) to the last node.  The partial
// cell below the first node >= a is integrated exactly on a local cubic.  With
// one_sided the cubic only uses nodes >= a.
Quad integrate_from(const std::vector<double>& f, double h, double a, bool one_sided = false);

// Positive-weight variant: trapezoid with a linear partial cell.
double trapezoid_from(const std::vector<double>& f, double h, double a);

// Product trapezoid for \int f(r) r^p dr over [0, r_last] with f piecewise linear
// and exact moments of r^p (p > -1).
double product_trapezoid(const std::vector<double>& f, double h, double p);

// Cumulative integral C[k] = \int_{x_0}^{x_k} f, fourth order.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

// Fourth-order centered derivative, third-order one-sided at the two ends.
std::vector<double> derivative(const std::vector<double>& f, double h);

// Centered derivative of order 8 in the interior, lower order near the ends.
std::vector<double> derivative_high(const std::vector<double>& f, double h);

// Cubic interpolation at fractional index x in [0, n-1] using a four-point local
// stencil, clamped to the stencil range.
double interp_cubic(const double* f, std::size_t n, double x);

// Least-squares slope and intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// C-infinity transition: 1 for s <= 0, 0 for s >= 1.
double smooth_step_down(double s);

}  // namespace wavelab

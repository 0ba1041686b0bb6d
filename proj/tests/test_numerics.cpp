#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "wavelab/numerics.hpp"

using namespace wavelab;
namespace bq = boost::math::quadrature;

namespace {

std::vector<double> sample(double a, double h, std::size_t n, double (*f)(double)) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(a + static_cast<double>(i) * h);
    return v;
}

}  // namespace

TEST_SUITE("numerics") {
    TEST_CASE("simpson matches adaptive Gauss-Kronrod") {
        const double L = 3.0;
        for (std::size_t n : {201u, 202u}) {
            const double h = L / static_cast<double>(n - 1);
            const auto f = sample(0.0, h, n, [](double x) { return std::exp(-x) * std::sin(3.0 * x); });
            const double ref = bq::gauss_kronrod<double, 31>::integrate([](double x) { return std::exp(-x) * std::sin(3.0 * x); },
                                                                       0.0, L, 15, 1e-14);
            CHECK(std::fabs(simpson(f, h).value - ref) < 1e-8);
        }
    }

    TEST_CASE("trapezoid is second order") {
        auto err = [](std::size_t n) {
            const double h = 1.0 / static_cast<double>(n - 1);
            const auto f = sample(0.0, h, n, [](double x) { return std::exp(x); });
            return std::fabs(trapezoid(f, h).value - (std::exp(1.0) - 1.0));
        };
        const double ratio = err(101) / err(201);
        CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
    }

    TEST_CASE("integrate_from handles a partial first cell") {
        const double h = 0.01;
        const auto f = sample(0.0, h, 301, [](double x) { return std::cos(x); });
        for (double a : {0.0, 0.005, 0.1234, 1.0}) {
            const double ref = std::sin(3.0) - std::sin(a);
            CHECK(std::fabs(integrate_from(f, h, a).value - ref) < 1e-8);
            CHECK(std::fabs(trapezoid_from(f, h, a) - ref) < 1e-4);
        }
    }

    TEST_CASE("cumulative integral and derivative") {
        const double h = 0.01;
        const auto f = sample(0.0, h, 401, [](double x) { return std::cos(x); });
        const auto C = cumulative_integral(f, h);
        const auto D = derivative(f, h);
        for (std::size_t i = 0; i < f.size(); i += 37) {
            const double x = static_cast<double>(i) * h;
            CHECK(std::fabs(C[i] - std::sin(x)) < 1e-9);
            CHECK(std::fabs(D[i] + std::sin(x)) < 1e-6);
        }
    }

    TEST_CASE("product trapezoid integrates weights exactly") {
        const double h = 0.1;
        std::vector<double> one(11, 1.0);
        CHECK(product_trapezoid(one, h, 0.5) == doctest::Approx(1.0 / 1.5).epsilon(1e-13));
        CHECK(product_trapezoid(one, h, -0.5) == doctest::Approx(2.0).epsilon(1e-13));
    }

    TEST_CASE("fit_line recovers an exact line") {
        const std::vector<double> x{0.0, 1.0, 2.0, 5.0};
        std::vector<double> y;
        for (double v : x) y.push_back(-0.75 * v + 2.5);
        const LineFit f = fit_line(x, y);
        CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-14));
        CHECK(f.intercept == doctest::Approx(2.5).epsilon(1e-14));
    }

    TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1") {
        std::vector<double> x, w;
        gauss_legendre(6, x, w);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 10);
        CHECK(s == doctest::Approx(2.0 / 11.0).epsilon(1e-14));
    }

    TEST_CASE("powers and the smooth step") {
        CHECK(pow_abs(-2.0, 3.0) == doctest::Approx(8.0));
        CHECK(signed_pow(-2.0, 3.0) == doctest::Approx(-8.0));
        CHECK(pow_abs(0.0, 0.5) == 0.0);
        CHECK(smooth_step_down(-0.1) == 1.0);
        CHECK(smooth_step_down(1.1) == 0.0);
        CHECK(smooth_step_down(0.5) == doctest::Approx(0.5));
        double prev = 1.0;
        for (int i = 1; i < 100; ++i) {
            const double v = smooth_step_down(i / 100.0);
            CHECK(v <= prev);
            prev = v;
        }
    }

    TEST_CASE("cubic interpolation reproduces cubics") {
        std::vector<double> f(10);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double x = static_cast<double>(i);
            f[i] = x * x * x - 2.0 * x;
        }
        const double x = 4.3;
        CHECK(interp_cubic(f.data(), f.size(), x) == doctest::Approx(x * x * x - 2.0 * x).epsilon(1e-12));
    }
}

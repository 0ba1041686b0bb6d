#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "wavelab/linear_wave.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/radial_core.hpp"

using namespace wavelab;
namespace bq = boost::math::quadrature;

namespace {

// Free wave with Fdot = exp(-s^2): u = (sqrt(pi)/2)(erf(t + r) - erf(t - r)) / r.
double gauss_wave(double t, double r) {
    if (r < 1e-8) return 2.0 * std::exp(-t * t);
    return 0.5 * std::sqrt(std::numbers::pi) * (std::erf(t + r) - std::erf(t - r)) / r;
}

}  // namespace

TEST_SUITE("norms") {
    TEST_CASE("L^m data norm of a Gaussian") {
        for (double m : {1.5, 2.0, 3.0}) {
            const RadialPair p = sample_pair(RadialGrid(0.005, 2001), [](double r) { return std::exp(-r * r); }, nullptr,
                                             [](double r) { return -2.0 * r * std::exp(-r * r); });
            const double ref = std::pow(std::pow(2.0, m) * boost::math::tgamma(m + 0.5) / (2.0 * std::pow(m, m + 0.5)), 1.0 / m);
            CHECK(lm_norm(p, m).value == doctest::Approx(ref).epsilon(1e-9));
        }
    }

    TEST_CASE("E_m of a Gaussian profile") {
        for (double m : {1.5, 2.0, 3.0}) {
            const double a = -0.8;
            const CharProfile prof = sample_profile(0.01, 1000, [a](double s) { return a * std::exp(-s * s); });
            const double ref = std::pow(2.0 * std::fabs(a), m) * std::sqrt(std::numbers::pi / m);
            CHECK(em_energy(prof, m).value == doctest::Approx(ref).epsilon(1e-13));
        }
    }

    TEST_CASE("E_m of data agrees between the pair and the profile forms") {
        const RadialPair p = sample_pair(
            RadialGrid(0.01, 1001), [](double r) { return std::exp(-r * r); }, [](double r) { return 0.3 * std::exp(-r * r); },
            [](double r) { return -2.0 * r * std::exp(-r * r); });
        CHECK(em_energy_pair(p, 3.0).value == doctest::Approx(em_energy(to_characteristic(p), 3.0).value).epsilon(1e-6));
    }

    TEST_CASE("m = 2 energy against the classical 3D energy") {
        const RadialGrid g(0.005, 2001);
        auto v0 = [](double r) { return std::exp(-r * r) * (1.0 + 0.5 * r); };
        auto dv0 = [](double r) { return std::exp(-r * r) * (0.5 - 2.0 * r * (1.0 + 0.5 * r)); };
        auto v1 = [](double r) { return std::exp(-2.0 * r * r) * std::cos(r); };
        const RadialPair p = sample_pair(g, v0, v1, dv0);
        const double e3d = 4.0 * std::numbers::pi *
                           bq::gauss_kronrod<double, 61>::integrate([&](double r) { return (dv0(r) * dv0(r) + v1(r) * v1(r)) * r * r; },
                                                                    0.0, 10.0, 15, 1e-15);
        CHECK(2.0 * std::numbers::pi * em_energy_pair(p, 2.0).value / e3d == doctest::Approx(1.0).epsilon(1e-8));
        const double l3d = 4.0 * std::numbers::pi *
                           bq::gauss_kronrod<double, 61>::integrate([&](double r) { return std::pow(std::fabs(v0(r)), 9.0) * r * r; },
                                                                    0.0, 10.0, 15, 1e-15);
        CHECK(4.0 * std::numbers::pi * std::pow(l3m_norm(p, 3.0).value, 9.0) / l3d == doctest::Approx(1.0).epsilon(1e-8));
    }

    TEST_CASE("S norm of a free wave against nested Gauss-Kronrod") {
        const double m = 2.0, h = 0.01, T = 1.0, R = 4.0;
        const long nT = std::lround(T / h);
        const std::size_t nr = static_cast<std::size_t>(std::lround(R / h)) + 1;
        const CharProfile prof = sample_profile(h, nT + static_cast<long>(nr) + 2, [](double s) { return std::exp(-s * s); });
        const SpaceTimeField f = linear_field(prof, -T, static_cast<std::size_t>(2 * nT + 1), nr);
        const double q = (2.0 * m + 1.0) * m;
        auto inner = [&](double t) {
            const double v = bq::gauss_kronrod<double, 31>::integrate(
                [&](double r) { return std::pow(std::fabs(gauss_wave(t, r)), q) * std::pow(r, m); }, 0.0, R, 12, 1e-13);
            return std::pow(v, 1.0 / m);
        };
        const double outer = bq::gauss_kronrod<double, 31>::integrate(inner, -T, T, 12, 1e-12);
        const double ref = std::pow(outer, 1.0 / (2.0 * m + 1.0));
        CHECK(s_norm(f, m).value == doctest::Approx(ref).epsilon(1e-5));
    }

    TEST_CASE("cone regions restrict the S norm") {
        const double h = 0.02;
        const CharProfile prof = sample_profile(h, 400, [](double s) { return std::exp(-s * s); });
        const SpaceTimeField f = linear_field(prof, 0.0, 101, 201);
        const double whole = s_norm(f, 3.0).value;
        const double cone = s_norm(f, 3.0, ConeRegion(0.0, 2.0, 0.5)).value;
        CHECK(cone < whole);
        CHECK(cone > 0.0);
        CHECK(s_norm(f, 3.0, ConeRegion(0.0, 2.0)).value == doctest::Approx(whole).epsilon(1e-14));
        CHECK_THROWS_AS(s_norm(f, 3.0, ConeRegion(0.0, 3.0)), Error);
    }

    TEST_CASE("space-time norms are invariant under exact rescaling") {
        const double m = 3.0, h = 0.02;
        const CharProfile prof = sample_profile(h, 400, [](double s) { return s * std::exp(-s * s); });
        const CharProfile sc = rescale_profile(prof, 2.0, m);
        const SpaceTimeField a = linear_field(prof, -1.0, 101, 151), b = linear_field(sc, -0.5, 101, 151);
        const double La = lm_norm(from_characteristic(prof, 0.0, 151), m).value;
        const double Lb = lm_norm(from_characteristic(sc, 0.0, 151), m).value;
        CHECK(s_norm(b, m).value / Lb == doctest::Approx(s_norm(a, m).value / La).epsilon(1e-12));
        CHECK(weighted_st_norm(b, 2.0, m).value / Lb == doctest::Approx(weighted_st_norm(a, 2.0, m).value / La).epsilon(1e-12));
        const MixedExponents e = mixed_exponents(m);
        REQUIRE(e.valid);
        CHECK(mixed_norm(b, e.a, e.b, m).value / Lb == doctest::Approx(mixed_norm(a, e.a, e.b, m).value / La).epsilon(1e-12));
    }

    TEST_CASE("mixed exponents") {
        CHECK_FALSE(mixed_exponents(2.0).valid);
        CHECK_FALSE(mixed_exponents(1.0).valid);
        CHECK(mixed_exponents(1.5).valid);
        const MixedExponents e = mixed_exponents(3.0);
        CHECK(e.a == doctest::Approx(3.75));
        CHECK(e.b == doctest::Approx(60.0));
    }

    TEST_CASE("weak L^alpha against brute-force level enumeration") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        WeakLattice lat;
        lat.h = 0.1;
        lat.dt = 0.1;
        lat.nt = 4;
        lat.nr = 5;
        lat.g.resize(20);
        for (double& v : lat.g) v = U(rng);
        for (double alpha : {1.5, 2.0, 4.0}) {
            const std::vector<double> mu = weak_cell_measure(lat, alpha);
            double best = 0.0;
            for (double L : lat.g) {
                double measure = 0.0;
                for (std::size_t k = 0; k < lat.g.size(); ++k)
                    if (std::fabs(lat.g[k]) >= std::fabs(L)) measure += mu[k % lat.nr];
                best = std::max(best, std::fabs(L) * std::pow(measure, 1.0 / alpha));
            }
            CHECK(weak_lq(lat, alpha).value == doctest::Approx(best).epsilon(1e-14));
            CHECK(weak_lq(lat, alpha).value <= lq_cells(lat, alpha).value * (1.0 + 1e-14));
        }
    }
}

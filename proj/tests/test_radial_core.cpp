#include <doctest.h>

#include <cmath>

#include "wavelab/radial_core.hpp"
#include "wavelab/types.hpp"

using namespace wavelab;

TEST_SUITE("radial_core") {
    TEST_CASE("grid covering and validation") {
        const RadialGrid g = RadialGrid::covering(0.1, 1.05);
        CHECK(g.n == 12);
        CHECK(g.extent() >= 1.05);
        CHECK_THROWS_AS(RadialGrid(0.0, 10), Error);
        CHECK_THROWS_AS(RadialPair(RadialGrid(0.1, 5), {1.0, 2.0}, {0.0, 0.0, 0.0, 0.0, 0.0}), Error);
    }

    TEST_CASE("characteristic profile of Gaussian data") {
        const double b = 0.7;
        const RadialGrid g(0.01, 601);
        const RadialPair p = sample_pair(
            g, [](double r) { return std::exp(-r * r); }, [b](double r) { return b * std::exp(-r * r); },
            [](double r) { return -2.0 * r * std::exp(-r * r); });
        const CharProfile prof = to_characteristic(p);
        for (long k = -600; k <= 600; k += 17) {
            const double s = prof.sigma(k);
            const double ref = 0.5 * (1.0 - 2.0 * s * s) * std::exp(-s * s) + 0.5 * s * b * std::exp(-s * s);
            CHECK(std::fabs(prof.at(k) - ref) < 1e-14);
        }
    }

    TEST_CASE("profile round trip reproduces the data") {
        const RadialGrid g(0.01, 801);
        const RadialPair p = sample_pair(
            g, [](double r) { return std::exp(-r * r); }, [](double r) { return std::cos(r) * std::exp(-r * r); },
            [](double r) { return -2.0 * r * std::exp(-r * r); });
        const RadialPair q = from_characteristic(to_characteristic(p), 0.0, g.n);
        double e0 = 0.0, e1 = 0.0;
        for (std::size_t j = 0; j < g.n; ++j) {
            e0 = std::max(e0, std::fabs(q.u0[j] - p.u0[j]));
            e1 = std::max(e1, std::fabs(q.u1[j] - p.u1[j]));
        }
        CHECK(e0 < 1e-8);
        CHECK(e1 < 1e-7);
    }

    TEST_CASE("window violations are reported") {
        const CharProfile prof = sample_profile(0.1, 10, [](double s) { return std::exp(-s * s); });
        CHECK_NOTHROW(from_characteristic(prof, 0.5, 6));
        try {
            from_characteristic(prof, 0.5, 8);
            FAIL("expected a window violation");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::window_violation);
        }
    }

    TEST_CASE("rescaling is exact on samples") {
        const double m = 3.0, lam = 2.0;
        const CharProfile prof = sample_profile(0.05, 40, [](double s) { return std::sin(s) * std::exp(-s * s); });
        const CharProfile sc = rescale_profile(prof, lam, m);
        CHECK(sc.h == doctest::Approx(0.025));
        CHECK(sc.kmax == prof.kmax);
        for (long k = -40; k <= 40; ++k) CHECK(sc.at(k) == doctest::Approx(std::pow(lam, 1.0 / m) * prof.at(k)).epsilon(1e-15));
        const RadialPair p = sample_pair(RadialGrid(0.1, 11), [](double r) { return 1.0 + r; }, [](double r) { return r; });
        const RadialPair ps = rescale_pair(p, lam, m);
        CHECK(ps.grid.h == doctest::Approx(0.05));
        CHECK(ps.u0[3] == doctest::Approx(std::pow(lam, 1.0 / m) * p.u0[3]));
        CHECK(ps.u1[3] == doctest::Approx(std::pow(lam, 1.0 / m + 1.0) * p.u1[3]));
    }

    TEST_CASE("truncation keeps the exterior") {
        const RadialPair p = sample_pair(RadialGrid(0.1, 31), [](double r) { return std::exp(-r); }, [](double r) { return r; });
        const RadialPair t = truncate_TA(p, 1.0);
        for (std::size_t j = 0; j < 31; ++j) {
            if (j < 10) {
                CHECK(t.u0[j] == doctest::Approx(std::exp(-1.0)));
                CHECK(t.u1[j] == 0.0);
            } else {
                CHECK(t.u0[j] == p.u0[j]);
                CHECK(t.u1[j] == p.u1[j]);
            }
        }
    }

    TEST_CASE("pointwise radial bound holds for smooth data") {
        const RadialPair p = sample_pair(RadialGrid(0.01, 801), [](double r) { return std::exp(-r * r); }, nullptr);
        CHECK(pointwise_radial_bound_check(p, 3.0).ok);
    }
}

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "wavelab/generators.hpp"
#include "wavelab/linear_wave.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/radial_core.hpp"

using namespace wavelab;
namespace bq = boost::math::quadrature;

namespace {

double gauss_wave(double t, double r) {
    if (r < 1e-8) return 2.0 * std::exp(-t * t);
    return 0.5 * std::sqrt(std::numbers::pi) * (std::erf(t + r) - std::erf(t - r)) / r;
}

}  // namespace

TEST_SUITE("linear_wave") {
    TEST_CASE("propagation matches the closed-form Gaussian wave") {
        const double h = 0.01;
        const CharProfile prof = sample_profile(h, 1200, [](double s) { return std::exp(-s * s); });
        for (double t : {0.0, 0.5, 2.0, -3.0}) {
            const RadialPair p = propagate(prof, t, 501);
            for (std::size_t j = 1; j < 501; j += 23) CHECK(std::fabs(p.u0[j] - gauss_wave(t, p.grid.r(j))) < 1e-8);
        }
    }

    TEST_CASE("E_m is conserved on grid-aligned times") {
        Rng rng(11);
        for (double m : {1.5, 2.0, 3.0}) {
            const ProfileFamily f = gaussian_profile(rng, 3.0);
            const double h = 0.01;
            const CharProfile prof = sample_profile(h, 3100, f.fdot);
            const double E0 = em_energy(to_characteristic(propagate(prof, 0.0, 2001)), m).value;
            for (double t : {1.0, 4.37, 10.0}) {
                const double E = em_energy(to_characteristic(propagate(prof, t, 2001)), m).value;
                CHECK(std::fabs(E - E0) / E0 <= 1e-12);
            }
        }
    }

    TEST_CASE("linear field frames equal single-time propagation") {
        const double h = 0.02;
        const CharProfile prof = sample_profile(h, 300, [](double s) { return std::sin(2.0 * s) * std::exp(-s * s); });
        const SpaceTimeField f = linear_field(prof, -1.0, 101, 101);
        for (std::size_t i : {0u, 37u, 100u}) {
            const RadialPair p = propagate(prof, f.t(i), 101);
            for (std::size_t j = 0; j < 101; j += 9) CHECK(std::fabs(f.u(i, j) - p.u0[j]) < 1e-5);
        }
        CHECK_THROWS_AS(linear_field(prof, 0.01, 3, 3), Error);
    }

    TEST_CASE("Duhamel solution against the double-integral formula") {
        const double h = 0.01;
        const std::size_t nt = 101, nr = 301;
        auto src = [](double t, double r) { return std::exp(-4.0 * (t - 0.5) * (t - 0.5)) * std::exp(-r * r); };
        SourceField S;
        S.grid = RadialGrid(h, nr);
        S.f.assign(nt, std::vector<double>(nr));
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < nr; ++j) S.f[i][j] = src(static_cast<double>(i) * h, S.grid.r(j));
        const SpaceTimeField u = duhamel(S);
        REQUIRE(u.frames() == nt);
        auto g = [&](double s, double y) { return y * src(s, std::fabs(y)); };
        for (std::size_t i : {50u, 100u})
            for (std::size_t j : {1u, 40u, 120u}) {
                const double t = static_cast<double>(i) * h, r = S.grid.r(j);
                const double ref = 0.5 * bq::gauss_kronrod<double, 31>::integrate(
                                             [&](double s) {
                                                 return bq::gauss_kronrod<double, 31>::integrate(
                                                     [&](double y) { return g(s, y); }, r - (t - s), r + (t - s), 10, 1e-13);
                                             },
                                             0.0, t, 10, 1e-12);
                CHECK(std::fabs(u.U[i][j] - ref) < 1e-5);
            }
    }

    TEST_CASE("maximal function dominates and matches brute force") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        std::vector<double> G(25);
        for (double& v : G) v = U(rng);
        const std::vector<double> M = maximal_function(G);
        for (std::size_t k = 0; k < G.size(); ++k) {
            double best = 0.0;
            for (std::size_t a = 0; a <= k; ++a)
                for (std::size_t b = k; b < G.size(); ++b) {
                    double s = 0.0;
                    for (std::size_t i = a; i <= b; ++i) s += std::fabs(G[i]);
                    best = std::max(best, s / static_cast<double>(b - a + 1));
                }
            CHECK(M[k] == doctest::Approx(best).epsilon(1e-14));
        }
    }

    TEST_CASE("averaging operator at r = 0 returns the samples") {
        const std::vector<double> G{0.5, -1.0, 2.0, 0.25};
        const WeakLattice lat = averaging_operator(G, 0.1, 0.0, 0.3);
        const std::size_t J = 3;
        REQUIRE(lat.nt == G.size() + 2 * J);
        REQUIRE(lat.nr == J + 1);
        for (std::size_t i = 0; i < G.size(); ++i) CHECK(lat.g[(i + J) * lat.nr] == doctest::Approx(G[i]));
    }

    TEST_CASE("weak-type ratio is dilation invariant") {
        std::vector<double> G{0.2, 0.9, 0.0, 0.4, 1.0, 0.3};
        for (double alpha : {1.5, 2.0, 4.0}) {
            const WeakTypeReport r = weak_type_check(G, 0.05, alpha);
            CHECK(std::isfinite(r.ratio));
            CHECK(r.dilation_defect <= 1e-6);
        }
        CHECK_THROWS_AS(weak_type_check(G, 0.05, 1.0), Error);
    }

    TEST_CASE("channel dichotomy for random profiles") {
        Rng rng(5);
        std::vector<double> ts;
        for (int i = -40; i <= 40; i += 4) ts.push_back(i * 0.1);
        for (int trial = 0; trial < 10; ++trial) {
            const ProfileFamily f = random_profile(rng, 3.0);
            const CharProfile prof = sample_profile(0.01, 1200, f.fdot);
            for (double R : {0.0, 0.5, 1.0, 2.0}) {
                const ChannelReport c = channel_report(prof, 3.0, R, ts);
                CHECK(c.convexity_holds);
                CHECK(c.dichotomy_holds);
                CHECK(std::max(c.inf_forward, c.inf_backward) >= 0.5 * c.lhs);
            }
        }
    }
}

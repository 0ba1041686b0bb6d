#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <sstream>

#include "wavelab/generators.hpp"
#include "wavelab/linear_wave.hpp"
#include "wavelab/nlw_solver.hpp"
#include "wavelab/radial_core.hpp"

using namespace wavelab;

namespace {

// T(c) = sqrt(m+1) c^{-m} int_0^1 s^{m-1} (1 - s^{2m+2})^{-1/2} ds.
double blowup_time_quadrature(double m, double c) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double p = 2.0 * m + 2.0;
    const double I = ts.integrate(
        [m, p](double s, double sc) {
            const double gap = sc > 0.0 ? -std::expm1(p * std::log1p(-sc)) : 1.0 - std::pow(s, p);
            return std::pow(s, m - 1.0) / std::sqrt(gap);
        },
        0.0, 1.0);
    return std::sqrt(m + 1.0) * std::pow(c, -m) * I;
}

double blowup_time_beta(double m, double c) {
    const double p = 2.0 * m + 2.0;
    return std::sqrt(m + 1.0) * std::pow(c, -m) * boost::math::beta(m / p, 0.5) / p;
}

RadialPair gaussian_data(double h, double radius, double a) {
    const PairFamily f = gaussian_pair(a, 1.0);
    return sample_pair(RadialGrid::covering(h, radius), f.u0, f.u1, f.du0);
}

}  // namespace

TEST_SUITE("nlw_solver") {
    TEST_CASE("ODE blow-up time against two independent quadratures") {
        for (double m : {1.5, 2.0, 3.0})
            for (double c : {0.5, 1.0, 2.0}) {
                const double q = blowup_time_quadrature(m, c), b = blowup_time_beta(m, c);
                CHECK(q == doctest::Approx(b).epsilon(1e-12));
                CHECK(ode_blowup_time(m, c) == doctest::Approx(b).epsilon(1e-9));
            }
        CHECK_THROWS_AS(ode_blowup_time(3.0, 0.0), Error);
    }

    TEST_CASE("linear diamond evolution is exact on the lattice") {
        const RadialPair d = gaussian_data(0.02, 8.0, 1.0);
        DiamondOptions o;
        o.t_final = 2.0;
        o.nonlinear = false;
        const Evolution e = evolve_diamond(d, ModelParams(3.0, 1), o);
        const CharProfile prof = to_characteristic(d);
        const RadialPair ref = from_characteristic(prof, 2.0, 201);
        const std::size_t last = e.field.frames() - 1;
        CHECK(e.field.t(last) == doctest::Approx(2.0));
        for (std::size_t j = 1; j < 200; j += 11) CHECK(std::fabs(e.field.u(last, j) - ref.u0[j]) < 1e-10);
    }

    TEST_CASE("defocusing small data completes and keeps the field bounded") {
        const RadialPair d = gaussian_data(0.02, 8.0, 0.5);
        DiamondOptions o;
        o.t_final = 3.0;
        const Evolution e = evolve_diamond(d, ModelParams(3.0, -1), o);
        CHECK(e.outcome.status == SolveStatus::completed);
        for (double s : e.outcome.sup_u) CHECK(s < 1.0);
    }

    TEST_CASE("constant data blows up at the ODE time") {
        const RadialGrid g = RadialGrid::covering(1e-3, 1.5);
        const RadialPair d = sample_pair(g, [](double) { return 1.0; }, nullptr, [](double) { return 0.0; });
        DiamondOptions o;
        o.t_final = 2.0;
        o.shrink_valid = true;
        o.store_stride = 50;
        const Evolution e = evolve_diamond(d, ModelParams(3.0, 1), o);
        REQUIRE(e.outcome.status == SolveStatus::blowup_detected);
        REQUIRE(e.outcome.T_fit);
        CHECK(*e.outcome.T_fit == doctest::Approx(blowup_time_beta(3.0, 1.0)).epsilon(0.02));
        REQUIRE(e.outcome.blowup_exponent_fit);
        CHECK(*e.outcome.blowup_exponent_fit == doctest::Approx(-1.0 / 3.0).epsilon(0.05));
    }

    TEST_CASE("Picard iteration contracts for small data") {
        const RadialPair d = gaussian_data(0.05, 6.0, 0.3);
        const PicardResult r = picard_solve(d, ModelParams(3.0, 1), 2.0);
        CHECK(r.converged);
        CHECK(r.max_factor <= 0.5);
        CHECK(r.s_norm <= 2.0 * r.delta);
    }

    TEST_CASE("checkpoint round trip") {
        const RadialPair d = gaussian_data(0.05, 4.0, 0.5);
        DiamondOptions o;
        o.t_final = 1.0;
        o.store_stride = 2;
        const Evolution e = evolve_diamond(d, ModelParams(3.0, -1), o);
        std::stringstream ss;
        write_checkpoint(ss, e.field, ModelParams(3.0, -1));
        ModelParams p;
        const SpaceTimeField f = read_checkpoint(ss, &p);
        CHECK(p.m == 3.0);
        CHECK(p.iota == -1);
        REQUIRE(f.frames() == e.field.frames());
        CHECK(f.grid.same_as(e.field.grid));
        for (std::size_t i = 0; i < f.frames(); ++i) {
            CHECK(f.t(i) == doctest::Approx(e.field.t(i)).epsilon(1e-15));
            CHECK(f.U[i] == e.field.U[i]);
            CHECK(f.Ut[i] == e.field.Ut[i]);
        }
        std::stringstream bad("not-a-checkpoint\n");
        CHECK_THROWS_AS(read_checkpoint(bad), Error);
    }

    TEST_CASE("scattering extraction of a linear run has no drift") {
        const RadialPair d = gaussian_data(0.02, 12.0, 0.3);
        DiamondOptions o;
        o.t_final = 5.0;
        o.nonlinear = false;
        o.track_norms = false;
        const Evolution e = evolve_diamond(d, ModelParams(3.0, -1), o);
        const ScatterReport s = scattering_extract(e, d, ModelParams(3.0, -1), 1e-2, 10);
        CHECK(s.drift <= 1e-12);
        CHECK(s.scattering_observed);
    }

    TEST_CASE("identical data give zero perturbation error") {
        const RadialPair d = gaussian_data(0.02, 6.0, 0.4);
        const PerturbationReport r = perturbation_check(d, d, nullptr, 0.5, ModelParams(3.0, 1), 2.0);
        CHECK(r.eps_s_norm == 0.0);
        CHECK_FALSE(r.blowup);
    }
}

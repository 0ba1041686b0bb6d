#include <doctest.h>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "wavelab/stationary.hpp"

using namespace wavelab;

namespace {

// Defocusing radius R_ell by a separate route: plain-r integration from the tail, then
// ln g as the independent variable with state (r, ln g') up to |Z| = cap.
double defocusing_radius_oracle(double m, double ell, double cap) {
    namespace ode = boost::numeric::odeint;
    using S2 = std::array<double, 2>;
    const double R = 200.0;
    S2 x{ell + std::pow(ell, 2.0 * m + 1.0) * std::pow(R, 2.0 - 2.0 * m) / ((2.0 * m - 2.0) * (2.0 * m - 1.0)),
         -std::pow(ell, 2.0 * m + 1.0) * std::pow(R, 1.0 - 2.0 * m) / (2.0 * m - 1.0)};
    auto rhs_r = [m](const S2& s, S2& d, double r) {
        d[0] = s[1];
        d[1] = std::pow(r, -2.0 * m) * std::pow(std::fabs(s[0]), 2.0 * m) * s[0];
    };
    const double r_switch = 2.0 * std::pow(ell, m / (m - 1.0));
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_fehlberg78<S2>>(1e-15, 1e-15), rhs_r, x, R, r_switch, -1e-3);
    // g increases inward, so g' < 0; write p = -g' > 0.
    S2 y{r_switch, std::log(-x[1])};
    auto rhs_u = [m](const S2& s, S2& d, double u) {
        const double g = std::exp(u), p = std::exp(s[1]);
        d[0] = -g / p;
        d[1] = std::pow(s[0], -2.0 * m) * std::pow(g, 2.0 * m + 2.0) / (p * p);
    };
    // g / r exceeds cap once g = cap * r_switch since r < r_switch.
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_fehlberg78<S2>>(1e-15, 1e-15), rhs_u, y, std::log(x[0]),
                            std::log(cap * r_switch), 1e-2);
    const double r_cap = y[0];
    return r_cap;
}

}  // namespace

TEST_SUITE("stationary") {
    TEST_CASE("tail fixed point contracts and matches the asymptotic expansion") {
        const double m = 3.0;
        const TailSolution t = fixed_point_tail(ModelParams(m, 1));
        CHECK(t.converged);
        CHECK(t.contraction < 0.5);
        CHECK(t.residual <= 1e-12);
        const StationaryProfile p = continue_inward(t);
        CHECK(p.tail_exponent == doctest::Approx(-(2.0 * m - 2.0)).epsilon(0.05));
        CHECK(p.tail_constant == doctest::Approx(1.0 / ((2.0 * m - 2.0) * (2.0 * m - 1.0))).epsilon(1e-3));
    }

    TEST_CASE("focusing profile residuals") {
        const StationaryProfile p = build_stationary(ModelParams(3.0, 1));
        CHECK_FALSE(p.singular);
        CHECK(p.r_min_reached <= 1e-5);
        const StationaryResiduals r = stationary_residuals(p);
        CHECK(r.ode <= 1e-10);
        CHECK(r.lyapunov <= 1e-8);
        CHECK(r.identity <= 1e-8);
        const L3mReport l = not_in_l3m_check(p);
        CHECK(l.divergence_observed);
        CHECK(l.growth_last_two_decades >= 10.0);
    }

    TEST_CASE("defocusing radius against an independent integration") {
        for (double ell : {1.0, 2.0}) {
            const StationaryProfile p = build_stationary(ModelParams(3.0, -1), ell);
            REQUIRE(p.singular);
            CHECK(p.Z_inner >= 1e8);
            const double oracle = defocusing_radius_oracle(3.0, ell, 1e8);
            CHECK(p.R_detect == doctest::Approx(oracle).epsilon(1e-9));
        }
    }

    TEST_CASE("scaling law R_ell = R_1 |ell|^{m/(m-1)}") {
        const double m = 3.0;
        const StationaryProfile z1 = build_stationary(ModelParams(m, -1));
        for (double ell : {0.5, 2.0, -1.0, 3.0}) {
            const StationaryProfile z = z_ell(z1, ell);
            const double kappa = std::pow(std::fabs(ell), m / (m - 1.0));
            CHECK(z.R_detect == doctest::Approx(z1.R_detect * kappa).epsilon(1e-12));
            const StationaryProfile d = build_stationary(ModelParams(m, -1), ell);
            CHECK(d.R_detect == doctest::Approx(z.R_detect).epsilon(1e-6));
            for (double f : {1.5, 3.0, 10.0}) CHECK(d.g_at(f * z.R_detect) == doctest::Approx(z.g_at(f * z.R_detect)).epsilon(1e-6));
        }
    }

    TEST_CASE("profile export") {
        const StationaryProfile p = build_stationary(ModelParams(3.0, -1));
        std::ostringstream csv, js;
        write_profile_csv(csv, p);
        write_profile_json(js, p);
        std::istringstream in(csv.str());
        std::string header;
        std::getline(in, header);
        CHECK(header == "r,g,gp,Z,Zp");
        std::size_t rows = 0;
        for (std::string line; std::getline(in, line);) rows += !line.empty();
        CHECK(rows == p.r.size());
        const auto j = nlohmann::json::parse(js.str());
        CHECK(j.at("m").get<double>() == 3.0);
        CHECK(j.at("iota").get<int>() == -1);
        CHECK(j.at("R_detect").get<double>() == doctest::Approx(p.R_detect));
    }
}

#include <doctest.h>

#include <cmath>

#include "wavelab/generators.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/profiles.hpp"
#include "wavelab/radial_core.hpp"

using namespace wavelab;

namespace {

CharProfile add(const CharProfile& a, const CharProfile& b) {
    CharProfile c = a;
    for (std::size_t i = 0; i < c.fdot.size(); ++i) c.fdot[i] += b.fdot[i];
    return c;
}

SyntheticSequence indicator_pair(double m, double h, int nmax) {
    SyntheticSequence s;
    s.m = m;
    s.h = h;
    s.kmax = 2048;
    const auto ind = [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; };
    s.shapes = {ind, ind};
    std::vector<double> one, lam, zero;
    for (int n = 1; n <= nmax; ++n) {
        one.push_back(1.0);
        lam.push_back(std::pow(4.0, -n));
        zero.push_back(0.0);
    }
    s.params.lambda = {one, lam};
    s.params.t = {zero, zero};
    return s;
}

}  // namespace

TEST_SUITE("profiles") {
    TEST_CASE("half-open indicator") {
        const CharProfile p = indicator_profile(0.25, 8, 0.0, 1.0, 2.0);
        CHECK(p.at(-1) == 0.0);
        CHECK(p.at(0) == 2.0);
        CHECK(p.at(3) == 2.0);
        CHECK(p.at(4) == 0.0);
    }

    TEST_CASE("modulation onto grid nodes copies samples") {
        const double m = 3.0, h = 1.0 / 64.0;
        const CharProfile p = sample_profile(h, 256, [](double s) { return std::exp(-s * s) * std::cos(3.0 * s); });
        const CharProfile q = modulate(p, 0.5, 0.25, m);
        const double amp = std::pow(0.5, -1.0 / m);
        for (long k = -40; k <= 40; ++k) {
            const double s = q.sigma(k);
            const long src = std::lround((s - 0.25) / 0.5 / h);
            CHECK(q.at(k) == doctest::Approx(amp * p.at(src)).epsilon(1e-15));
        }
        const CharProfile f = modulate_fn([](double s) { return std::exp(-s * s) * std::cos(3.0 * s); }, 0.5, 0.25, m, h, 256);
        for (long k = -40; k <= 40; ++k) CHECK(f.at(k) == doctest::Approx(q.at(k)).epsilon(1e-13));
    }

    TEST_CASE("modulation preserves E_m") {
        const double m = 3.0, h = 1.0 / 256.0;
        const CharProfile p = sample_profile(h, 2048, [](double s) { return std::exp(-4.0 * s * s); });
        const CharProfile q = modulate(p, 2.0, -1.0, m);
        CHECK(em_energy(q, m).value == doctest::Approx(em_energy(p, m).value).epsilon(1e-12));
    }

    TEST_CASE("cross energy of indicators in closed form") {
        const double h = 1.0 / 1024.0;
        const CharProfile a = indicator_profile(h, 2048, 0.0, 1.0);
        const CharProfile b = indicator_profile(h, 2048, 0.0, 0.25, 2.0);
        for (double m : {2.0, 3.0}) CHECK(cross_energy(a, b, m) == doctest::Approx(0.25 * std::pow(2.0, m - 1.0) * 4.0).epsilon(1e-14));
    }

    TEST_CASE("cross-energy slope is 1 - 1/m for scale-separated indicators") {
        for (double m : {2.0, 3.0}) {
            const SyntheticSequence s = indicator_pair(m, 1.0 / 4096.0, 5);
            const DecouplingReport d = decoupling_check(s, {0, 1, 2, 3, 4});
            for (std::size_t i = 0; i < d.cross.size(); ++i)
                CHECK(d.cross[i] == doctest::Approx(std::pow(2.0, m) * std::pow(4.0, -(1.0 - 1.0 / m) * (i + 1))).epsilon(1e-12));
            CHECK(d.cross_slope == doctest::Approx(1.0 - 1.0 / m).epsilon(1e-10));
            CHECK(d.vanishing);
            CHECK(d.pseudo_orthogonal);
        }
    }

    TEST_CASE("time-separated profiles decouple exactly") {
        SyntheticSequence s = indicator_pair(3.0, 1.0 / 256.0, 4);
        s.kmax = 4096;
        s.params.lambda[1] = {1.0, 1.0, 1.0, 1.0};
        s.params.t[1] = {0.5, 2.0, 4.0, 8.0};
        const DecouplingReport d = decoupling_check(s, {0, 1, 2, 3});
        CHECK(d.delta[0] > 0.0);
        CHECK(d.delta[1] == 0.0);
        CHECK(d.exact_zero_tail);
    }

    TEST_CASE("pseudo-orthogonality detection") {
        ProfileParams p;
        p.lambda = {{1.0, 1.0, 1.0}, {1.0, 0.5, 0.25}};
        p.t = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
        CHECK(p.pseudo_orthogonal());
        p.lambda[1] = {1.0, 1.0, 1.0};
        CHECK_FALSE(p.pseudo_orthogonal());
    }

    TEST_CASE("dual pairing reproduces E_m") {
        Rng rng(21);
        for (double m : {1.5, 2.0, 3.0}) {
            const ProfileFamily f = random_profile(rng, 2.0);
            const CharProfile p = sample_profile(1.0 / 512.0, 2048, f.fdot);
            CHECK(dual_pairing(dual_profile(p, m), p) == doctest::Approx(em_energy(p, m).value).epsilon(1e-12));
        }
    }

    TEST_CASE("m = 2 energy is a Hilbert norm") {
        const double h = 1.0 / 512.0;
        const CharProfile a = sample_profile(h, 2048, [](double s) { return std::exp(-s * s); });
        const CharProfile b = sample_profile(h, 2048, [](double s) { return s * std::exp(-(s - 0.5) * (s - 0.5)); });
        const double lhs = em_energy(add(a, b), 2.0).value;
        const double rhs = em_energy(a, 2.0).value + em_energy(b, 2.0).value + 2.0 * hilbert_inner(a, b);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }

    TEST_CASE("Bessel inequality on a separating sequence") {
        SyntheticSequence s;
        s.m = 3.0;
        s.h = 1.0 / 512.0;
        s.kmax = 8192;
        s.shapes = {[](double x) { return bump(x); }, [](double x) { return -0.5 * bump(x); }};
        s.params.lambda = {{1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}};
        s.params.t = {{0.0, 0.0, 0.0, 0.0}, {0.0, 2.5, 5.0, 7.5}};
        const BesselReport b = bessel_check(s, {0, 1, 2, 3});
        CHECK(b.holds);
        CHECK(b.relative.back() >= -1e-8);
        CHECK(b.relative.front() < 0.0);
        CHECK(b.dual_pairing_error <= 1e-10);
    }

    TEST_CASE("exterior energy of profiles") {
        SyntheticSequence s;
        s.m = 3.0;
        s.h = 1.0 / 1024.0;
        s.kmax = 4096;
        s.shapes = {[](double x) { return bump(x); }, [](double x) { return bump(x); }};
        s.params.lambda = {{1.0, 1.0, 1.0}, {0.25, 1.0 / 16.0, 1.0 / 64.0}};
        s.params.t = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
        const std::vector<ExteriorWindow> w(3, ExteriorWindow{0.25, 1.0, 0.5});
        const ExteriorProfilesReport r = exterior_profiles_check(s, 0, {0, 1, 2}, w);
        CHECK(r.holds);
        for (std::size_t i = 0; i < 3; ++i) CHECK(r.o_n[i] == doctest::Approx(std::max(0.0, r.rhs[i] - r.lhs[i])));
    }
}

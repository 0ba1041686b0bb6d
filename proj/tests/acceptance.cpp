#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "wavelab/lab.hpp"

using namespace wavelab;

namespace {

struct Outcome {
    bool pass = true;
    double seconds = 0.0;
    std::string detail;
};

Report run_case(const std::string& name, double m, Outcome& out, std::size_t trials = 0) {
    Config c = default_config(name);
    c.m = m;
    if (trials) c.trials = trials;
    const Report r = run_experiment(c);
    out.seconds += r.wall_time_s;
    if (!r.all_pass()) {
        out.pass = false;
        for (const auto& v : r.verdicts)
            if (!v.pass) out.detail += " " + name + "(m=" + std::to_string(m) + ")." + v.name;
    }
    return r;
}

void need(Outcome& out, bool ok, const std::string& what) {
    if (!ok) {
        out.pass = false;
        out.detail += " " + what;
    }
}

void report(int id, const std::string& title, const Outcome& o, int& failures) {
    std::printf("%s criterion %d: %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.seconds,
                o.detail.empty() ? "" : (" [" + o.detail.substr(1) + "]").c_str());
    std::fflush(stdout);
    failures += !o.pass;
}

template <class F>
Outcome guarded(F&& f) {
    Outcome o;
    try {
        f(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail += std::string(" exception: ") + e.what();
    }
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    const std::vector<double> ms{1.5, 2.0, 3.0};

    report(1, "E_m conservation, m in {1.5, 2, 3}, drift <= 1e-12, < 1 s per case", guarded([&](Outcome& o) {
               for (double m : ms) {
                   Outcome one;
                   run_case("conservation", m, one);
                   need(o, one.pass, "conservation m=" + std::to_string(m) + one.detail);
                   need(o, one.seconds < 1.0, "runtime m=" + std::to_string(m));
                   o.seconds += one.seconds;
               }
           }),
           failures);

    report(2, "exterior-energy dichotomy, 100 profiles, constant 1/2, < 10 s", guarded([&](Outcome& o) {
               const Report r = run_case("dichotomy", 3.0, o, 100);
               need(o, r.rows.size() == 100, "trial count");
               need(o, o.seconds < 10.0, "runtime");
           }),
           failures);

    report(3, "Strichartz-type ratios finite and scale invariant to 1e-8, 200 data per m, < 2 min", guarded([&](Outcome& o) {
               for (double m : ms)
                   for (const char* e : {"strichartz_scan", "gv_scan", "duhamel_strichartz"}) {
                       const Report r = run_case(e, m, o);
                       need(o, r.rows.size() >= 200, std::string(e) + " trial count");
                   }
               need(o, o.seconds < 120.0, "runtime");
           }),
           failures);

    report(4, "weak-type bound finite, dilation invariant to 1e-6, brute force to 1e-3",
           guarded([&](Outcome& o) { run_case("weak_type", 3.0, o); }), failures);

    report(5, "small data: contraction <= 1/2, ||u||_S <= 2 delta, O(h^2) agreement",
           guarded([&](Outcome& o) { run_case("small_data", 3.0, o); }), failures);

    report(6, "blow-up time within 2% of the ODE oracle, exponent -1/m within 5%, L^m growth >= 10",
           guarded([&](Outcome& o) { run_case("blowup_cone", 3.0, o); }), failures);

    report(7, "stationary profiles: tail, residuals, defocusing radius, scaling law to 1e-6", guarded([&](Outcome& o) {
               run_case("stationary_profile", 3.0, o);
               run_case("rl_scaling", 3.0, o);
           }),
           failures);

    report(8, "profile decoupling slope 1 - 1/m within 10%, Bessel defect, dual pairing, m = 2 Hilbert oracle",
           guarded([&](Outcome& o) {
               run_case("profile_decoupling", 3.0, o);
               run_case("bessel", 3.0, o);
           }),
           failures);

    report(9, "scattering: tail distance < 1% of the data norm, linear pullback drift <= 1e-12",
           guarded([&](Outcome& o) { run_case("scattering_extract", 3.0, o); }), failures);

    report(10, "perturbation: exterior error S norm log-log slope 1 +- 0.1",
           guarded([&](Outcome& o) { run_case("perturbation", 3.0, o); }), failures);

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

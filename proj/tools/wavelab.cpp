#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "wavelab/lab.hpp"

namespace {

void print_summary(const wavelab::Report& rep) {
    std::printf("%s: %zu trial(s), %.3f s\n", rep.experiment.c_str(), rep.rows.size(), rep.wall_time_s);
    for (std::size_t i = 0; i < rep.columns.size(); ++i)
        std::printf("  %-32s %.10g\n", rep.columns[i].c_str(), rep.aggregate[i]);
    for (const auto& [name, v] : rep.metrics) std::printf("  %-32s %.10g\n", name.c_str(), v);
    for (const auto& v : rep.verdicts)
        std::printf("  [%s] %s: %.6g %s %.6g\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), v.value, v.op.c_str(), v.threshold);
    for (const auto& a : rep.artifacts) std::printf("  artifact %s\n", a.c_str());
    std::printf("%s\n", rep.all_pass() ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelab: numerical experiments for the radial cubic-type wave equation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", wavelab::tool_version());

    auto* run = app.add_subcommand("run", "run an experiment");
    std::string experiment, config_path;
    wavelab::ConfigOverrides ov;
    double m = 0, h = 0, radius = 0, t_final = 0;
    int iota = 0;
    std::size_t trials = 0, workers = 0;
    std::uint64_t seed = 0;
    std::string out, format;
    run->add_option("--experiment,-e", experiment, "experiment name");
    run->add_option("--config,-c", config_path, "config file")->check(CLI::ExistingFile);
    auto* o_m = run->add_option("--m", m, "exponent m");
    auto* o_iota = run->add_option("--iota", iota, "sign: 1 focusing, -1 defocusing");
    auto* o_h = run->add_option("--grid-h", h, "grid spacing");
    auto* o_r = run->add_option("--grid-radius", radius, "radial extent");
    auto* o_t = run->add_option("--t-final", t_final, "final time");
    auto* o_n = run->add_option("--trials", trials, "number of trials");
    auto* o_s = run->add_option("--seed", seed, "run seed");
    auto* o_w = run->add_option("--workers", workers, "worker threads (0 = all cores)");
    auto* o_o = run->add_option("--out", out, "output directory");
    auto* o_f = run->add_option("--format", format, "csv, json or both");

    auto* list = app.add_subcommand("list", "list experiments");
    auto* describe = app.add_subcommand("describe", "describe an experiment");
    std::string describe_name;
    describe->add_option("name", describe_name, "experiment name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : wavelab::exit_usage;
    }

    try {
        if (*list) {
            wavelab::print_list(std::cout);
            return wavelab::exit_pass;
        }
        if (*describe) {
            wavelab::print_describe(std::cout, describe_name);
            return wavelab::exit_pass;
        }
        if (*o_m) ov.m = m;
        if (*o_iota) ov.iota = iota;
        if (*o_h) ov.h = h;
        if (*o_r) ov.radius = radius;
        if (*o_t) ov.t_final = t_final;
        if (*o_n) ov.trials = trials;
        if (*o_s) ov.seed = seed;
        if (*o_w) ov.workers = workers;
        if (*o_o) ov.out = out;
        if (*o_f) ov.format = format;
        const wavelab::Config cfg = wavelab::resolve_config(experiment, config_path, ov);
        const wavelab::Report rep = wavelab::run_experiment(cfg);
        print_summary(rep);
        return wavelab::exit_code(rep);
    } catch (const wavelab::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return wavelab::exit_usage;
    } catch (const wavelab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == wavelab::ErrorKind::invalid_argument ? wavelab::exit_usage : wavelab::exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wavelab::exit_numerical;
    }
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "wavelab/lab.hpp"

using namespace wavelab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("wavelab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("lab") {
    TEST_CASE("registry lists every experiment") {
        const std::set<std::string> expected{"conservation",       "dichotomy",          "strichartz_scan",
                                             "gv_scan",            "weak_type",          "small_data",
                                             "blowup_cone",        "blowup_norm_divergence", "duhamel_strichartz",
                                             "stationary_profile", "rl_scaling",         "profile_decoupling",
                                             "bessel",             "exterior_profiles",  "perturbation",
                                             "bb1_channel",        "scattering_extract"};
        std::set<std::string> got;
        for (const auto& e : registry()) {
            got.insert(e.name);
            CHECK_FALSE(e.summary.empty());
            CHECK_FALSE(e.reference.empty());
            CHECK_NOTHROW(validate_config(e.defaults));
            for (const auto& [k, d] : e.param_docs) CHECK(e.defaults.params.count(k) == 1);
            for (const auto& [k, d] : e.tolerance_docs) CHECK(e.defaults.tolerances.count(k) == 1);
        }
        CHECK(got == expected);
        std::ostringstream os;
        print_list(os);
        for (const auto& n : expected) CHECK(os.str().find(n) != std::string::npos);
    }

    TEST_CASE("config text parsing") {
        std::istringstream in("# comment\n[run]\nseed = 5 ; trailing\n\n[model]\n m = 2.5 \n");
        const auto kv = parse_config_text(in);
        CHECK(kv.at("run.seed") == "5");
        CHECK(kv.at("model.m") == "2.5");
        std::istringstream dup("[run]\nseed = 1\nseed = 2\n");
        CHECK_THROWS_AS(parse_config_text(dup), UsageError);
        std::istringstream orphan("seed = 1\n");
        CHECK_THROWS_AS(parse_config_text(orphan), UsageError);
        std::istringstream nohdr("[run\nseed = 1\n");
        CHECK_THROWS_AS(parse_config_text(nohdr), UsageError);
    }

    TEST_CASE("unknown keys and bad values are usage errors") {
        Config c = default_config("conservation");
        CHECK_THROWS_AS(apply_settings(c, {{"run.colour", "red"}}), UsageError);
        CHECK_THROWS_AS(apply_settings(c, {{"tolerances.nope", "1"}}), UsageError);
        CHECK_THROWS_AS(apply_settings(c, {{"experiment.nope", "1"}}), UsageError);
        CHECK_THROWS_AS(apply_settings(c, {{"model.m", "three"}}), UsageError);
        CHECK_THROWS_AS(apply_settings(c, {{"model.iota", "0"}}), UsageError);
        CHECK_THROWS_AS(apply_settings(c, {{"run.experiment", "dichotomy"}}), UsageError);
        CHECK_THROWS_AS(resolve_config("no_such_experiment", "", {}), UsageError);
        ConfigOverrides bad;
        bad.h = -1.0;
        CHECK_THROWS_AS(resolve_config("conservation", "", bad), UsageError);
        bad = {};
        bad.format = "xml";
        CHECK_THROWS_AS(resolve_config("conservation", "", bad), UsageError);
    }

    TEST_CASE("precedence: defaults < file < command line") {
        const fs::path dir = temp_dir("precedence");
        const fs::path cfgp = dir / "c.ini";
        std::ofstream(cfgp) << "[run]\nexperiment = conservation\nseed = 9\ntrials = 2\n[grid]\nh = 0.02\n[experiment]\nsupport = 2\n";
        ConfigOverrides ov;
        ov.seed = 11;
        const Config c = resolve_config("", cfgp.string(), ov);
        CHECK(c.experiment == "conservation");
        CHECK(c.seed == 11);
        CHECK(c.trials == 2);
        CHECK(c.h == 0.02);
        CHECK(c.radius == default_config("conservation").radius);
        CHECK(c.param("support") == 2.0);
        std::ostringstream os;
        write_config_text(os, c);
        std::istringstream back(os.str());
        Config d = default_config("conservation");
        apply_settings(d, parse_config_text(back));
        CHECK(d.seed == 11);
        CHECK(d.h == 0.02);
        CHECK(d.params == c.params);
    }

    TEST_CASE("reports are identical for any worker count") {
        const fs::path dir = temp_dir("workers");
        std::string first;
        for (std::size_t w : {1u, 2u, 4u}) {
            Config c = default_config("dichotomy");
            c.trials = 12;
            c.workers = w;
            c.seed = 3;
            c.out = (dir / std::to_string(w)).string();
            const Report r = run_experiment(c);
            const std::string csv = slurp(fs::path(c.out) / "dichotomy.csv");
            if (first.empty()) first = csv;
            CHECK(csv == first);
            CHECK(r.rows.size() == 12);
        }
        Config c = default_config("dichotomy");
        c.trials = 12;
        c.seed = 4;
        std::ostringstream os;
        write_csv(os, run_experiment(c));
        CHECK(os.str() != first);
    }

    TEST_CASE("CSV and JSON report layout") {
        const fs::path dir = temp_dir("layout");
        Config c = default_config("conservation");
        c.trials = 2;
        c.out = dir.string();
        const Report r = run_experiment(c);
        const std::string csv = slurp(dir / "conservation.csv");
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "trial,drift,lm_ratio_max,lm_ratio_min,energy");
        std::vector<std::string> lines;
        while (std::getline(in, line)) lines.push_back(line);
        REQUIRE(lines.size() == 3);
        CHECK(lines[0].rfind("0,", 0) == 0);
        CHECK(lines[2].rfind("aggregate,", 0) == 0);
        const auto j = nlohmann::json::parse(slurp(dir / "conservation.json"));
        for (const char* k : {"experiment", "config", "metrics", "verdicts", "pass", "trials", "artifacts", "wall_time_s", "tool_version", "seed"})
            CHECK(j.contains(k));
        CHECK(j["experiment"] == "conservation");
        CHECK(j["trials"].size() == 2);
        CHECK(j["trials"][0]["data"].get<std::string>().rfind("gaussian(", 0) == 0);
        CHECK(j["verdicts"][0]["name"] == "energy_drift");
        CHECK(j["pass"].get<bool>() == r.all_pass());
        CHECK(j["tool_version"] == tool_version());
    }

    TEST_CASE("format selects the written files") {
        const fs::path dir = temp_dir("format");
        Config c = default_config("rl_scaling");
        c.out = dir.string();
        c.format = "json";
        run_experiment(c);
        CHECK(fs::exists(dir / "rl_scaling.json"));
        CHECK_FALSE(fs::exists(dir / "rl_scaling.csv"));
    }

    TEST_CASE("stationary artifacts are written to the output directory") {
        const fs::path dir = temp_dir("artifacts");
        Config c = default_config("stationary_profile");
        c.out = dir.string();
        const Report r = run_experiment(c);
        CHECK(r.artifacts.size() == 4);
        for (const auto& a : r.artifacts) CHECK(fs::exists(dir / a));
    }

    TEST_CASE("exit codes follow the verdicts") {
        Config c = default_config("conservation");
        c.trials = 1;
        Report r = run_experiment(c);
        CHECK(exit_code(r) == exit_pass);
        c.tolerances["drift"] = 0.0;
        c.h = 0.0123;
        r = run_experiment(c);
        if (!r.all_pass()) CHECK(exit_code(r) == exit_verdict_failure);
        r.verdicts.push_back({"forced", false, 1.0, 0.0, "<="});
        CHECK(exit_code(r) == exit_verdict_failure);
    }

    TEST_CASE("describe prints the defaults") {
        std::ostringstream os;
        print_describe(os, "bessel");
        CHECK(os.str().find("[experiment]") != std::string::npos);
        CHECK(os.str().find("n_max") != std::string::npos);
        CHECK_THROWS_AS(print_describe(os, "nope"), UsageError);
    }
}

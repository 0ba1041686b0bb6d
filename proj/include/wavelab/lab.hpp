#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavelab/types.hpp"

namespace wavelab {

// Bad command line, config key or value, or unknown experiment (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode { exit_pass = 0, exit_verdict_failure = 1, exit_usage = 2, exit_numerical = 3 };

struct Config {
    std::string experiment;
    double m = 3.0;
    int iota = 1;
    double h = 0.02;
    double radius = 10.0;
    double t_final = 1.0;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::size_t workers = 0;  // 0 = hardware concurrency
    std::string out = "results";  // empty = no files written
    std::string format = "both";
    std::map<std::string, double> tolerances;
    std::map<std::string, std::string> params;

    ModelParams model() const { return ModelParams(m, iota); }
    double tol(const std::string& name) const;
    double param(const std::string& name) const;
    std::vector<double> param_list(const std::string& name) const;
};

// Flat "section.key" -> value map read from key = value lines under [section] headers.
std::map<std::string, std::string> parse_config_text(std::istream& is);
// Applies a parsed map; unknown keys and malformed values raise UsageError.
void apply_settings(Config& cfg, const std::map<std::string, std::string>& kv);

struct ConfigOverrides {
    std::optional<double> m;
    std::optional<int> iota;
    std::optional<double> h;
    std::optional<double> radius;
    std::optional<double> t_final;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

// Experiment defaults, then the file (if any), then the overrides.
Config resolve_config(const std::string& experiment, const std::string& config_path, const ConfigOverrides& ov);
void validate_config(const Config& cfg);
void write_config_text(std::ostream& os, const Config& cfg);

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string op;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;
    std::string data;  // generator descriptor for replay
};

struct Report {
    std::string experiment;
    Config config;
    std::vector<std::string> columns;
    std::vector<TrialRecord> rows;
    std::vector<double> aggregate;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<Verdict> verdicts;
    std::vector<std::string> artifacts;
    double wall_time_s = 0.0;
    std::string tool_version;

    bool all_pass() const;
    double metric(const std::string& name) const;
    const Verdict* verdict(const std::string& name) const;
};

class Run;

struct ExperimentInfo {
    std::string name;
    std::string summary;
    std::string reference;  // the result the experiment probes
    Config defaults;
    std::vector<std::pair<std::string, std::string>> param_docs;
    std::vector<std::pair<std::string, std::string>> tolerance_docs;
    std::function<void(Run&)> body;
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo* find_experiment(const std::string& name);
Config default_config(const std::string& name);

// Runs the experiment and, when cfg.out is set, writes <out>/<name>.csv / .json.
Report run_experiment(const Config& cfg);
int exit_code(const Report& rep);

void write_csv(std::ostream& os, const Report& rep);
void write_json(std::ostream& os, const Report& rep);
void print_list(std::ostream& os);
void print_describe(std::ostream& os, const std::string& name);

std::string tool_version();

// Trial scheduling and report assembly shared by every experiment.
enum class Reduce { max, min, mean, sum };

class Run {
public:
    explicit Run(const Config& cfg) : cfg_(cfg) {}
    const Config& cfg() const { return cfg_; }

    void column(const std::string& name, Reduce r);
    // Runs fn(trial, rng, record) for trial < n on the worker pool; record.values must
    // follow the declared columns.  Exceptions are rethrown for the lowest failing trial.
    void trials(std::size_t n, const std::function<void(std::size_t, TrialRecord&)>& fn);
    double aggregate(const std::string& column) const;
    const std::vector<TrialRecord>& rows() const { return rows_; }
    std::size_t index(const std::string& column) const;

    void metric(const std::string& name, double v);
    void verdict(const std::string& name, double value, const std::string& op, double threshold);
    // Writes an artifact into the output directory when one is configured.
    void artifact(const std::string& file, const std::function<void(std::ostream&)>& writer, bool binary = false);

    Report finish(double wall) const;

private:
    Config cfg_;
    std::vector<std::string> columns_;
    std::vector<Reduce> reduce_;
    std::vector<TrialRecord> rows_;
    std::vector<std::pair<std::string, double>> metrics_;
    std::vector<Verdict> verdicts_;
    std::vector<std::string> artifacts_;
};

}  // namespace wavelab

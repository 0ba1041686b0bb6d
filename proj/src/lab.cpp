#include "wavelab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wavelab/generators.hpp"

#ifndef WAVELAB_VERSION
#define WAVELAB_VERSION "0.0.0"
#endif

namespace wavelab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw UsageError("invalid number for " + key + ": '" + v + "'");
    }
    if (pos != v.size()) throw UsageError("invalid number for " + key + ": '" + v + "'");
    return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("invalid non-negative integer for " + key + ": '" + v + "'");
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw UsageError("integer out of range for " + key + ": '" + v + "'");
    }
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json jnum(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string tool_version() { return WAVELAB_VERSION; }

double Config::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) fail(ErrorKind::invalid_argument, "undeclared tolerance " + name);
    return it->second;
}

double Config::param(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end()) fail(ErrorKind::invalid_argument, "undeclared parameter " + name);
    return to_double("experiment." + name, trim(it->second));
}

std::vector<double> Config::param_list(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end()) fail(ErrorKind::invalid_argument, "undeclared parameter " + name);
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double("experiment." + name, trim(item)));
    if (out.empty()) throw UsageError("empty list for experiment." + name);
    return out;
}

std::map<std::string, std::string> parse_config_text(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto c = line.find_first_of("#;");
        if (c != std::string::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty()) throw UsageError("line " + std::to_string(lineno) + ": key outside a section");
        const std::string key = section + "." + trim(line.substr(0, eq));
        if (kv.count(key)) throw UsageError("duplicate key " + key);
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_settings(Config& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, v] : kv) {
        if (key == "run.experiment") {
            if (v != cfg.experiment) throw UsageError("config names experiment '" + v + "' but '" + cfg.experiment + "' is running");
        } else if (key == "run.seed") cfg.seed = to_uint(key, v);
        else if (key == "run.trials") cfg.trials = to_uint(key, v);
        else if (key == "run.workers") cfg.workers = to_uint(key, v);
        else if (key == "run.out") cfg.out = v;
        else if (key == "run.format") cfg.format = v;
        else if (key == "model.m") cfg.m = to_double(key, v);
        else if (key == "model.iota") {
            const double x = to_double(key, v);
            if (x != 1.0 && x != -1.0) throw UsageError("model.iota must be +1 or -1");
            cfg.iota = static_cast<int>(x);
        } else if (key == "grid.h") cfg.h = to_double(key, v);
        else if (key == "grid.radius") cfg.radius = to_double(key, v);
        else if (key == "time.t_final") cfg.t_final = to_double(key, v);
        else if (key.rfind("tolerances.", 0) == 0) {
            const std::string name = key.substr(11);
            if (!cfg.tolerances.count(name)) throw UsageError("unknown key " + key);
            cfg.tolerances[name] = to_double(key, v);
        } else if (key.rfind("experiment.", 0) == 0) {
            const std::string name = key.substr(11);
            if (!cfg.params.count(name)) throw UsageError("unknown key " + key);
            cfg.params[name] = v;
        } else {
            throw UsageError("unknown key " + key);
        }
    }
}

Config resolve_config(const std::string& experiment, const std::string& config_path, const ConfigOverrides& ov) {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw UsageError("cannot open config file " + config_path);
        kv = parse_config_text(f);
    }
    std::string name = experiment;
    if (name.empty()) {
        const auto it = kv.find("run.experiment");
        if (it == kv.end()) throw UsageError("no experiment given");
        name = it->second;
    }
    if (!find_experiment(name)) throw UsageError("unknown experiment '" + name + "'");
    Config cfg = default_config(name);
    apply_settings(cfg, kv);
    if (ov.m) cfg.m = *ov.m;
    if (ov.iota) {
        if (*ov.iota != 1 && *ov.iota != -1) throw UsageError("--iota must be +1 or -1");
        cfg.iota = *ov.iota;
    }
    if (ov.h) cfg.h = *ov.h;
    if (ov.radius) cfg.radius = *ov.radius;
    if (ov.t_final) cfg.t_final = *ov.t_final;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.workers) cfg.workers = *ov.workers;
    if (ov.out) cfg.out = *ov.out;
    if (ov.format) cfg.format = *ov.format;
    validate_config(cfg);
    return cfg;
}

void validate_config(const Config& cfg) {
    if (!find_experiment(cfg.experiment)) throw UsageError("unknown experiment '" + cfg.experiment + "'");
    if (!(cfg.m > 1.0) || !std::isfinite(cfg.m)) throw UsageError("model.m must be > 1");
    if (cfg.iota != 1 && cfg.iota != -1) throw UsageError("model.iota must be +1 or -1");
    if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) throw UsageError("grid.h must be > 0");
    if (!(cfg.radius > cfg.h) || !std::isfinite(cfg.radius)) throw UsageError("grid.radius must exceed grid.h");
    if (!(cfg.t_final > 0.0) || !std::isfinite(cfg.t_final)) throw UsageError("time.t_final must be > 0");
    if (cfg.trials < 1) throw UsageError("run.trials must be >= 1");
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both")
        throw UsageError("run.format must be csv, json or both");
    for (const auto& [k, v] : cfg.tolerances)
        if (!(v >= 0.0)) throw UsageError("tolerances." + k + " must be >= 0");
    for (const auto& [k, v] : cfg.params) {
        (void)v;
        cfg.param_list(k);
    }
}

void write_config_text(std::ostream& os, const Config& cfg) {
    os << "[run]\nexperiment = " << cfg.experiment << "\nseed = " << cfg.seed << "\ntrials = " << cfg.trials
       << "\nworkers = " << cfg.workers << "\nout = " << cfg.out << "\nformat = " << cfg.format << "\n\n[model]\nm = "
       << fmt(cfg.m) << "\niota = " << cfg.iota << "\n\n[grid]\nh = " << fmt(cfg.h) << "\nradius = " << fmt(cfg.radius)
       << "\n\n[time]\nt_final = " << fmt(cfg.t_final) << "\n";
    if (!cfg.tolerances.empty()) {
        os << "\n[tolerances]\n";
        for (const auto& [k, v] : cfg.tolerances) os << k << " = " << fmt(v) << "\n";
    }
    if (!cfg.params.empty()) {
        os << "\n[experiment]\n";
        for (const auto& [k, v] : cfg.params) os << k << " = " << v << "\n";
    }
}

bool Report::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

double Report::metric(const std::string& name) const {
    for (const auto& [k, v] : metrics)
        if (k == name) return v;
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return aggregate[i];
    return std::nan("");
}

const Verdict* Report::verdict(const std::string& name) const {
    for (const auto& v : verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

int exit_code(const Report& rep) { return rep.all_pass() ? exit_pass : exit_verdict_failure; }

void Run::column(const std::string& name, Reduce r) {
    columns_.push_back(name);
    reduce_.push_back(r);
}

std::size_t Run::index(const std::string& column) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == column) return i;
    fail(ErrorKind::invalid_argument, "unknown column " + column);
}

void Run::trials(std::size_t n, const std::function<void(std::size_t, TrialRecord&)>& fn) {
    std::vector<TrialRecord> recs(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            recs[i].trial = i;
            recs[i].seed = trial_seed(cfg_.seed, i);
            try {
                fn(i, recs[i]);
                if (recs[i].values.size() != columns_.size())
                    fail(ErrorKind::invalid_argument, "trial produced the wrong number of values");
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t nw = cfg_.workers ? cfg_.workers : std::max(1u, std::thread::hardware_concurrency());
    nw = std::min(nw, n);
    if (nw <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& r : recs) rows_.push_back(std::move(r));
}

double Run::aggregate(const std::string& column) const {
    const std::size_t c = index(column);
    double acc = std::nan("");
    std::size_t count = 0;
    for (const auto& row : rows_) {
        const double v = row.values[c];
        if (std::isnan(v)) continue;
        if (count == 0) {
            acc = v;
        } else {
            switch (reduce_[c]) {
                case Reduce::max: acc = std::max(acc, v); break;
                case Reduce::min: acc = std::min(acc, v); break;
                case Reduce::mean:
                case Reduce::sum: acc += v; break;
            }
        }
        ++count;
    }
    if (reduce_[c] == Reduce::mean && count > 0) acc /= static_cast<double>(count);
    return acc;
}

void Run::metric(const std::string& name, double v) { metrics_.emplace_back(name, v); }

void Run::verdict(const std::string& name, double value, const std::string& op, double threshold) {
    bool pass = false;
    if (op == "<=") pass = value <= threshold;
    else if (op == ">=") pass = value >= threshold;
    else if (op == "<") pass = value < threshold;
    else if (op == ">") pass = value > threshold;
    else if (op == "==") pass = value == threshold;
    else fail(ErrorKind::invalid_argument, "unknown verdict operator " + op);
    verdicts_.push_back({name, pass, value, threshold, op});
}

void Run::artifact(const std::string& file, const std::function<void(std::ostream&)>& writer, bool binary) {
    if (cfg_.out.empty()) return;
    std::filesystem::create_directories(cfg_.out);
    const std::string path = (std::filesystem::path(cfg_.out) / file).string();
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) fail(ErrorKind::invalid_argument, "cannot write " + path);
    writer(f);
    artifacts_.push_back(file);
}

Report Run::finish(double wall) const {
    Report rep;
    rep.experiment = cfg_.experiment;
    rep.config = cfg_;
    rep.columns = columns_;
    rep.rows = rows_;
    for (const auto& c : columns_) rep.aggregate.push_back(aggregate(c));
    rep.metrics = metrics_;
    rep.verdicts = verdicts_;
    rep.artifacts = artifacts_;
    rep.wall_time_s = wall;
    rep.tool_version = tool_version();
    return rep;
}

void write_csv(std::ostream& os, const Report& rep) {
    os << "trial";
    for (const auto& c : rep.columns) os << "," << c;
    os << "\n";
    for (const auto& row : rep.rows) {
        os << row.trial;
        for (double v : row.values) os << "," << fmt(v);
        os << "\n";
    }
    os << "aggregate";
    for (double v : rep.aggregate) os << "," << fmt(v);
    os << "\n";
}

void write_json(std::ostream& os, const Report& rep) {
    using nlohmann::json;
    const Config& c = rep.config;
    json cfg = {{"experiment", c.experiment},
                {"m", c.m},
                {"iota", c.iota},
                {"grid", {{"h", c.h}, {"radius", c.radius}}},
                {"t_final", c.t_final},
                {"trials", c.trials},
                {"seed", c.seed},
                {"workers", c.workers},
                {"out", c.out},
                {"format", c.format},
                {"tolerances", c.tolerances},
                {"params", c.params}};
    json metrics = json::object();
    for (std::size_t i = 0; i < rep.columns.size(); ++i) metrics[rep.columns[i]] = jnum(rep.aggregate[i]);
    for (const auto& [k, v] : rep.metrics) metrics[k] = jnum(v);
    json verdicts = json::array();
    for (const auto& v : rep.verdicts)
        verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"value", jnum(v.value)}, {"threshold", jnum(v.threshold)}, {"op", v.op}});
    json trials = json::array();
    for (const auto& r : rep.rows) {
        json vals = json::object();
        for (std::size_t i = 0; i < rep.columns.size(); ++i) vals[rep.columns[i]] = jnum(r.values[i]);
        trials.push_back({{"trial", r.trial}, {"seed", r.seed}, {"data", r.data}, {"metrics", vals}});
    }
    json j = {{"experiment", rep.experiment},
              {"config", cfg},
              {"metrics", metrics},
              {"verdicts", verdicts},
              {"pass", rep.all_pass()},
              {"trials", trials},
              {"artifacts", rep.artifacts},
              {"wall_time_s", rep.wall_time_s},
              {"tool_version", rep.tool_version},
              {"seed", c.seed}};
    os << std::setw(2) << j << "\n";
}

Report run_experiment(const Config& cfg) {
    validate_config(cfg);
    const ExperimentInfo* info = find_experiment(cfg.experiment);
    const auto t0 = std::chrono::steady_clock::now();
    Run run(cfg);
    info->body(run);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Report rep = run.finish(wall);
    if (!cfg.out.empty()) {
        std::filesystem::create_directories(cfg.out);
        const std::filesystem::path base = std::filesystem::path(cfg.out) / cfg.experiment;
        if (cfg.format == "csv" || cfg.format == "both") {
            std::ofstream f(base.string() + ".csv");
            if (!f) fail(ErrorKind::invalid_argument, "cannot write " + base.string() + ".csv");
            write_csv(f, rep);
        }
        if (cfg.format == "json" || cfg.format == "both") {
            std::ofstream f(base.string() + ".json");
            if (!f) fail(ErrorKind::invalid_argument, "cannot write " + base.string() + ".json");
            write_json(f, rep);
        }
    }
    return rep;
}

const ExperimentInfo* find_experiment(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

Config default_config(const std::string& name) {
    const ExperimentInfo* e = find_experiment(name);
    if (!e) throw UsageError("unknown experiment '" + name + "'");
    return e->defaults;
}

void print_list(std::ostream& os) {
    std::size_t w = 0;
    for (const auto& e : registry()) w = std::max(w, e.name.size());
    for (const auto& e : registry()) os << std::left << std::setw(static_cast<int>(w + 2)) << e.name << e.summary << "\n";
}

void print_describe(std::ostream& os, const std::string& name) {
    const ExperimentInfo* e = find_experiment(name);
    if (!e) throw UsageError("unknown experiment '" + name + "'");
    os << e->name << "\n  " << e->summary << "\n  probes: " << e->reference << "\n";
    if (!e->param_docs.empty()) {
        os << "\nparameters ([experiment] section):\n";
        for (const auto& [k, d] : e->param_docs) os << "  " << k << ": " << d << "\n";
    }
    if (!e->tolerance_docs.empty()) {
        os << "\ntolerances ([tolerances] section):\n";
        for (const auto& [k, d] : e->tolerance_docs) os << "  " << k << ": " << d << "\n";
    }
    os << "\ndefault config:\n";
    write_config_text(os, e->defaults);
}

}  // namespace wavelab

// Copyright 2026 The ditomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ditomo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace ditomo {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

const ConfigKey &find_key(const std::string &name) {
    for (const auto &k : config_keys()) {
        if (k.name == name) {
            return k;
        }
    }
    throw ConfigError("unknown config key '" + name + "'");
}

double parse_real(const std::string &key, const std::string &value) {
    std::string t = trim(value);
    char *end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not a finite number");
    }
    return v;
}

uint64_t parse_count(const std::string &key, const std::string &value) {
    std::string t = trim(value);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not a nonnegative integer");
    }
    return v;
}

void check_value(const ConfigKey &key, const std::string &value) {
    switch (key.type) {
        case ConfigType::Real:
            parse_real(key.name, value);
            break;
        case ConfigType::Count:
        case ConfigType::Seed:
            parse_count(key.name, value);
            break;
        case ConfigType::StateList:
            try {
                for (const auto &s : split_list(value)) {
                    parse_state_kind(s);
                }
            } catch (const std::invalid_argument &e) {
                throw ConfigError("config key '" + key.name + "': " + e.what());
            }
            break;
        case ConfigType::MethodList:
            try {
                for (const auto &m : split_list(value)) {
                    parse_method(m);
                }
            } catch (const std::invalid_argument &e) {
                throw ConfigError("config key '" + key.name + "': " + e.what());
            }
            break;
        case ConfigType::Path:
            if (trim(value).empty()) {
                throw ConfigError("config key '" + key.name + "' must not be empty");
            }
            break;
    }
}

}  // namespace

const std::vector<ConfigKey> &config_keys() {
    static const std::vector<ConfigKey> keys{
        {"states", ConfigType::StateList, "tau1,tau2,tau3", "test states to benchmark"},
        {"methods", ConfigType::MethodList, "DD_ML_PARTIAL,DD_ML_FULL,DI_DD_ML,LIN_PARTIAL,LIN_FULL",
         "estimators to run"},
        {"runs", ConfigType::Count, "1000", "runs per state"},
        {"n", ConfigType::Real, "1000", "mean total number of events per run"},
        {"master_seed", ConfigType::Seed, "1", "seed all run seeds derive from"},
        {"jobs", ConfigType::Count, "0", "parallel runs (0 = all cores)"},
        {"output_dir", ConfigType::Path, "results", "directory for benchmark outputs"},
        {"mle.epsilon0", ConfigType::Real, "1e6", "initial dilution"},
        {"mle.epsilon_min", ConfigType::Real, "1e-10", "stop once the dilution falls below this"},
        {"mle.kl_tol", ConfigType::Real, "1e-14", "KL gain treated as stagnation at minimal dilution"},
        {"mle.max_iters", ConfigType::Count, "100000", "iteration cap"},
        {"mle.prob_floor", ConfigType::Real, "1e-15", "floor on predicted probabilities in f/P"},
        {"di.gap_tol", ConfigType::Real, "1e-7", "stop when 16/t falls below this"},
        {"di.inner_tol", ConfigType::Real, "1e-8", "Newton decrement tolerance per barrier stage"},
        {"di.t0", ConfigType::Real, "1.0", "initial barrier weight"},
        {"di.t_factor", ConfigType::Real, "10", "barrier weight growth per stage"},
        {"di.max_inner_iters", ConfigType::Count, "5000", "Newton steps per barrier stage"},
    };
    return keys;
}

Config::Config() {
    for (const auto &k : config_keys()) {
        values_[k.name] = k.default_value;
    }
}

void Config::set(const std::string &key, const std::string &value) {
    const ConfigKey &k = find_key(key);
    check_value(k, value);
    values_[k.name] = trim(value);
}

void Config::load(std::istream &in, const std::string &source) {
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            set(trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void Config::load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    load(in, path);
}

const std::string &Config::get(const std::string &key) const {
    find_key(key);
    return values_.at(key);
}

double Config::get_real(const std::string &key) const {
    return parse_real(key, get(key));
}

uint64_t Config::get_count(const std::string &key) const {
    return parse_count(key, get(key));
}

MleConfig Config::mle_config() const {
    MleConfig c;
    c.epsilon0 = get_real("mle.epsilon0");
    c.epsilon_min = get_real("mle.epsilon_min");
    c.kl_tol = get_real("mle.kl_tol");
    c.max_iters = get_count("mle.max_iters");
    c.prob_floor = get_real("mle.prob_floor");
    return c;
}

SolverConfig Config::solver_config() const {
    SolverConfig c;
    c.gap_tol = get_real("di.gap_tol");
    c.inner_tol = get_real("di.inner_tol");
    c.t0 = get_real("di.t0");
    c.t_factor = get_real("di.t_factor");
    c.max_inner_iters = static_cast<int>(get_count("di.max_inner_iters"));
    return c;
}

BenchmarkConfig Config::benchmark_config() const {
    BenchmarkConfig c;
    c.states.clear();
    for (const auto &s : split_list(get("states"))) {
        c.states.push_back(parse_state_kind(s));
    }
    c.methods.clear();
    for (const auto &m : split_list(get("methods"))) {
        c.methods.push_back(parse_method(m));
    }
    c.runs = get_count("runs");
    c.mean_total = get_real("n");
    c.master_seed = get_count("master_seed");
    c.jobs = static_cast<int>(get_count("jobs"));
    c.mle = mle_config();
    c.di = solver_config();
    return c;
}

}  // namespace ditomo

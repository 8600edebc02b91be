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

#ifndef DITOMO_CONFIG_HPP
#define DITOMO_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ditomo/benchmark.hpp"

namespace ditomo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ConfigType { Real, Count, Seed, StateList, MethodList, Path };

struct ConfigKey {
    std::string name;
    ConfigType type;
    std::string default_value;
    std::string help;
};

/// Every accepted key with its default.
const std::vector<ConfigKey> &config_keys();

/// Key-value configuration: defaults, then a config file, then flag overrides.
///
/// The file format is one `key = value` per line; `#` starts a comment. Unknown
/// keys and unparsable values are rejected with ConfigError.
class Config {
   public:
    Config();

    void set(const std::string &key, const std::string &value);
    void load(std::istream &in, const std::string &source = "<config>");
    void load_file(const std::string &path);

    const std::string &get(const std::string &key) const;
    double get_real(const std::string &key) const;
    uint64_t get_count(const std::string &key) const;

    MleConfig mle_config() const;
    SolverConfig solver_config() const;
    BenchmarkConfig benchmark_config() const;
    std::string output_dir() const {
        return get("output_dir");
    }

   private:
    std::map<std::string, std::string> values_;
};

}  // namespace ditomo

#endif

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

#ifndef DITOMO_CLI_HPP
#define DITOMO_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "ditomo/config.hpp"

namespace ditomo {

struct SimulateOptions {
    std::string state = "tau2";
    double n = 1000;
    uint64_t seed = 1;
    std::string design = "full";
    std::string out;
    /// Write round(n * P) instead of sampling.
    bool noiseless = false;
};

struct ReconstructOptions {
    std::string counts;
    std::string method;
    std::string out_dir;
    /// Test state whose pure component the fidelity is measured against.
    std::optional<std::string> target;
};

int cmd_simulate(const SimulateOptions &options, std::ostream &log);
int cmd_reconstruct(const ReconstructOptions &options, const Config &config, std::ostream &log);
int cmd_benchmark(const Config &config, std::ostream &log);
int cmd_report(const std::string &results_path, std::ostream &log);

/// Full command line: simulate | reconstruct | benchmark | report. Returns the exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace ditomo

#endif

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

#ifndef DITOMO_IO_HPP
#define DITOMO_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ditomo/benchmark.hpp"
#include "json.hpp"

namespace ditomo {

inline constexpr int kFormatVersion = 1;

/// Malformed input file.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "# format_version: 1", then header a,b,x,y,count and one row per event in design order.
void write_counts_csv(std::ostream &out, const CountTable &counts);

/// Reads a count table and infers its design kind from the event set: 36 events
/// is the full design, the 16 kept events the partial one. Rows come back in
/// design order. Lines starting with '#' are ignored.
CountTable read_counts_csv(std::istream &in, const TomographyDesign &full, const TomographyDesign &partial);

/// 4x4 array of [re, im] pairs under "matrix".
nlohmann::json state_to_json(const ComplexMatrix &rho);
ComplexMatrix state_from_json(const nlohmann::json &j);

nlohmann::json record_to_json(const RunRecord &record);
RunRecord record_from_json(const nlohmann::json &j);

void write_records_jsonl(std::ostream &out, const std::vector<RunRecord> &records);
/// Throws FormatError on an unparsable line.
std::vector<RunRecord> read_records_jsonl(std::istream &in);

nlohmann::json summary_to_json(const BenchmarkSummary &summary, const BenchmarkConfig &config);

/// "# format_version: 1", then state,method,bin_lo,bin_hi,count.
void write_histograms_csv(std::ostream &out, const BenchmarkSummary &summary);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace ditomo

#endif

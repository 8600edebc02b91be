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

#include "ditomo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace ditomo {

namespace {

constexpr const char *kCountsHeader = "a,b,x,y,count";
constexpr const char *kHistogramHeader = "state,method,bin_lo,bin_hi,count";

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

uint64_t parse_uint(const std::string &field, size_t line) {
    std::string t = trim(field);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw FormatError("counts CSV line " + std::to_string(line) + ": '" + t + "' is not a nonnegative integer");
    }
    return v;
}

bool matches_design(const std::vector<EventCount> &rows, const TomographyDesign &design) {
    if (rows.size() != design.observed_count()) {
        return false;
    }
    for (const auto &r : rows) {
        if (!design.index_of(r.label)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; precision++) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

void write_counts_csv(std::ostream &out, const CountTable &counts) {
    out << "# format_version: " << kFormatVersion << "\n" << kCountsHeader << "\n";
    for (const auto &e : counts.entries) {
        out << e.label.a << "," << e.label.b << "," << e.label.x << "," << e.label.y << "," << e.count << "\n";
    }
}

CountTable read_counts_csv(std::istream &in, const TomographyDesign &full, const TomographyDesign &partial) {
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    std::vector<EventCount> rows;
    std::set<EventLabel> seen;
    while (std::getline(in, line)) {
        line_no++;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (t != kCountsHeader) {
                throw FormatError("counts CSV: expected header '" + std::string(kCountsHeader) + "', got '" + t + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 5) {
            throw FormatError("counts CSV line " + std::to_string(line_no) + ": expected 5 fields");
        }
        EventCount e;
        e.label.a = static_cast<int>(parse_uint(fields[0], line_no));
        e.label.b = static_cast<int>(parse_uint(fields[1], line_no));
        e.label.x = static_cast<int>(parse_uint(fields[2], line_no));
        e.label.y = static_cast<int>(parse_uint(fields[3], line_no));
        e.count = parse_uint(fields[4], line_no);
        if (e.label.a > 1 || e.label.b > 1 || e.label.x < 1 || e.label.x > 3 || e.label.y < 1 || e.label.y > 3) {
            throw FormatError("counts CSV line " + std::to_string(line_no) + ": event " + e.label.str() +
                              " out of range");
        }
        if (!seen.insert(e.label).second) {
            throw FormatError("counts CSV line " + std::to_string(line_no) + ": duplicate event " + e.label.str());
        }
        rows.push_back(e);
    }
    if (!header_seen) {
        throw FormatError("counts CSV: missing header");
    }

    const TomographyDesign *design = nullptr;
    if (matches_design(rows, full)) {
        design = &full;
    } else if (matches_design(rows, partial)) {
        design = &partial;
    } else {
        throw FormatError("counts CSV: " + std::to_string(rows.size()) +
                          " events match neither the full (36) nor the partial (16) design");
    }
    CountTable table;
    table.kind = design->kind;
    for (const auto &el : design->elements) {
        if (!el.label) {
            continue;
        }
        auto it = std::find_if(rows.begin(), rows.end(), [&](const EventCount &r) { return r.label == *el.label; });
        table.entries.push_back(*it);
    }
    return table;
}

nlohmann::json state_to_json(const ComplexMatrix &rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < rho.rows(); r++) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c = 0; c < rho.cols(); c++) {
            row.push_back({rho(r, c).real(), rho(r, c).imag()});
        }
        rows.push_back(row);
    }
    return {{"format_version", kFormatVersion}, {"matrix", rows}};
}

ComplexMatrix state_from_json(const nlohmann::json &j) {
    try {
        const auto &rows = j.at("matrix");
        if (!rows.is_array() || rows.size() != 4) {
            throw FormatError("state JSON: matrix must be 4x4");
        }
        ComplexMatrix m(4, 4);
        for (size_t r = 0; r < 4; r++) {
            if (rows[r].size() != 4) {
                throw FormatError("state JSON: matrix must be 4x4");
            }
            for (size_t c = 0; c < 4; c++) {
                m(r, c) = Complex(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
            }
        }
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("state JSON: ") + e.what());
    }
}

nlohmann::json record_to_json(const RunRecord &r) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["state"] = to_string(r.state);
    j["method"] = to_string(r.method);
    j["run"] = r.run_index;
    j["seed"] = r.seed;
    j["fidelity"] = r.fidelity;
    j["trace_dist_to_true"] = r.trace_dist_to_true;
    if (r.trace_dist_hybrid_vs_dd) {
        j["trace_dist_hybrid_vs_dd"] = *r.trace_dist_hybrid_vs_dd;
    }
    j["iterations"] = r.iterations;
    if (r.final_kl) {
        j["final_kl"] = *r.final_kl;
    }
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["clamp_events"] = r.clamp_events;
    j["resamples"] = r.resamples;
    if (r.di_final_kl) {
        j["di_final_kl"] = *r.di_final_kl;
    }
    j["wall_time"] = r.wall_time;
    return j;
}

RunRecord record_from_json(const nlohmann::json &j) {
    try {
        RunRecord r;
        r.state = parse_state_kind(j.at("state").get<std::string>());
        r.method = parse_method(j.at("method").get<std::string>());
        r.run_index = j.at("run").get<size_t>();
        r.seed = j.at("seed").get<uint64_t>();
        r.fidelity = j.at("fidelity").get<double>();
        r.trace_dist_to_true = j.at("trace_dist_to_true").get<double>();
        if (j.contains("trace_dist_hybrid_vs_dd")) {
            r.trace_dist_hybrid_vs_dd = j["trace_dist_hybrid_vs_dd"].get<double>();
        }
        r.iterations = j.at("iterations").get<size_t>();
        if (j.contains("final_kl")) {
            r.final_kl = j["final_kl"].get<double>();
        }
        r.min_eigenvalue = j.at("min_eigenvalue").get<double>();
        r.clamp_events = j.value("clamp_events", 0);
        r.resamples = j.value("resamples", 0);
        if (j.contains("di_final_kl")) {
            r.di_final_kl = j["di_final_kl"].get<double>();
        }
        r.wall_time = j.value("wall_time", 0.0);
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("run record: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("run record: ") + e.what());
    }
}

void write_records_jsonl(std::ostream &out, const std::vector<RunRecord> &records) {
    for (const auto &r : records) {
        out << record_to_json(r).dump() << "\n";
    }
}

std::vector<RunRecord> read_records_jsonl(std::istream &in) {
    std::vector<RunRecord> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (trim(line).empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw FormatError("results line " + std::to_string(line_no) + ": " + e.what());
        }
        out.push_back(record_from_json(j));
    }
    return out;
}

nlohmann::json summary_to_json(const BenchmarkSummary &summary, const BenchmarkConfig &config) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["metadata"] = {
        {"trace_distance_convention", "sum of absolute eigenvalues of the difference, no factor 1/2"},
        {"di_kl_weighting", "empirical input frequencies f(xy)"},
        {"fidelity", "<chi|rho|chi> against the pure component of the test state"},
        {"histogram_bins", kHistogramBins},
        {"prng", std::string(Prng::algorithm)},
    };
    nlohmann::json states = nlohmann::json::array();
    for (StateKind s : config.states) {
        states.push_back(to_string(s));
    }
    nlohmann::json methods = nlohmann::json::array();
    for (MethodId m : config.methods) {
        methods.push_back(to_string(m));
    }
    j["config"] = {
        {"states", states},
        {"methods", methods},
        {"runs", config.runs},
        {"n", config.mean_total},
        {"master_seed", config.master_seed},
    };
    j["clamp_events"] = summary.clamp_events;
    j["resamples"] = summary.resamples;
    nlohmann::json fid = nlohmann::json::array();
    for (const auto &[key, s] : summary.fidelity) {
        fid.push_back({
            {"state", to_string(key.first)},
            {"method", to_string(key.second)},
            {"count", s.count},
            {"mean", s.mean},
            {"stddev", s.stddev},
            {"min", s.min},
            {"q1", s.q1},
            {"median", s.median},
            {"q3", s.q3},
            {"max", s.max},
            {"above_one", s.above_one},
            {"negative_eigenvalue", s.negative_eigenvalue},
        });
    }
    j["fidelity"] = fid;
    nlohmann::json pairing = nlohmann::json::array();
    for (const auto &[state, p] : summary.pairing) {
        pairing.push_back({
            {"state", to_string(state)},
            {"count", p.count},
            {"median_hybrid_vs_dd", p.median_hybrid_vs_dd},
            {"median_hybrid_vs_true", p.median_hybrid_vs_true},
            {"ratio_of_medians", p.ratio_of_medians},
            {"median_of_ratios", p.median_of_ratios},
        });
    }
    j["pairing"] = pairing;
    return j;
}

void write_histograms_csv(std::ostream &out, const BenchmarkSummary &summary) {
    out << "# format_version: " << kFormatVersion << "\n" << kHistogramHeader << "\n";
    for (const auto &[key, s] : summary.fidelity) {
        const Histogram &h = s.histogram;
        double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
        for (size_t b = 0; b < h.counts.size(); b++) {
            double lo = h.lo + width * static_cast<double>(b);
            double hi = b + 1 == h.counts.size() ? h.hi : h.lo + width * static_cast<double>(b + 1);
            out << to_string(key.first) << "," << to_string(key.second) << "," << format_double(lo) << ","
                << format_double(hi) << "," << h.counts[b] << "\n";
        }
    }
}

}  // namespace ditomo

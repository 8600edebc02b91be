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

#include <gtest/gtest.h>

#include <sstream>

#include "ditomo/config.hpp"
#include "ditomo/io.hpp"
#include "test_util.hpp"

namespace ditomo {
namespace {

const BellScenario kScenario = BellScenario::uniform();

class IoTest : public ::testing::Test {
   protected:
    TomographyDesign full = build_joint_povm(kScenario);
    PartialDesign partial = build_partial_design(kScenario);
};

TEST_F(IoTest, CountsCsvRoundTripBothDesigns) {
    Prng rng(91);
    for (const TomographyDesign *d : {&full, &partial.design}) {
        CountTable t = sample_counts(rng, make_test_state(StateKind::Tau3), *d, 1000);
        std::stringstream ss;
        write_counts_csv(ss, t);
        std::string text = ss.str();
        EXPECT_EQ(text.rfind("# format_version: 1\na,b,x,y,count\n", 0), 0u);
        CountTable back = read_counts_csv(ss, full, partial.design);
        EXPECT_EQ(back.kind, t.kind);
        ASSERT_EQ(back.entries.size(), t.entries.size());
        for (size_t k = 0; k < t.entries.size(); k++) {
            EXPECT_EQ(back.entries[k].label, t.entries[k].label);
            EXPECT_EQ(back.entries[k].count, t.entries[k].count);
        }
    }
}

TEST_F(IoTest, CountsCsvAcceptsAnyRowOrder) {
    std::stringstream ss;
    ss << "a,b,x,y,count\n";
    for (int k = kFullEvents - 1; k >= 0; k--) {
        EventLabel e = full_event_label(k);
        ss << e.a << "," << e.b << "," << e.x << "," << e.y << "," << k << "\n";
    }
    CountTable t = read_counts_csv(ss, full, partial.design);
    EXPECT_EQ(t.kind, DesignKind::Full);
    for (int k = 0; k < kFullEvents; k++) {
        EXPECT_EQ(t.entries[k].count, static_cast<uint64_t>(k));
    }
}

TEST_F(IoTest, CountsCsvRejectsMalformedInput) {
    auto parse = [&](const std::string &text) {
        std::stringstream ss(text);
        return read_counts_csv(ss, full, partial.design);
    };
    EXPECT_THROW(parse(""), FormatError);
    EXPECT_THROW(parse("a,b,x,y,n\n"), FormatError);
    EXPECT_THROW(parse("a,b,x,y,count\n0,0,1,1,5\n"), FormatError);
    EXPECT_THROW(parse("a,b,x,y,count\n0,0,1,1,-5\n"), FormatError);
    EXPECT_THROW(parse("a,b,x,y,count\n0,0,1\n"), FormatError);
    EXPECT_THROW(parse("a,b,x,y,count\n0,0,1,1,x\n"), FormatError);

    std::stringstream dup;
    CountTable t = expected_counts(DensityMatrix::maximally_mixed(), full, 360);
    write_counts_csv(dup, t);
    dup << "0,0,1,1,3\n";
    EXPECT_THROW(read_counts_csv(dup, full, partial.design), FormatError);
}

TEST(StateJson, RoundTripAndShape) {
    Prng rng(92);
    ComplexMatrix rho = testing::random_state(rng).matrix();
    nlohmann::json j = state_to_json(rho);
    EXPECT_EQ(j["format_version"], 1);
    ASSERT_EQ(j["matrix"].size(), 4u);
    ASSERT_EQ(j["matrix"][0].size(), 4u);
    ASSERT_EQ(j["matrix"][0][1].size(), 2u);
    ComplexMatrix back = state_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back, rho);
    EXPECT_THROW(state_from_json(nlohmann::json{{"matrix", {1, 2}}}), FormatError);
}

TEST(RecordJson, RoundTripIsExact) {
    RunRecord r;
    r.state = StateKind::Tau3;
    r.method = MethodId::DiDdMl;
    r.run_index = 17;
    r.seed = 0xfedcba9876543210ULL;
    r.fidelity = 0.1 + 0.2;
    r.trace_dist_to_true = 1.0 / 3;
    r.trace_dist_hybrid_vs_dd = 2.0 / 7;
    r.iterations = 123;
    r.final_kl = 1e-300;
    r.min_eigenvalue = -1e-17;
    r.clamp_events = 1;
    r.resamples = 2;
    r.di_final_kl = 0.0071;
    r.wall_time = 0.5;
    std::stringstream ss;
    write_records_jsonl(ss, {r, r});
    std::vector<RunRecord> back = read_records_jsonl(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(record_to_json(back[1]).dump(), record_to_json(r).dump());
    EXPECT_EQ(back[0].seed, r.seed);
    EXPECT_EQ(back[0].fidelity, r.fidelity);

    RunRecord lin;
    lin.method = MethodId::LinFull;
    nlohmann::json j = record_to_json(lin);
    EXPECT_FALSE(j.contains("final_kl"));
    EXPECT_FALSE(j.contains("trace_dist_hybrid_vs_dd"));
    EXPECT_FALSE(record_from_json(j).final_kl.has_value());
}

TEST(RecordJson, MalformedLinesRejected) {
    std::stringstream bad("{\"state\": \"tau1\"\n");
    EXPECT_THROW(read_records_jsonl(bad), FormatError);
    std::stringstream missing("{\"state\": \"tau1\"}\n");
    EXPECT_THROW(read_records_jsonl(missing), FormatError);
}

TEST(SummaryJson, CarriesMetadataAndEntries) {
    BenchmarkConfig c;
    c.runs = 1;
    c.states = {StateKind::Tau2};
    BenchmarkResult r = run_benchmark(c);
    nlohmann::json j = summary_to_json(r.summary, c);
    EXPECT_EQ(j["format_version"], 1);
    EXPECT_TRUE(j.contains("metadata"));
    EXPECT_EQ(j["fidelity"].size(), 5u);
    EXPECT_EQ(j["pairing"].size(), 1u);
    std::string text = j.dump();
    EXPECT_NE(text.find("no factor 1/2"), std::string::npos);
    EXPECT_NE(text.find("f(xy)"), std::string::npos);

    std::stringstream hist;
    write_histograms_csv(hist, r.summary);
    std::string line;
    std::getline(hist, line);
    EXPECT_EQ(line, "# format_version: 1");
    std::getline(hist, line);
    EXPECT_EQ(line, "state,method,bin_lo,bin_hi,count");
    size_t rows = 0;
    while (std::getline(hist, line)) {
        rows++;
    }
    EXPECT_EQ(rows, 5u * kHistogramBins);
}

TEST(FormatDouble, ShortestRoundTrip) {
    for (double v : {0.1, 1.0 / 3, 1e-300, -2.5, 0.0, 123456789.0}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Config, DefaultsForEveryKey) {
    Config c;
    for (const ConfigKey &k : config_keys()) {
        EXPECT_FALSE(k.default_value.empty()) << k.name;
        EXPECT_FALSE(k.help.empty()) << k.name;
        EXPECT_EQ(c.get(k.name), k.default_value);
    }
    MleConfig mle = c.mle_config();
    EXPECT_EQ(mle.epsilon0, 1e6);
    EXPECT_EQ(mle.epsilon_min, 1e-10);
    EXPECT_EQ(mle.kl_tol, 1e-14);
    EXPECT_EQ(mle.max_iters, 100000u);
    EXPECT_EQ(mle.prob_floor, 1e-15);
    SolverConfig di = c.solver_config();
    EXPECT_EQ(di.gap_tol, 1e-7);
    EXPECT_EQ(di.inner_tol, 1e-8);
    EXPECT_EQ(di.t0, 1.0);
    EXPECT_EQ(di.t_factor, 10);
    EXPECT_EQ(di.max_inner_iters, 5000);
    BenchmarkConfig b = c.benchmark_config();
    EXPECT_EQ(b.runs, 1000u);
    EXPECT_EQ(b.mean_total, 1000);
    EXPECT_EQ(b.states.size(), 3u);
    EXPECT_EQ(b.methods.size(), 5u);
}

TEST(Config, LoadsFileSyntaxAndRejectsUnknownKeys) {
    Config c;
    std::stringstream in("# comment\nruns = 50\n  states = tau2, tau3  # trailing\n\nmle.kl_tol=1e-12\n");
    c.load(in);
    EXPECT_EQ(c.get_count("runs"), 50u);
    EXPECT_EQ(c.benchmark_config().states, (std::vector<StateKind>{StateKind::Tau2, StateKind::Tau3}));
    EXPECT_EQ(c.mle_config().kl_tol, 1e-12);

    std::stringstream unknown("runz = 5\n");
    EXPECT_THROW(c.load(unknown), ConfigError);
    std::stringstream no_eq("runs 5\n");
    EXPECT_THROW(c.load(no_eq), ConfigError);
    EXPECT_THROW(c.set("runs", "-1"), ConfigError);
    EXPECT_THROW(c.set("runs", "1.5"), ConfigError);
    EXPECT_THROW(c.set("n", "abc"), ConfigError);
    EXPECT_THROW(c.set("states", "tau9"), ConfigError);
    EXPECT_THROW(c.set("methods", "LIN"), ConfigError);
    EXPECT_THROW(c.set("output_dir", " "), ConfigError);
    EXPECT_THROW(c.get("nope"), ConfigError);
    EXPECT_THROW(c.load_file("/nonexistent/config.txt"), ConfigError);
}

}  // namespace
}  // namespace ditomo

// Copyright 2026 The purify Authors
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

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "purify/basin.hpp"
#include "purify/fano.hpp"

namespace purify {
namespace {

using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "purify");
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir {
   public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("purify_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::filesystem::remove_all(path_);
    }
    std::filesystem::path operator/(const std::string &name) const {
        return path_ / name;
    }

   private:
    std::filesystem::path path_;
};

DensityMatrix2Q fano_state(const json &values) {
    FanoVector v;
    for (int k = 0; k < 16; k++) {
        v.r[k] = values.at(k).get<double>();
    }
    return from_fano(v);
}

TEST(CliIterate, BellFixedPoint) {
    Result r = run_cli({"iterate", "--zeta", "1+0i", "--steps", "3"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 3u);
    for (int i = 0; i < 3; i++) {
        EXPECT_EQ(doc[i]["step"], i + 1);
        EXPECT_EQ(doc[i]["representation"], "amplitudes");
        EXPECT_EQ(doc[i]["state"].size(), 8u);
        EXPECT_NEAR(doc[i]["entropy"].get<double>(), 1.0, 1e-14);
        EXPECT_NEAR(doc[i]["purity"].get<double>(), 1.0, 1e-14);
    }
}

TEST(CliIterate, SeparableCycleAlternates) {
    Result r = run_cli({"iterate", "--zeta", "0+0i", "--steps", "2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 2u);
    EXPECT_EQ(doc[0]["entropy"].get<double>(), 0.0);
    EXPECT_EQ(doc[1]["entropy"].get<double>(), 0.0);
    std::vector<double> plus = doc[0]["state"];
    std::vector<double> zero = doc[1]["state"];
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(plus[2 * i], 0.5, 1e-15);
        EXPECT_NEAR(zero[2 * i], i == 0 ? 1.0 : 0.0, 1e-15);
    }
}

TEST(CliIterate, NoisyTrajectoryEndsOnAnAttractor) {
    Result r = run_cli({"iterate", "--zeta", "0.5+0i", "--lambda", "0.75", "--steps", "50"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 50u);
    EXPECT_EQ(doc.back()["representation"], "fano");
    DensityMatrix2Q last = fano_state(doc.back()["state"]);
    double best = 1.0;
    for (const auto &target : default_targets(0.75).targets) {
        for (const auto &m : target.members) {
            best = std::min(best, trace_distance(last, m));
        }
    }
    EXPECT_LT(best, 1e-3);
}

TEST(CliIterate, InfinityAndFileOutput) {
    TempDir dir;
    Result r = run_cli({"iterate", "--zeta", "inf", "--steps", "1", "--out", (dir / "t.json").string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    json doc = json::parse(read_file(dir / "t.json"));
    ASSERT_EQ(doc.size(), 1u);
    EXPECT_NEAR(doc[0]["state"][0].get<double>(), 0.5, 1e-15);
}

TEST(CliBasin, SingleCellSummary) {
    Result r = run_cli({"basin", "--viewport", "0.5", "1.5", "-0.5", "0.5", "--resolution", "1"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(r.out, "cells=1 bell=1 separable=0 mixed=0 unresolved=0\n");
}

TEST(CliBasin, WritesPpmAndCsv) {
    TempDir dir;
    Result r = run_cli({"basin", "--width", "6", "--height", "4", "--ppm", (dir / "b.ppm").string(), "--csv",
                        (dir / "b.csv").string(), "--threads", "2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::string ppm = read_file(dir / "b.ppm");
    EXPECT_EQ(ppm.substr(0, 11), "P6\n6 4\n255\n");
    EXPECT_EQ(ppm.size(), 11u + 6 * 4 * 3);
    GridSpec spec;
    spec.width = 6;
    spec.height = 4;
    EXPECT_EQ(ppm, render_ppm(compute_basin(spec)));
    std::string csv = read_file(dir / "b.csv");
    EXPECT_EQ(csv.substr(0, 18), "re,im,label,steps\n");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 25);
}

TEST(CliBasin, MixedSummaryCountsAllCells) {
    Result r = run_cli({"basin", "--resolution", "24", "--lambda", "0.75"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(r.out.substr(0, 10), "cells=576 ");
    EXPECT_EQ(r.out.find("mixed=0 "), std::string::npos);
}

TEST(CliBasin, ProgressGoesToStderr) {
    Result r = run_cli({"basin", "--resolution", "4", "--progress"});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.err.find("100%"), std::string::npos);
    EXPECT_EQ(r.out.find('%'), std::string::npos);
}

TEST(CliCycles, PureSeeds) {
    Result r = run_cli({"cycles", "--lambda", "1", "--seeds", "32"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    std::set<std::string> kinds;
    for (const auto &c : doc["cycles"]) {
        kinds.insert(c["kind"].get<std::string>());
        EXPECT_TRUE(c["stable"].get<bool>());
        EXPECT_EQ(c["eigenvalue_magnitudes"].size(), 15u);
        EXPECT_EQ(c["states_fano"].size(), c["period"].get<size_t>());
    }
    EXPECT_EQ(kinds, (std::set<std::string>{"bell", "separable"}));
}

TEST(CliCycles, MixedSeedsReportPartnerDiagnostics) {
    Result r = run_cli({"cycles", "--lambda", "0.3", "0.5", "--seeds", "16"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    int mixed = 0;
    for (const auto &c : doc["cycles"]) {
        if (c["kind"] == "mixed") {
            mixed++;
            EXPECT_EQ(c["period"], 2);
            EXPECT_TRUE(c["stable"].get<bool>());
            const json &d = c["partner_diagnostics"];
            EXPECT_LT(d["distance_to_rho1"].get<double>(), 1e-8);
            EXPECT_NEAR(d["distance_to_incoherent_rho2"].get<double>(), 0.25, 1e-8);
        }
    }
    EXPECT_EQ(mixed, 1);
}

TEST(CliCycles, IncludeUnstableAddsMaximallyMixedSeed) {
    Result r = run_cli({"cycles", "--lambda", "1", "--seeds", "4", "--include-unstable"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    bool found = false;
    for (const auto &c : doc["cycles"]) {
        found = found || c["kind"] == "maximally_mixed";
    }
    EXPECT_TRUE(found);
}

TEST(CliCycles, DeterministicBytes) {
    std::vector<std::string> args = {"cycles", "--lambda", "0.4", "0.9", "--seeds", "8", "--seed", "5"};
    Result a = run_cli(args);
    args.insert(args.end(), {"--threads", "3"});
    Result b = run_cli(args);
    ASSERT_EQ(a.code, cli::kOk);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliConstants, ValuesAndResiduals) {
    Result r = run_cli({"constants"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    json doc = json::parse(r.out);
    EXPECT_NEAR(doc["zeta_A"].get<double>(), 0.5436890127, 1e-10);
    EXPECT_NEAR(doc["zeta_B"].get<double>(), 1.8392867552, 1e-10);
    EXPECT_NEAR(doc["zeta_C"].get<double>(), 0.475, 0.005);
    EXPECT_LT(std::abs(doc["residuals"]["zeta_A_cubic"].get<double>()), 1e-12);
    EXPECT_LT(std::abs(doc["residuals"]["f_zeta_B_plus_zeta_A"].get<double>()), 1e-10);
    EXPECT_LT(std::abs(doc["residuals"]["zeta_C_quartic"].get<double>()), 1e-10);
}

TEST(CliOracleCheck, Passes) {
    for (std::string kind : {"pure", "mixed", "adversarial"}) {
        Result r = run_cli({"oracle-check", "--samples", "1000", "--kind", kind});
        EXPECT_EQ(r.code, cli::kOk) << r.out;
        EXPECT_NE(r.out.find("PASS"), std::string::npos);
        EXPECT_EQ(r.out.find("nan"), std::string::npos);
    }
}

TEST(CliProbe, SeededOutput) {
    std::vector<std::string> args = {"probe", "--zeta", "0.5436890127", "--radius", "1e-3", "--samples", "64",
                                     "--seed", "3"};
    Result a = run_cli(args);
    Result b = run_cli(args);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    json doc = json::parse(a.out);
    EXPECT_GE(doc["distinct_labels"].get<int>(), 2);
}

TEST(CliExitCodes, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"iterate"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"iterate", "--zeta", "1+"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"iterate", "--zeta", "1", "--lambda", "1.5"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"iterate", "--zeta", "1", "--steps", "-2"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"basin", "--viewport", "1", "0", "-1", "1"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"basin", "--resolution", "0"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"probe", "--zeta", "inf"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"oracle-check", "--kind", "weird"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(CliExitCodes, IoError) {
    Result r = run_cli({"constants", "--out", "/nonexistent-dir/for/sure/c.json"});
    EXPECT_EQ(r.code, cli::kIoError);
    EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

}  // namespace
}  // namespace purify

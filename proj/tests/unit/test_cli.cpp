// Copyright 2026 The qprice Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qprice/cli.hpp"

using namespace qprice;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qprice_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static Result run(std::vector<std::string> args) {
        args.insert(args.begin(), "qprice");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(int(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    fs::path dir_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& header) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool inside = false;
    while (std::getline(in, line)) {
        if (line == header) {
            inside = true;
            continue;
        }
        if (!inside) continue;
        if (line.empty() || line[0] == '#') break;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// F^{-1}[delta_m] as custom re/im arrays.
std::string owner_eigenstate_scenario(std::size_t size, std::size_t m, const std::string& evolution) {
    std::vector<double> re(size), im(size);
    for (std::size_t n = 0; n < size; ++n) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * double(m * n % size) / double(size));
        re[n] = z.real(), im[n] = z.imag();
    }
    nlohmann::json j = {{"N", size}, {"state", {{"type", "custom"}, {"re", re}, {"im", im}}}};
    j["evolution"] = nlohmann::json::parse(evolution);
    return j.dump();
}

} // namespace

TEST_F(CliTest, StateDeltaOwnerColumnIsUniform) {
    const auto cfg = write("s.json", R"({"N": 21, "state": {"type": "delta", "m": 7}})");
    const Result r = run({"state", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out, cli::kDistributionsHeader);
    ASSERT_EQ(rows.size(), 21u);
    for (const auto& row : rows) {
        EXPECT_EQ(row[4].substr(0, 14), "0.047619047619");
        EXPECT_EQ(row[3], row[2] == "7" ? "1.00000000000000" : "0.00000000000000");
    }
    EXPECT_NE(r.out.find(cli::kSummaryHeader), std::string::npos);
    EXPECT_NE(r.err.find("state: N=21"), std::string::npos);
}

TEST_F(CliTest, StateGaussianNearlySaturates) {
    const auto cfg = write("s.json", R"({"N": 21, "state": {"type": "gaussian", "kappa": 1, "n0": 10, "k0": 10}})");
    const Result r = run({"-q", "state", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.err.empty());
    const auto summary = csv_rows(r.out, cli::kSummaryHeader);
    ASSERT_EQ(summary.size(), 1u);
    const double product = std::stod(summary[0][6]), bound = std::stod(summary[0][7]);
    EXPECT_LT(product - bound, 1e-6);
    EXPECT_GE(product, bound - 1e-9);
}

TEST_F(CliTest, StateCustomAllOnes) {
    const auto cfg = write("s.json", R"({"N": 4, "state": {"type": "custom", "re": [1, 1, 1, 1]}})");
    const Result r = run({"state", "--config", cfg, "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& row : csv_rows(r.out, cli::kDistributionsHeader)) EXPECT_EQ(row[3], "0.250000000000000");
}

TEST_F(CliTest, StateToFilesSplitsSummary) {
    const std::string out = (dir_ / "dist.csv").string();
    const auto cfg = write("s.json", R"({"N": 5, "state": {"type": "delta", "m": 1}, "output": {"path": ")" + out +
                                         R"("}})");
    const Result r = run({"state", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(csv_rows(read_file(out), cli::kDistributionsHeader).size(), 5u);
    EXPECT_EQ(csv_rows(read_file(dir_ / "dist_summary.csv"), cli::kSummaryHeader).size(), 1u);
    EXPECT_EQ(cli::summary_path("a/b.c/run"), "a/b.c/run_summary");
    EXPECT_EQ(cli::summary_path("x.csv"), "x_summary.csv");
}

TEST_F(CliTest, UncertaintyOnSaturatingState) {
    // e^{i pi n} Upsilon_1(n - 10), N = 21, as custom amplitudes
    const auto u = upsilon_state(ThetaParams(1.0, 21));
    std::vector<double> re(21), im(21);
    for (std::size_t n = 0; n < 21; ++n) {
        const Complex z = std::polar(1.0, std::numbers::pi * double(n)) * u[(n + 11) % 21];
        re[n] = z.real(), im[n] = z.imag();
    }
    const nlohmann::json j = {{"N", 21}, {"state", {{"type", "custom"}, {"re", re}, {"im", im}}}};
    const auto cfg = write("u.json", j.dump());
    const Result r = run({"uncertainty", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out, "mean_price,mean_owner,delta_price,delta_owner,product,bound,saturated");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(std::stod(rows[0][4]), 1.6711269024646, 1e-9);
    EXPECT_NEAR(std::stod(rows[0][5]), 1.6711269024649, 1e-9);
    EXPECT_EQ(rows[0][6], "true");
}

TEST_F(CliTest, SpectrumRowEleven) {
    const Result r = run({"spectrum", "--n", "21"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out, "index,imag_part");
    ASSERT_EQ(rows.size(), 21u);
    EXPECT_EQ(rows[10][0], "11");
    EXPECT_EQ(rows[10][1].substr(0, 14), "3.342253804929");
}

TEST_F(CliTest, SpectrumSmallAndLarge) {
    const Result two = run({"spectrum", "--n", "2", "--json"});
    ASSERT_EQ(two.code, 0);
    const auto j = nlohmann::json::parse(two.out);
    EXPECT_EQ(j["N"], 2);
    EXPECT_NEAR(j["imag_parts"][0].get<double>() + j["imag_parts"][1].get<double>(), 0.0, 1e-12);

    const Result big = run({"spectrum", "--n", "101"});
    ASSERT_EQ(big.code, 0);
    int near = 0;
    for (const auto& row : csv_rows(big.out, "index,imag_part")) near += std::abs(std::stod(row[1]) - 16.07464925228143) < 1e-3;
    EXPECT_GE(near, 70);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({"spectrum", "--n", "1"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 1);
    EXPECT_EQ(run({"state"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
    const auto bad = write("bad.json", R"({"N": 21, "state": {"type": "delta", "m": 21}})");
    const Result r = run({"state", "--config", bad});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("state.m"), std::string::npos);
    const auto dt0 = write("dt0.json", R"({"N": 21, "state": {"type": "delta", "m": 2},
        "evolution": {"mu": 1, "dt": 0, "steps": 10, "potential": {"type": "zero"}}})");
    const Result e = run({"evolve", "--config", dt0});
    EXPECT_EQ(e.code, 1);
    EXPECT_TRUE(e.out.empty());
    const auto noevo = write("noevo.json", R"({"N": 21, "state": {"type": "delta", "m": 2}})");
    EXPECT_EQ(run({"evolve", "--config", noevo}).code, 1);
}

TEST_F(CliTest, IoErrors) {
    EXPECT_EQ(run({"state", "--config", (dir_ / "missing.json").string()}).code, 3);
    const auto cfg = write("s.json", R"({"N": 5, "state": {"type": "delta", "m": 1},
        "output": {"path": "/nonexistent/dir/out.csv"}})");
    EXPECT_EQ(run({"state", "--config", cfg}).code, 3);
}

TEST_F(CliTest, EvolveOwnerEigenstateIsStationary) {
    const auto cfg = write("e.json", owner_eigenstate_scenario(
                                         21, 3, R"({"mu": 1, "dt": 0.01, "steps": 1000, "potential": {"type": "zero"}})"));
    const Result r = run({"-q", "evolve", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out, cli::kDistributionsHeader);
    ASSERT_EQ(rows.size(), 1001u * 21u);
    for (const auto& row : rows) EXPECT_NEAR(std::stod(row[4]), row[2] == "3" ? 1.0 : 0.0, 1e-10);
}

TEST_F(CliTest, EvolveHarmonicOscillates) {
    const auto cfg = write("h.json", R"({"N": 21, "state": {"type": "gaussian", "kappa": 1, "n0": 4, "k0": 0},
        "evolution": {"mu": 1, "dt": 0.01, "steps": 3000, "potential": {"type": "harmonic", "center": 10, "omega": 0.1}},
        "output": {"record_every": 50}})");
    const Result r = run({"evolve", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto summary = csv_rows(r.out, cli::kSummaryHeader);
    ASSERT_EQ(summary.size(), 61u);
    double lo = 1e9, hi = -1e9, worst = 0.0;
    for (const auto& row : summary) {
        lo = std::min(lo, std::stod(row[2]));
        hi = std::max(hi, std::stod(row[2]));
        worst = std::max(worst, std::stod(row[8]));
    }
    EXPECT_GT(hi - lo, 1.0);
    EXPECT_LE(worst, 1e-8);
    EXPECT_NE(r.out.find("# complete, records=61"), std::string::npos);

    // probability columns sum to 1 per row group
    std::map<std::string, std::pair<double, double>> sums;
    for (const auto& row : csv_rows(r.out, cli::kDistributionsHeader)) {
        sums[row[0]].first += std::stod(row[3]);
        sums[row[0]].second += std::stod(row[4]);
    }
    for (const auto& [step, s] : sums) {
        EXPECT_NEAR(s.first, 1.0, 1e-9) << step;
        EXPECT_NEAR(s.second, 1.0, 1e-9) << step;
    }
}

TEST_F(CliTest, EvolveJsonParses) {
    const auto cfg = write("j.json", R"({"N": 9, "state": {"type": "delta", "m": 4},
        "evolution": {"mu": 1, "dt": 0.05, "steps": 7, "potential": {"type": "linear", "slope": 0.1}},
        "output": {"format": "json", "record_every": 3}})");
    const Result r = run({"evolve", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["records"].size(), 4u);
    EXPECT_EQ(j["records"][3]["step"], 7);
    EXPECT_EQ(j["status"], "complete");
    EXPECT_EQ(j["truncated"], false);
}

TEST_F(CliTest, Deterministic) {
    const auto cfg = write("d.json", R"({"N": 21, "state": {"type": "gaussian", "kappa": 0.6667, "n0": 7, "k0": 14},
        "evolution": {"mu": 1, "dt": 0.01, "steps": 200, "potential": {"type": "harmonic", "center": 10, "omega": 0.1}},
        "output": {"record_every": 20}})");
    const Result a = run({"evolve", "--config", cfg});
    const Result b = run({"evolve", "--config", cfg});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, WriterTruncationMarker) {
    std::ostringstream out, err;
    cli::Context ctx{out, err, true};
    OutputSpec spec;
    {
        cli::detail::RecordWriter w(spec, ctx);
        const auto s = delta_state(0, 2);
        w.add({0, 0.0, s, 0, 0, 0, 0, 0, 0, 0});
        w.close("truncated at step 1 t=0.1 norm_error=2e-8", 2e-8, true);
    }
    EXPECT_NE(out.str().find("# truncated at step 1"), std::string::npos);
    EXPECT_NE(out.str().find("records=1"), std::string::npos);

    std::ostringstream jout;
    cli::Context jctx{jout, err, true};
    spec.format = OutputFormat::json;
    cli::detail::RecordWriter jw(spec, jctx);
    jw.close("truncated", 1.0, true);
    const auto j = nlohmann::json::parse(jout.str());
    EXPECT_EQ(j["truncated"], true);
    EXPECT_TRUE(j["records"].empty());
}

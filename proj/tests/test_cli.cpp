/*
 * Copyright 2026 The projpair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "projpair/cli.hpp"
#include "projpair/errors.hpp"
#include "projpair/generators.hpp"
#include "projpair/io.hpp"
#include "test_util.hpp"

namespace projpair {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("projpair_cli_") + info->name() + "_" +
                                            std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::vector<std::string>& args) {
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    json error_of() const { return json::parse(err_.str()); }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST(IndexSet, Parsing) {
    EXPECT_EQ(cli::parse_index_set("0:4"), (std::vector<Index>{0, 1, 2, 3}));
    EXPECT_EQ(cli::parse_index_set("1,5,7"), (std::vector<Index>{1, 5, 7}));
    EXPECT_EQ(cli::parse_index_set("0:2,9"), (std::vector<Index>{0, 1, 9}));
    EXPECT_TRUE(cli::parse_index_set("").empty());
    EXPECT_THROW(cli::parse_index_set("4:2"), InputError);
    EXPECT_THROW(cli::parse_index_set("a:2"), InputError);
}

TEST(MatrixFile, LosslessRoundTrip) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = testing::gaussian(5, 3, rng) * 1e-3 + testing::gaussian(5, 3, rng) * 1e5;
        const json back = json::parse(matrix_to_json(m).dump());
        EXPECT_EQ(matrix_from_json(back, "m"), m);
    }
    // Bare numbers are read as real entries.
    const json real = {{"rows", 1}, {"cols", 2}, {"entries", {1.5, -2}}};
    const ComplexMatrix r = matrix_from_json(real, "m");
    EXPECT_EQ(r(0, 0), Complex(1.5, 0.0));
    EXPECT_EQ(r(0, 1), Complex(-2.0, 0.0));
}

TEST_F(CliTest, GenerateAnalyzeHardy) {
    ASSERT_EQ(run({"generate", "hardy", "--neg", "3", "--pos", "3", "--a", "1", "--c", "0", "--out", path("h.json")}), 0)
        << err_.str();
    ASSERT_EQ(run({"analyze", "--pair", path("h.json"), "--out", path("r.json"), "--sv-csv", path("sv.csv")}), 0)
        << err_.str();
    const json r = json::parse(slurp(path("r.json")));
    EXPECT_EQ(r["schema"], kSchema);
    EXPECT_EQ(r["dim"], 7);
    for (const char* key : {"validation", "block_form", "eigendata", "halmos", "crimmins", "qd", "buckholtz", "class"}) {
        EXPECT_TRUE(r.contains(key)) << key;
    }
    EXPECT_EQ(r["class"]["index_estimate"], 1);
    EXPECT_EQ(r["class"]["evidence"], "rank-bounded");
    EXPECT_EQ(r["buckholtz"]["consistent"], true);
    const std::string csv = slurp(path("sv.csv"));
    EXPECT_EQ(csv.rfind("index,singular_value\n", 0), 0u);
}

TEST_F(CliTest, GenerateFourierMatchesLibrary) {
    ASSERT_EQ(run({"generate", "fourier", "--n", "16", "--set-i", "0:4", "--set-j", "0:4", "--out", path("f.json")}), 0)
        << err_.str();
    const LoadedPair lp = pair_from_json(json::parse(slurp(path("f.json"))));
    const ProjectionPair direct = gen_fourier(16, {0, 1, 2, 3}, {0, 1, 2, 3});
    EXPECT_EQ(lp.pair.p().matrix(), direct.p().matrix());
    EXPECT_EQ(lp.pair.q().matrix(), direct.q().matrix());
}

TEST_F(CliTest, GenerateAnglesAndEk) {
    ASSERT_EQ(run({"generate", "angles", "--dims", "1,1,0,0", "--angles", "0.4:2,1.1", "--seed", "3", "--out",
                   path("a.json")}),
              0)
        << err_.str();
    EXPECT_EQ(pair_from_json(json::parse(slurp(path("a.json")))).pair.dim(), 2 + 2 * 3);
    write("k.json", matrix_to_json(testing::diag({1.0})).dump());
    ASSERT_EQ(run({"generate", "ek", "--k", path("k.json"), "--out", path("e.json")}), 0) << err_.str();
    EXPECT_EQ(pair_from_json(json::parse(slurp(path("e.json")))).pair.dim(), 2);
}

TEST_F(CliTest, AnalyzeIsDeterministic) {
    ASSERT_EQ(run({"generate", "angles", "--dims", "2,1,1,0", "--angles", "0.3,0.9", "--seed", "9", "--out",
                   path("a.json")}),
              0);
    ASSERT_EQ(run({"analyze", "--pair", path("a.json"), "--out", "-"}), 0) << err_.str();
    const std::string first = out_.str();
    ASSERT_EQ(run({"analyze", "--pair", path("a.json"), "--out", "-"}), 0);
    EXPECT_EQ(out_.str(), first);
    EXPECT_FALSE(first.empty());
}

TEST_F(CliTest, ClassifyFamilies) {
    write("hardy.json", R"({"kind": "hardy", "a": 0, "c": 2, "sizes": [4, 5, 6, 7]})");
    ASSERT_EQ(run({"classify", "--family", path("hardy.json"), "--out", path("v.json")}), 0) << err_.str();
    json v = json::parse(slurp(path("v.json")));
    EXPECT_EQ(v["verdict"], "C1");
    EXPECT_EQ(v["index"], -2);
    EXPECT_EQ(v["index_estimate"]["stabilized"], true);

    write("fourier.json", R"({"kind": "fourier", "sizes": [64, 100, 144]})");
    ASSERT_EQ(run({"classify", "--family", path("fourier.json"), "--serial", "--out", path("w.json")}), 0) << err_.str();
    v = json::parse(slurp(path("w.json")));
    EXPECT_EQ(v["verdict"], "CInfinity");
    EXPECT_EQ(v["index_estimate"]["stabilized"], false);
}

TEST_F(CliTest, ClassifyCustomFamilyRelativePaths) {
    for (int n : {1, 2, 3}) {
        ASSERT_EQ(run({"generate", "hardy", "--neg", std::to_string(n + 2), "--pos", std::to_string(n + 2), "--a", "1",
                       "--c", "0", "--out", path("p" + std::to_string(n) + ".json")}),
                  0);
    }
    write("custom.json", R"({"kind": "custom", "sizes": [1, 2, 3], "pairs": ["p1.json", "p2.json", "p3.json"]})");
    ASSERT_EQ(run({"classify", "--family", path("custom.json"), "--out", "-"}), 0) << err_.str();
    const json v = json::parse(out_.str());
    EXPECT_EQ(v["verdict"], "C1");
    EXPECT_EQ(v["index"], 1);
}

TEST_F(CliTest, GeodesicAndProbeCsv) {
    const ComplexMatrix p = testing::diag({1.0, 0.0});
    write("q0.json", matrix_to_json(testing::rotation_projection(0.1)).dump());
    write("q1.json", matrix_to_json(testing::rotation_projection(0.6)).dump());
    write("p.json", matrix_to_json(p).dump());
    ASSERT_EQ(run({"geodesic", "--q0", path("q0.json"), "--q1", path("q1.json"), "--steps", "4", "--out", path("g.csv")}),
              0)
        << err_.str();
    std::istringstream g(slurp(path("g.csv")));
    std::string line;
    std::getline(g, line);
    EXPECT_EQ(line, "t,endpoint_residual,norm_x,sv_count_above_tau");
    int rows = 0;
    while (std::getline(g, line)) ++rows;
    EXPECT_EQ(rows, 5);

    ASSERT_EQ(run({"probe", "--p", path("p.json"), "--q0", path("q0.json"), "--q1", path("q1.json"), "--out", "-"}), 0)
        << err_.str();
    std::istringstream pr(out_.str());
    std::getline(pr, line);
    EXPECT_EQ(line, "t,sv_count_above_tau,max_sv,frobenius_sq,step_jump");
    rows = 0;
    while (std::getline(pr, line)) ++rows;
    EXPECT_EQ(rows, 22);
}

TEST_F(CliTest, GeodesicAcceptsPairFileSide) {
    ASSERT_EQ(run({"generate", "hardy", "--neg", "2", "--pos", "2", "--a", "0", "--c", "0", "--out", path("h.json")}), 0);
    EXPECT_EQ(run({"geodesic", "--q0", path("h.json"), "--q1", path("h.json"), "--out", "-"}), 0) << err_.str();
}

TEST_F(CliTest, MalformedInputs) {
    // Missing file.
    EXPECT_EQ(run({"analyze", "--pair", path("nope.json"), "--out", "-"}), 1);
    EXPECT_EQ(error_of()["error"]["exit_code"], 1);
    // Malformed JSON reports the byte offset.
    write("bad.json", "{\"p\": [1, 2,,]}");
    EXPECT_EQ(run({"analyze", "--pair", path("bad.json"), "--out", "-"}), 1);
    EXPECT_NE(error_of()["error"]["message"].get<std::string>().find("byte"), std::string::npos);
    // Wrong entry count.
    write("count.json", R"({"p": {"rows": 2, "cols": 2, "entries": [1, 0, 0]}, "q": {"rows": 2, "cols": 2, "entries": [1, 0, 0, 0]}})");
    EXPECT_EQ(run({"analyze", "--pair", path("count.json"), "--out", "-"}), 1);
    // Not square.
    write("rect.json", R"({"p": {"rows": 1, "cols": 2, "entries": [1, 0]}, "q": {"rows": 1, "cols": 2, "entries": [1, 0]}})");
    EXPECT_EQ(run({"analyze", "--pair", path("rect.json"), "--out", "-"}), 1);
    // Not a projection.
    write("np.json", R"({"p": {"rows": 1, "cols": 1, "entries": [2]}, "q": {"rows": 1, "cols": 1, "entries": [1]}})");
    EXPECT_EQ(run({"analyze", "--pair", path("np.json"), "--out", "-"}), 1);
    // Dimension mismatch.
    write("dm.json", R"({"p": {"rows": 1, "cols": 1, "entries": [1]}, "q": {"rows": 2, "cols": 2, "entries": [1, 0, 0, 0]}})");
    EXPECT_EQ(run({"analyze", "--pair", path("dm.json"), "--out", "-"}), 1);
    // Generator arguments.
    EXPECT_EQ(run({"generate", "fourier", "--n", "4", "--set-i", "0:9", "--set-j", "0", "--out", path("x.json")}), 1);
    EXPECT_EQ(run({"generate", "hardy", "--neg", "1", "--pos", "1", "--a", "5", "--c", "0", "--out", path("x.json")}), 1);
    EXPECT_EQ(run({"generate", "angles", "--dims", "1,1", "--out", path("x.json")}), 1);
    EXPECT_EQ(run({"generate", "banana", "--out", path("x.json")}), 1);
    // Families.
    write("fam.json", R"({"kind": "hardy", "a": 1, "c": 0, "sizes": [4, 5]})");
    EXPECT_EQ(run({"classify", "--family", path("fam.json"), "--out", "-"}), 1);
    write("fam2.json", R"({"kind": "mystery", "sizes": [1, 2, 3]})");
    EXPECT_EQ(run({"classify", "--family", path("fam2.json"), "--out", "-"}), 1);
    // Command line.
    EXPECT_EQ(run({}), 1);
    EXPECT_EQ(run({"frobnicate"}), 1);
    EXPECT_EQ(run({"analyze"}), 1);
    EXPECT_EQ(run({"classify", "--family", path("fam.json"), "--window", "0", "--out", "-"}), 1);
    EXPECT_FALSE(fs::exists(path("x.json")));
}

TEST_F(CliTest, NumericalFailureExitCode) {
    write("q0.json", matrix_to_json(testing::diag({1.0, 0.0})).dump());
    write("q1.json", matrix_to_json(testing::diag({0.0, 1.0})).dump());
    EXPECT_EQ(run({"geodesic", "--q0", path("q0.json"), "--q1", path("q1.json"), "--out", "-"}), 2);
    const json e = error_of();
    EXPECT_EQ(e["error"]["exit_code"], 2);
}

#ifdef PROJPAIR_CLI_PATH
TEST_F(CliTest, BinaryExitCodes) {
    const std::string bin = PROJPAIR_CLI_PATH;
    auto code = [](const std::string& cmd) {
        const int st = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    };
    EXPECT_EQ(code(bin + " generate hardy --neg 2 --pos 2 --a 1 --c 0 --out " + path("h.json")), 0);
    EXPECT_EQ(code(bin + " analyze --pair " + path("h.json") + " --out " + path("r.json")), 0);
    EXPECT_EQ(code(bin + " analyze --pair " + path("missing.json") + " --out -"), 1);
    EXPECT_EQ(code(bin + " --help"), 0);
}
#endif

}  // namespace
}  // namespace projpair

// Copyright 2026 The gpt-kit Authors
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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

#include "gptkit/io.hpp"
#include "gptkit/models.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result gpt_kit(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = gptkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("gpt_kit_cli_test_" + name);
}

}  // namespace

TEST(cli, tensor_equals_min) {
    ASSERT_EQ(gpt_kit({"tensor", "--max", "classical:2", "classical:2", "--check-equals-min"}).code, 0);
    ASSERT_EQ(gpt_kit({"tensor", "--max", "squit", "squit", "--check-equals-min"}).code, 2);
    auto r = gpt_kit({"tensor", "--min", "squit", "squit"});
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    ASSERT_EQ(j["composite"]["generators"].size(), 16u);
    ASSERT_EQ(j["a"]["unit"], json::array({"0", "0", "1"}));
}

TEST(cli, teleport_construct_squit) {
    auto r = gpt_kit({"teleport", "construct", "--model", "squit", "--group", "z4"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    ASSERT_EQ(j["outcomes"].size(), 4u);
    for (const auto& o : j["outcomes"]) {
        ASSERT_TRUE(o["certificate"]["verdict"].get<bool>());
        ASSERT_EQ(o["certificate"]["constant"], "1/4");
    }
    ASSERT_EQ(j["model"]["generators"].size(), 4u);
}

TEST(cli, teleport_construct_float_polygon) {
    auto r = gpt_kit({"teleport", "construct", "--model", "polygon:5", "--group", "z5"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    ASSERT_EQ(j["outcomes"].size(), 5u);
    ASSERT_TRUE(j["model"]["unit"][2].is_number());
}

TEST(cli, teleport_verify) {
    ASSERT_EQ(gpt_kit({"teleport", "verify", "--model", "squit", "--group", "z4", "--outcome", "2"}).code, 0);
    // Product effect: a rank-one mu cannot be proportional to an isomorphism.
    auto r = gpt_kit({"teleport", "verify", "--model", "squit", "--effect", "0,0,0,0,0,0,0,0,1/4", "--state",
                      "1/2,-1/2,0,1/2,1/2,0,0,0,1"});
    ASSERT_EQ(r.code, 2) << r.err;
    ASSERT_FALSE(json::parse(r.out)["certificate"]["verdict"].get<bool>());
    auto classical = gpt_kit({"teleport", "verify", "--model", "classical:2", "--effect", "1/2,0,0,1/2", "--state",
                              "1/2,0,0,1/2"});
    ASSERT_EQ(classical.code, 0) << classical.err;
    json j = json::parse(classical.out);
    ASSERT_TRUE(j["correction_free"].get<bool>());
    ASSERT_TRUE(j["self_duality_witness"].get<bool>());
}

TEST(cli, bitcommit_bound_csv) {
    auto r = gpt_kit({"bitcommit", "bound", "--model", "squit", "--n", "20", "--runs", "2000"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line, last;
    std::getline(lines, line);
    ASSERT_EQ(line, "n,analytic_bound,empirical_rate,stderr");
    int rows = 0;
    while (std::getline(lines, line)) {
        last = line;
        ++rows;
    }
    ASSERT_EQ(rows, 20);
    ASSERT_EQ(last.substr(0, 3), "20,");
    double bound = std::stod(last.substr(3, last.find(',', 3) - 3));
    ASSERT_DOUBLE_EQ(bound, std::pow(0.75, 20));

    auto j = gpt_kit({"bitcommit", "bound", "--model", "squit", "--n", "2", "--format", "json"});
    ASSERT_EQ(json::parse(j.out)["per_round"], "3/4");
}

TEST(cli, bitcommit_run_and_tamper) {
    auto honest = gpt_kit({"bitcommit", "run", "--model", "squit", "--bit", "1", "--n", "6", "--seed", "5"});
    ASSERT_EQ(honest.code, 0) << honest.err;
    ASSERT_EQ(json::parse(honest.out)["verdict"], "accept");
    auto forged = gpt_kit({"bitcommit", "run", "--model", "squit", "--n", "6", "--seed", "5", "--tamper"});
    ASSERT_EQ(forged.code, 2);
    ASSERT_EQ(gpt_kit({"bitcommit", "decompose", "--model", "classical:3"}).code, 1);
}

TEST(cli, clone_broadcast_disturb) {
    ASSERT_EQ(gpt_kit({"clone", "check", "--model", "squit", "--state", "1,1,1", "--state", "-1,-1,1"}).code, 0);
    ASSERT_EQ(gpt_kit({"clone", "check", "--model", "squit", "--state", "1,1,1", "--state", "-1,1,1", "--state",
                       "-1,-1,1"})
                  .code,
              2);
    ASSERT_EQ(gpt_kit({"broadcast", "check", "--model", "squit", "--state", "1,1,1", "--state", "-1,1,1", "--state",
                       "-1,-1,1"})
                  .code,
              2);
    auto seg = gpt_kit({"broadcast", "check", "--model", "squit", "--state", "1,1,1", "--state", "-1,-1,1",
                        "--state", "0,0,1"});
    ASSERT_EQ(seg.code, 0);
    ASSERT_EQ(json::parse(seg.out)["simplex"].size(), 2u);
    auto capped = gpt_kit({"broadcast", "check", "--model", "squit", "--state", "1,1,1", "--state", "-1,1,1",
                           "--state", "-1,-1,1", "--max-candidates", "2"});
    ASSERT_EQ(capped.code, 1);
    ASSERT_NE(capped.err.find("search cap exceeded"), std::string::npos);
    ASSERT_EQ(json::parse(capped.out)["verdict"], "inconclusive");
    auto basis = gpt_kit({"disturb", "basis", "--model", "classical:3"});
    ASSERT_EQ(basis.code, 0);
    ASSERT_EQ(json::parse(basis.out)["summands"], 3);
}

TEST(cli, marginal_and_conditional) {
    auto m = gpt_kit({"marginal", "--a", "classical:2", "--b", "classical:2", "--state", "1/2,0,1/4,1/4", "--side",
                      "a"});
    ASSERT_EQ(m.code, 0) << m.err;
    ASSERT_EQ(json::parse(m.out)["marginal"], json::array({"1/2", "1/2"}));
    auto c = gpt_kit({"conditional", "--a", "classical:2", "--b", "classical:2", "--state", "1/2,0,1/4,1/4",
                      "--effect", "0,1"});
    ASSERT_EQ(c.code, 0) << c.err;
    json j = json::parse(c.out);
    ASSERT_EQ(j["probability"], "1/2");
    ASSERT_EQ(j["conditional"], json::array({"1/2", "1/2"}));
    ASSERT_EQ(gpt_kit({"marginal", "--a", "classical:2", "--b", "classical:2", "--state", "1,0,0"}).code, 1);
}

TEST(cli, errors_exit_one) {
    auto cap = gpt_kit({"tensor", "--max", "classical:5", "classical:4"});
    ASSERT_EQ(cap.code, 1);
    ASSERT_NE(cap.err.find("dimension cap exceeded"), std::string::npos);
    ASSERT_EQ(gpt_kit({"tensor", "--min", "nonsense:3", "squit"}).code, 1);
    ASSERT_EQ(gpt_kit({"frobnicate"}).code, 1);
    ASSERT_EQ(gpt_kit({"tensor", "--min", "polygon:5", "squit", "--arithmetic", "rational"}).code, 1);
    ASSERT_EQ(gpt_kit({"disturb", "basis", "--model", "squit", "--format", "csv"}).code, 1);
    ASSERT_EQ(gpt_kit({"--tol", "-1", "disturb", "basis", "--model", "squit"}).code, 1);
}

TEST(cli, float_mode_and_model_files) {
    auto r = gpt_kit({"--arithmetic", "float", "disturb", "basis", "--model", "squit"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    ASSERT_EQ(j["model"]["arithmetic"], "float");
    ASSERT_TRUE(j["basis"][0][0][0].is_number());

    auto path = temp_file("squit.json");
    {
        std::ofstream f(path);
        f << gptkit::to_json(gptkit::make_squit()).dump();
    }
    auto from_file = gpt_kit({"bitcommit", "bound", "--model", path.string(), "--n", "1", "--format", "json"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    ASSERT_EQ(json::parse(from_file.out)["per_round"], "3/4");
    std::filesystem::remove(path);
}

TEST(cli, reports_are_deterministic) {
    const std::vector<std::vector<std::string>> pipelines = {
        {"tensor", "--max", "squit", "squit"},
        {"teleport", "construct", "--model", "polygon:5", "--group", "z5"},
        {"bitcommit", "run", "--model", "squit", "--n", "9", "--seed", "77"},
        {"bitcommit", "bound", "--model", "squit", "--n", "5", "--seed", "3", "--runs", "500"},
        {"broadcast", "check", "--model", "squit", "--state", "0,0,1"},
    };
    for (const auto& p : pipelines) {
        auto a = gpt_kit(p);
        auto b = gpt_kit(p);
        ASSERT_EQ(a.out, b.out);
        ASSERT_EQ(a.code, b.code);
    }
    auto path = temp_file("out.json");
    auto direct = gpt_kit({"disturb", "basis", "--model", "squit"});
    ASSERT_EQ(gpt_kit({"--out", path.string(), "disturb", "basis", "--model", "squit"}).code, 0);
    std::ifstream f(path, std::ios::binary);
    std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    ASSERT_EQ(written, direct.out);
    std::filesystem::remove(path);
}

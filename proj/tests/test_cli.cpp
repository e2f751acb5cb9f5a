// Copyright 2026 The mirrorqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mirrorqsd/cli.hpp"

using namespace mirrorqsd;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("bounds prints JSON", "[cli]") {
    const auto r = run({"bounds", "--strategy", "mcd", "--p", "0.1", "--theta", "pi/3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["quantum"].get<double>() - 9.0 / 17.0) < 1e-12);
    CHECK(j["advantage"] == true);
}

TEST_CASE("Exit codes", "[cli]") {
    CHECK(run({}).code == 2);
    CHECK(run({"bounds", "--strategy", "xyz", "--p", "0.1", "--theta", "1"}).code == 2);
    CHECK(run({"bounds", "--strategy", "med", "--p", "0.7", "--theta", "1"}).code == 2);
    CHECK(run({"bounds", "--strategy", "med", "--p", "0.2", "--theta", "bad"}).code == 2);
    CHECK(run({"walk", "--strategy", "mcd", "--p", "0.45", "--theta", "pi/3"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("scan writes CSV to stdout", "[cli]") {
    const auto r = run({"scan", "--strategy", "med", "--p", "0.1", "0.5", "--p-count", "5",
                        "--theta", "pi/12"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 6);
}

TEST_CASE("scan reports invalid config fields", "[cli]") {
    const auto r = run({"scan", "--strategy", "med", "--p", "0.1", "0.9", "--theta", "pi/12"});
    CHECK(r.code == 2);
    CHECK(r.err.find("p_grid") != std::string::npos);
}

TEST_CASE("walk reports plates and outcome map", "[cli]") {
    const auto r = run({"walk", "--strategy", "med", "--p", "0.3", "--theta", "pi/12",
                        "--convention", "printed"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome_map"].size() == 3);
    CHECK(j["deviation_vs_realized"].get<double>() < 1e-12);
    CHECK(j["deviation_vs_optimal"].get<double>() > 0.1);
    bool found_h3 = false;
    for (const auto &plate : j["plates"]) {
        if (plate["element"] == "H3") {
            found_h3 = true;
            CHECK(std::abs(plate["angle_over_pi"].get<double>() - 0.0381) < 5e-4);
        }
    }
    CHECK(found_h3);
}

TEST_CASE("experiment and locus", "[cli]") {
    const auto dir = std::filesystem::temp_directory_path() / "mirrorqsd_cli_test";
    std::filesystem::remove_all(dir);
    const auto rec = (dir / "records.jsonl").string();
    const auto r = run({"experiment", "--strategy", "med", "--p", "0.4", "--theta", "pi/12",
                        "--photons", "1000", "--runs", "4", "--seed", "3", "--records", rec});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(rec));
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["used_runs"] == 4);

    const auto l = run({"locus", "--strategy", "med", "--theta", "pi/12"});
    REQUIRE(l.code == 0);
    const auto lj = nlohmann::json::parse(l.out);
    CHECK(std::abs(lj["root"].get<double>() - 0.3141677692349533) < 1e-8);
    std::filesystem::remove_all(dir);
}

TEST_CASE("Relative outputs resolve against the output directory", "[cli]") {
    const auto dir = std::filesystem::temp_directory_path() / "mirrorqsd_cli_env";
    std::filesystem::remove_all(dir);
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    const auto r = run({"scan", "--strategy", "mcd", "--p", "0.1", "0.5", "--p-count", "3",
                        "--theta", "pi/3", "--output", "out.csv"});
    const auto f = run({"figure", "--figure", "fig4a", "--p-count", "5", "--photons", "0"});
    ::unsetenv(kOutputDirEnv);
    CHECK(r.code == 0);
    CHECK(f.code == 0);
    CHECK(std::filesystem::exists(dir / "out.csv"));
    CHECK(std::filesystem::exists(dir / "fig4a_curves.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("The installed binary gives byte-identical scans", "[cli]") {
    const auto dir = std::filesystem::temp_directory_path() / "mirrorqsd_cli_bin";
    std::filesystem::create_directories(dir);
    const std::string base = std::string(MIRRORQSD_CLI_PATH) +
                             " scan --strategy med --p 0.3 0.5 --p-count 3 --theta pi/12"
                             " --photons 1000 --runs 3 --seed 8 --output ";
    REQUIRE(std::system((base + (dir / "a.csv").string()).c_str()) == 0);
    REQUIRE(std::system((base + (dir / "b.csv").string()).c_str()) == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK_FALSE(slurp(dir / "a.csv").empty());
    std::filesystem::remove_all(dir);
}

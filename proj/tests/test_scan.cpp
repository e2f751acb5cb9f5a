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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/scan.hpp"

using namespace mirrorqsd;
using Catch::Matchers::WithinAbs;

constexpr double kPi = std::numbers::pi;

TEST_CASE("Angle literals", "[scan]") {
    CHECK_THAT(parse_angle("pi/12"), WithinAbs(kPi / 12, 1e-16));
    CHECK_THAT(parse_angle("5pi/12"), WithinAbs(5 * kPi / 12, 1e-15));
    CHECK_THAT(parse_angle("5*pi/12"), WithinAbs(5 * kPi / 12, 1e-15));
    CHECK_THAT(parse_angle("-pi/24"), WithinAbs(-kPi / 24, 1e-16));
    CHECK_THAT(parse_angle("0.25pi"), WithinAbs(kPi / 4, 1e-16));
    CHECK_THAT(parse_angle("15deg"), WithinAbs(kPi / 12, 1e-15));
    CHECK(parse_angle("0.2618") == 0.2618);
    CHECK_THROWS_AS(parse_angle("twelve"), ConfigError);
    CHECK_THROWS_AS(parse_angle(""), ConfigError);
}

TEST_CASE("Grid axes", "[scan]") {
    const auto v = GridAxis{0.1, 0.5, 5}.values();
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 0.5);
    CHECK(GridAxis{0.3, 0.3, 1}.values() == std::vector<double>{0.3});
}

TEST_CASE("Config validation names the field", "[scan]") {
    ScanConfig c;
    c.p_grid = {0.1, 0.7, 10};
    try {
        c.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("p_grid") != std::string::npos);
    }
    c = ScanConfig{};
    c.theta_grid = {0.1, 1.6, 10};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ScanConfig{};
    c.p_grid = {0.1, 0.4, 1};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ScanConfig{};
    c.photons = 1000;
    c.runs = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("Scan rows and CSV", "[scan]") {
    ScanConfig c;
    c.p_grid = {0.1, 0.5, 3};
    c.theta_grid = {kPi / 12, kPi / 12, 1};
    const auto rows = scan(c);
    REQUIRE(rows.size() == 3);
    CHECK_THAT(rows[2].gap, WithinAbs(0.125, 1e-12));
    CHECK(rows[2].advantage);
    CHECK_FALSE(rows[0].advantage);
    CHECK_FALSE(rows[0].mc_mean.has_value());

    std::ostringstream out;
    write_csv(out, rows, c);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "p,theta,quantum,noncontextual,gap,advantage,mc_mean,mc_std,n_photons,runs,seed");
}

TEST_CASE("Scan with Monte Carlo columns is deterministic", "[scan]") {
    ScanConfig c;
    c.p_grid = {0.3, 0.4, 2};
    c.theta_grid = {kPi / 12, kPi / 12, 1};
    c.photons = 2000;
    c.runs = 5;
    c.seed = 12;
    const auto a = scan(c);
    const auto b = scan(c);
    REQUIRE(a[0].mc_mean.has_value());
    std::ostringstream sa, sb;
    write_csv(sa, a, c);
    write_csv(sb, b, c);
    CHECK(sa.str() == sb.str());
    c.seed = 13;
    CHECK(scan(c)[0].mc_mean != a[0].mc_mean);
}

TEST_CASE("Doubles round-trip through text", "[scan]") {
    for (double v : {0.1, 1.0 / 3.0, 0.46693364552971767, -2.5e-17}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("MED equality locus", "[locus]") {
    const auto r = equality_locus(Strategy::Med, kPi / 12);
    REQUIRE(r.root.has_value());
    CHECK(r.method == "bisection");
    CHECK_THAT(*r.root, WithinAbs(0.3141677692349533, 1e-8));

    // At pi/4 the MED gap only touches zero at p = 1/2.
    const auto flat = equality_locus(Strategy::Med, kPi / 4);
    CHECK_FALSE(flat.root.has_value());
    REQUIRE(flat.boundary_root.has_value());
    CHECK(*flat.boundary_root == 0.5);
}

TEST_CASE("MCD equality locus is a touching zero", "[locus]") {
    for (double theta : {kPi / 3, 5 * kPi / 12, 0.3 * kPi}) {
        const auto r = equality_locus(Strategy::Mcd, theta);
        REQUIRE(r.root.has_value());
        CHECK(r.method == "tangent");
        const double s = std::sin(theta);
        CHECK_THAT(*r.root, WithinAbs(1.0 / (4.0 * s * s), 1e-6));
    }
    const auto quarter = equality_locus(Strategy::Mcd, kPi / 4);
    CHECK_FALSE(quarter.root.has_value());
    CHECK(quarter.boundary_root == 0.5);

    // Below pi/4 the touching point leaves the domain and the gap stays positive.
    const auto none = equality_locus(Strategy::Mcd, kPi / 6);
    CHECK_FALSE(none.root.has_value());
    CHECK(none.method == "none");
    CHECK_THAT(printed_mcd_locus(kPi / 6), WithinAbs(1.5, 1e-12));
}

TEST_CASE("Figure data files", "[figure]") {
    const auto dir = std::filesystem::temp_directory_path() / "mirrorqsd_test_figures";
    std::filesystem::remove_all(dir);
    ScanConfig c;
    c.p_grid = {0.01, 0.5, 10};
    c.theta_grid = {0.05, 1.5, 6};
    c.photons = 1000;
    c.runs = 3;
    const auto files = figure_data(Figure::Fig3a, c, dir);
    REQUIRE(files.size() == 2);
    for (const auto &f : files) CHECK(std::filesystem::exists(f));
    CHECK(figure_data(Figure::Fig4b, c, dir).size() == 1);
    CHECK(parse_figure("fig4a") == Figure::Fig4a);
    CHECK_FALSE(parse_figure("fig5").has_value());
    std::filesystem::remove_all(dir);
}

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

#include "mirrorqsd/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/optics.hpp"
#include "mirrorqsd/scan.hpp"
#include "mirrorqsd/strategies.hpp"
#include "mirrorqsd/walk.hpp"

namespace mirrorqsd {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::map<std::string, Strategy> kStrategies{{"med", Strategy::Med},
                                                  {"mcd", Strategy::Mcd}};
const std::map<std::string, MuConvention> kConventions{{"derived", MuConvention::Derived},
                                                       {"printed", MuConvention::Printed}};
const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::Csv},
                                                   {"json", OutputFormat::Json}};

std::filesystem::path resolve_output(const std::string &path) {
    std::filesystem::path out(path);
    if (out.is_relative()) {
        if (const char *dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            return std::filesystem::path(dir) / out;
        }
    }
    return out;
}

std::ofstream open_output(const std::filesystem::path &path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return f;
}

double over_pi(double a) { return a / std::numbers::pi; }

ordered_json plate_json(const WaveplateSetting &w) {
    return {{"element", std::string(to_string(w.element))},
            {"angle", w.angle},
            {"angle_over_pi", over_pi(w.angle)}};
}

// Options shared by the single-point subcommands.
struct PointOptions {
    std::string strategy = "med";
    double p = 0.0;
    std::string theta;
    std::string convention = "derived";
};

void add_point_options(CLI::App *cmd, PointOptions &o) {
    cmd->add_option("--strategy", o.strategy, "med or mcd")
        ->required()
        ->transform(CLI::IsMember(kStrategies, CLI::ignore_case));
    cmd->add_option("--p", o.p, "Prior p of states 1 and 2, in (0, 0.5]")->required();
    cmd->add_option("--theta", o.theta, "State angle, e.g. pi/12, 0.26 or 15deg")->required();
}

void add_convention(CLI::App *cmd, std::string &c) {
    cmd->add_option("--convention", c, "mu convention for MED coins: derived or printed")
        ->transform(CLI::IsMember(kConventions, CLI::ignore_case));
}

Strategy strategy_of(const std::string &s) { return kStrategies.at(s); }

// Accepts one value (min = max) or two values (min, max) for a grid axis.
void apply_axis(GridAxis &axis, const std::vector<std::string> &values, bool angles,
                std::optional<std::size_t> count) {
    if (values.empty()) {
        return;
    }
    if (values.size() > 2) {
        throw ConfigError(std::string(angles ? "theta_grid" : "p_grid") +
                          ": expected one value or a min and max");
    }
    const auto parse = [&](const std::string &v) {
        return angles ? parse_angle(v) : std::stod(v);
    };
    axis.min = parse(values.front());
    axis.max = parse(values.back());
    if (axis.min == axis.max) {
        axis.count = count.value_or(1);
    } else if (count) {
        axis.count = *count;
    }
}

int cmd_bounds(const PointOptions &o, std::ostream &out) {
    const double theta = parse_angle(o.theta);
    const auto strategy = strategy_of(o.strategy);
    const auto r = bounds_report(o.p, theta, strategy);
    ordered_json j{{"strategy", std::string(to_string(strategy))},
                   {"p", o.p},
                   {"theta", theta},
                   {"quantum", r.quantum_value},
                   {"noncontextual", r.noncontextual_value},
                   {"gap", r.gap},
                   {"advantage", r.advantage}};
    if (strategy == Strategy::Med) {
        const auto sol = med_povm(o.p, theta);
        j["branch"] =
            sol.branch == MedSolution::Branch::ThreeElement ? "three-element" : "projective";
        j["mu"] = sol.mu;
        j["threshold_p"] = sol.threshold_p;
    } else {
        const auto sol = mcd_povm(o.p, theta);
        j["nu"] = sol.nu;
        j["xi"] = sol.xi;
    }
    out << j.dump(2) << '\n';
    return 0;
}

struct ScanOptions {
    std::string strategy = "med";
    std::vector<std::string> p_values;
    std::vector<std::string> theta_values;
    std::optional<std::size_t> p_count;
    std::optional<std::size_t> theta_count;
    std::string convention = "derived";
    std::uint64_t photons = 0;
    std::size_t runs = 30;
    std::uint64_t seed = 1;
    std::string output;
    std::string format = "csv";
};

ScanConfig scan_config(const ScanOptions &o) {
    ScanConfig c;
    c.strategy = strategy_of(o.strategy);
    apply_axis(c.p_grid, o.p_values, false, o.p_count);
    apply_axis(c.theta_grid, o.theta_values, true, o.theta_count);
    if (o.p_values.empty() && o.p_count) {
        c.p_grid.count = *o.p_count;
    }
    if (o.theta_values.empty() && o.theta_count) {
        c.theta_grid.count = *o.theta_count;
    }
    c.mu_convention = kConventions.at(o.convention);
    c.photons = o.photons;
    c.runs = o.runs;
    c.seed = o.seed;
    c.output_path = o.output;
    c.format = kFormats.at(o.format);
    c.validate();
    return c;
}

int cmd_scan(const ScanOptions &o, std::ostream &out) {
    const auto config = scan_config(o);
    const auto rows = scan(config);
    if (config.output_path.empty()) {
        write_rows(out, rows, config);
    } else {
        const auto path = resolve_output(config.output_path);
        auto f = open_output(path);
        write_rows(f, rows, config);
    }
    return 0;
}

struct WalkOptions {
    PointOptions point;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
};

int cmd_walk(const WalkOptions &o, std::ostream &out) {
    const double theta = parse_angle(o.point.theta);
    const auto strategy = strategy_of(o.point.strategy);
    const auto convention = kConventions.at(o.point.convention);
    const auto schedule = strategy == Strategy::Med ? schedule_med(o.point.p, theta, convention)
                                                    : schedule_mcd(o.point.p, theta);
    const auto realized = realized_povm(o.point.p, theta, strategy, convention);
    const auto optimal = realized_povm(o.point.p, theta, strategy, MuConvention::Derived);
    const auto map = derive_outcome_map(schedule, realized);

    ordered_json j{{"strategy", std::string(to_string(strategy))},
                   {"p", o.point.p},
                   {"theta", theta},
                   {"convention", std::string(to_string(convention))},
                   {"schedule", schedule_to_json(schedule)}};
    ordered_json prep = ordered_json::array();
    for (const auto &w : preparation_angles(mirror_ensemble(o.point.p, theta))) {
        prep.push_back(plate_json(w));
    }
    j["preparation"] = prep;
    ordered_json plates = ordered_json::array();
    for (const auto &a : angles_for_schedule(schedule)) {
        ordered_json pj{{"layer", a.layer},
                        {"position", a.position},
                        {"role", std::string(to_string(a.role))}};
        if (a.plate) {
            pj.update(plate_json(*a.plate));
        } else {
            pj["element"] = nullptr;
        }
        plates.push_back(pj);
    }
    j["plates"] = plates;
    ordered_json outcomes = ordered_json::array();
    for (const auto &[x, k] : map.position_to_outcome) {
        outcomes.push_back({{"position", x}, {"outcome", k}, {"label", realized.labels[k]}});
    }
    j["outcome_map"] = outcomes;
    j["deviation_vs_realized"] = verify_schedule(schedule, realized, o.samples, o.seed);
    j["deviation_vs_optimal"] = verify_schedule(schedule, optimal, o.samples, o.seed);
    out << j.dump(2) << '\n';
    return 0;
}

struct ExperimentOptions {
    PointOptions point;
    std::uint64_t photons = 100000;
    std::size_t runs = 30;
    std::uint64_t seed = 1;
    std::string records;
};

int cmd_experiment(const ExperimentOptions &o, std::ostream &out) {
    const double theta = parse_angle(o.point.theta);
    const auto strategy = strategy_of(o.point.strategy);
    const auto convention = kConventions.at(o.point.convention);
    const auto ensemble = mirror_ensemble(o.point.p, theta);
    const auto povm = realized_povm(o.point.p, theta, strategy, convention);

    std::optional<OutcomeMap> map;
    if (strategy == Strategy::Med || mcd_nu(o.point.p, theta) <= 1.0) {
        const auto schedule = strategy == Strategy::Med
                                  ? schedule_med(o.point.p, theta, convention)
                                  : schedule_mcd(o.point.p, theta);
        map = derive_outcome_map(schedule, povm);
    }
    const auto records = simulate_counts(ensemble, povm, map ? &*map : nullptr, o.photons,
                                         o.runs, o.seed);
    if (!o.records.empty()) {
        auto f = open_output(resolve_output(o.records));
        write_records_jsonl(f, records);
    }
    const auto est = estimate_figure_of_merit(records, strategy);
    const double analytic = strategy == Strategy::Med ? success_probability(ensemble, povm)
                                                      : confidence(ensemble, povm, 1);
    ordered_json j{{"strategy", std::string(to_string(strategy))},
                   {"p", o.point.p},
                   {"theta", theta},
                   {"photons", o.photons},
                   {"runs", o.runs},
                   {"seed", o.seed},
                   {"analytic", analytic},
                   {"mean", est.mean},
                   {"std", est.std},
                   {"used_runs", est.runs},
                   {"excluded_runs", est.excluded_runs},
                   {"noncontextual", strategy == Strategy::Med
                                         ? med_success_noncontextual(o.point.p, theta)
                                         : mcd_confidence_noncontextual(o.point.p, theta)}};
    out << j.dump(2) << '\n';
    return 0;
}

struct LocusOptions {
    std::string strategy = "med";
    std::string theta;
    double p_min = kLocusLow;
    double p_max = kLocusHigh;
};

int cmd_locus(const LocusOptions &o, std::ostream &out) {
    const double theta = parse_angle(o.theta);
    const auto strategy = strategy_of(o.strategy);
    const auto r = equality_locus(strategy, theta, o.p_min, o.p_max);
    const auto opt = [](const std::optional<double> &v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    ordered_json j{{"strategy", std::string(to_string(strategy))},
                   {"theta", theta},
                   {"bracket", {o.p_min, o.p_max}},
                   {"root", opt(r.root)},
                   {"method", r.method},
                   {"gap_at_root", opt(r.gap_at_root)},
                   {"boundary_root", opt(r.boundary_root)}};
    if (strategy == Strategy::Mcd) {
        const double printed = printed_mcd_locus(theta);
        j["printed_formula"] = printed;
        j["printed_formula_in_range"] = printed > 0.0 && printed <= 0.5;
        j["discrepancy"] = r.root ? ordered_json(printed - *r.root) : ordered_json(nullptr);
    }
    out << j.dump(2) << '\n';
    return 0;
}

struct FigureOptions {
    std::string figure;
    std::string output_dir;
    std::size_t p_count = 100;
    std::size_t theta_count = 100;
    std::uint64_t photons = 100000;
    std::size_t runs = 30;
    std::uint64_t seed = 1;
};

int cmd_figure(const FigureOptions &o, std::ostream &out) {
    const auto fig = parse_figure(o.figure);
    ScanConfig c;
    c.p_grid = {0.005, 0.5, o.p_count};
    // Half a step in from both ends of (0, pi/2), where the model is undefined.
    const double edge = 0.25 * std::numbers::pi / static_cast<double>(o.theta_count);
    c.theta_grid = {edge, std::numbers::pi / 2 - edge, o.theta_count};
    c.photons = o.photons;
    c.runs = o.runs;
    c.seed = o.seed;
    std::filesystem::path dir = o.output_dir;
    if (dir.empty()) {
        const char *env = std::getenv(kOutputDirEnv);
        dir = env != nullptr && *env != '\0' ? env : ".";
    }
    for (const auto &path : figure_data(*fig, c, dir)) {
        out << path.string() << '\n';
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Mirror-symmetric qubit state discrimination: bounds, scans, quantum-walk "
                 "compilation and shot-noise emulation"};
    app.name("mirrorqsd");
    app.require_subcommand(1);

    PointOptions bounds_opts;
    auto *bounds = app.add_subcommand("bounds", "Quantum value, noncontextual bound and gap");
    add_point_options(bounds, bounds_opts);

    ScanOptions scan_opts;
    auto *scan_cmd = app.add_subcommand("scan", "Grid scan over (p, theta)");
    scan_cmd->add_option("--strategy", scan_opts.strategy, "med or mcd")
        ->required()
        ->transform(CLI::IsMember(kStrategies, CLI::ignore_case));
    scan_cmd->add_option("--p", scan_opts.p_values, "p value, or min and max")
        ->expected(1, 2)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    scan_cmd->add_option("--theta", scan_opts.theta_values, "theta value, or min and max")
        ->expected(1, 2)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    scan_cmd->add_option("--p-count", scan_opts.p_count, "Number of p grid points");
    scan_cmd->add_option("--theta-count", scan_opts.theta_count, "Number of theta grid points");
    add_convention(scan_cmd, scan_opts.convention);
    scan_cmd->add_option("--photons", scan_opts.photons,
                         "Photons per Monte Carlo run (0 disables Monte Carlo)");
    scan_cmd->add_option("--runs", scan_opts.runs, "Monte Carlo runs per grid point");
    scan_cmd->add_option("--seed", scan_opts.seed, "Random seed")->capture_default_str();
    scan_cmd->add_option("--output", scan_opts.output,
                         "Output file (relative paths resolve against $" +
                             std::string(kOutputDirEnv) + "); stdout if omitted");
    scan_cmd->add_option("--format", scan_opts.format, "csv or json")
        ->transform(CLI::IsMember(kFormats, CLI::ignore_case));

    WalkOptions walk_opts;
    auto *walk = app.add_subcommand("walk", "Compile the coin schedule and waveplate angles");
    add_point_options(walk, walk_opts.point);
    add_convention(walk, walk_opts.point.convention);
    walk->add_option("--samples", walk_opts.samples, "Haar-random states for verification");
    walk->add_option("--seed", walk_opts.seed, "Seed for the verification states")
        ->capture_default_str();

    ExperimentOptions exp_opts;
    auto *exp = app.add_subcommand("experiment", "Emulate photon counting with shot noise");
    add_point_options(exp, exp_opts.point);
    add_convention(exp, exp_opts.point.convention);
    exp->add_option("--photons", exp_opts.photons, "Photons per run")->capture_default_str();
    exp->add_option("--runs", exp_opts.runs, "Number of runs")->capture_default_str();
    exp->add_option("--seed", exp_opts.seed, "Random seed")->capture_default_str();
    exp->add_option("--records", exp_opts.records, "Write count records as JSON lines");

    LocusOptions locus_opts;
    auto *locus = app.add_subcommand("locus", "Solve quantum value = noncontextual bound in p");
    locus->add_option("--strategy", locus_opts.strategy, "med or mcd")
        ->required()
        ->transform(CLI::IsMember(kStrategies, CLI::ignore_case));
    locus->add_option("--theta", locus_opts.theta, "State angle")->required();
    locus->add_option("--p-min", locus_opts.p_min, "Bracket lower end")->capture_default_str();
    locus->add_option("--p-max", locus_opts.p_max, "Bracket upper end")->capture_default_str();

    FigureOptions fig_opts;
    auto *figure = app.add_subcommand("figure", "Write figure data files");
    figure->add_option("--figure", fig_opts.figure, "fig3a, fig3b, fig4a or fig4b")
        ->required()
        ->check(CLI::IsMember({"fig3a", "fig3b", "fig4a", "fig4b"}));
    figure->add_option("--output-dir", fig_opts.output_dir,
                       "Directory for the CSV files (default $" + std::string(kOutputDirEnv) +
                           " or .)");
    figure->add_option("--p-count", fig_opts.p_count, "p grid points")->capture_default_str();
    figure->add_option("--theta-count", fig_opts.theta_count, "theta grid points")
        ->capture_default_str();
    figure->add_option("--photons", fig_opts.photons, "Photons per run (0 disables)")
        ->capture_default_str();
    figure->add_option("--runs", fig_opts.runs, "Runs per point")->capture_default_str();
    figure->add_option("--seed", fig_opts.seed, "Random seed")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*bounds) return cmd_bounds(bounds_opts, out);
        if (*scan_cmd) return cmd_scan(scan_opts, out);
        if (*walk) return cmd_walk(walk_opts, out);
        if (*exp) return cmd_experiment(exp_opts, out);
        if (*locus) return cmd_locus(locus_opts, out);
        if (*figure) return cmd_figure(fig_opts, out);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace mirrorqsd

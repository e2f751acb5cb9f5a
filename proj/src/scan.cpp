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

#include "mirrorqsd/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "mirrorqsd/errors.hpp"
#include "mirrorqsd/kernels.hpp"
#include "mirrorqsd/optics.hpp"

namespace mirrorqsd {

std::vector<double> GridAxis::values() const {
    if (count == 1 || min == max) {
        return std::vector<double>(std::max<std::size_t>(count, 1), min);
    }
    std::vector<double> v(count);
    const double step = (max - min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = min + static_cast<double>(i) * step;
    }
    v.back() = max;
    return v;
}

namespace {

void check_axis(const GridAxis &axis, const std::string &name, double lo, double hi,
                bool hi_inclusive) {
    const auto bad = [&](const std::string &why) {
        throw ConfigError(name + ": " + why);
    };
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
        bad("bounds must be finite");
    }
    if (!(axis.min > lo)) {
        bad("minimum must exceed " + format_double(lo));
    }
    if (hi_inclusive ? !(axis.max <= hi) : !(axis.max < hi)) {
        bad("maximum must be " + std::string(hi_inclusive ? "at most " : "below ") +
            format_double(hi));
    }
    if (axis.min > axis.max) {
        bad("minimum exceeds maximum");
    }
    if (axis.min == axis.max ? axis.count < 1 : axis.count < 2) {
        bad("count must be at least 2 (1 allowed for a single value)");
    }
}

} // namespace

void ScanConfig::validate() const {
    check_axis(p_grid, "p_grid", 0.0, 0.5, true);
    check_axis(theta_grid, "theta_grid", 0.0, std::numbers::pi / 2, false);
    if (photons > 0 && runs < 2) {
        throw ConfigError("runs: must be at least 2 when photons > 0");
    }
}

std::vector<RegionRow> scan(const ScanConfig &config) {
    config.validate();
    const auto ps = config.p_grid.values();
    const auto thetas = config.theta_grid.values();
    const auto reports = kernels::bounds_grid(ps, thetas, config.strategy);

    std::vector<RegionRow> rows;
    rows.reserve(reports.size());
    for (std::size_t g = 0; g < reports.size(); ++g) {
        const auto &r = reports[g];
        RegionRow row{r.p, r.theta, r.quantum_value, r.noncontextual_value, r.gap, r.advantage,
                      std::nullopt, std::nullopt};
        if (config.photons > 0) {
            const auto records = simulate_counts(
                mirror_ensemble(r.p, r.theta),
                realized_povm(r.p, r.theta, config.strategy, config.mu_convention), nullptr,
                config.photons, config.runs, config.seed, g);
            const auto est = estimate_figure_of_merit(records, config.strategy);
            if (est.runs > 0) {
                row.mc_mean = est.mean;
                row.mc_std = est.std;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream &out, const std::vector<RegionRow> &rows,
               const ScanConfig &config) {
    out << "p,theta,quantum,noncontextual,gap,advantage,mc_mean,mc_std,n_photons,runs,seed\n";
    const auto opt = [](const std::optional<double> &v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto &r : rows) {
        const bool mc = r.mc_mean.has_value();
        out << format_double(r.p) << ',' << format_double(r.theta) << ','
            << format_double(r.quantum_value) << ',' << format_double(r.noncontextual_value)
            << ',' << format_double(r.gap) << ',' << (r.advantage ? "true" : "false") << ','
            << opt(r.mc_mean) << ',' << opt(r.mc_std) << ',';
        if (mc) {
            out << config.photons << ',' << config.runs << ',' << config.seed;
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

nlohmann::ordered_json rows_to_json(const std::vector<RegionRow> &rows,
                                    const ScanConfig &config) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        nlohmann::ordered_json row{{"p", r.p},
                                   {"theta", r.theta},
                                   {"quantum", r.quantum_value},
                                   {"noncontextual", r.noncontextual_value},
                                   {"gap", r.gap},
                                   {"advantage", r.advantage}};
        if (r.mc_mean) {
            row["mc_mean"] = *r.mc_mean;
            row["mc_std"] = *r.mc_std;
            row["n_photons"] = config.photons;
            row["runs"] = config.runs;
            row["seed"] = config.seed;
        } else {
            row["mc_mean"] = nullptr;
            row["mc_std"] = nullptr;
            row["n_photons"] = nullptr;
            row["runs"] = nullptr;
            row["seed"] = nullptr;
        }
        arr.push_back(std::move(row));
    }
    return nlohmann::ordered_json{{"strategy", std::string(to_string(config.strategy))},
                                  {"rows", std::move(arr)}};
}

void write_rows(std::ostream &out, const std::vector<RegionRow> &rows,
                const ScanConfig &config) {
    if (config.format == OutputFormat::Json) {
        out << rows_to_json(rows, config).dump(2) << '\n';
    } else {
        write_csv(out, rows, config);
    }
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kLocusTolerance = 1e-10;
constexpr std::size_t kLocusSamples = 400;

double gap_at(Strategy strategy, double p, double theta) {
    return bounds_report(p, theta, strategy).gap;
}

} // namespace

LocusResult equality_locus(Strategy strategy, double theta, double p_lo, double p_hi) {
    check_theta(theta);
    if (!(p_lo > 0.0 && p_hi <= 0.5 && p_lo < p_hi)) {
        std::ostringstream msg;
        msg << "locus bracket [" << p_lo << ", " << p_hi << "] must satisfy 0 < lo < hi <= 1/2";
        throw DomainError(msg.str());
    }
    LocusResult result;
    const auto gap = [&](double p) { return gap_at(strategy, p, theta); };

    std::vector<double> ps(kLocusSamples + 1);
    std::vector<double> gs(kLocusSamples + 1);
    for (std::size_t i = 0; i <= kLocusSamples; ++i) {
        ps[i] = i == kLocusSamples
                    ? p_hi
                    : p_lo + (p_hi - p_lo) * static_cast<double>(i) / kLocusSamples;
        gs[i] = gap(ps[i]);
    }
    if (std::abs(gs.front()) < kLocusTolerance) {
        result.boundary_root = p_lo;
    } else if (std::abs(gs.back()) < kLocusTolerance) {
        result.boundary_root = p_hi;
    }

    // Sign change strictly inside the bracket.
    for (std::size_t i = 0; i < kLocusSamples; ++i) {
        const bool lo_zero = std::abs(gs[i]) < kLocusTolerance;
        const bool hi_zero = std::abs(gs[i + 1]) < kLocusTolerance;
        if (lo_zero || hi_zero) {
            const std::size_t j = lo_zero ? i : i + 1;
            if (j != 0 && j != kLocusSamples) {
                result.root = ps[j];
                result.method = "grid";
                result.gap_at_root = gs[j];
                return result;
            }
            continue;
        }
        if ((gs[i] < 0.0) != (gs[i + 1] < 0.0)) {
            double a = ps[i];
            double b = ps[i + 1];
            double ga = gs[i];
            double mid = 0.5 * (a + b);
            double gm = gap(mid);
            for (int it = 0; it < 200 && std::abs(gm) >= kLocusTolerance && b - a > 0.0;
                 ++it) {
                if ((gm < 0.0) == (ga < 0.0)) {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
                const double next = 0.5 * (a + b);
                if (next == mid) {
                    break;
                }
                mid = next;
                gm = gap(mid);
            }
            result.root = mid;
            result.method = "bisection";
            result.gap_at_root = gm;
            return result;
        }
    }

    // No sign change: look for an interior local minimum of |gap| that touches zero.
    std::size_t best = 1;
    for (std::size_t i = 1; i < kLocusSamples; ++i) {
        if (std::abs(gs[i]) < std::abs(gs[best])) {
            best = i;
        }
    }
    if (kLocusSamples < 2 || std::abs(gs[best]) > std::abs(gs[best - 1]) ||
        std::abs(gs[best]) > std::abs(gs[best + 1])) {
        return result;
    }
    double lo = ps[best - 1];
    double hi = ps[best + 1];
    const auto f = [&](double p) { return std::abs(gap(p)); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = f(a);
    double fb = f(b);
    for (int it = 0; it < 300 && hi - lo > 1e-15; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    const double p_star = fa < fb ? a : b;
    const double g_star = gap(p_star);
    const double margin = 1e-6 * (p_hi - p_lo);
    if (std::abs(g_star) < kLocusTolerance && p_star - p_lo > margin && p_hi - p_star > margin) {
        result.root = p_star;
        result.method = "tangent";
        result.gap_at_root = g_star;
    }
    return result;
}

double printed_mcd_locus(double theta) {
    const double s = std::sin(theta);
    return (1.0 / (s * s) - 2.0 * std::cos(2.0 * theta)) /
           (2.0 * (3.0 + 4.0 * std::cos(4.0 * theta)));
}

// ---------------------------------------------------------------------------

std::optional<Figure> parse_figure(std::string_view name) {
    if (name == "fig3a") return Figure::Fig3a;
    if (name == "fig3b") return Figure::Fig3b;
    if (name == "fig4a") return Figure::Fig4a;
    if (name == "fig4b") return Figure::Fig4b;
    return std::nullopt;
}

std::string_view to_string(Figure f) noexcept {
    switch (f) {
    case Figure::Fig3a:
        return "fig3a";
    case Figure::Fig3b:
        return "fig3b";
    case Figure::Fig4a:
        return "fig4a";
    case Figure::Fig4b:
        return "fig4b";
    }
    return "?";
}

std::vector<double> figure_slices(Strategy strategy) {
    constexpr double pi = std::numbers::pi;
    if (strategy == Strategy::Med) {
        return {pi / 12, pi / 4, 5 * pi / 12};
    }
    return {pi / 6, pi / 4, pi / 3};
}

namespace {

std::filesystem::path write_file(const std::filesystem::path &path,
                                 const std::vector<RegionRow> &rows, const ScanConfig &config) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_csv(out, rows, config);
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
    return path;
}

std::vector<RegionRow> slice_rows(const ScanConfig &base, const std::vector<double> &ps,
                                  const std::vector<double> &thetas) {
    std::vector<RegionRow> rows;
    for (double t : thetas) {
        ScanConfig c = base;
        c.theta_grid = {t, t, 1};
        for (double p : ps) {
            c.p_grid = {p, p, 1};
            const auto r = scan(c);
            rows.insert(rows.end(), r.begin(), r.end());
        }
    }
    return rows;
}

} // namespace

std::vector<std::filesystem::path> figure_data(Figure figure, const ScanConfig &config,
                                               const std::filesystem::path &directory) {
    ScanConfig c = config;
    c.strategy = figure == Figure::Fig3a || figure == Figure::Fig3b ? Strategy::Med
                                                                    : Strategy::Mcd;
    c.format = OutputFormat::Csv;
    c.validate();
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + directory.string() + ": " + ec.message());
    }
    const std::string stem(to_string(figure));
    std::vector<std::filesystem::path> written;

    if (figure == Figure::Fig3b || figure == Figure::Fig4b) {
        // Region maps are analytic; Monte Carlo only applies to the slice points.
        ScanConfig surface = c;
        surface.photons = 0;
        written.push_back(write_file(directory / (stem + "_surface.csv"), scan(surface), surface));
        return written;
    }

    const auto slices = figure_slices(c.strategy);
    ScanConfig curves = c;
    curves.photons = 0;
    written.push_back(write_file(directory / (stem + "_curves.csv"),
                                 slice_rows(curves, c.p_grid.values(), slices), curves));
    // Each point is its own one-row scan, so the seed is offset per point.
    std::vector<RegionRow> points;
    std::uint64_t offset = 0;
    for (double t : slices) {
        for (double p : {0.1, 0.2, 0.3, 0.4, 0.5}) {
            ScanConfig pc = c;
            pc.seed = c.seed + offset++;
            pc.theta_grid = {t, t, 1};
            pc.p_grid = {p, p, 1};
            const auto r = scan(pc);
            points.insert(points.end(), r.begin(), r.end());
        }
    }
    written.push_back(write_file(directory / (stem + "_points.csv"), points, c));
    return written;
}

// ---------------------------------------------------------------------------

double parse_angle(std::string_view text) {
    const std::string s(text);
    static const std::regex pi_form(
        R"(^\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*((?:\d+\.?\d*|\.\d+)))?\s*$)",
        std::regex::icase);
    static const std::regex deg_form(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*deg\s*$)", std::regex::icase);
    std::smatch m;
    try {
        if (std::regex_match(s, m, pi_form)) {
            double v = std::numbers::pi;
            if (m[2].matched) {
                v *= std::stod(m[2].str());
            }
            if (m[3].matched) {
                const double d = std::stod(m[3].str());
                if (d == 0.0) {
                    throw ConfigError("angle '" + s + "': division by zero");
                }
                v /= d;
            }
            return m[1].str() == "-" ? -v : v;
        }
        if (std::regex_match(s, m, deg_form)) {
            return std::stod(m[1].str()) * std::numbers::pi / 180.0;
        }
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (s.find_first_not_of(" \t", used) == std::string::npos && std::isfinite(v)) {
            return v;
        }
    } catch (const std::logic_error &) {
        // fall through to the error below
    }
    throw ConfigError("cannot parse angle '" + s +
                      "' (expected e.g. pi/12, 5pi/12, 0.26 or 15deg)");
}

} // namespace mirrorqsd

// conecut: cylinder-stack volumes for solids of revolution, telescoping
// error bounds, Wilson coarse-graining, and plane-pair cutters.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conecut/error.hpp"
#include "conecut/profile.hpp"
#include "conecut/qcovector.hpp"
#include "conecut/report.hpp"
#include "conecut/rg.hpp"
#include "conecut/ziggurat.hpp"

namespace {

using conecut::Mode;
using conecut::Profile;
using conecut::report::fmt_machine;
using conecut::report::Table;

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
    std::string command;
    std::string profile = "cone";
    double radius = 1.0;
    double height = 1.0;
    std::int64_t slabs = 1024;
    std::int64_t base_slabs = 2;
    int levels = 10;
    std::string mode; // filled with the command default when not given
    double z = 0.5;
    std::vector<double> eps;
    std::optional<double> target_thickness;
    std::string format; // resolved against CONECUT_FORMAT in finalize_config
    std::string output = "-";
    bool dump_config = false;

    bool table_profile() const { return profile.rfind("table:", 0) == 0; }

    std::string canonical() const;
};

std::string join_eps(const std::vector<double>& eps) {
    std::string out;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (i > 0) out += ",";
        out += fmt_machine(eps[i]);
    }
    return out;
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << command << " --profile " << profile;
    if (!table_profile()) {
        out << " --radius " << fmt_machine(radius) << " --height "
            << fmt_machine(height);
    }
    if (command == "volume" || command == "fixedpoint") {
        out << " --slabs " << slabs;
    }
    if (command == "converge" || command == "rg") {
        out << " --base-slabs " << base_slabs << " --levels " << levels;
    }
    if (command == "volume" || command == "rg" || command == "fixedpoint") {
        out << " --mode " << mode;
    }
    if (command == "rg" && target_thickness) {
        out << " --target-thickness " << fmt_machine(*target_thickness);
    }
    if (command == "democritus" || command == "density") {
        out << " --z " << fmt_machine(z) << " --eps " << join_eps(eps);
    }
    out << " --format " << format << " --output " << output;
    return out.str();
}

// Fills in per-command defaults that cannot be attached statically,
// resolves CONECUT_FORMAT and validates the profile grammar. Throws
// CLI::ValidationError for usage problems.
void finalize_config(RunConfig& cfg) {
    if (cfg.format.empty()) {
        const char* env = std::getenv("CONECUT_FORMAT");
        if (env != nullptr && *env != '\0') {
            const std::string value(env);
            if (value != "table" && value != "csv" && value != "json") {
                throw CLI::ValidationError(
                    "CONECUT_FORMAT",
                    "expected table, csv or json, got '" + value + "'");
            }
            cfg.format = value;
        } else {
            cfg.format = "table";
        }
    }
    if (cfg.mode.empty()) {
        cfg.mode = (cfg.command == "volume") ? "both" : "inscribed";
    }
    if (cfg.eps.empty()) {
        if (cfg.command == "democritus") {
            cfg.eps = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
        } else if (cfg.command == "density") {
            double e = 1e-2;
            for (int i = 0; i < 10; ++i) {
                cfg.eps.push_back(e);
                e /= 2.0;
            }
        }
    }
    if (!cfg.table_profile() && cfg.profile != "cone" &&
        cfg.profile != "cylinder" && cfg.profile != "paraboloid") {
        throw CLI::ValidationError(
            "--profile",
            "expected cone, cylinder, paraboloid or table:<path>, got '" +
                cfg.profile + "'");
    }
}

Profile make_profile(const RunConfig& cfg) {
    if (cfg.table_profile()) {
        return Profile::from_csv_file(cfg.profile.substr(6));
    }
    if (cfg.profile == "cylinder") return Profile::cylinder(cfg.radius, cfg.height);
    if (cfg.profile == "paraboloid") {
        return Profile::paraboloid(cfg.radius, cfg.height);
    }
    return Profile::cone(cfg.radius, cfg.height);
}

Mode parse_mode(const std::string& mode) {
    return mode == "circumscribed" ? Mode::circumscribed : Mode::inscribed;
}

// Circumscribed-minus-inscribed difference; uses the telescoping gap for
// monotone profiles and a plain subtraction (with a stderr note) otherwise.
double gap_or_difference(const Profile& p, std::int64_t n, double v_ins,
                         double v_circ) {
    if (p.monotone()) return conecut::gap(p, n).by_subtraction;
    std::cerr << "conecut: note: profile is not monotone; stack bounds are "
                 "not rigorous\n";
    return v_circ - v_ins;
}

struct CommandOutput {
    std::vector<std::pair<std::string, std::string>> meta; // table format only
    Table table;                                           // table + csv
    std::string json_payload_key;                          // "rows" when empty
    std::string json_payload;                              // overrides rows
    std::string csv_override; // module csv schema, when it differs
    std::string params_json;  // {"slabs":4,...}
};

CommandOutput run_volume(const RunConfig& cfg, const Profile& p) {
    const std::int64_t n = cfg.slabs;
    const double v_ins =
        conecut::total_volume(conecut::build_ziggurat(p, n, Mode::inscribed));
    const double v_circ = conecut::total_volume(
        conecut::build_ziggurat(p, n, Mode::circumscribed));
    const double exact = p.oracle_volume();
    const double gap_value = gap_or_difference(p, n, v_ins, v_circ);

    CommandOutput out;
    out.params_json =
        "{\"slabs\":" + std::to_string(n) + ",\"mode\":\"" + cfg.mode + "\"}";
    out.meta = {{"slabs", std::to_string(n)}, {"mode", cfg.mode}};
    if (cfg.mode == "both") {
        out.table.columns = {"n", "inscribed", "circumscribed", "gap", "exact"};
        out.table.rows = {{n, v_ins, v_circ, gap_value, exact}};
    } else {
        const double v = (cfg.mode == "inscribed") ? v_ins : v_circ;
        out.table.columns = {"n", cfg.mode, "gap", "exact"};
        out.table.rows = {{n, v, gap_value, exact}};
    }
    return out;
}

CommandOutput run_converge(const RunConfig& cfg, const Profile& p) {
    const double exact = p.oracle_volume();
    CommandOutput out;
    out.params_json = "{\"base_slabs\":" + std::to_string(cfg.base_slabs) +
                      ",\"levels\":" + std::to_string(cfg.levels) + "}";
    out.meta = {{"base_slabs", std::to_string(cfg.base_slabs)},
                {"levels", std::to_string(cfg.levels)},
                {"exact", conecut::report::fmt_table(exact)}};
    out.table.columns = {"k",
                         "n",
                         "inscribed",
                         "circumscribed",
                         "gap",
                         "err_inscribed",
                         "err_circumscribed",
                         "ratio_inscribed",
                         "ratio_circumscribed"};
    double prev_err_ins = quiet_nan;
    double prev_err_circ = quiet_nan;
    for (int k = 0; k <= cfg.levels; ++k) {
        const std::int64_t n = cfg.base_slabs << k;
        const double v_ins = conecut::total_volume(
            conecut::build_ziggurat(p, n, Mode::inscribed));
        const double v_circ = conecut::total_volume(
            conecut::build_ziggurat(p, n, Mode::circumscribed));
        const double gap_value = gap_or_difference(p, n, v_ins, v_circ);
        const double err_ins = std::abs(v_ins - exact);
        const double err_circ = std::abs(v_circ - exact);
        out.table.rows.push_back({static_cast<std::int64_t>(k), n, v_ins,
                                  v_circ, gap_value, err_ins, err_circ,
                                  prev_err_ins / err_ins,
                                  prev_err_circ / err_circ});
        prev_err_ins = err_ins;
        prev_err_circ = err_circ;
    }
    return out;
}

CommandOutput run_rg(const RunConfig& cfg, const Profile& p) {
    std::int64_t n0 = cfg.base_slabs;
    if (cfg.target_thickness) {
        const double target = *cfg.target_thickness;
        if (!(target > 0.0)) {
            throw conecut::error("rg: target thickness must be > 0");
        }
        n0 = std::llround(p.height() / target);
        if (n0 < 1 || std::abs(p.height() / static_cast<double>(n0) - target) >
                          1e-9 * target) {
            throw conecut::error(
                "rg: target thickness does not divide the height");
        }
    }
    const conecut::RenormalizedSeries series =
        conecut::renormalized_series(p, n0, cfg.levels, parse_mode(cfg.mode));

    CommandOutput out;
    out.params_json = "{\"base_slabs\":" + std::to_string(n0) +
                      ",\"levels\":" + std::to_string(cfg.levels) +
                      ",\"mode\":\"" + cfg.mode + "\"}";
    out.meta = {{"base_slabs", std::to_string(n0)},
                {"levels", std::to_string(cfg.levels)},
                {"mode", cfg.mode},
                {"base_thickness", conecut::report::fmt_table(series.base_thickness)}};
    out.table.columns = {"level", "bin", "volume", "error", "ratio"};
    for (const conecut::SeriesLevel& level : series.levels) {
        for (std::size_t bin = 0; bin < level.figure.slabs.size(); ++bin) {
            const double ratio = level.bin_error_ratios.empty()
                                     ? quiet_nan
                                     : level.bin_error_ratios[bin];
            out.table.rows.push_back({static_cast<std::int64_t>(level.level),
                                      static_cast<std::int64_t>(bin),
                                      level.figure.slabs[bin].volume,
                                      level.bin_errors[bin], ratio});
        }
    }
    out.json_payload_key = "series";
    out.json_payload = conecut::to_json(series);
    out.csv_override = conecut::to_csv(series);
    return out;
}

CommandOutput run_fixedpoint(const RunConfig& cfg, const Profile& p) {
    const conecut::Ziggurat zg =
        conecut::build_ziggurat(p, cfg.slabs, parse_mode(cfg.mode));
    const conecut::FixedPointReport report = conecut::iterate_to_fixed_point(zg);

    CommandOutput out;
    out.params_json = "{\"slabs\":" + std::to_string(cfg.slabs) +
                      ",\"mode\":\"" + cfg.mode + "\"}";
    out.meta = {{"slabs", std::to_string(cfg.slabs)},
                {"mode", cfg.mode},
                {"terminal_radius", conecut::report::fmt_table(report.terminal_radius)}};
    out.table.columns = {"iterate", "slabs", "thickness",
                         "invariance_distance"};
    for (std::size_t i = 0; i < report.iterates.size(); ++i) {
        const conecut::FixedPointIterate& it = report.iterates[i];
        conecut::report::Cell distance =
            it.distance ? conecut::report::Cell{*it.distance}
                        : conecut::report::Cell{std::string("degenerate")};
        out.table.rows.push_back(
            {static_cast<std::int64_t>(i),
             static_cast<std::int64_t>(it.figure.slab_count()),
             it.figure.slabs.front().thickness, distance});
    }
    out.json_payload_key = "report";
    out.json_payload = conecut::to_json(report);
    out.csv_override = conecut::to_csv(report);
    return out;
}

CommandOutput run_democritus(const RunConfig& cfg, const Profile& p) {
    CommandOutput out;
    out.params_json =
        "{\"z\":" + fmt_machine(cfg.z) + ",\"eps\":[" + join_eps(cfg.eps) + "]}";
    out.meta = {{"z", conecut::report::fmt_table(cfg.z)}};
    out.table.columns = {"eps", "gap", "gap_over_eps"};
    for (const double eps : cfg.eps) {
        const double g = conecut::democritus_gap(p, cfg.z, eps);
        out.table.rows.push_back({eps, g, g / eps});
    }
    return out;
}

CommandOutput run_density(const RunConfig& cfg, const Profile& p) {
    const std::vector<double> densities =
        conecut::density_limit(p, cfg.z, cfg.eps);
    const double area = p.area(cfg.z);

    CommandOutput out;
    out.params_json =
        "{\"z\":" + fmt_machine(cfg.z) + ",\"eps\":[" + join_eps(cfg.eps) + "]}";
    out.meta = {{"z", conecut::report::fmt_table(cfg.z)}, {"area", conecut::report::fmt_table(area)}};
    out.table.columns = {"eps", "density", "area", "abs_error", "ratio"};
    double prev_err = quiet_nan;
    for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
        const double err = std::abs(densities[i] - area);
        out.table.rows.push_back(
            {cfg.eps[i], densities[i], area, err, prev_err / err});
        prev_err = err;
    }
    return out;
}

std::string assemble(const RunConfig& cfg, const CommandOutput& out,
                     const Profile& p) {
    if (cfg.format == "csv") {
        if (!out.csv_override.empty()) return out.csv_override;
        return conecut::report::to_csv(out.table);
    }
    if (cfg.format == "json") {
        std::ostringstream json;
        json << "{\"command\":\"" << cfg.command << "\",\"profile\":\""
             << conecut::report::json_escape(p.describe()) << "\",\"params\":"
             << (out.params_json.empty() ? "{}" : out.params_json);
        if (out.json_payload.empty()) {
            json << ",\"rows\":" << conecut::report::to_json_rows(out.table);
        } else {
            json << ",\"" << out.json_payload_key
                 << "\":" << out.json_payload;
        }
        json << "}\n";
        return json.str();
    }
    std::ostringstream text;
    text << "# command: " << cfg.command << "\n";
    text << "# profile: " << p.describe() << "\n";
    for (const auto& [key, value] : out.meta) {
        text << "# " << key << ": " << value << "\n";
    }
    text << conecut::report::render_text(out.table);
    return text.str();
}

int run(const RunConfig& cfg) {
    const Profile p = make_profile(cfg);
    CommandOutput out;
    if (cfg.command == "volume") {
        out = run_volume(cfg, p);
    } else if (cfg.command == "converge") {
        out = run_converge(cfg, p);
    } else if (cfg.command == "rg") {
        out = run_rg(cfg, p);
    } else if (cfg.command == "fixedpoint") {
        out = run_fixedpoint(cfg, p);
    } else if (cfg.command == "democritus") {
        out = run_democritus(cfg, p);
    } else {
        out = run_density(cfg, p);
    }
    const std::string text = assemble(cfg, out, p);
    if (cfg.output == "-") {
        std::cout << text;
    } else {
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file) throw conecut::error("cannot open output: " + cfg.output);
        file << text;
    }
    return 0;
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--profile", cfg.profile,
                    "cone, cylinder, paraboloid or table:<csv path>")
        ->capture_default_str();
    sub->add_option("--radius", cfg.radius, "base radius R")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--height", cfg.height, "height H")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", cfg.format,
                    "table, csv or json (default table, or CONECUT_FORMAT)")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--output", cfg.output, "output path, '-' for stdout")
        ->capture_default_str();
    sub->add_flag("--dump-config", cfg.dump_config,
                  "print the canonical form of this invocation and exit");
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"cylinder stacks, telescoping bounds, Wilson averaging and "
                 "plane-pair cutters for solids of revolution"};
    app.require_subcommand(1);

    CLI::App* volume = app.add_subcommand(
        "volume", "inscribed/circumscribed/exact volumes and the gap");
    volume->add_option("--slabs", cfg.slabs, "slab count n")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    volume->add_option("--mode", cfg.mode, "inscribed, circumscribed or both")
        ->check(CLI::IsMember({"inscribed", "circumscribed", "both"}));
    add_common_options(volume, cfg);

    CLI::App* converge = app.add_subcommand(
        "converge", "volumes, gaps and errors over n = n0 * 2^k");
    converge->add_option("--base-slabs", cfg.base_slabs, "base slab count n0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    converge->add_option("--levels", cfg.levels, "number of doublings k_max")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_common_options(converge, cfg);

    CLI::App* rg = app.add_subcommand(
        "rg", "renormalized series at the base thickness");
    rg->add_option("--base-slabs", cfg.base_slabs, "base slab count n0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    rg->add_option("--levels", cfg.levels, "number of doublings k_max")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    rg->add_option("--mode", cfg.mode, "inscribed or circumscribed")
        ->check(CLI::IsMember({"inscribed", "circumscribed"}));
    rg->add_option("--target-thickness", cfg.target_thickness,
                   "reference thickness (default H / base-slabs)");
    add_common_options(rg, cfg);

    CLI::App* fixedpoint = app.add_subcommand(
        "fixedpoint", "iterate coarse-graining down to a single slab");
    fixedpoint->add_option("--slabs", cfg.slabs, "slab count (power of two)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fixedpoint->add_option("--mode", cfg.mode, "inscribed or circumscribed")
        ->check(CLI::IsMember({"inscribed", "circumscribed"}));
    add_common_options(fixedpoint, cfg);

    CLI::App* democritus = app.add_subcommand(
        "democritus", "area mismatch of the two exposed circles per eps");
    democritus->add_option("--z", cfg.z, "cut height")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    democritus->add_option("--eps", cfg.eps, "cutter thickness schedule")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    add_common_options(democritus, cfg);

    CLI::App* density = app.add_subcommand(
        "density", "slice volume over eps against the cross-section area");
    density->add_option("--z", cfg.z, "window start")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    density->add_option("--eps", cfg.eps, "window width schedule")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    add_common_options(density, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "conecut: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    }

    for (CLI::App* sub :
         {volume, converge, rg, fixedpoint, democritus, density}) {
        if (sub->parsed()) cfg.command = sub->get_name();
    }

    try {
        finalize_config(cfg);
    } catch (const CLI::ParseError& e) {
        std::cerr << "conecut: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    }

    if (cfg.dump_config) {
        std::cout << cfg.canonical() << "\n";
        return 0;
    }

    try {
        return run(cfg);
    } catch (const conecut::error& e) {
        std::cerr << "conecut: error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "conecut: error: " << e.what() << "\n";
        return 1;
    }
}

// SPDX-License-Identifier: MIT
/**
 * @file daywatch.cpp
 * @brief Command-line front end
 *
 *   daywatch run   --input FILE --format csv|json --output json|text
 *                  [--tolerance X] [--up-log-mode strict|absolute]
 *   daywatch sweep --input FILE --param NAME --from A --to B --steps N
 *   daywatch check [--golden DIR]
 *
 * Exit codes: 0 all records clean, 2 at least one record degraded or
 * failed, 3 input unparseable (or bad arguments), 1 self-check failure.
 */

#include "daywatch/check.hpp"
#include "daywatch/daywatch.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifndef DAYWATCH_GOLDEN_DIR
#define DAYWATCH_GOLDEN_DIR "tests/golden"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitDegraded = 2;
constexpr int kExitUnparseable = 3;

struct CommonOptions {
    std::string input;
    std::string format;
    std::string output = "json";
    double tolerance = daywatch::kDefaultEqualityTolerance;
    std::string up_log_mode = "strict";
};

daywatch::InputFormat guess_format(const std::string& path, const std::string& flag) {
    if (auto f = daywatch::parse_input_format(flag)) return *f;
    const auto ext = std::filesystem::path{path}.extension().string();
    return ext == ".json" ? daywatch::InputFormat::json : daywatch::InputFormat::csv;
}

void print_io_error(const daywatch::IoError& e) {
    std::cerr << "daywatch: "
              << (e.kind == daywatch::IoError::Kind::parse ? "parse error" : "validation error");
    if (e.row > 0) std::cerr << " at row " << e.row;
    std::cerr << ": " << e.detail << '\n';
}

/// Reads and parses the input file; prints the error and returns nullopt on failure.
std::optional<std::vector<daywatch::Record>> load(const CommonOptions& o) {
    if (!std::filesystem::exists(o.input)) {
        std::cerr << "daywatch: cannot open " << o.input << '\n';
        return std::nullopt;
    }
    auto recs = daywatch::parse_records(daywatch::read_file(o.input), guess_format(o.input, o.format));
    if (!recs) {
        print_io_error(recs.error());
        return std::nullopt;
    }
    for (const auto& r : recs.value()) {
        for (const auto& field : daywatch::range_warnings(r.params)) {
            std::cerr << "daywatch: warning: " << field << " exceeds "
                      << daywatch::kMaxExpectedHours << " h"
                      << (r.date.empty() ? "" : " (" + r.date + ")") << '\n';
        }
    }
    return std::move(recs.value());
}

std::optional<daywatch::RunConfig> make_config(const CommonOptions& o) {
    daywatch::RunConfig cfg;
    cfg.equality_tolerance = o.tolerance;
    auto mode = daywatch::parse_up_log_mode(o.up_log_mode);
    auto out = daywatch::parse_output_format(o.output);
    if (!mode || !out) return std::nullopt;
    cfg.up_log_mode = *mode;
    cfg.output_format = *out;
    if (!daywatch::is_valid(cfg)) return std::nullopt;
    return cfg;
}

int run_command(const CommonOptions& o) {
    const auto cfg = make_config(o);
    if (!cfg) {
        std::cerr << "daywatch: invalid run configuration\n";
        return kExitUnparseable;
    }
    const auto records = load(o);
    if (!records) return kExitUnparseable;

    bool degraded = false;
    daywatch::ordered_json all = daywatch::ordered_json::array();
    std::string text;
    for (const auto& rec : *records) {
        const auto report = daywatch::run_watch(rec.params, *cfg, {}, rec.date);
        degraded = degraded || report.degraded();
        if (cfg->output_format == daywatch::OutputFormat::json) {
            all.push_back(daywatch::report_to_json(report));
        } else {
            text += daywatch::emit_text(report);
            text += '\n';
        }
    }
    if (cfg->output_format == daywatch::OutputFormat::json) {
        std::cout << daywatch::dump(all);
    } else {
        std::cout << text;
    }
    return degraded ? kExitDegraded : kExitOk;
}

int sweep_command(const CommonOptions& o, const std::string& param, double from, double to,
                  std::size_t steps) {
    const auto cfg = make_config(o);
    const auto index = daywatch::field_index(param);
    const daywatch::SweepSpec spec{index.value_or(0), from, to, steps};
    if (!cfg || !index || !daywatch::is_valid(spec)) {
        std::cerr << "daywatch: invalid sweep specification\n";
        return kExitUnparseable;
    }
    const auto records = load(o);
    if (!records) return kExitUnparseable;
    if (records->empty()) {
        std::cerr << "daywatch: sweep needs one base record\n";
        return kExitUnparseable;
    }
    const auto& base = records->front();
    const auto entries = daywatch::sweep(base.params, spec, *cfg, base.date);
    if (cfg->output_format == daywatch::OutputFormat::json) {
        std::cout << daywatch::dump(daywatch::sweep_to_json(spec, entries));
    } else {
        std::cout << daywatch::sweep_to_text(spec, entries);
    }
    const bool degraded = std::any_of(entries.begin(), entries.end(),
                                      [](const auto& e) { return daywatch::status(e) != "ok"; });
    return degraded ? kExitDegraded : kExitOk;
}

int check_command(const std::string& golden_dir) {
    const auto results = daywatch::run_self_check(golden_dir);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << " - " << r.detail << '\n';
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--input", o.input, "CSV or JSON file of daily records")->required();
    cmd->add_option("--format", o.format, "input format (default: from file extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output, "report format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--tolerance", o.tolerance, "relative tolerance for probability equality");
    cmd->add_option("--up-log-mode", o.up_log_mode, "handling of ln U_p when U_p <= 0")
        ->check(CLI::IsMember({"strict", "absolute"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"daywatch - day-ahead prognostic watch of an electric power system"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto* run = app.add_subcommand("run", "evaluate every record and print the reports");
    add_common(run, run_opts);

    CommonOptions sweep_opts;
    std::string param;
    double from = 0.0;
    double to = 1.0;
    std::size_t steps = 2;
    auto* sw = app.add_subcommand("sweep", "vary one parameter of the first record");
    add_common(sw, sweep_opts);
    sw->add_option("--param", param, "parameter to vary")
        ->required()
        ->check(CLI::IsMember({"t6_1", "t6_2", "t16", "t24", "k_c", "c_0", "delta"}));
    sw->add_option("--from", from, "first value")->required();
    sw->add_option("--to", to, "last value")->required();
    sw->add_option("--steps", steps, "number of points (>= 2)")->required();

    std::string golden_dir = DAYWATCH_GOLDEN_DIR;
    auto* check = app.add_subcommand("check", "run the built-in oracle suite");
    check->add_option("--golden", golden_dir, "directory holding manifest.json and golden reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUnparseable;
    }

    if (*run) return run_command(run_opts);
    if (*sw) return sweep_command(sweep_opts, param, from, to, steps);
    if (*check) return check_command(golden_dir);
    return kExitUnparseable;
}

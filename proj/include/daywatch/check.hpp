// SPDX-License-Identifier: MIT
/**
 * @file check.hpp
 * @brief Built-in self-check run by `daywatch check`
 *
 * Cross-checks the Ryser permanent against the full expansion, the
 * reliability polynomial endpoints, the separability-root identity, and
 * replays every golden report listed in a manifest.
 */

#pragma once

#include "daywatch/io.hpp"
#include "daywatch/permanent.hpp"
#include "daywatch/reliability.hpp"
#include "daywatch/watch.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace daywatch {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/**
 * Structural comparison of two JSON documents. Keys must match in order,
 * null/bool/string values exactly, numbers within `rel_tol` relative
 * (absolute for expected zeros). Returns one line per mismatch.
 */
[[nodiscard]] inline std::vector<std::string> compare_json(const ordered_json& expected,
                                                           const ordered_json& actual,
                                                           double rel_tol,
                                                           const std::string& path = "$") {
    std::vector<std::string> diffs;
    if (expected.is_number() && actual.is_number()) {
        const double e = expected.get<double>();
        const double a = actual.get<double>();
        const double scale = e == 0.0 ? 1.0 : std::abs(e);
        if (!(std::abs(a - e) <= rel_tol * scale)) {
            diffs.push_back(path + ": expected " + detail::shortest(e) + ", got " +
                            detail::shortest(a));
        }
        return diffs;
    }
    if (expected.type() != actual.type()) {
        diffs.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
        return diffs;
    }
    if (expected.is_object()) {
        auto ei = expected.items().begin();
        auto ai = actual.items().begin();
        for (; ei != expected.items().end() && ai != actual.items().end(); ++ei, ++ai) {
            if (ei.key() != ai.key()) {
                diffs.push_back(path + ": key order differs at '" + ei.key() + "' vs '" +
                                ai.key() + "'");
                return diffs;
            }
            auto sub = compare_json(ei.value(), ai.value(), rel_tol, path + "." + ei.key());
            diffs.insert(diffs.end(), sub.begin(), sub.end());
        }
        if (expected.size() != actual.size()) {
            diffs.push_back(path + ": expected " + std::to_string(expected.size()) +
                            " keys, got " + std::to_string(actual.size()));
        }
        return diffs;
    }
    if (expected.is_array()) {
        if (expected.size() != actual.size()) {
            diffs.push_back(path + ": expected " + std::to_string(expected.size()) +
                            " elements, got " + std::to_string(actual.size()));
            return diffs;
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            auto sub = compare_json(expected[i], actual[i], rel_tol,
                                    path + "[" + std::to_string(i) + "]");
            diffs.insert(diffs.end(), sub.begin(), sub.end());
        }
        return diffs;
    }
    if (expected != actual) {
        diffs.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
    }
    return diffs;
}

inline constexpr double kGoldenRelTol = 1e-9;

[[nodiscard]] inline CheckResult check_permanent(std::size_t trials = 1000,
                                                 std::uint64_t seed = 20091019) {
    std::mt19937_64 rng{seed};
    std::uniform_real_distribution<double> entry{0.0, 3.0};
    double worst = 0.0;
    for (std::size_t n = 0; n < trials; ++n) {
        Matrix4 a{};
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        const double ref = permanent_expansion(a);
        worst = std::max(worst, std::abs(permanent_ryser(a) - ref) / std::abs(ref));
    }
    return {"permanent: Ryser vs 24-term expansion", worst <= 1e-12,
            "max relative difference " + detail::shortest(worst) + " over " +
                std::to_string(trials) + " matrices"};
}

[[nodiscard]] inline CheckResult check_reliability_endpoints() {
    const double worst = std::max({std::abs(star_reliability(0.0) - 1.0),
                                   std::abs(star_reliability(1.0)),
                                   std::abs(triangle_reliability(0.0) - 1.0),
                                   std::abs(triangle_reliability(1.0))});
    return {"reliability polynomial endpoints", worst <= 1e-12,
            "max endpoint deviation " + detail::shortest(worst)};
}

[[nodiscard]] inline CheckResult check_separability_identity() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double l_p1 = 1.0 + 2.0 * i / 99.0;
        const auto root = separability(l_p1);
        if (!root) return {"separability identity", false, describe(root.error())};
        const double a = 2.0 + l_p1;
        const double disc = 3.0 * a * a;
        const double rho = a * (1.0 + std::sqrt(3.0)) / 2.0;
        worst = std::max({worst, std::abs(root.value().discriminant - disc) / disc,
                          std::abs(root.value().rho - rho) / rho});
    }
    return {"separability identity disc = 3(2+l_p1)^2", worst <= 1e-9,
            "max relative difference " + detail::shortest(worst)};
}

[[nodiscard]] inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in{p, std::ios::binary};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Replays each manifest entry and compares with its golden report.
[[nodiscard]] inline std::vector<CheckResult> check_golden(const std::filesystem::path& dir) {
    std::vector<CheckResult> out;
    const auto manifest_text = read_file(dir / "manifest.json");
    const auto manifest = ordered_json::parse(manifest_text, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_array()) {
        out.push_back({"golden manifest", false, "cannot read " + (dir / "manifest.json").string()});
        return out;
    }
    for (const auto& item : manifest) {
        const std::string file = item.at("file").get<std::string>();
        CheckResult res{"golden " + file, false, {}};
        RawRecord raw;
        for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
            set_field(raw, i, item.at("record").at(i).get<double>());
        }
        RunConfig cfg;
        cfg.up_log_mode = parse_up_log_mode(item.value("up_log_mode", "strict"))
                              .value_or(UpLogMode::strict);
        auto params = validate(raw);
        if (!params) {
            res.detail = "manifest record fails validation";
            out.push_back(res);
            continue;
        }
        const auto golden = ordered_json::parse(read_file(dir / file), nullptr, false);
        if (golden.is_discarded()) {
            res.detail = "cannot parse golden file";
            out.push_back(res);
            continue;
        }
        const std::string first = dump(report_to_json(run_watch(params.value(), cfg)));
        const std::string second = dump(report_to_json(run_watch(params.value(), cfg)));
        const auto diffs = compare_json(golden, ordered_json::parse(first), kGoldenRelTol);
        res.passed = diffs.empty() && first == second;
        if (first != second) res.detail = "repeated runs differ; ";
        res.detail += diffs.empty() ? "all fields within 1e-9" : diffs.front();
        if (diffs.size() > 1) res.detail += " (+" + std::to_string(diffs.size() - 1) + " more)";
        out.push_back(std::move(res));
    }
    return out;
}

[[nodiscard]] inline std::vector<CheckResult> run_self_check(
    const std::filesystem::path& golden_dir) {
    std::vector<CheckResult> out{check_permanent(), check_reliability_endpoints(),
                                 check_separability_identity()};
    auto golden = check_golden(golden_dir);
    out.insert(out.end(), golden.begin(), golden.end());
    return out;
}

}  // namespace daywatch

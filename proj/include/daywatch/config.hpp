// SPDX-License-Identifier: MIT
#pragma once

#include "daywatch/grid_analysis.hpp"
#include "daywatch/states.hpp"

#include <optional>
#include <string_view>

namespace daywatch {

enum class OutputFormat { json, text };

struct RunConfig {
    double equality_tolerance = kDefaultEqualityTolerance;  ///< must be > 0
    UpLogMode up_log_mode = UpLogMode::strict;
    OutputFormat output_format = OutputFormat::json;
};

[[nodiscard]] constexpr bool is_valid(const RunConfig& c) noexcept {
    return c.equality_tolerance > 0.0 && c.equality_tolerance < 1e300;
}

[[nodiscard]] inline std::optional<UpLogMode> parse_up_log_mode(std::string_view s) noexcept {
    if (s == "strict") return UpLogMode::strict;
    if (s == "absolute") return UpLogMode::absolute;
    return std::nullopt;
}

[[nodiscard]] inline std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept {
    if (s == "json") return OutputFormat::json;
    if (s == "text") return OutputFormat::text;
    return std::nullopt;
}

}  // namespace daywatch

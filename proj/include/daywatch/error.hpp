// SPDX-License-Identifier: MIT
/**
 * @file error.hpp
 * @brief Structured errors shared by every pipeline stage
 *
 * A stage error names the stage, the formula that could not be evaluated,
 * the failure code and the quantity left undefined. Numeric payloads are
 * kept for diagnostics and are always finite when present.
 */

#pragma once

#include <boost/outcome.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace daywatch {

namespace outcome = BOOST_OUTCOME_V2_NAMESPACE;

enum class Stage { inputs, lyapunov, grid_model, grid_analysis, watch };

enum class ErrorCode {
    NonFinite,
    NonPositiveTime,
    NegativeParameter,
    NonPositivePermanent,
    Overflow,
    NegativeDiscriminant,
    RhoBelowTwo,
    ZeroTime,
    ZeroLp1,
    ZeroImpulse,
    ZeroPotential,
    NonPositiveGap,
    NegativeRadicand,
    NonPositivePotential,
    DegenerateChain,
    ZeroMiddle,
    ZeroP3,
};

struct Error {
    Stage stage = Stage::inputs;
    std::string formula;   ///< stable identifier of the formula, e.g. "elliptic_distance"
    ErrorCode code = ErrorCode::NonFinite;
    std::string quantity;  ///< the field or intermediate left undefined
    std::optional<double> value;  ///< offending value, if finite and informative

    bool operator==(const Error&) const = default;
};

template <class T>
using Result = outcome::result<T, Error, outcome::policy::terminate>;

[[nodiscard]] constexpr std::string_view to_string(Stage s) noexcept {
    switch (s) {
        case Stage::inputs: return "inputs";
        case Stage::lyapunov: return "lyapunov";
        case Stage::grid_model: return "grid-model";
        case Stage::grid_analysis: return "grid-analysis";
        case Stage::watch: return "watch";
    }
    return "unknown";
}

[[nodiscard]] constexpr std::string_view to_string(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NonPositiveTime: return "NonPositiveTime";
        case ErrorCode::NegativeParameter: return "NegativeParameter";
        case ErrorCode::NonPositivePermanent: return "NonPositivePermanent";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
        case ErrorCode::RhoBelowTwo: return "RhoBelowTwo";
        case ErrorCode::ZeroTime: return "ZeroTime";
        case ErrorCode::ZeroLp1: return "ZeroLp1";
        case ErrorCode::ZeroImpulse: return "ZeroImpulse";
        case ErrorCode::ZeroPotential: return "ZeroPotential";
        case ErrorCode::NonPositiveGap: return "NonPositiveGap";
        case ErrorCode::NegativeRadicand: return "NegativeRadicand";
        case ErrorCode::NonPositivePotential: return "NonPositivePotential";
        case ErrorCode::DegenerateChain: return "DegenerateChain";
        case ErrorCode::ZeroMiddle: return "ZeroMiddle";
        case ErrorCode::ZeroP3: return "ZeroP3";
    }
    return "Unknown";
}

[[nodiscard]] inline std::string describe(const Error& e) {
    std::string out{to_string(e.stage)};
    out += '/';
    out += e.formula;
    out += ": ";
    out += to_string(e.code);
    out += '(';
    out += e.quantity;
    out += ')';
    return out;
}

namespace detail {

[[nodiscard]] inline Error make_error(Stage stage, std::string_view formula, ErrorCode code,
                                      std::string_view quantity,
                                      std::optional<double> value = std::nullopt) {
    if (value && !std::isfinite(*value)) value.reset();
    return Error{stage, std::string{formula}, code, std::string{quantity}, value};
}

/// Turns a non-finite result into an Overflow error for `quantity`.
[[nodiscard]] inline Result<double> finite(double x, Stage stage, std::string_view formula,
                                           std::string_view quantity) {
    if (!std::isfinite(x)) {
        return outcome::failure(make_error(stage, formula, ErrorCode::Overflow, quantity));
    }
    return x;
}

}  // namespace detail

}  // namespace daywatch

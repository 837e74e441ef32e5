// SPDX-License-Identifier: MIT
/**
 * @file inputs.hpp
 * @brief Day-ahead parameter records, validation and time scaling
 *
 * The seven expected daily scalars arrive as an unvalidated RawRecord.
 * validate() checks every field and reports all violations at once;
 * scale_times() maps the four synchronization times onto the starred,
 * dimensionless values that populate the evolution matrix.
 */

#pragma once

#include "daywatch/error.hpp"

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace daywatch {

/// Field order used by CSV columns, JSON keys and sweeps.
inline constexpr std::array<std::string_view, 7> kFieldNames = {
    "t6_1", "t6_2", "t16", "t24", "k_c", "c_0", "delta"};

/// Unvalidated record, fields in kFieldNames order.
struct RawRecord {
    double t6_1 = 0.0;
    double t6_2 = 0.0;
    double t16 = 0.0;
    double t24 = 0.0;
    double k_c = 0.0;
    double c_0 = 0.0;
    double delta = 0.0;

    bool operator==(const RawRecord&) const = default;
};

struct FieldViolation {
    ErrorCode code;
    std::string field;

    bool operator==(const FieldViolation&) const = default;
};

/// Every violated field of one record, in field order.
struct ValidationError {
    std::vector<FieldViolation> violations;
};

class InputParameters;

template <class T>
using Validated = outcome::result<T, ValidationError, outcome::policy::terminate>;

/**
 * Validated expected daily parameters.
 *
 * Only constructible through validate(): every field is finite, the four
 * times (hours) are positive, and droop, price and error reduction are
 * non-negative.
 */
class InputParameters {
public:
    [[nodiscard]] double t6_1() const noexcept { return raw_.t6_1; }
    [[nodiscard]] double t6_2() const noexcept { return raw_.t6_2; }
    [[nodiscard]] double t16() const noexcept { return raw_.t16; }
    [[nodiscard]] double t24() const noexcept { return raw_.t24; }
    [[nodiscard]] double k_c() const noexcept { return raw_.k_c; }
    [[nodiscard]] double c_0() const noexcept { return raw_.c_0; }
    [[nodiscard]] double delta() const noexcept { return raw_.delta; }
    [[nodiscard]] const RawRecord& raw() const noexcept { return raw_; }

    bool operator==(const InputParameters&) const = default;

private:
    explicit InputParameters(const RawRecord& r) : raw_(r) {}
    friend Validated<InputParameters> validate(const RawRecord& raw);

    RawRecord raw_;
};

/// Starred times. Values are dimensionless and strictly positive.
struct ScaledTimes {
    double t6_1_s = 0.0;
    double t6_2_s = 0.0;
    double t16_s = 0.0;
    double t24_s = 0.0;

    bool operator==(const ScaledTimes&) const = default;
};

[[nodiscard]] inline double field_value(const RawRecord& r, std::size_t i) noexcept {
    const std::array<double, 7> v = {r.t6_1, r.t6_2, r.t16, r.t24, r.k_c, r.c_0, r.delta};
    return v[i];
}

inline void set_field(RawRecord& r, std::size_t i, double x) noexcept {
    const std::array<double*, 7> v = {&r.t6_1, &r.t6_2, &r.t16, &r.t24,
                                      &r.k_c,  &r.c_0,  &r.delta};
    *v[i] = x;
}

[[nodiscard]] inline Validated<InputParameters> validate(const RawRecord& raw) {
    ValidationError err;
    for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
        const double x = field_value(raw, i);
        const std::string name{kFieldNames[i]};
        if (!std::isfinite(x)) {
            err.violations.push_back({ErrorCode::NonFinite, name});
        } else if (i < 4 && x <= 0.0) {
            err.violations.push_back({ErrorCode::NonPositiveTime, name});
        } else if (i >= 4 && x < 0.0) {
            err.violations.push_back({ErrorCode::NegativeParameter, name});
        }
    }
    if (!err.violations.empty()) return outcome::failure(std::move(err));
    return InputParameters{raw};
}

/// Times past two days are accepted but reported.
inline constexpr double kMaxExpectedHours = 48.0;

/// Names of time fields outside (0, kMaxExpectedHours]. Never an error.
[[nodiscard]] inline std::vector<std::string> range_warnings(const InputParameters& p) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < 4; ++i) {
        if (field_value(p.raw(), i) > kMaxExpectedHours) out.emplace_back(kFieldNames[i]);
    }
    return out;
}

/// Times at or above this many hours are scaled by 1/10, below it by 2/10.
inline constexpr double kDoublingThreshold = 9.5;

[[nodiscard]] constexpr double scale_piecewise(double hours) noexcept {
    return hours < kDoublingThreshold ? 2.0 * hours / 10.0 : hours / 10.0;
}

/// T6,1 and T16 use the piecewise rule; T6,2 and T24 are always divided by 10.
[[nodiscard]] inline ScaledTimes scale_times(const InputParameters& p) noexcept {
    return ScaledTimes{
        .t6_1_s = scale_piecewise(p.t6_1()),
        .t6_2_s = p.t6_2() / 10.0,
        .t16_s = scale_piecewise(p.t16()),
        .t24_s = p.t24() / 10.0,
    };
}

}  // namespace daywatch

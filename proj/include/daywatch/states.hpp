// SPDX-License-Identifier: MIT
/**
 * @file states.hpp
 * @brief Market, grid and threat-level classification rules
 *
 * The market and grid rules as stated overlap (their "emergency" condition
 * implies the "restorative" one), so both classifiers test in the order
 * emergency, restorative, normal.
 *
 * The threat table leaves (market normal, grid restorative) and
 * (market normal, grid emergency) unspecified. Both map to `guarded` with
 * `paper_gap` set so consumers can tell the cell was filled in here.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

namespace daywatch {

enum class State { normal, restorative, emergency };

enum class ThreatLevel { low, guarded, elevated, high, severe };

[[nodiscard]] constexpr std::string_view to_string(State s) noexcept {
    switch (s) {
        case State::normal: return "normal";
        case State::restorative: return "restorative";
        case State::emergency: return "emergency";
    }
    return "unknown";
}

[[nodiscard]] constexpr std::string_view to_string(ThreatLevel t) noexcept {
    switch (t) {
        case ThreatLevel::low: return "low";
        case ThreatLevel::guarded: return "guarded";
        case ThreatLevel::elevated: return "elevated";
        case ThreatLevel::high: return "high";
        case ThreatLevel::severe: return "severe";
    }
    return "unknown";
}

struct Distances {
    double r_e = 0.0;
    double r_h = 0.0;
    double r_c = 0.0;
};

struct ReliabilityProbabilities {
    double p_s = 0.0;
    double p_t = 0.0;
    double p_g = 0.0;
};

/// Strict comparisons: a distance equal to r_c does not exceed it.
[[nodiscard]] constexpr State classify_market(const Distances& d) noexcept {
    const bool e_over = d.r_e > d.r_c;
    const bool h_over = d.r_h > d.r_c;
    if (e_over && h_over) return State::emergency;
    if (e_over || h_over) return State::restorative;
    return State::normal;
}

inline constexpr double kDefaultEqualityTolerance = 1e-6;

/// |x - p_g| <= eps * max(1, |p_g|)
[[nodiscard]] inline bool approx_equal(double x, double p_g, double eps) noexcept {
    return std::abs(x - p_g) <= eps * std::max(1.0, std::abs(p_g));
}

[[nodiscard]] inline State classify_grid(const ReliabilityProbabilities& p,
                                         double eps = kDefaultEqualityTolerance) noexcept {
    const bool star_eq = approx_equal(p.p_s, p.p_g, eps);
    const bool tri_eq = approx_equal(p.p_t, p.p_g, eps);
    if (star_eq && tri_eq) return State::emergency;
    if (star_eq || tri_eq) return State::restorative;
    return State::normal;
}

struct Threat {
    ThreatLevel level = ThreatLevel::low;
    bool paper_gap = false;

    bool operator==(const Threat&) const = default;
};

[[nodiscard]] constexpr Threat threat_level(State market, State grid) noexcept {
    switch (market) {
        case State::normal:
            if (grid == State::normal) return {ThreatLevel::low, false};
            return {ThreatLevel::guarded, true};
        case State::restorative:
            if (grid == State::normal) return {ThreatLevel::guarded, false};
            return {ThreatLevel::elevated, false};
        case State::emergency:
            if (grid == State::normal) return {ThreatLevel::high, false};
            return {ThreatLevel::severe, false};
    }
    return {ThreatLevel::guarded, true};
}

}  // namespace daywatch

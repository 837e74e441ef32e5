// SPDX-License-Identifier: MIT
/**
 * @file grid_analysis.hpp
 * @brief Ultra-hyperbolic potentials, trade volume, Riesz distances and
 *        the quenched-disorder probability
 *
 * Gamma values enter only at 1/2, 3/2 and 3 and are folded into the
 * constants: Gamma(1/2) = sqrt(pi), Gamma(3/2) = sqrt(pi)/2, Gamma(3) = 2.
 * That turns the elliptic distance into 1/(128 sqrt(U_s - U_p)) and the
 * ultra-hyperbolic one into sqrt(radicand)/(16 pi^(5/2)).
 *
 * v1 is treated as a probability downstream but nothing here forces it into
 * [0, 1]; out-of-range values are evaluated as written and flagged by the
 * caller.
 */

#pragma once

#include "daywatch/error.hpp"
#include "daywatch/grid_model.hpp"
#include "daywatch/lyapunov.hpp"
#include "daywatch/reliability.hpp"
#include "daywatch/states.hpp"

#include <cmath>
#include <numbers>
#include <string_view>

namespace daywatch {

/// (1/4)^2, the regularizer in both energy-potential terms.
inline constexpr double kQuarterSquared = 1.0 / 16.0;

/// 1.261060863 * pi; E1 divided by it plays the role of an inverse temperature.
inline constexpr double kQuenchConstant = 1.261060863 * std::numbers::pi;

enum class UpLogMode { strict, absolute };

[[nodiscard]] constexpr std::string_view to_string(UpLogMode m) noexcept {
    return m == UpLogMode::strict ? "strict" : "absolute";
}

struct Potentials {
    double v1 = 0.0;
    double w1 = 0.0;
    double u_s = 0.0;
    double u_p = 0.0;
    double p_x = 0.0;
};

struct EnergyPotential {
    double v1 = 0.0;
    double w1 = 0.0;
    double u_s = 0.0;
};

[[nodiscard]] inline Result<double> impulse(double l_p1, double t1) {
    if (l_p1 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "energy_potential",
                                                   ErrorCode::ZeroLp1, "v1"));
    }
    const double plus = l_p1 + t1;
    const double minus = l_p1 - t1;
    const double v1 = plus / (l_p1 * (plus * plus + kQuarterSquared)) +
                      minus / (l_p1 * (minus * minus + kQuarterSquared));
    return detail::finite(v1, Stage::grid_analysis, "energy_potential", "v1");
}

/// The log argument is positive for any finite input thanks to the 1/16 terms.
[[nodiscard]] inline Result<double> log_term(double l_p1, double t1) {
    if (l_p1 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "energy_potential",
                                                   ErrorCode::ZeroLp1, "w1"));
    }
    const double plus = l_p1 + t1;
    const double minus = l_p1 - t1;
    const double w1 = (3.0 / l_p1) * std::log((plus * plus + kQuarterSquared) /
                                              (minus * minus + kQuarterSquared));
    return detail::finite(w1, Stage::grid_analysis, "energy_potential", "w1");
}

[[nodiscard]] inline Result<double> energy_solution(double l_y1, double v1, double w1) {
    return detail::finite(l_y1 * l_y1 * v1 + w1, Stage::grid_analysis, "energy_potential",
                          "u_s");
}

[[nodiscard]] inline Result<EnergyPotential> energy_potential(const LyapunovExponents& l,
                                                              double t1) {
    auto v1 = impulse(l.l_p1, t1);
    if (!v1) return outcome::failure(v1.error());
    auto w1 = log_term(l.l_p1, t1);
    if (!w1) return outcome::failure(w1.error());
    auto u_s = energy_solution(l.l_y1, v1.value(), w1.value());
    if (!u_s) return outcome::failure(u_s.error());
    return EnergyPotential{v1.value(), w1.value(), u_s.value()};
}

[[nodiscard]] inline Result<double> auxiliary_momentum(double e1, double omega1, double omega2) {
    return detail::finite(2.0 * e1 - (omega1 * omega1 + omega2 * omega2) - 4.0,
                          Stage::grid_analysis, "frequency_potential", "p_x");
}

/// U_p = -(1/2 + 1/(4 v1)) (1 + p_x v1 / t1) exp(v1 t1)
[[nodiscard]] inline Result<double> frequency_solution(double p_x, double v1, double t1) {
    if (v1 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "frequency_potential",
                                                   ErrorCode::ZeroImpulse, "u_p"));
    }
    if (t1 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "frequency_potential",
                                                   ErrorCode::ZeroTime, "u_p"));
    }
    const double u_p =
        -(0.5 + 1.0 / (4.0 * v1)) * (1.0 + p_x * v1 / t1) * std::exp(v1 * t1);
    return detail::finite(u_p, Stage::grid_analysis, "frequency_potential", "u_p");
}

struct FrequencyPotential {
    double p_x = 0.0;
    double u_p = 0.0;
};

[[nodiscard]] inline Result<FrequencyPotential> frequency_potential(double e1, double omega1,
                                                                    double omega2, double v1,
                                                                    double t1) {
    auto p_x = auxiliary_momentum(e1, omega1, omega2);
    if (!p_x) return outcome::failure(p_x.error());
    auto u_p = frequency_solution(p_x.value(), v1, t1);
    if (!u_p) return outcome::failure(u_p.error());
    return FrequencyPotential{p_x.value(), u_p.value()};
}

struct TradeVolume {
    double percent = 0.0;         ///< raw, never clamped
    bool valid_percentage = false;
};

/// v_m = 100 - 9 pi^2 / (4 (U_s / (2 pi))^2)
[[nodiscard]] inline Result<TradeVolume> trade_volume(double u_s) {
    if (u_s == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "trade_volume",
                                                   ErrorCode::ZeroPotential, "v_m"));
    }
    constexpr double pi = std::numbers::pi;
    const double scaled = u_s / (2.0 * pi);
    auto v_m = detail::finite(100.0 - 9.0 * pi * pi / (4.0 * scaled * scaled),
                              Stage::grid_analysis, "trade_volume", "v_m");
    if (!v_m) return outcome::failure(v_m.error());
    return TradeVolume{v_m.value(), v_m.value() >= 0.0 && v_m.value() <= 100.0};
}

[[nodiscard]] inline Result<double> elliptic_distance(double u_s, double u_p) {
    const double gap = u_s - u_p;
    if (!(gap > 0.0)) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "elliptic_distance",
                                                   ErrorCode::NonPositiveGap, "r_e", gap));
    }
    return detail::finite(1.0 / (128.0 * std::sqrt(gap)), Stage::grid_analysis,
                          "elliptic_distance", "r_e");
}

[[nodiscard]] constexpr double hyperbolic_radicand(const GridModel& m) noexcept {
    return m.omega1 * m.omega1 + m.omega2 * m.omega2 + m.e1 * m.e1 - m.e2 * m.e2 - m.t1 * m.t1;
}

[[nodiscard]] inline Result<double> hyperbolic_distance_from_radicand(double radicand) {
    if (std::isfinite(radicand) && radicand < 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "hyperbolic_distance",
                                                   ErrorCode::NegativeRadicand, "r_h",
                                                   radicand));
    }
    constexpr double pi = std::numbers::pi;
    const double denom = 16.0 * pi * pi * std::sqrt(pi);
    return detail::finite(std::sqrt(radicand) / denom, Stage::grid_analysis,
                          "hyperbolic_distance", "r_h");
}

[[nodiscard]] inline Result<double> hyperbolic_distance(const GridModel& m) {
    return hyperbolic_distance_from_radicand(hyperbolic_radicand(m));
}

/// R_c = exp(-v1 l_p1) / (10 l_p1)
[[nodiscard]] inline Result<double> critical_distance(double v1, double l_p1) {
    if (l_p1 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_analysis, "critical_distance",
                                                   ErrorCode::ZeroLp1, "r_c"));
    }
    return detail::finite(std::exp(-v1 * l_p1) / (10.0 * l_p1), Stage::grid_analysis,
                          "critical_distance", "r_c");
}

/**
 * p_g = 1 - (1/U_s) exp(-4 (ln U_s - ln U_p)^2 E1 / (1.261060863 pi))
 *
 * U_p from the frequency solution is negative on many records. In strict
 * mode that is a NonPositivePotential error; absolute mode takes ln |U_p|.
 * U_s must be positive in both modes.
 */
[[nodiscard]] inline Result<double> quenched_probability(double u_s, double u_p, double e1,
                                                         UpLogMode mode = UpLogMode::strict) {
    if (!(u_s > 0.0)) {
        return outcome::failure(detail::make_error(Stage::grid_analysis,
                                                   "quenched_probability",
                                                   ErrorCode::NonPositivePotential, "u_s", u_s));
    }
    const double up = mode == UpLogMode::absolute ? std::abs(u_p) : u_p;
    if (!(up > 0.0)) {
        return outcome::failure(detail::make_error(Stage::grid_analysis,
                                                   "quenched_probability",
                                                   ErrorCode::NonPositivePotential, "u_p", u_p));
    }
    const double log_gap = std::log(u_s) - std::log(up);
    const double p_g = 1.0 - (1.0 / u_s) * std::exp(-4.0 * log_gap * log_gap * e1 / kQuenchConstant);
    return detail::finite(p_g, Stage::grid_analysis, "quenched_probability", "p_g");
}

[[nodiscard]] constexpr bool in_unit_interval(double x) noexcept { return x >= 0.0 && x <= 1.0; }

}  // namespace daywatch

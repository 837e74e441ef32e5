// SPDX-License-Identifier: MIT
/**
 * @file lyapunov.hpp
 * @brief The two pairs of day-ahead Lyapunov exponents
 *
 * Potential-force pair (l_p1, l_p2): l_p1 = delta + 1 and
 * l_p2 = (ln per(A))^2 / 10 + 1, where A is the evolution matrix built
 * from the scaled synchronization times.
 *
 * Free Poisson pair (l_y1, l_y2): l_y1 = exp(c_0/25), l_y2 = exp(k_c/10) + 1.
 *
 * Note on the evolution matrix: the last entry of row 4 is T*6,2, repeated
 * from the first entry of that row. A regular pattern would put T*16 there;
 * the layout is kept as given.
 */

#pragma once

#include "daywatch/error.hpp"
#include "daywatch/inputs.hpp"
#include "daywatch/permanent.hpp"

#include <cmath>
#include <utility>

namespace daywatch {

/// All entries are non-negative for valid inputs; (0,2)=1, (0,3)=0, (1,3)=1.
struct EvolutionMatrix {
    Matrix4 a{};

    bool operator==(const EvolutionMatrix&) const = default;
};

struct LyapunovExponents {
    double l_p1 = 1.0;
    double l_p2 = 1.0;
    double l_y1 = 1.0;
    double l_y2 = 2.0;
    double perm_a = 1.0;  ///< per(A), kept for diagnostics

    bool operator==(const LyapunovExponents&) const = default;
};

[[nodiscard]] constexpr EvolutionMatrix build_matrix(const ScaledTimes& s) noexcept {
    return EvolutionMatrix{Matrix4{{
        {s.t6_1_s, s.t6_2_s, 1.0, 0.0},
        {s.t24_s, s.t16_s, s.t6_2_s, 1.0},
        {s.t16_s, s.t24_s, s.t16_s, s.t6_2_s},
        {s.t6_2_s, s.t16_s, s.t24_s, s.t6_2_s},
    }}};
}

[[nodiscard]] constexpr double permanent(const EvolutionMatrix& m) noexcept {
    return permanent_ryser(m.a);
}

[[nodiscard]] constexpr double potential_exponent(double delta) noexcept { return delta + 1.0; }

/// ln^2 is read as (ln x)^2.
[[nodiscard]] inline Result<double> entropy_exponent(double perm_a) {
    if (!(perm_a > 0.0)) {
        return outcome::failure(detail::make_error(Stage::lyapunov, "entropy_exponent",
                                                   ErrorCode::NonPositivePermanent, "l_p2",
                                                   perm_a));
    }
    const double ln = std::log(perm_a);
    return detail::finite(ln * ln / 10.0 + 1.0, Stage::lyapunov, "entropy_exponent", "l_p2");
}

[[nodiscard]] inline Result<std::pair<double, double>> potential_exponents(double delta,
                                                                         double perm_a) {
    auto l_p2 = entropy_exponent(perm_a);
    if (!l_p2) return outcome::failure(l_p2.error());
    auto l_p1 = detail::finite(potential_exponent(delta), Stage::lyapunov,
                               "potential_exponent", "l_p1");
    if (!l_p1) return outcome::failure(l_p1.error());
    return std::pair{l_p1.value(), l_p2.value()};
}

[[nodiscard]] inline Result<double> price_exponent(double c_0) {
    return detail::finite(std::exp(c_0 / 25.0), Stage::lyapunov, "price_exponent", "l_y1");
}

[[nodiscard]] inline Result<double> droop_exponent(double k_c) {
    return detail::finite(std::exp(k_c / 10.0) + 1.0, Stage::lyapunov, "droop_exponent",
                          "l_y2");
}

[[nodiscard]] inline Result<std::pair<double, double>> free_poisson_exponents(double c_0,
                                                                            double k_c) {
    auto l_y1 = price_exponent(c_0);
    if (!l_y1) return outcome::failure(l_y1.error());
    auto l_y2 = droop_exponent(k_c);
    if (!l_y2) return outcome::failure(l_y2.error());
    return std::pair{l_y1.value(), l_y2.value()};
}

/// All four exponents; fails on the first undefined one.
[[nodiscard]] inline Result<LyapunovExponents> compute_exponents(const InputParameters& p) {
    const double perm_a = permanent(build_matrix(scale_times(p)));
    auto lp = potential_exponents(p.delta(), perm_a);
    if (!lp) return outcome::failure(lp.error());
    auto ly = free_poisson_exponents(p.c_0(), p.k_c());
    if (!ly) return outcome::failure(ly.error());
    return LyapunovExponents{lp.value().first, lp.value().second, ly.value().first,
                             ly.value().second, perm_a};
}

}  // namespace daywatch

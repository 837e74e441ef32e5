// SPDX-License-Identifier: MIT
/**
 * @file grid_model.hpp
 * @brief Day-ahead grid model M0 = (E1, E2, w1, w2, t1, t2)
 *
 * (E1, t1) comes straight from the four exponents. (E2, t2) comes from the
 * linear stability factor rho, the larger root of
 *
 *     rho^2 - (2 + l_p1) rho + (4 - (2 + l_p1)^2)/2 - 2 = 0.
 *
 * The discriminant of that quadratic simplifies to 3 (2 + l_p1)^2, so rho is
 * never below 2 for l_p1 >= 0; the guards below only fire on corrupted
 * intermediates. Only the closed-form root is used; the quadratic is not
 * iterated as a map.
 */

#pragma once

#include "daywatch/error.hpp"
#include "daywatch/lyapunov.hpp"

#include <cmath>
#include <utility>

namespace daywatch {

struct SeparabilityRoot {
    double rho = 2.0;
    double discriminant = 0.0;

    bool operator==(const SeparabilityRoot&) const = default;
};

struct GridModel {
    double e1 = 1.0;
    double e2 = 1.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;

    bool operator==(const GridModel&) const = default;
};

[[nodiscard]] inline Result<std::pair<double, double>> first_pair(const LyapunovExponents& l) {
    auto e1 = detail::finite(l.l_p1 * l.l_p2, Stage::grid_model, "first_pair", "e1");
    if (!e1) return outcome::failure(e1.error());
    const double mixed = ((l.l_y1 + l.l_p1) / 2.0) * ((l.l_y2 + l.l_p2) / 2.0);
    auto t1 = detail::finite(0.25 * (1.0 + mixed), Stage::grid_model, "first_pair", "t1");
    if (!t1) return outcome::failure(t1.error());
    return std::pair{e1.value(), t1.value()};
}

[[nodiscard]] inline Result<SeparabilityRoot> separability(double l_p1) {
    const double a = 2.0 + l_p1;
    const double disc = a * a - 4.0 * ((4.0 - a * a) / 2.0 - 2.0);
    if (std::isfinite(disc) && disc < 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_model, "separability_root",
                                                   ErrorCode::NegativeDiscriminant, "rho",
                                                   disc));
    }
    auto rho = detail::finite((a + std::sqrt(disc)) / 2.0, Stage::grid_model,
                              "separability_root", "rho");
    if (!rho) return outcome::failure(rho.error());
    return SeparabilityRoot{rho.value(), disc};
}

/// E2 = (rho + sqrt(rho^2 - 4))/2, t2 = 5 (rho - sqrt(rho^2 - 4)).
[[nodiscard]] inline Result<std::pair<double, double>> second_pair(const SeparabilityRoot& root) {
    const double rho = root.rho;
    if (!(rho >= 2.0)) {
        return outcome::failure(detail::make_error(Stage::grid_model, "second_pair",
                                                   ErrorCode::RhoBelowTwo, "e2", rho));
    }
    const double s = std::sqrt((rho - 2.0) * (rho + 2.0));
    auto e2 = detail::finite((rho + s) / 2.0, Stage::grid_model, "second_pair", "e2");
    if (!e2) return outcome::failure(e2.error());
    return std::pair{e2.value(), 5.0 * (rho - s)};
}

[[nodiscard]] inline Result<double> frequency_one(double l_p1, double t1) {
    if (t1 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_model, "angular_frequencies",
                                                   ErrorCode::ZeroTime, "t1"));
    }
    return detail::finite(2.0 * l_p1 / t1, Stage::grid_model, "angular_frequencies", "omega1");
}

[[nodiscard]] inline Result<double> frequency_two(double l_y1, double t2) {
    if (t2 == 0.0) {
        return outcome::failure(detail::make_error(Stage::grid_model, "angular_frequencies",
                                                   ErrorCode::ZeroTime, "t2"));
    }
    return detail::finite(2.0 * l_y1 / t2, Stage::grid_model, "angular_frequencies", "omega2");
}

[[nodiscard]] inline Result<std::pair<double, double>> frequencies(const LyapunovExponents& l,
                                                                 double t1, double t2) {
    auto w1 = frequency_one(l.l_p1, t1);
    if (!w1) return outcome::failure(w1.error());
    auto w2 = frequency_two(l.l_y1, t2);
    if (!w2) return outcome::failure(w2.error());
    return std::pair{w1.value(), w2.value()};
}

[[nodiscard]] constexpr GridModel assemble(double e1, double e2, double omega1, double omega2,
                                           double t1, double t2) noexcept {
    return GridModel{e1, e2, omega1, omega2, t1, t2};
}

[[nodiscard]] inline Result<GridModel> build_grid_model(const LyapunovExponents& l) {
    auto p1 = first_pair(l);
    if (!p1) return outcome::failure(p1.error());
    auto root = separability(l.l_p1);
    if (!root) return outcome::failure(root.error());
    auto p2 = second_pair(root.value());
    if (!p2) return outcome::failure(p2.error());
    const auto [e1, t1] = p1.value();
    const auto [e2, t2] = p2.value();
    auto w = frequencies(l, t1, t2);
    if (!w) return outcome::failure(w.error());
    return assemble(e1, e2, w.value().first, w.value().second, t1, t2);
}

}  // namespace daywatch

// SPDX-License-Identifier: MIT
/**
 * @file reliability.hpp
 * @brief Closed-form edge-deletion reliability polynomials
 *
 * Star grid: reliability polynomial of the complete graph K6 (degree 15).
 * Triangle grid: reliability polynomial of K3,3 (degree 12).
 * Both satisfy p(0) = 1 and p(1) = 0. The argument is the edge-deletion
 * probability; values outside [0, 1] are evaluated as written.
 *
 * The star polynomial has a fivefold root at 1 and the triangle polynomial
 * an eightfold one, so a double-precision Horner pass loses every significant
 * digit near 1. The recurrence runs in a 1024-bit binary float instead: with
 * integer coefficients and a double argument every step is exact for
 * 1/2 <= |x| <= 2, and the result is rounded once.
 */

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace daywatch {

/// Coefficients from the highest degree down to the constant term.
inline constexpr std::array<double, 16> kStarCoefficients = {
    -120.0, 360.0, -270.0, -90.0, 120.0, 0.0, 20.0, -15.0,
    0.0,    0.0,   -6.0,   0.0,   0.0,   0.0, 0.0,  1.0};

inline constexpr std::array<double, 13> kTriangleCoefficients = {
    79.0, -560.0, 1668.0, -2656.0, 2331.0, -960.0, 0.0, 96.0, 21.0, -16.0, -4.0, 0.0, 1.0};

/// Working type for polynomial evaluation.
using WideFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<1024, boost::multiprecision::digit_base_2, void,
                                         std::int32_t>,
    boost::multiprecision::et_off>;

template <class T>
[[nodiscard]] T horner(std::span<const double> high_to_low, const T& x) {
    T acc{0};
    for (const double c : high_to_low) acc = acc * x + T{c};
    return acc;
}

[[nodiscard]] inline double star_reliability(double v1) {
    return static_cast<double>(horner(kStarCoefficients, WideFloat{v1}));
}

[[nodiscard]] inline double triangle_reliability(double v1) {
    return static_cast<double>(horner(kTriangleCoefficients, WideFloat{v1}));
}

}  // namespace daywatch

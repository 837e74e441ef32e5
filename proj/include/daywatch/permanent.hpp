// SPDX-License-Identifier: MIT
/**
 * @file permanent.hpp
 * @brief 4x4 matrix permanent: Ryser inclusion-exclusion and full expansion
 *
 * permanent_ryser() is the production path. permanent_expansion() sums all
 * 24 permutation products and is kept as the reference the Ryser result is
 * checked against.
 */

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <numeric>

namespace daywatch {

inline constexpr std::size_t kOrder = 4;

using Matrix4 = std::array<std::array<double, kOrder>, kOrder>;

/// per(A) = (-1)^n sum over column subsets S of (-1)^|S| prod_i sum_{j in S} a_ij
[[nodiscard]] constexpr double permanent_ryser(const Matrix4& a) noexcept {
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << kOrder); ++mask) {
        double prod = 1.0;
        for (std::size_t i = 0; i < kOrder; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < kOrder; ++j) {
                if (mask & (1u << j)) row_sum += a[i][j];
            }
            prod *= row_sum;
        }
        const bool odd = ((kOrder - static_cast<std::size_t>(std::popcount(mask))) % 2) != 0;
        total += odd ? -prod : prod;
    }
    return total;
}

[[nodiscard]] constexpr double permanent_expansion(const Matrix4& a) noexcept {
    std::array<std::size_t, kOrder> perm{};
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double total = 0.0;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < kOrder; ++i) prod *= a[i][perm[i]];
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

[[nodiscard]] constexpr Matrix4 transpose(const Matrix4& a) noexcept {
    Matrix4 t{};
    for (std::size_t i = 0; i < kOrder; ++i)
        for (std::size_t j = 0; j < kOrder; ++j) t[j][i] = a[i][j];
    return t;
}

}  // namespace daywatch

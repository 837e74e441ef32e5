// SPDX-License-Identifier: MIT
/**
 * @file daywatch.hpp
 * @brief Umbrella header for the day-ahead prognostic watch library
 */

#pragma once

#include "daywatch/config.hpp"
#include "daywatch/error.hpp"
#include "daywatch/grid_analysis.hpp"
#include "daywatch/grid_model.hpp"
#include "daywatch/inputs.hpp"
#include "daywatch/io.hpp"
#include "daywatch/lyapunov.hpp"
#include "daywatch/permanent.hpp"
#include "daywatch/reliability.hpp"
#include "daywatch/states.hpp"
#include "daywatch/watch.hpp"

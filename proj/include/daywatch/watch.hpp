// SPDX-License-Identifier: MIT
/**
 * @file watch.hpp
 * @brief Watch error probabilities and the end-to-end day-ahead pipeline
 *
 * False alarm: the three distances are sorted into R2 <= r <= R1 and
 *
 *     p_f = (2/3) (R2 / (R2 - R1)) ((r - R1) / r)^2.
 *
 * With that chain R2 - R1 <= 0, so p_f is never positive for distinct
 * distances. The formula is evaluated as written; the raw value and its
 * [0, 1] clamp are both reported.
 *
 * Miss: the three reliabilities are sorted into p3* <= p2* <= p1*, then
 * p1 = p1*, p2 = 1 - p2* / 2, p3 = p3* / 2, p4 = (k_c/3.5)^4 p3 and
 *
 *     p_m = 1 - 2 sqrt(p4/p3) (sqrt(x^2 (1-x)^2 (p1-p2)^2 + p1 p2) + sqrt(p3 p4)),
 *
 * with x = v_m / 100. k_c above 3.5 (p4 > p3) is allowed.
 *
 * run_watch() evaluates every quantity whose inputs are defined. A failed
 * formula records a structured error and leaves only its dependents
 * undefined.
 */

#pragma once

#include "daywatch/config.hpp"
#include "daywatch/error.hpp"
#include "daywatch/grid_analysis.hpp"
#include "daywatch/grid_model.hpp"
#include "daywatch/inputs.hpp"
#include "daywatch/lyapunov.hpp"
#include "daywatch/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace daywatch {

/// r_small <= r_mid <= r_big, a permutation of (R_e, R_h, R_c).
struct DistanceChain {
    double r_big = 0.0;
    double r_mid = 0.0;
    double r_small = 0.0;

    bool operator==(const DistanceChain&) const = default;
};

struct ProbabilityChain {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;

    bool operator==(const ProbabilityChain&) const = default;
};

/// Raw value, its clamp to [0, 1], and whether they differ.
struct ClampedProbability {
    double raw = 0.0;
    double clamped = 0.0;
    bool out_of_range = false;

    bool operator==(const ClampedProbability&) const = default;
};

[[nodiscard]] constexpr ClampedProbability clamp_probability(double raw) noexcept {
    const double c = std::clamp(raw, 0.0, 1.0);
    return {raw, c, c != raw};
}

namespace detail {

/// Ascending sort; ties keep the argument order.
[[nodiscard]] inline std::array<double, 3> sorted3(double a, double b, double c) {
    std::array<double, 3> v{a, b, c};
    std::stable_sort(v.begin(), v.end());
    return v;
}

}  // namespace detail

[[nodiscard]] inline DistanceChain distance_chain(const Distances& d) {
    const auto s = detail::sorted3(d.r_e, d.r_h, d.r_c);
    return DistanceChain{s[2], s[1], s[0]};
}

[[nodiscard]] inline ProbabilityChain probability_chain(const ReliabilityProbabilities& p,
                                                        double k_c) {
    const auto s = detail::sorted3(p.p_s, p.p_t, p.p_g);
    const double p3 = s[0] / 2.0;
    const double ratio = k_c / 3.5;
    return ProbabilityChain{s[2], 1.0 - s[1] / 2.0, p3, ratio * ratio * ratio * ratio * p3};
}

struct FalseAlarm {
    DistanceChain chain;
    ClampedProbability p;
};

[[nodiscard]] inline Result<double> false_alarm_raw(const DistanceChain& c) {
    if (c.r_small == c.r_big) {
        return outcome::failure(detail::make_error(Stage::watch, "false_alarm",
                                                   ErrorCode::DegenerateChain, "p_f",
                                                   c.r_big));
    }
    if (c.r_mid == 0.0) {
        return outcome::failure(detail::make_error(Stage::watch, "false_alarm",
                                                   ErrorCode::ZeroMiddle, "p_f"));
    }
    const double ratio = (c.r_mid - c.r_big) / c.r_mid;
    return detail::finite((2.0 / 3.0) * (c.r_small / (c.r_small - c.r_big)) * ratio * ratio,
                          Stage::watch, "false_alarm", "p_f");
}

[[nodiscard]] inline Result<FalseAlarm> false_alarm(const Distances& d) {
    const auto chain = distance_chain(d);
    auto raw = false_alarm_raw(chain);
    if (!raw) return outcome::failure(raw.error());
    return FalseAlarm{chain, clamp_probability(raw.value())};
}

struct Miss {
    ProbabilityChain chain;
    ClampedProbability p;
};

[[nodiscard]] inline Result<double> miss_probability_raw(const ProbabilityChain& c,
                                                         double v_m) {
    if (c.p3 == 0.0) {
        return outcome::failure(detail::make_error(Stage::watch, "miss_probability",
                                                   ErrorCode::ZeroP3, "p_m"));
    }
    const double x = v_m / 100.0;
    const double spread = c.p1 - c.p2;
    const double inner = x * x * (1.0 - x) * (1.0 - x) * spread * spread + c.p1 * c.p2;
    if (inner < 0.0) {
        return outcome::failure(detail::make_error(Stage::watch, "miss_probability",
                                                   ErrorCode::NegativeRadicand, "p_m", inner));
    }
    const double p_m =
        1.0 - 2.0 * std::sqrt(c.p4 / c.p3) * (std::sqrt(inner) + std::sqrt(c.p3 * c.p4));
    return detail::finite(p_m, Stage::watch, "miss_probability", "p_m");
}

[[nodiscard]] inline Result<Miss> miss_probability(const ReliabilityProbabilities& p, double k_c,
                                                   double v_m) {
    const auto chain = probability_chain(p, k_c);
    auto raw = miss_probability_raw(chain, v_m);
    if (!raw) return outcome::failure(raw.error());
    return Miss{chain, clamp_probability(raw.value())};
}

/// Every intermediate of one run. Empty optionals are undefined quantities.
struct Trace {
    ScaledTimes scaled;
    std::optional<double> perm_a;
    std::optional<double> l_p1, l_p2, l_y1, l_y2;
    std::optional<double> discriminant, rho;
    std::optional<double> e1, e2, omega1, omega2, t1, t2;
    std::optional<double> v1, w1, u_s, p_x, u_p;
    std::optional<double> r_e, r_h_radicand, r_h, r_c;
    std::optional<double> p_s, p_t, p_g;
    std::optional<DistanceChain> distance_chain;
    std::optional<ProbabilityChain> probability_chain;
};

struct ReportFlags {
    bool paper_gap_flag = false;
    std::optional<bool> valid_percentage;
    std::optional<bool> v1_in_unit_interval;
    std::optional<bool> ps_out_of_range;
    std::optional<bool> pt_out_of_range;
    std::optional<bool> pg_out_of_range;
    std::optional<bool> pf_out_of_range;
    std::optional<bool> pm_out_of_range;
    bool pg_undefined = false;
};

struct WatchReport {
    std::string date;  ///< opaque label carried from the input row
    InputParameters input;
    Trace trace;
    std::optional<double> trade_volume_pct;
    std::optional<State> market_state;
    std::optional<State> grid_state;
    std::optional<ThreatLevel> threat_level;
    std::optional<double> p_false_alarm_raw;
    std::optional<double> p_false_alarm;
    std::optional<double> p_miss_raw;
    std::optional<double> p_miss;
    ReportFlags flags;
    std::vector<Error> errors;

    /// True when any error was recorded or any validity flag is raised.
    [[nodiscard]] bool degraded() const noexcept {
        const auto raised = [](const std::optional<bool>& f) { return f.value_or(false); };
        return !errors.empty() || flags.paper_gap_flag || flags.pg_undefined ||
               !flags.valid_percentage.value_or(false) || !flags.v1_in_unit_interval.value_or(false) ||
               raised(flags.ps_out_of_range) || raised(flags.pt_out_of_range) ||
               raised(flags.pg_out_of_range) || raised(flags.pf_out_of_range) ||
               raised(flags.pm_out_of_range);
    }
};

/**
 * Replaces intermediates right after they are computed. A set override also
 * discards any error raised while computing that quantity. Used for what-if
 * diagnostics and to drive each error path of the pipeline.
 */
struct TraceOverrides {
    std::optional<double> perm_a;
    std::optional<double> t1;
    std::optional<double> t2;
    std::optional<double> rho;
    std::optional<double> v1;
    std::optional<double> u_s;
    std::optional<double> u_p;
    std::optional<double> r_h_radicand;
    std::optional<double> r_e;
    std::optional<double> r_h;
    std::optional<double> r_c;
    std::optional<double> p_s;
    std::optional<double> p_t;
    std::optional<double> p_g;
};

namespace detail {

class Evaluator {
public:
    explicit Evaluator(std::vector<Error>& errors) : errors_(errors) {}

    /// Stores a result, or records its error; an override wins over both.
    std::optional<double> take(Result<double> r, const std::optional<double>& override_value) {
        if (override_value) return override_value;
        if (r) return r.value();
        errors_.push_back(r.error());
        return std::nullopt;
    }

    std::optional<double> take(Result<double> r) { return take(std::move(r), std::nullopt); }

    void record(const Error& e) { errors_.push_back(e); }

private:
    std::vector<Error>& errors_;
};

template <class... T>
[[nodiscard]] constexpr bool all(const std::optional<T>&... v) noexcept {
    return (v.has_value() && ...);
}

}  // namespace detail

[[nodiscard]] inline WatchReport run_watch(const InputParameters& params,
                                           const RunConfig& config = {},
                                           const TraceOverrides& ov = {},
                                           std::string date = {}) {
    WatchReport rep{std::move(date), params, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    Trace& t = rep.trace;
    detail::Evaluator ev{rep.errors};

    // Exponents
    t.scaled = scale_times(params);
    t.perm_a = ov.perm_a ? ov.perm_a : std::optional{permanent(build_matrix(t.scaled))};
    t.l_p1 = ev.take(detail::finite(potential_exponent(params.delta()), Stage::lyapunov,
                                    "potential_exponent", "l_p1"));
    t.l_p2 = ev.take(entropy_exponent(*t.perm_a));
    t.l_y1 = ev.take(price_exponent(params.c_0()));
    t.l_y2 = ev.take(droop_exponent(params.k_c()));

    // Grid model
    if (detail::all(t.l_p1, t.l_p2, t.l_y1, t.l_y2)) {
        const LyapunovExponents l{*t.l_p1, *t.l_p2, *t.l_y1, *t.l_y2, *t.perm_a};
        if (auto p = first_pair(l)) {
            t.e1 = p.value().first;
            t.t1 = p.value().second;
        } else {
            ev.record(p.error());
        }
    }
    if (ov.t1) t.t1 = ov.t1;
    if (t.l_p1) {
        if (auto root = separability(*t.l_p1)) {
            t.discriminant = root.value().discriminant;
            t.rho = root.value().rho;
        } else {
            ev.record(root.error());
        }
    }
    if (ov.rho) t.rho = ov.rho;
    if (t.rho) {
        if (auto p = second_pair(SeparabilityRoot{*t.rho, t.discriminant.value_or(0.0)})) {
            t.e2 = p.value().first;
            t.t2 = p.value().second;
        } else {
            ev.record(p.error());
        }
    }
    if (ov.t2) t.t2 = ov.t2;
    if (detail::all(t.l_p1, t.t1)) t.omega1 = ev.take(frequency_one(*t.l_p1, *t.t1));
    if (detail::all(t.l_y1, t.t2)) t.omega2 = ev.take(frequency_two(*t.l_y1, *t.t2));

    // Potentials
    if (detail::all(t.l_p1, t.t1)) {
        t.v1 = ev.take(impulse(*t.l_p1, *t.t1), ov.v1);
        t.w1 = ev.take(log_term(*t.l_p1, *t.t1));
    } else if (ov.v1) {
        t.v1 = ov.v1;
    }
    if (detail::all(t.l_y1, t.v1, t.w1)) {
        t.u_s = ev.take(energy_solution(*t.l_y1, *t.v1, *t.w1), ov.u_s);
    } else if (ov.u_s) {
        t.u_s = ov.u_s;
    }
    if (detail::all(t.e1, t.omega1, t.omega2)) {
        t.p_x = ev.take(auxiliary_momentum(*t.e1, *t.omega1, *t.omega2));
    }
    if (detail::all(t.p_x, t.v1, t.t1)) {
        t.u_p = ev.take(frequency_solution(*t.p_x, *t.v1, *t.t1), ov.u_p);
    } else if (ov.u_p) {
        t.u_p = ov.u_p;
    }

    // Trade volume
    if (t.u_s) {
        if (auto v = trade_volume(*t.u_s)) {
            rep.trade_volume_pct = v.value().percent;
            rep.flags.valid_percentage = v.value().valid_percentage;
        } else {
            ev.record(v.error());
        }
    }

    // Distances and market state
    if (detail::all(t.u_s, t.u_p)) t.r_e = ev.take(elliptic_distance(*t.u_s, *t.u_p), ov.r_e);
    else if (ov.r_e) t.r_e = ov.r_e;
    if (detail::all(t.e1, t.e2, t.omega1, t.omega2, t.t1)) {
        t.r_h_radicand = hyperbolic_radicand(assemble(*t.e1, *t.e2, *t.omega1, *t.omega2, *t.t1,
                                                      t.t2.value_or(0.0)));
    }
    if (ov.r_h_radicand) t.r_h_radicand = ov.r_h_radicand;
    if (t.r_h_radicand) t.r_h = ev.take(hyperbolic_distance_from_radicand(*t.r_h_radicand), ov.r_h);
    else if (ov.r_h) t.r_h = ov.r_h;
    if (detail::all(t.v1, t.l_p1)) t.r_c = ev.take(critical_distance(*t.v1, *t.l_p1), ov.r_c);
    else if (ov.r_c) t.r_c = ov.r_c;

    if (detail::all(t.r_e, t.r_h, t.r_c)) {
        const Distances d{*t.r_e, *t.r_h, *t.r_c};
        rep.market_state = classify_market(d);
        t.distance_chain = distance_chain(d);
        if (auto pf = false_alarm_raw(*t.distance_chain)) {
            const auto c = clamp_probability(pf.value());
            rep.p_false_alarm_raw = c.raw;
            rep.p_false_alarm = c.clamped;
            rep.flags.pf_out_of_range = c.out_of_range;
        } else {
            ev.record(pf.error());
        }
    }

    // Reliability and grid state
    if (t.v1) {
        rep.flags.v1_in_unit_interval = in_unit_interval(*t.v1);
        t.p_s = ev.take(detail::finite(star_reliability(*t.v1), Stage::grid_analysis,
                                       "star_reliability", "p_s"),
                        ov.p_s);
        t.p_t = ev.take(detail::finite(triangle_reliability(*t.v1), Stage::grid_analysis,
                                       "triangle_reliability", "p_t"),
                        ov.p_t);
    } else {
        t.p_s = ov.p_s;
        t.p_t = ov.p_t;
    }
    if (detail::all(t.u_s, t.u_p, t.e1)) {
        t.p_g = ev.take(quenched_probability(*t.u_s, *t.u_p, *t.e1, config.up_log_mode), ov.p_g);
    } else if (ov.p_g) {
        t.p_g = ov.p_g;
    }
    rep.flags.pg_undefined = !t.p_g.has_value();
    const auto out_of_range = [](const std::optional<double>& p) -> std::optional<bool> {
        if (!p) return std::nullopt;
        return !in_unit_interval(*p);
    };
    rep.flags.ps_out_of_range = out_of_range(t.p_s);
    rep.flags.pt_out_of_range = out_of_range(t.p_t);
    rep.flags.pg_out_of_range = out_of_range(t.p_g);

    if (detail::all(t.p_s, t.p_t, t.p_g)) {
        const ReliabilityProbabilities p{*t.p_s, *t.p_t, *t.p_g};
        rep.grid_state = classify_grid(p, config.equality_tolerance);
        if (rep.trade_volume_pct) {
            t.probability_chain = probability_chain(p, params.k_c());
            if (auto pm = miss_probability_raw(*t.probability_chain, *rep.trade_volume_pct)) {
                const auto c = clamp_probability(pm.value());
                rep.p_miss_raw = c.raw;
                rep.p_miss = c.clamped;
                rep.flags.pm_out_of_range = c.out_of_range;
            } else {
                ev.record(pm.error());
            }
        }
    }

    if (rep.market_state && rep.grid_state) {
        const auto threat = threat_level(*rep.market_state, *rep.grid_state);
        rep.threat_level = threat.level;
        rep.flags.paper_gap_flag = threat.paper_gap;
    }
    return rep;
}

}  // namespace daywatch

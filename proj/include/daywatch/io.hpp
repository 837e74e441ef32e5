// SPDX-License-Identifier: MIT
/**
 * @file io.hpp
 * @brief Record ingestion (CSV, JSON), report serialization and sweeps
 *
 * CSV layout, header required:
 *
 *     date,t6_1,t6_2,t16,t24,k_c,c_0,delta
 *
 * `date` is an opaque label. JSON input is an array of objects with the same
 * keys (`date` optional). Report JSON uses a fixed key order; floating-point
 * numbers are written in the shortest form that round-trips to the same
 * 64-bit value, and undefined quantities are written as null.
 */

#pragma once

#include "daywatch/config.hpp"
#include "daywatch/inputs.hpp"
#include "daywatch/watch.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace daywatch {

using ordered_json = nlohmann::ordered_json;

enum class InputFormat { csv, json };

[[nodiscard]] inline std::optional<InputFormat> parse_input_format(std::string_view s) noexcept {
    if (s == "csv") return InputFormat::csv;
    if (s == "json") return InputFormat::json;
    return std::nullopt;
}

struct Record {
    std::string date;
    InputParameters params;
};

struct IoError {
    enum class Kind { parse, validation };
    Kind kind = Kind::parse;
    std::size_t row = 0;  ///< 1-based data row / array element; 0 for the header
    std::string detail;
    std::vector<FieldViolation> violations;  ///< set for validation errors
};

template <class T>
using IoResult = outcome::result<T, IoError, outcome::policy::terminate>;

inline constexpr std::string_view kCsvHeader = "date,t6_1,t6_2,t16,t24,k_c,c_0,delta";

namespace detail {

[[nodiscard]] inline std::string_view trim(std::string_view s) noexcept {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

[[nodiscard]] inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

[[nodiscard]] inline std::optional<double> parse_double(std::string_view s) noexcept {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return x;
}

[[nodiscard]] inline IoResult<Record> finish_row(std::size_t row, std::string date,
                                                 const RawRecord& raw) {
    auto v = validate(raw);
    if (!v) {
        const auto& viol = v.error().violations;
        return outcome::failure(IoError{IoError::Kind::validation, row,
                                        "invalid field " + viol.front().field, viol});
    }
    return Record{std::move(date), v.value()};
}

inline IoResult<std::vector<Record>> parse_csv(std::string_view text) {
    std::vector<Record> out;
    bool header_seen = false;
    std::size_t row = 0;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            std::string compact;
            for (auto cell : split(line, ',')) {
                if (!compact.empty()) compact += ',';
                compact += trim(cell);
            }
            if (compact != kCsvHeader) {
                return outcome::failure(IoError{IoError::Kind::parse, 0,
                                                "expected header '" + std::string{kCsvHeader} + "'",
                                                {}});
            }
            header_seen = true;
            continue;
        }
        ++row;
        const auto cells = split(line, ',');
        if (cells.size() != kFieldNames.size() + 1) {
            return outcome::failure(IoError{IoError::Kind::parse, row,
                                            "expected 8 columns, got " +
                                                std::to_string(cells.size()),
                                            {}});
        }
        RawRecord raw;
        for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
            const auto x = parse_double(cells[i + 1]);
            if (!x) {
                return outcome::failure(IoError{IoError::Kind::parse, row,
                                                "field " + std::string{kFieldNames[i]} +
                                                    ": not a number",
                                                {}});
            }
            set_field(raw, i, *x);
        }
        auto rec = finish_row(row, std::string{trim(cells[0])}, raw);
        if (!rec) return outcome::failure(rec.error());
        out.push_back(std::move(rec.value()));
    }
    return out;
}

inline IoResult<std::vector<Record>> parse_json(std::string_view text) {
    std::vector<Record> out;
    if (trim(text).empty()) return out;
    ordered_json doc = ordered_json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded()) {
        return outcome::failure(IoError{IoError::Kind::parse, 0, "malformed JSON", {}});
    }
    if (!doc.is_array()) {
        return outcome::failure(IoError{IoError::Kind::parse, 0, "expected a JSON array", {}});
    }
    std::size_t row = 0;
    for (const auto& obj : doc) {
        ++row;
        if (!obj.is_object()) {
            return outcome::failure(IoError{IoError::Kind::parse, row, "expected an object", {}});
        }
        std::string date;
        if (auto it = obj.find("date"); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) {
                return outcome::failure(IoError{IoError::Kind::parse, row,
                                                "field date: expected a string", {}});
            }
            date = it->get<std::string>();
        }
        RawRecord raw;
        for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
            const std::string key{kFieldNames[i]};
            const auto it = obj.find(key);
            if (it == obj.end()) {
                return outcome::failure(IoError{IoError::Kind::parse, row,
                                                "missing field " + key, {}});
            }
            if (!it->is_number()) {
                return outcome::failure(IoError{IoError::Kind::parse, row,
                                                "field " + key + ": not a number", {}});
            }
            set_field(raw, i, it->get<double>());
        }
        auto rec = finish_row(row, std::move(date), raw);
        if (!rec) return outcome::failure(rec.error());
        out.push_back(std::move(rec.value()));
    }
    return out;
}

[[nodiscard]] inline std::string shortest(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline void write_json(std::string& out, const ordered_json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += ordered_json(k).dump();
                out += ": ";
                write_json(out, v, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write_json(out, v, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case ordered_json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? shortest(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

[[nodiscard]] inline ordered_json num(const std::optional<double>& x) {
    if (!x || !std::isfinite(*x)) return nullptr;
    return *x;
}

[[nodiscard]] inline ordered_json flag(const std::optional<bool>& b) {
    if (!b) return nullptr;
    return *b;
}

template <class E>
[[nodiscard]] ordered_json label(const std::optional<E>& e) {
    if (!e) return nullptr;
    return std::string{to_string(*e)};
}

}  // namespace detail

/// One validated record per data row or array element, in input order.
[[nodiscard]] inline IoResult<std::vector<Record>> parse_records(std::string_view text,
                                                                 InputFormat format) {
    return format == InputFormat::csv ? detail::parse_csv(text) : detail::parse_json(text);
}

/// Pretty-printed JSON with shortest round-trip floats.
[[nodiscard]] inline std::string dump(const ordered_json& j) {
    std::string out;
    detail::write_json(out, j, 2, 0);
    out += '\n';
    return out;
}

[[nodiscard]] inline ordered_json to_json(const Error& e) {
    ordered_json j;
    j["stage"] = std::string{to_string(e.stage)};
    j["formula"] = e.formula;
    j["code"] = std::string{to_string(e.code)};
    j["quantity"] = e.quantity;
    j["value"] = detail::num(e.value);
    return j;
}

[[nodiscard]] inline ordered_json to_json(const IoError& e) {
    ordered_json j;
    j["kind"] = e.kind == IoError::Kind::parse ? "ParseError" : "ValidationError";
    j["row"] = e.row;
    j["detail"] = e.detail;
    ordered_json fields = ordered_json::array();
    for (const auto& v : e.violations) {
        fields.push_back(ordered_json{{"field", v.field}, {"code", std::string{to_string(v.code)}}});
    }
    j["violations"] = fields;
    return j;
}

[[nodiscard]] inline ordered_json input_to_json(const std::string& date, const RawRecord& r) {
    ordered_json j;
    j["date"] = date.empty() ? ordered_json(nullptr) : ordered_json(date);
    for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
        j[std::string{kFieldNames[i]}] = field_value(r, i);
    }
    return j;
}

[[nodiscard]] inline ordered_json report_to_json(const WatchReport& r) {
    using detail::num;
    const Trace& t = r.trace;
    ordered_json j;
    j["input"] = input_to_json(r.date, r.input.raw());

    ordered_json& ex = j["exponents"];
    ex["scaled_times"] = ordered_json{{"t6_1_s", t.scaled.t6_1_s},
                                      {"t6_2_s", t.scaled.t6_2_s},
                                      {"t16_s", t.scaled.t16_s},
                                      {"t24_s", t.scaled.t24_s}};
    ex["perm_a"] = num(t.perm_a);
    ex["l_p1"] = num(t.l_p1);
    ex["l_p2"] = num(t.l_p2);
    ex["l_y1"] = num(t.l_y1);
    ex["l_y2"] = num(t.l_y2);

    ordered_json& gm = j["grid_model"];
    gm["discriminant"] = num(t.discriminant);
    gm["rho"] = num(t.rho);
    gm["e1"] = num(t.e1);
    gm["e2"] = num(t.e2);
    gm["omega1"] = num(t.omega1);
    gm["omega2"] = num(t.omega2);
    gm["t1"] = num(t.t1);
    gm["t2"] = num(t.t2);

    ordered_json& pot = j["potentials"];
    pot["v1"] = num(t.v1);
    pot["w1"] = num(t.w1);
    pot["u_s"] = num(t.u_s);
    pot["p_x"] = num(t.p_x);
    pot["u_p"] = num(t.u_p);

    ordered_json& dist = j["distances"];
    dist["r_e"] = num(t.r_e);
    dist["r_h_radicand"] = num(t.r_h_radicand);
    dist["r_h"] = num(t.r_h);
    dist["r_c"] = num(t.r_c);

    ordered_json& prob = j["probabilities"];
    prob["p_s"] = num(t.p_s);
    prob["p_t"] = num(t.p_t);
    prob["p_g"] = num(t.p_g);

    ordered_json& st = j["states"];
    st["market_state"] = detail::label(r.market_state);
    st["grid_state"] = detail::label(r.grid_state);
    st["threat_level"] = detail::label(r.threat_level);

    ordered_json& w = j["watch"];
    w["trade_volume_pct"] = num(r.trade_volume_pct);
    if (t.distance_chain) {
        w["distance_chain"] = ordered_json{{"r_big", t.distance_chain->r_big},
                                           {"r_mid", t.distance_chain->r_mid},
                                           {"r_small", t.distance_chain->r_small}};
    } else {
        w["distance_chain"] = nullptr;
    }
    w["p_false_alarm_raw"] = num(r.p_false_alarm_raw);
    w["p_false_alarm"] = num(r.p_false_alarm);
    if (t.probability_chain) {
        w["probability_chain"] = ordered_json{{"p1", t.probability_chain->p1},
                                              {"p2", t.probability_chain->p2},
                                              {"p3", t.probability_chain->p3},
                                              {"p4", t.probability_chain->p4}};
    } else {
        w["probability_chain"] = nullptr;
    }
    w["p_miss_raw"] = num(r.p_miss_raw);
    w["p_miss"] = num(r.p_miss);

    ordered_json& fl = j["flags"];
    fl["paper_gap_flag"] = r.flags.paper_gap_flag;
    fl["valid_percentage"] = detail::flag(r.flags.valid_percentage);
    fl["v1_in_unit_interval"] = detail::flag(r.flags.v1_in_unit_interval);
    fl["ps_out_of_range"] = detail::flag(r.flags.ps_out_of_range);
    fl["pt_out_of_range"] = detail::flag(r.flags.pt_out_of_range);
    fl["pg_out_of_range"] = detail::flag(r.flags.pg_out_of_range);
    fl["pf_out_of_range"] = detail::flag(r.flags.pf_out_of_range);
    fl["pm_out_of_range"] = detail::flag(r.flags.pm_out_of_range);
    fl["pg_undefined"] = r.flags.pg_undefined;
    ordered_json errs = ordered_json::array();
    for (const auto& e : r.errors) errs.push_back(to_json(e));
    fl["errors"] = errs;
    return j;
}

namespace detail {

[[nodiscard]] inline std::string cell(const ordered_json& v) {
    if (v.is_null()) return "undefined";
    if (v.is_number_float()) return shortest(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void text_rows(std::ostringstream& os, const ordered_json& j, const std::string& prefix) {
    for (const auto& [k, v] : j.items()) {
        const std::string name = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            text_rows(os, v, name);
        } else if (!v.is_array()) {
            os << "  " << name << std::string(name.size() < 34 ? 34 - name.size() : 1, ' ')
               << cell(v) << '\n';
        }
    }
}

}  // namespace detail

[[nodiscard]] inline std::string emit_text(const WatchReport& r) {
    const ordered_json j = report_to_json(r);
    std::ostringstream os;
    os << "day-ahead watch report" << (r.date.empty() ? "" : " [" + r.date + "]") << '\n';
    for (const auto& [section, body] : j.items()) {
        os << section << '\n';
        detail::text_rows(os, body, "");
    }
    os << "errors\n";
    if (r.errors.empty()) os << "  none\n";
    for (const auto& e : r.errors) os << "  " << describe(e) << '\n';
    return os.str();
}

[[nodiscard]] inline std::string emit_report(const WatchReport& r, OutputFormat format) {
    return format == OutputFormat::json ? dump(report_to_json(r)) : emit_text(r);
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
    std::size_t parameter = 6;  ///< index into kFieldNames
    double from = 0.0;
    double to = 1.0;
    std::size_t steps = 2;
};

[[nodiscard]] inline std::optional<std::size_t> field_index(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kFieldNames.size(); ++i)
        if (kFieldNames[i] == name) return i;
    return std::nullopt;
}

[[nodiscard]] inline bool is_valid(const SweepSpec& s) noexcept {
    return s.parameter < kFieldNames.size() && std::isfinite(s.from) && std::isfinite(s.to) &&
           s.from < s.to && s.steps >= 2;
}

struct SweepEntry {
    double value = 0.0;
    std::optional<WatchReport> report;
    std::optional<IoError> error;  ///< set when the swept record fails validation
};

/// Exactly spec.steps entries; value i is from + i (to - from)/(steps - 1).
[[nodiscard]] inline std::vector<SweepEntry> sweep(const InputParameters& base,
                                                   const SweepSpec& spec,
                                                   const RunConfig& config = {},
                                                   const std::string& date = {}) {
    std::vector<SweepEntry> out;
    out.reserve(spec.steps);
    const double step = (spec.to - spec.from) / static_cast<double>(spec.steps - 1);
    for (std::size_t i = 0; i < spec.steps; ++i) {
        SweepEntry entry;
        entry.value = spec.from + static_cast<double>(i) * step;
        RawRecord raw = base.raw();
        set_field(raw, spec.parameter, entry.value);
        if (auto p = validate(raw)) {
            entry.report = run_watch(p.value(), config, {}, date);
        } else {
            entry.error = IoError{IoError::Kind::validation, i + 1,
                                  "invalid field " + p.error().violations.front().field,
                                  p.error().violations};
        }
        out.push_back(std::move(entry));
    }
    return out;
}

[[nodiscard]] inline std::string_view status(const SweepEntry& e) noexcept {
    if (!e.report) return "error";
    return e.report->degraded() ? "degraded" : "ok";
}

[[nodiscard]] inline ordered_json sweep_to_json(const SweepSpec& spec,
                                                const std::vector<SweepEntry>& entries) {
    ordered_json j;
    j["parameter"] = std::string{kFieldNames[spec.parameter]};
    j["from"] = spec.from;
    j["to"] = spec.to;
    j["steps"] = spec.steps;
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        ordered_json row;
        row["index"] = i;
        row["value"] = e.value;
        row["status"] = std::string{status(e)};
        row["report"] = e.report ? report_to_json(*e.report) : ordered_json(nullptr);
        row["error"] = e.error ? to_json(*e.error) : ordered_json(nullptr);
        arr.push_back(std::move(row));
    }
    j["entries"] = std::move(arr);
    return j;
}

/// Whitespace-separated columns, one row per entry.
[[nodiscard]] inline std::string sweep_to_text(const SweepSpec& spec,
                                               const std::vector<SweepEntry>& entries) {
    std::ostringstream os;
    os << "index " << kFieldNames[spec.parameter]
       << " status l_p1 l_p2 trade_volume_pct market_state grid_state threat_level"
          " p_false_alarm p_miss\n";
    const auto opt = [](const std::optional<double>& x) {
        return x ? detail::shortest(*x) : std::string{"NA"};
    };
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        os << i << ' ' << detail::shortest(e.value) << ' ' << status(e);
        if (e.report) {
            const auto& r = *e.report;
            const auto lbl = [](const auto& x) {
                return x ? std::string{to_string(*x)} : std::string{"NA"};
            };
            os << ' ' << opt(r.trace.l_p1) << ' ' << opt(r.trace.l_p2) << ' '
               << opt(r.trade_volume_pct) << ' ' << lbl(r.market_state) << ' '
               << lbl(r.grid_state) << ' ' << lbl(r.threat_level) << ' ' << opt(r.p_false_alarm)
               << ' ' << opt(r.p_miss);
        } else {
            os << " NA NA NA NA NA NA NA NA";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace daywatch

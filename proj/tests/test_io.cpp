// SPDX-License-Identifier: MIT
#include "daywatch/check.hpp"
#include "daywatch/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <cmath>
#include <random>
#include <string>

using namespace daywatch;

namespace {

const char* const kCsv =
    "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n"
    "2009-10-19,6,6,16,24,4,50,0.035\n"
    "\n"
    "day2, 2, 6, 4, 24, 2, 40, 1\r\n";

const char* const kJson = R"([
  {"date": "2009-10-19", "t6_1": 6, "t6_2": 6, "t16": 16, "t24": 24, "k_c": 4, "c_0": 50, "delta": 0.035},
  {"t6_1": 2, "t6_2": 6, "t16": 4, "t24": 24, "k_c": 2, "c_0": 40, "delta": 1}
])";

InputParameters baseline() { return validate(RawRecord{6, 6, 16, 24, 4, 50, 0.035}).value(); }

}  // namespace

TEST_CASE("CSV and JSON give the same records", "[io]") {
    auto csv = parse_records(kCsv, InputFormat::csv);
    auto json = parse_records(kJson, InputFormat::json);
    REQUIRE(csv);
    REQUIRE(json);
    REQUIRE(csv.value().size() == 2);
    REQUIRE(json.value().size() == 2);
    CHECK(csv.value()[0].date == "2009-10-19");
    CHECK(csv.value()[1].date == "day2");
    CHECK(json.value()[1].date.empty());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(csv.value()[i].params.raw() == json.value()[i].params.raw());
    }
}

TEST_CASE("empty inputs give no records", "[io]") {
    CHECK(parse_records("", InputFormat::json).value().empty());
    CHECK(parse_records("[]", InputFormat::json).value().empty());
    CHECK(parse_records(std::string{kCsvHeader} + "\n", InputFormat::csv).value().empty());
}

TEST_CASE("parse errors carry a row number", "[io]") {
    SECTION("missing header") {
        auto r = parse_records("2009,6,6,16,24,4,50,0.035\n", InputFormat::csv);
        REQUIRE_FALSE(r);
        CHECK(r.error().kind == IoError::Kind::parse);
        CHECK(r.error().row == 0);
    }
    SECTION("short row") {
        auto r = parse_records(std::string{kCsvHeader} + "\nx,1,2,3\n", InputFormat::csv);
        REQUIRE_FALSE(r);
        CHECK(r.error().row == 1);
    }
    SECTION("not a number") {
        auto r = parse_records(std::string{kCsvHeader} + "\na,1,1,1,1,1,1,0\nb,1,1,1,1,1,x,0\n",
                               InputFormat::csv);
        REQUIRE_FALSE(r);
        CHECK(r.error().row == 2);
        CHECK(r.error().detail.find("c_0") != std::string::npos);
    }
    SECTION("trailing garbage in a number") {
        CHECK_FALSE(parse_records(std::string{kCsvHeader} + "\na,1,1,1,1,1,1,0.5q\n",
                                  InputFormat::csv));
    }
    SECTION("validation failure") {
        auto r = parse_records(std::string{kCsvHeader} + "\na,0,1,1,1,-1,1,0\n", InputFormat::csv);
        REQUIRE_FALSE(r);
        CHECK(r.error().kind == IoError::Kind::validation);
        REQUIRE(r.error().violations.size() == 2);
        CHECK(r.error().violations[0].field == "t6_1");
        CHECK(r.error().violations[1].field == "k_c");
    }
    SECTION("malformed JSON") {
        CHECK_FALSE(parse_records("[{", InputFormat::json));
        CHECK_FALSE(parse_records("{}", InputFormat::json));
        CHECK_FALSE(parse_records("[1]", InputFormat::json));
        auto missing = parse_records(R"([{"t6_1": 1}])", InputFormat::json);
        REQUIRE_FALSE(missing);
        CHECK(missing.error().detail == "missing field t6_2");
        auto str = parse_records(
            R"([{"t6_1": "1", "t6_2": 1, "t16": 1, "t24": 1, "k_c": 1, "c_0": 1, "delta": 0}])",
            InputFormat::json);
        CHECK_FALSE(str);
    }
}

TEST_CASE("report keys and order", "[io]") {
    const auto j = report_to_json(run_watch(baseline()));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"input", "exponents", "grid_model", "potentials",
                                           "distances", "probabilities", "states", "watch",
                                           "flags"});
    CHECK(j.at("probabilities").at("p_g").is_null());
    CHECK(j.at("states").at("threat_level").is_null());
    CHECK(j.at("input").at("date").is_null());
    CHECK(j.at("flags").at("pg_undefined") == true);
    CHECK(j.at("flags").at("errors").size() == 2);
}

TEST_CASE("input block round-trips bit-exactly", "[io][property]") {
    std::mt19937_64 rng{23};
    std::uniform_real_distribution<double> u{1e-3, 60.0};
    for (int n = 0; n < 200; ++n) {
        const RawRecord raw{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng) / 30.0};
        const auto rep = run_watch(validate(raw).value(), {}, {}, "d");
        const auto text = dump(report_to_json(rep));
        const auto back = ordered_json::parse(text);
        for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
            const auto s = back.at("input").at(std::string{kFieldNames[i]}).dump();
            double x = 0;
            std::from_chars(s.data(), s.data() + s.size(), x);
            CHECK(x == field_value(raw, i));
        }
    }
}

TEST_CASE("floats print in shortest round-trip form", "[io]") {
    CHECK(detail::shortest(0.1) == "0.1");
    CHECK(detail::shortest(1.0) == "1");
    CHECK(detail::shortest(1e300) == "1e+300");
    CHECK(dump(ordered_json{{"x", 0.3}}) == "{\n  \"x\": 0.3\n}\n");
    std::mt19937_64 rng{29};
    for (int n = 0; n < 10000; ++n) {
        double x = 0;
        const auto bits = rng();
        std::memcpy(&x, &bits, sizeof x);
        if (!std::isfinite(x)) continue;
        const auto s = detail::shortest(x);
        double y = 0;
        std::from_chars(s.data(), s.data() + s.size(), y);
        CHECK(y == x);
    }
}

TEST_CASE("text output lists undefined quantities", "[io]") {
    const auto text = emit_report(run_watch(baseline()), OutputFormat::text);
    CHECK(text.find("probabilities.p_g") == std::string::npos);
    CHECK(text.find("p_g") != std::string::npos);
    CHECK(text.find("undefined") != std::string::npos);
    CHECK(text.find("NonPositiveGap") != std::string::npos);
}

TEST_CASE("sweep endpoints and count", "[io][sweep]") {
    const SweepSpec two{*field_index("delta"), 0.0, 1.0, 2};
    REQUIRE(is_valid(two));
    const auto e = sweep(baseline(), two);
    REQUIRE(e.size() == 2);
    CHECK(e[0].value == 0.0);
    CHECK(e[1].value == 1.0);

    const SweepSpec full{*field_index("delta"), 0.0, 1.0, 101};
    const auto entries = sweep(baseline(), full);
    REQUIRE(entries.size() == 101);
    REQUIRE(entries.front().report);
    CHECK(entries.front().report->trace.l_p1 == 1.0);
    CHECK(entries.back().report->trace.l_p1 == 2.0);
    for (const auto& x : entries) CHECK(x.report);

    CHECK_FALSE(is_valid(SweepSpec{6, 0.0, 1.0, 1}));
    CHECK_FALSE(is_valid(SweepSpec{6, 1.0, 0.0, 5}));
    CHECK_FALSE(is_valid(SweepSpec{7, 0.0, 1.0, 5}));
    CHECK_FALSE(field_index("nope"));
}

TEST_CASE("sweep through an invalid value keeps going", "[io][sweep]") {
    const SweepSpec spec{*field_index("t6_1"), -1.0, 1.0, 3};
    const auto entries = sweep(baseline(), spec);
    REQUIRE(entries.size() == 3);
    CHECK(status(entries[0]) == "error");
    CHECK(status(entries[1]) == "error");
    CHECK(status(entries[2]) != "error");
    REQUIRE(entries[1].error);
    CHECK(entries[1].error->violations.front() ==
          FieldViolation{ErrorCode::NonPositiveTime, "t6_1"});
    const auto j = sweep_to_json(spec, entries);
    CHECK(j.at("entries").size() == 3);
    CHECK(j.at("entries")[0].at("report").is_null());
    CHECK(j.at("entries")[2].at("error").is_null());
}

TEST_CASE("sweep text has one row per entry", "[io][sweep]") {
    const SweepSpec spec{*field_index("k_c"), 0.0, 4.0, 5};
    const auto text = sweep_to_text(spec, sweep(baseline(), spec));
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("compare_json", "[io][check]") {
    const auto a = ordered_json::parse(R"({"x": 1.0, "y": [0, null, "s"]})");
    CHECK(compare_json(a, a, 1e-9).empty());
    CHECK(compare_json(a, ordered_json::parse(R"({"x": 1.0000000001, "y": [0, null, "s"]})"), 1e-9)
              .empty());
    CHECK_FALSE(compare_json(a, ordered_json::parse(R"({"x": 1.001, "y": [0, null, "s"]})"), 1e-9)
                    .empty());
    CHECK_FALSE(compare_json(a, ordered_json::parse(R"({"y": [0, null, "s"], "x": 1.0})"), 1e-9)
                    .empty());
    CHECK_FALSE(compare_json(a, ordered_json::parse(R"({"x": 1.0, "y": [0, 1, "s"]})"), 1e-9)
                    .empty());
    CHECK_FALSE(compare_json(a, ordered_json::parse(R"({"x": 1.0, "y": [1e-6, null, "s"]})"), 1e-9)
                    .empty());
}

TEST_CASE("golden reports", "[io][check]") {
    for (const auto& r : check_golden(DAYWATCH_GOLDEN_DIR)) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
}

TEST_CASE("built-in self check", "[io][check]") {
    const auto results = run_self_check(DAYWATCH_GOLDEN_DIR);
    CHECK(results.size() >= 4);
    for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
}

#include "reliab/cli/commands.hpp"
#include "reliab/cli/csv_table.hpp"
#include "reliab/cli/scenario.hpp"
#include "reliab/cli/svg.hpp"
#include "reliab/error.hpp"

#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

using namespace reliab;
using namespace reliab::cli;

namespace {

std::string fixture_path() { return std::string(RELIAB_SOURCE_DIR) + "/data/waymo_monthly.csv"; }

const Output& output(const CommandResult& r, const std::string& name) {
    for (const auto& o : r.outputs) {
        if (o.name == name) return o;
    }
    FAIL("missing output " << name);
    return r.outputs.front();
}

// Every chart a command produces renders identically after a CSV round trip.
void check_render_round_trip(const CommandResult& result) {
    for (const auto& o : result.outputs) {
        if (o.chart.empty()) continue;
        const auto again = CsvTable::parse(o.table.to_string());
        CAPTURE(o.name);
        CHECK(again.to_string() == o.table.to_string());
        CHECK(render_svg(again, chart_preset(o.chart, again)) == render_svg(o.table, chart_preset(o.chart, o.table)));
    }
}

}  // namespace

TEST_CASE("numbers survive formatting") {
    for (double v : {0.0, -0.0, 1.0, 0.1, 1.09e-10, 6.9219e7, 1.7976931348623157e308, 4.9e-324, -3.25}) {
        CHECK(parse_number_or_nan(format_number(v)) == v);
    }
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(std::isnan(parse_number_or_nan("")));
    CHECK(std::isnan(parse_number_or_nan("abc")));
    CHECK(std::isinf(parse_number_or_nan("inf")));
}

TEST_CASE("CSV tables quote and round trip") {
    CsvTable t({"name", "value"});
    t.add_row({"plain", "1"});
    t.add_row({"with, comma", "2"});
    t.add_row({"with \"quote\"", ""});
    t.add_row({"line\nbreak", "3"});
    const std::string text = t.to_string();
    const auto back = CsvTable::parse(text);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.to_string() == text);
    CHECK(back.cell(1, "name") == "with, comma");
    const auto values = back.numeric_column("value");
    CHECK(values[1] == 2.0);
    CHECK(std::isnan(values[2]));
    CHECK_THROWS_AS(back.column_index("missing"), Error);
    CHECK_THROWS_AS(t.add_row({"short"}), Error);
    CHECK_THROWS_AS(CsvTable::parse("a,b\n\"unterminated,1\n"), Error);
}

TEST_CASE("scenario files load and validate") {
    const auto table1 = load_miles_scenario(scenario_path("table1"));
    CHECK(table1.methods.size() == 5);
    CHECK_NOTHROW(table1.validate());
    const auto fig4 = load_compensation_scenario(scenario_path("fig4"));
    CHECK(fig4.settings.size() == 4);
    const auto grid = fig4.n1_grid();
    CHECK(grid.size() == fig4.points);
    CHECK(grid.front() == doctest::Approx(fig4.n1_from));
    CHECK(grid.back() == doctest::Approx(fig4.n1_to));

    ScenarioConfig empty;
    empty.goal = 1e-4;
    empty.rate_floor = 1e-15;
    CHECK_THROWS_AS(empty.validate(), Error);
    CHECK_THROWS_AS(load_miles_scenario(scenario_path("no-such-scenario")), Error);
    CHECK(parse_method("beta-jeffreys") == Method::BetaJeffreys);
    CHECK_THROWS_AS(parse_method("frequentist"), Error);
}

TEST_CASE("classical single point") {
    ScenarioConfig single;
    single.goal = 1e-4;
    single.rate_floor = 1e-15;
    single.methods.push_back({Method::Classical, "classical", 0.0, 0.0, {}});
    single.claims.push_back({0.5, 0.75, 0, ""});
    const auto cell = evaluate_miles(single, single.methods[0], single.claims[0]);
    REQUIRE(cell.miles);
    CHECK(*cell.miles == doctest::Approx(2.0));
}

TEST_CASE("table scenario marks the unreproduced cell") {
    const auto result = cmd_miles(load_miles_scenario(scenario_path("table1")));
    CHECK(result.hard_errors == 0);
    const auto& t = result.outputs.front().table;
    int not_reproduced = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.cell(i, "status") == "not reproduced") {
            ++not_reproduced;
            CHECK(t.cell(i, "method") == "classical");
            CHECK(t.cell(i, "k") == "1");
        }
    }
    CHECK(not_reproduced == 1);
    check_render_round_trip(result);
}

TEST_CASE("curve scenario covers five methods across the bound range") {
    const auto result = cmd_miles(load_miles_scenario(scenario_path("fig2")));
    CHECK(result.hard_errors == 0);
    const auto& t = result.outputs.front().table;
    std::set<std::string> methods;
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        methods.insert(t.cell(i, "label"));
        const double p = parse_number_or_nan(t.cell(i, "p"));
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    CHECK(methods.size() == 5);
    CHECK(lo < 1.2e-10);
    CHECK(hi == doctest::Approx(1.09e-7));
    check_render_round_trip(result);
}

TEST_CASE("compensation command") {
    auto config = load_compensation_scenario(scenario_path("fig4"));
    config.points = 41;
    const auto result = cmd_compensate(config);
    CHECK(result.hard_errors == 0);
    const auto& t = result.outputs.front().table;
    CHECK(t.rows.size() == 41 * config.settings.size());
    check_render_round_trip(result);
    const auto svg = render_svg(t, chart_preset("compensate", t));
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("n*") != std::string::npos);
}

TEST_CASE("confidence and oracle commands") {
    const cbi::PriorConstraints road{1.09e-10, 0.9, 1e-15};
    CHECK(evaluate_confidence({Method::Cbi, road, {0, 0}, 1e-8}) == doctest::Approx(0.9));
    CHECK(evaluate_confidence({Method::Classical, road, {0, 2}, 0.5}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(evaluate_confidence({Method::Classical, road, {1, 2}, 0.5}), Error);
    const auto oracle = cmd_oracle({{0.1, 0.5, 0.01}, {2, 10}, 0.3, 300, 200, 42});
    const auto& row = oracle.outputs.front().table;
    CHECK(std::abs(parse_number_or_nan(row.cell(0, "difference"))) <= 1e-6);
}

TEST_CASE("ingest writes the expanded history") {
    const auto result = cmd_ingest(fixture_path(), 42);
    CHECK(result.outputs.front().table.rows.size() == 528);
}

TEST_CASE("growth-model command is deterministic and round trips") {
    const auto dir = std::filesystem::temp_directory_path() / "reliab_cli_test";
    std::filesystem::remove_all(dir);
    SrgmRequest request;
    request.dataset = fixture_path();
    request.kinds = {srgm::ModelKind::DU, srgm::ModelKind::LV};
    request.start_index = 470;
    request.plr_start = 480;
    const auto a = cmd_srgm(request);
    const auto b = cmd_srgm(request);
    CHECK(a.hard_errors == 0);
    REQUIRE(a.outputs.size() == b.outputs.size());
    for (std::size_t i = 0; i < a.outputs.size(); ++i) CHECK(a.outputs[i].table.to_string() == b.outputs[i].table.to_string());
    CHECK(std::find(a.notes.begin(), a.notes.end(), std::string(srgm_caveat)) != a.notes.end());
    check_render_round_trip(a);

    emit(a, {dir, OutputFormat::Both}, std::cout);
    CHECK(std::filesystem::exists(dir / "mmtd.csv"));
    CHECK(std::filesystem::exists(dir / "mmtd.svg"));
    CHECK(std::filesystem::exists(dir / "plr.csv"));

    // Re-render from the files written above.
    const auto rerender = cmd_evaluate({{}, std::nullopt, dir / "mmtd.csv", "mmtd"});
    std::ifstream svg(dir / "mmtd.svg");
    std::stringstream bytes;
    bytes << svg.rdbuf();
    std::ostringstream out;
    emit(rerender, {dir / "again", OutputFormat::Svg}, out);
    std::ifstream again(dir / "again" / "mmtd.svg");
    std::stringstream again_bytes;
    again_bytes << again.rdbuf();
    CHECK(again_bytes.str() == bytes.str());

    // Records written out score the same when read back.
    const auto& du = output(a, "records_DU").table;
    const auto records = records_from_table(du);
    CHECK(records_table(records).to_string() == du.to_string());
    std::filesystem::remove_all(dir);
}

TEST_CASE("growth-model summary reports a consensus on the fixture") {
    SrgmRequest request;
    request.dataset = fixture_path();
    request.start_index = 400;
    const auto history = load_history(request.dataset, 42);
    const auto analysis = analyse_history(history, request);
    REQUIRE(analysis.consensus_recal);
    CHECK(*analysis.consensus_recal > 1000.0);
    CHECK(analysis.runs.size() == 5);
}

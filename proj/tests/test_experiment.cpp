#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ssac/experiment.hpp"

using namespace ssac;

namespace {

ExperimentResult sample_row(const std::string& algo, const std::string& repeat, std::optional<double> ratio) {
    ExperimentResult r;
    r.algorithm = algo;
    r.instance = "inst.csv";
    r.data_seed = 3;
    r.algo_seed = 7;
    r.oracle_seed = 11;
    r.repeat = repeat;
    r.k = 3;
    r.eps = 0.25;
    r.q = 0.1;
    r.scale = 1e-4;
    r.repeats = 2;
    r.achieved_cost = 12.125;
    r.delta_k = ratio ? std::optional<double>(10.0) : std::nullopt;
    r.ratio = ratio;
    r.query_count = 12345;
    r.distinct_pair_count = 321;
    r.failed_rounds = 1;
    r.padded_centers = 0;
    r.lloyd_cost = 11.0;
    return r;
}

void check_same(const ExperimentResult& a, const ExperimentResult& b) {
    CHECK(to_csv_row(a) == to_csv_row(b));
    CHECK(to_json_line(a) == to_json_line(b));
}

}  // namespace

TEST_CASE("csv round trip") {
    const std::vector<ExperimentResult> rows{sample_row("query-kmeans", "0", 1.2125),
                                             sample_row("query-kmeans", "best", std::nullopt)};
    std::stringstream ss;
    ss << result_csv_header() << '\n';
    for (const auto& r : rows) ss << to_csv_row(r) << '\n';
    // A second header from concatenated files is skipped.
    ss << result_csv_header() << '\n' << to_csv_row(rows[0]) << '\n';
    const auto back = read_results(ss);
    REQUIRE(back.size() == 3);
    check_same(back[0], rows[0]);
    check_same(back[1], rows[1]);
    CHECK_FALSE(back[1].ratio);
}

TEST_CASE("json lines round trip in column order") {
    const auto r = sample_row("faulty-query-kmeans", "1", 1.5);
    const auto line = to_json_line(r);
    CHECK(line.rfind("{\"algorithm\":", 0) == 0);
    CHECK(line.find("\"wall_millis\"") > line.find("\"lloyd_cost\""));
    std::stringstream ss(line + "\n" + to_json_line(sample_row("kmeans++", "best", std::nullopt)) + "\n");
    const auto back = read_results(ss);
    REQUIRE(back.size() == 2);
    check_same(back[0], r);
    CHECK(to_json_line(back[1]).find("\"ratio\":null") != std::string::npos);
}

TEST_CASE("malformed rows are all reported with line numbers") {
    std::stringstream ss;
    ss << result_csv_header() << '\n'
       << to_csv_row(sample_row("a", "0", 1.0)) << '\n'
       << "a,b,c\n"
       << to_csv_row(sample_row("a", "1", 1.0)) << '\n'
       << "{\"algorithm\": 3}\n";
    try {
        read_results(ss, "runs.csv");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("runs.csv:3") != std::string::npos);
        CHECK(msg.find("runs.csv:5") != std::string::npos);
        CHECK(msg.find("runs.csv:2") == std::string::npos);
    }

    std::stringstream headless(to_csv_row(sample_row("a", "0", 1.0)) + "\n");
    CHECK_THROWS_AS(read_results(headless), ParseError);
}

TEST_CASE("empty input") {
    std::stringstream ss;
    CHECK(read_results(ss).empty());
    CHECK(aggregate({}).empty());
}

TEST_CASE("aggregation groups runs and best rows separately") {
    std::vector<ExperimentResult> rows{
        sample_row("query-kmeans", "0", 1.0),  sample_row("query-kmeans", "1", 1.5),
        sample_row("query-kmeans", "best", 1.0), sample_row("kmeans++", "0", 2.0),
        sample_row("query-kmeans", "2", std::nullopt),
    };
    rows[1].query_count = 20000;
    const auto report = aggregate(rows);
    REQUIRE(report.size() == 3);
    CHECK(report[0].algorithm == "kmeans++");
    CHECK(report[1].row_kind == "best");
    const auto& runs = report[2];
    CHECK(runs.algorithm == "query-kmeans");
    CHECK(runs.row_kind == "run");
    CHECK(runs.rows == 3);
    CHECK(runs.rows_with_ratio == 2);
    CHECK(*runs.mean_ratio == doctest::Approx(1.25));
    CHECK(*runs.max_ratio == 1.5);
    CHECK(*runs.success_fraction == 0.5);
    CHECK(runs.mean_queries == doctest::Approx((12345.0 * 2 + 20000.0) / 3.0));
    CHECK(to_csv_row(runs).rfind("query-kmeans,run,3,", 0) == 0);

    rows[3].eps = 0.5;
    CHECK(aggregate(rows).size() == 3);
    rows[3].algorithm = "query-kmeans";
    CHECK(aggregate(rows).size() == 3);
}

TEST_CASE("lloyd refinement never raises cost") {
    const Dataset x(std::vector<Point>{{0, 0}, {1, 0}, {10, 0}, {11, 0}, {10, 1}});
    const CenterSet start{{0, 0}, {1, 0}};
    const auto refined = lloyd_refine(x, start);
    CHECK(cost(refined, x) <= cost(start, x));
    CHECK(cost(refined, x) == doctest::Approx(0.5 + 2.0 / 3.0 + 1.0 / 3.0 + 1.0 / 3.0));
}
